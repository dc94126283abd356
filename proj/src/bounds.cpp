#include "numrad/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "numrad/error.hpp"

namespace numrad {

namespace {

double norm_of(const ComplexMatrix& m) { return spectral_norm(m); }

// Matrix functions of |X|, |X*|, |Y|, |Y*| that share one validation pass for
// the (f, g) hypothesis over every eigenvalue they touch.
class PairCalculus {
 public:
  PairCalculus(const OffDiagPair& p, const FunctionPair& fg, double exponent)
      : abs_x_(abs_op(p.x)),
        abs_xs_(abs_op(adjoint(p.x))),
        abs_y_(abs_op(p.y)),
        abs_ys_(abs_op(adjoint(p.y))),
        fg_(fg) {
    std::tie(fe_, ge_) = pow_of_pair(fg, exponent);
  }

  const ComplexMatrix& abs_x() const { return abs_x_; }
  const ComplexMatrix& abs_xs() const { return abs_xs_; }
  const ComplexMatrix& abs_y() const { return abs_y_; }
  const ComplexMatrix& abs_ys() const { return abs_ys_; }

  ComplexMatrix f(const ComplexMatrix& h) { return fn_of_psd(h, fe_, &seen_); }
  ComplexMatrix g(const ComplexMatrix& h) { return fn_of_psd(h, ge_, &seen_); }

  // Throws InvalidFunction when f g != t or negativity shows up on the samples.
  void validate() {
    seen_.push_back(0.0);
    seen_.push_back(1.0);
    const PairValidation report = validate_pair(fg_, seen_);
    if (!report.ok) {
      std::ostringstream msg;
      msg << "pair '" << fg_.tag << "' fails f(t)g(t)=t at t=" << report.worst_sample;
      throw Error(ErrorKind::InvalidFunction, msg.str());
    }
  }

 private:
  ComplexMatrix abs_x_;
  ComplexMatrix abs_xs_;
  ComplexMatrix abs_y_;
  ComplexMatrix abs_ys_;
  const FunctionPair& fg_;
  ScalarFn fe_;
  ScalarFn ge_;
  std::vector<double> seen_;
};

// The two PSD sums of the off-diagonal theorems: `a` pairs with x2, `b` with x1.
struct GroupedSums {
  ComplexMatrix a;
  ComplexMatrix b;
};

GroupedSums grouped_sums(const OffDiagPair& p, const FunctionPair& fg, double r, Variant variant) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw Error(ErrorKind::OutOfRange, "r must be finite and >= 1");
  PairCalculus calc(p, fg, 2.0 * r);
  GroupedSums out{variant == Variant::v1 ? calc.f(calc.abs_x()) + calc.g(calc.abs_ys())
                                         : calc.f(calc.abs_x()) + calc.f(calc.abs_ys()),
                  variant == Variant::v1 ? calc.f(calc.abs_y()) + calc.g(calc.abs_xs())
                                         : calc.g(calc.abs_y()) + calc.g(calc.abs_xs())};
  calc.validate();
  return out;
}

std::string with_variant(std::string_view base, Variant v) {
  return std::string(base) + (v == Variant::v1 ? ".v1" : ".v2");
}

BoundParams pair_params(const FunctionPair& fg, double r) {
  BoundParams params;
  params.r = r;
  params.alpha = fg.alpha;
  params.pair_tag = fg.tag;
  return params;
}

void require_contraction(const ComplexMatrix& m, const char* name) {
  if (norm_of(m) > 1.0 + 1e-10) throw Error(ErrorKind::NotContraction, std::string(name) + " is not a contraction");
}

}  // namespace

bool is_known_bound(std::string_view id) noexcept {
  return std::find(kBoundIds.begin(), kBoundIds.end(), id) != kBoundIds.end();
}

std::string_view to_string(ConstantMode mode) noexcept {
  return mode == ConstantMode::as_stated ? "as_stated" : "as_proved";
}

std::optional<ConstantMode> parse_constant_mode(std::string_view s) noexcept {
  if (s == "as_stated") return ConstantMode::as_stated;
  if (s == "as_proved") return ConstantMode::as_proved;
  return std::nullopt;
}

std::optional<double> BoundOutcome::term(std::string_view name) const {
  for (const auto& [k, v] : terms)
    if (k == name) return v;
  return std::nullopt;
}

YoungSides refined_young(double a, double b, int m) {
  if (!(a >= 0.0) || !(b >= 0.0) || m < 1) throw Error(ErrorKind::OutOfRange, "refined_young needs a, b >= 0 and m >= 1");
  const double md = static_cast<double>(m);
  const double gap = std::pow(a, md / 2.0) - std::pow(b, md / 2.0);
  return YoungSides{std::pow(std::sqrt(a * b), md) + std::pow(0.5, md) * gap * gap, std::pow(0.5, md) * std::pow(a + b, md)};
}

BoundOutcome bound_main1(const OffDiagPair& pair, const FunctionPair& fg, double r, Variant variant) {
  const GroupedSums s = grouped_sums(pair, fg, r, variant);
  const double na = norm_of(s.a);
  const double nb = norm_of(s.b);
  BoundOutcome out;
  out.bound_id = with_variant("main1", variant);
  out.value = std::pow(2.0, r - 2.0) * std::sqrt(na) * std::sqrt(nb);
  out.exponent = r;
  out.terms = {{"norm_a", na}, {"norm_b", nb}};
  out.params = pair_params(fg, r);
  return out;
}

BoundOutcome bound_product_xy(const ComplexMatrix& x, const ComplexMatrix& y, double alpha, double r, Variant variant) {
  if (!x.is_square() || !y.is_square()) throw Error(ErrorKind::NotSquare, "product bound needs square X and Y");
  if (x.rows() != y.rows()) throw Error(ErrorKind::DimensionMismatch, "product bound needs X, Y of one size");
  BoundOutcome out = bound_main1(OffDiagPair(x, y), power_pair(alpha), r, variant);
  out.bound_id = "product_xy";
  out.exponent = r / 2.0;
  return out;
}

BoundOutcome bound_sum_norm(const ComplexMatrix& x, const ComplexMatrix& y, double r, Sign sign, bool normal_mode) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw Error(ErrorKind::OutOfRange, "r must be finite and >= 1");
  const OffDiagPair pair(x, y);
  const ScalarFn power = [r](double t) { return std::pow(t, r); };
  BoundOutcome out;
  out.exponent = r;
  out.params.r = r;
  out.params.alpha = 0.5;
  out.params.sign = sign;
  const double lead = std::pow(2.0, 2.0 * r - 2.0);
  if (normal_mode) {
    if (!x.is_square() || !y.is_square()) throw Error(ErrorKind::NotNormal, "normal mode needs square X and Y");
    if (!is_normal(x) || !is_normal(y)) throw Error(ErrorKind::NotNormal, "normal mode needs normal X and Y");
    const double n = norm_of(fn_of_psd(abs_op(x), power) + fn_of_psd(abs_op(y), power));
    out.bound_id = "sum_norm.normal";
    out.value = lead * n;
    out.terms = {{"norm_sum", n}};
    return out;
  }
  const double na = norm_of(fn_of_psd(abs_op(x), power) + fn_of_psd(abs_op(adjoint(y)), power));
  const double nb = norm_of(fn_of_psd(abs_op(y), power) + fn_of_psd(abs_op(adjoint(x)), power));
  out.bound_id = "sum_norm";
  out.value = lead * std::sqrt(na) * std::sqrt(nb);
  out.terms = {{"norm_a", na}, {"norm_b", nb}};
  return out;
}

BoundOutcome bound_main11(const OffDiagPair& pair, const FunctionPair& fg, double r, const HolderPair& hp,
                          Variant variant, ConstantMode mode) {
  const GroupedSums s = grouped_sums(pair, fg, r, variant);
  const double p = hp.p();
  const double q = hp.q();
  const double norm_ap = norm_of(fn_of_psd(s.a, [p](double t) { return std::pow(t, p); }));
  const double norm_bq = norm_of(fn_of_psd(s.b, [q](double t) { return std::pow(t, q); }));
  const double alpha_sq = norm_ap / (p * p);
  const double beta_sq = norm_bq / (q * q);
  const double lead = mode == ConstantMode::as_proved ? std::pow(4.0, r - 1.0) : std::pow(4.0, r - 2.0);
  BoundOutcome out;
  out.bound_id = with_variant("main11", variant);
  out.value = lead * (alpha_sq + beta_sq);
  out.exponent = 2.0 * r;
  out.terms = {{"alpha_sq", alpha_sq}, {"beta_sq", beta_sq}, {"constant", lead}};
  out.params = pair_params(fg, r);
  out.params.holder_p = p;
  out.params.holder_q = q;
  out.params.constant_mode = mode;
  return out;
}

BoundOutcome bound_main11_young(const OffDiagPair& pair, const FunctionPair& fg, double r, const HolderPair& hp,
                                Variant variant) {
  const GroupedSums s = grouped_sums(pair, fg, r, variant);
  const double p = hp.p();
  const double q = hp.q();
  const double na = norm_of(s.a);
  const double nb = norm_of(s.b);
  BoundOutcome out;
  out.bound_id = with_variant("main11.young", variant);
  out.value = std::pow(2.0, r - 2.0) * (std::pow(na, p / 2.0) / p + std::pow(nb, q / 2.0) / q);
  out.exponent = r;
  out.terms = {{"norm_a", na}, {"norm_b", nb}};
  out.params = pair_params(fg, r);
  out.params.holder_p = p;
  out.params.holder_q = q;
  return out;
}

double zeta_value(const ComplexMatrix& a, const ComplexMatrix& b, const DenseVector& x1, const DenseVector& x2) {
  const double qa = std::max(0.0, x2.dot(a.dense() * x2).real());
  const double qb = std::max(0.0, x1.dot(b.dense() * x1).real());
  const double d = std::sqrt(qa) - std::sqrt(qb);
  return d * d;
}

ZetaEstimate minimize_zeta(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t restarts, const RngStream& stream) {
  if (!a.is_square() || !b.is_square()) throw Error(ErrorKind::NotSquare, "zeta operators must be square");
  const auto n2 = static_cast<Eigen::Index>(a.rows());
  const auto n1 = static_cast<Eigen::Index>(b.rows());
  const double scale = std::max({1.0, norm_of(a), norm_of(b)});
  ZetaEstimate best;
  best.value = std::numeric_limits<double>::infinity();
  restarts = std::max<std::size_t>(restarts, 1);

  // Optimal split of unit mass between fixed directions u (x2) and v (x1):
  // sqrt(a_u) cos t - sqrt(b_v) sin t changes sign on [0, pi/2].
  auto rebalance = [&](DenseVector& x1, DenseVector& x2) {
    const double n1v = x1.norm();
    const double n2v = x2.norm();
    if (n1v == 0.0 || n2v == 0.0) return;
    const DenseVector u = x2 / n2v;
    const DenseVector v = x1 / n1v;
    const double qa = std::max(0.0, u.dot(a.dense() * u).real());
    const double qb = std::max(0.0, v.dot(b.dense() * v).real());
    const double t = std::atan2(std::sqrt(qa), std::sqrt(qb));
    x2 = std::cos(t) * u;
    x1 = std::sin(t) * v;
  };

  for (std::size_t k = 0; k < restarts; ++k) {
    Rng rng(derive(stream, k));
    DenseVector x1(n1);
    DenseVector x2(n2);
    for (Eigen::Index i = 0; i < n1; ++i) x1(i) = rng.complex_normal();
    for (Eigen::Index i = 0; i < n2; ++i) x2(i) = rng.complex_normal();
    const double nrm = std::sqrt(x1.squaredNorm() + x2.squaredNorm());
    x1 /= nrm;
    x2 /= nrm;
    double z = zeta_value(a, b, x1, x2);
    for (int it = 0; it < 100 && z > 1e-30 * scale; ++it) {
      DenseVector r1 = x1;
      DenseVector r2 = x2;
      rebalance(r1, r2);
      const double zr = zeta_value(a, b, r1, r2);
      if (zr < z) {
        x1 = std::move(r1);
        x2 = std::move(r2);
        z = zr;
        continue;
      }
      // Projected gradient step with backtracking.
      const double qa = std::max(x2.dot(a.dense() * x2).real(), 1e-300);
      const double qb = std::max(x1.dot(b.dense() * x1).real(), 1e-300);
      const double diff = std::sqrt(qa) - std::sqrt(qb);
      DenseVector g2 = (2.0 * diff / std::sqrt(qa)) * (a.dense() * x2);
      DenseVector g1 = (-2.0 * diff / std::sqrt(qb)) * (b.dense() * x1);
      const double radial = (x1.dot(g1) + x2.dot(g2)).real();
      g1 -= radial * x1;
      g2 -= radial * x2;
      double step = 1.0 / scale;
      bool moved = false;
      for (int bt = 0; bt < 40; ++bt, step *= 0.5) {
        DenseVector t1 = x1 - step * g1;
        DenseVector t2 = x2 - step * g2;
        const double tn = std::sqrt(t1.squaredNorm() + t2.squaredNorm());
        t1 /= tn;
        t2 /= tn;
        const double zt = zeta_value(a, b, t1, t2);
        if (zt < z) {
          x1 = std::move(t1);
          x2 = std::move(t2);
          z = zt;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    if (z < best.value) {
      best.value = z;
      best.x1 = x1;
      best.x2 = x2;
    }
  }
  best.value = zeta_value(a, b, best.x1, best.x2);
  return best;
}

Main3Result bound_main3(const OffDiagPair& pair, const FunctionPair& fg, double r, Variant variant,
                        std::size_t zeta_restarts, const RngStream& stream) {
  const GroupedSums s = grouped_sums(pair, fg, r, variant);
  const double na = norm_of(s.a);
  const double nb = norm_of(s.b);
  const double lead = std::pow(2.0, r - 2.0);
  ZetaEstimate zeta = minimize_zeta(s.a, s.b, zeta_restarts, stream);

  Main3Result out{BoundOutcome{}, BoundOutcome{}, std::move(zeta)};
  out.guaranteed.bound_id = with_variant("main3", variant);
  out.guaranteed.value = lead * (na + nb);
  out.guaranteed.exponent = r;
  out.guaranteed.terms = {{"norm_a", na}, {"norm_b", nb}, {"zeta_lower", 0.0}, {"zeta_estimate", out.zeta.value}};
  out.guaranteed.params = pair_params(fg, r);

  out.refined = out.guaranteed;
  out.refined.value = std::max(0.0, lead * (na + nb) - lead * out.zeta.value);
  out.refined.params.heuristic = true;
  return out;
}

ComplexMatrix ContractionItem::product() const {
  return embed_offdiag(OffDiagPair(adjoint(a) * x * d, adjoint(b) * y * c));
}

BoundOutcome bound_main4(std::span<const ContractionItem> items, const FunctionPair& fg, double p, Variant variant) {
  if (items.empty()) throw Error(ErrorKind::EmptyList, "contraction bound needs at least one item");
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::OutOfRange, "p must be finite and >= 1");
  const std::size_t m = items.front().x.rows();
  const std::size_t n = items.front().x.cols();
  double sum = 0.0;
  BoundOutcome out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const ContractionItem& it = items[i];
    if (it.x.rows() != m || it.x.cols() != n || it.a.rows() != m || !it.a.is_square() || it.c.rows() != m ||
        !it.c.is_square() || it.b.rows() != n || !it.b.is_square() || it.d.rows() != n || !it.d.is_square()) {
      throw Error(ErrorKind::DimensionMismatch, "contraction item " + std::to_string(i) + " has inconsistent shapes");
    }
    const OffDiagPair xy(it.x, it.y);
    require_contraction(it.a, "A");
    require_contraction(it.b, "B");
    require_contraction(it.c, "C");
    require_contraction(it.d, "D");
    PairCalculus calc(xy, fg, 2.0 * p);
    const ComplexMatrix ad = adjoint(it.a);
    const ComplexMatrix bd = adjoint(it.b);
    const ComplexMatrix cd = adjoint(it.c);
    const ComplexMatrix dd = adjoint(it.d);
    const ComplexMatrix lhs_ys = variant == Variant::v1 ? calc.g(calc.abs_ys()) : calc.f(calc.abs_ys());
    const ComplexMatrix lhs_y = variant == Variant::v1 ? calc.f(calc.abs_y()) : calc.g(calc.abs_y());
    const ComplexMatrix p2 = dd * calc.f(calc.abs_x()) * it.d + bd * lhs_ys * it.b;
    const ComplexMatrix p1 = cd * lhs_y * it.c + ad * calc.g(calc.abs_xs()) * it.a;
    calc.validate();
    const double n2 = norm_of(p2);
    const double n1 = norm_of(p1);
    sum += std::sqrt(n2) * std::sqrt(n1);
    out.terms.emplace_back("item" + std::to_string(i) + ".norm_x2", n2);
    out.terms.emplace_back("item" + std::to_string(i) + ".norm_x1", n1);
  }
  out.bound_id = with_variant("main4", variant);
  out.value = std::pow(2.0, p - 2.0) * sum;
  out.exponent = p;
  out.params = pair_params(fg, p);
  return out;
}

BoundOutcome bound_th1(std::span<const Block2x2> blocks, double p, double omega_tol) {
  if (blocks.empty()) throw Error(ErrorKind::EmptyList, "th1 needs at least one block");
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::OutOfRange, "p must be finite and >= 1");
  double sum = 0.0;
  BoundOutcome out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block2x2& blk = blocks[i];
    const double wa = omega(blk.a, std::max(omega_tol, 1e-12 * std::max(1.0, norm_of(blk.a)))).hi;
    const double wd = omega(blk.d, std::max(omega_tol, 1e-12 * std::max(1.0, norm_of(blk.d)))).hi;
    const double off = norm_of(blk.b) + norm_of(blk.c);
    const double inner = wa + wd + std::hypot(wa - wd, off);
    sum += std::pow(inner, p);
    const std::string pre = "block" + std::to_string(i) + ".";
    out.terms.emplace_back(pre + "omega_a", wa);
    out.terms.emplace_back(pre + "omega_d", wd);
    out.terms.emplace_back(pre + "offdiag_norms", off);
  }
  out.bound_id = "th1";
  out.value = std::pow(2.0, -p) * sum;
  out.exponent = p;
  out.params.r = p;
  return out;
}

}  // namespace numrad
