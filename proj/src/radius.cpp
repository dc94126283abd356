#include "numrad/radius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "numrad/error.hpp"

namespace numrad {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kInitialGrid = 64;

struct Sample {
  double theta;
  double h;       // lambda_max(Re(e^{i theta} M))
  cplx point;     // <M x, x> for the top eigenvector x
  DenseVector x;
};

Sample evaluate(const DenseMatrix& m, double theta) {
  const cplx phase = std::polar(1.0, theta);
  const DenseMatrix re = (phase * m + std::conj(phase) * m.adjoint()) * 0.5;
  TopEigen top = top_eigen(re);
  const cplx point = top.vector.dot(m * top.vector);  // x^* M x
  return Sample{theta, top.value, point, std::move(top.vector)};
}

struct Cell {
  double a;
  double b;
  double ha;
  double hb;
  cplx pa;
  cplx pb;
  double bound;

  bool operator<(const Cell& other) const { return bound < other.bound; }
};

// Upper bound on omega restricted to support directions in [a, b].
double cell_bound(double a, double b, double ha, double hb, cplx pa, cplx pb, double lipschitz) {
  const double width = b - a;
  double bound = 0.5 * (ha + hb + lipschitz * width);
  const double s = std::sin(width);
  if (width < std::numbers::pi && s > 0.0) {
    // Walk from pa along its supporting line to the line at angle b.
    const cplx along = cplx(0.0, 1.0) * std::polar(1.0, -a);
    const double t = ((std::polar(1.0, b) * pa).real() - hb) / s;
    const cplx vertex = pa + t * along;
    const double tri = std::max({std::abs(pa), std::abs(pb), std::abs(vertex)});
    if (std::isfinite(tri)) bound = std::min(bound, tri);
  }
  return bound;
}

void check_square_list(std::span<const ComplexMatrix> ops) {
  if (ops.empty()) throw Error(ErrorKind::EmptyList, "operator list is empty");
  const std::size_t side = ops.front().rows();
  for (const ComplexMatrix& t : ops) {
    if (!t.is_square()) throw Error(ErrorKind::NotSquare, "omega_p operators must be square");
    if (t.rows() != side) throw Error(ErrorKind::DimensionMismatch, "omega_p operators must share one side length");
  }
}

double objective_raw(std::span<const ComplexMatrix> ops, double p, const DenseVector& x, std::vector<cplx>* zs) {
  double sum = 0.0;
  for (const ComplexMatrix& t : ops) {
    const cplx z = x.dot(t.dense() * x);
    if (zs != nullptr) zs->push_back(z);
    sum += std::pow(std::abs(z), p);
  }
  return sum;
}

double operator_scale(std::span<const ComplexMatrix> ops) {
  double s = 0.0;
  for (const ComplexMatrix& t : ops) s = std::max(s, spectral_norm(t));
  return std::max(1.0, s);
}

DenseVector random_unit(Rng& rng, Eigen::Index n) {
  DenseVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.complex_normal();
  const double nrm = x.norm();
  if (nrm == 0.0) {
    x.setZero();
    x(0) = 1.0;
    return x;
  }
  return x / nrm;
}

}  // namespace

CertifiedRadius omega(const ComplexMatrix& m, double tol, std::size_t budget) {
  if (!m.is_square()) throw Error(ErrorKind::NotSquare, "omega requires a square matrix");
  const double norm = spectral_norm(m);
  if (!(tol >= 1e-12 * std::max(1.0, norm))) {
    throw Error(ErrorKind::OutOfRange, "omega tolerance below 1e-12 max(1, ||M||)");
  }
  CertifiedRadius out;
  out.tol = tol;
  const auto side = static_cast<Eigen::Index>(m.rows());
  if (norm == 0.0) {
    out.witness = DenseVector::Zero(side);
    out.witness(0) = 1.0;
    return out;
  }
  const DenseMatrix& dense = m.dense();
  // Rounding in the eigensolver, not the geometry, limits how tight hi can be.
  const double slack = 1e-14 * std::max(1.0, norm) * static_cast<double>(side);

  std::size_t evals = 0;
  auto take = [&](double theta) {
    if (++evals > budget) {
      throw Error(ErrorKind::ToleranceUnreachable, "omega exhausted " + std::to_string(budget) + " eigendecompositions");
    }
    Sample s = evaluate(dense, theta);
    const double mod = std::abs(s.point);
    if (mod > out.lo || out.witness.size() == 0) {
      out.lo = mod;
      out.witness_theta = s.theta;
      out.witness = s.x;
    }
    return s;
  };

  std::vector<Sample> grid;
  grid.reserve(kInitialGrid + 1);
  for (std::size_t k = 0; k < kInitialGrid; ++k) grid.push_back(take(kTwoPi * static_cast<double>(k) / kInitialGrid));

  std::priority_queue<Cell> cells;
  for (std::size_t k = 0; k < kInitialGrid; ++k) {
    const Sample& s0 = grid[k];
    const Sample& s1 = grid[(k + 1) % kInitialGrid];
    const double a = s0.theta;
    const double b = k + 1 == kInitialGrid ? kTwoPi : s1.theta;
    cells.push(Cell{a, b, s0.h, s1.h, s0.point, s1.point, cell_bound(a, b, s0.h, s1.h, s0.point, s1.point, norm)});
  }

  while (true) {
    const Cell top = cells.top();
    const double hi = top.bound + slack;
    if (hi - out.lo <= tol) {
      out.hi = std::max(hi, out.lo);
      break;
    }
    cells.pop();
    const double mid = 0.5 * (top.a + top.b);
    if (!(mid > top.a && mid < top.b)) {
      throw Error(ErrorKind::ToleranceUnreachable, "omega angular resolution exhausted");
    }
    const Sample s = take(mid);
    cells.push(Cell{top.a, mid, top.ha, s.h, top.pa, s.point, cell_bound(top.a, mid, top.ha, s.h, top.pa, s.point, norm)});
    cells.push(Cell{mid, top.b, s.h, top.hb, s.point, top.pb, cell_bound(mid, top.b, s.h, top.hb, s.point, top.pb, norm)});
  }
  out.witness_theta = std::fmod(out.witness_theta, kTwoPi);
  out.evaluations = evals;
  return out;
}

std::pair<CertifiedRadius, CertifiedRadius> omega_offdiag_symmetric_check(const ComplexMatrix& x, double tol) {
  if (!x.is_square()) throw Error(ErrorKind::NotSquare, "symmetric off-diagonal check requires square X");
  return {omega(x, tol), omega(embed_offdiag(OffDiagPair(x, x)), tol)};
}

double omega_p_objective(std::span<const ComplexMatrix> ops, double p, const DenseVector& x) {
  return objective_raw(ops, p, x, nullptr);
}

DenseVector omega_p_gradient(std::span<const ComplexMatrix> ops, double p, const DenseVector& x) {
  const double scale = operator_scale(ops) * std::max(1.0, x.squaredNorm());
  DenseVector grad = DenseVector::Zero(x.size());
  for (const ComplexMatrix& t : ops) {
    const DenseVector tx = t.dense() * x;
    const cplx z = x.dot(tx);
    const double mod = std::abs(z);
    if (mod < 1e-14 * scale) continue;
    const DenseVector tsx = t.dense().adjoint() * x;
    grad += p * std::pow(mod, p - 2.0) * (std::conj(z) * tx + z * tsx);
  }
  return grad;
}

OmegaPEstimate omega_p(std::span<const ComplexMatrix> ops, double p, const RngStream& stream,
                       const OmegaPOptions& options) {
  check_square_list(ops);
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::OutOfRange, "omega_p requires finite p >= 1");
  const auto side = static_cast<Eigen::Index>(ops.front().rows());
  const double scale = operator_scale(ops);
  const std::size_t restarts = options.restarts > 0 ? options.restarts : 8 * static_cast<std::size_t>(side);
  const double tol = options.tol > 0.0 ? options.tol : 1e-8 * scale;
  // Stop once an iteration gains less than this in the 1/p-th root.
  const double step_tol = std::min(tol * 1e-3, 1e-12 * scale);

  OmegaPEstimate best;
  best.p = p;
  best.restarts_used = restarts;
  best.witness = DenseVector::Zero(side);
  best.witness(0) = 1.0;
  bool have_best = false;

  std::vector<cplx> zs;
  for (std::size_t k = 0; k < restarts; ++k) {
    Rng rng(derive(stream, k));
    DenseVector x = random_unit(rng, side);
    zs.clear();
    double f = objective_raw(ops, p, x, &zs);
    bool converged = false;
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
      DenseMatrix h = DenseMatrix::Zero(side, side);
      for (std::size_t i = 0; i < ops.size(); ++i) {
        const double mod = std::abs(zs[i]);
        if (mod < 1e-14 * scale) continue;
        const cplx u = zs[i] / mod;
        const double c = std::pow(mod, p - 1.0);
        h += (c * 0.5) * (std::conj(u) * ops[i].dense() + u * ops[i].dense().adjoint());
      }
      if (h.cwiseAbs().maxCoeff() == 0.0) {
        converged = true;
        break;
      }
      DenseVector next = top_eigen(h).vector;
      std::vector<cplx> next_zs;
      next_zs.reserve(ops.size());
      const double f_next = objective_raw(ops, p, next, &next_zs);
      if (!(f_next > f)) {
        converged = true;
        break;
      }
      const double gain = std::pow(f_next, 1.0 / p) - std::pow(f, 1.0 / p);
      x = std::move(next);
      zs = std::move(next_zs);
      f = f_next;
      if (gain <= step_tol) {
        converged = true;
        break;
      }
    }
    const double value = std::pow(f, 1.0 / p);
    if (!have_best || value > best.value) {
      best.value = value;
      best.witness = x;
      best.converged = converged;
      have_best = true;
    }
  }
  return best;
}

double omega_p_bruteforce(std::span<const ComplexMatrix> ops, double p, std::size_t grid_density) {
  check_square_list(ops);
  const std::size_t d = ops.front().rows();
  if (d > 3) throw Error(ErrorKind::DimensionTooLarge, "brute-force omega_p supports side <= 3");
  if (grid_density < 2) throw Error(ErrorKind::OutOfRange, "grid density must be >= 2");
  const std::size_t nmag = d - 1;   // magnitude angles in [0, pi/2]
  const std::size_t nphase = d - 1; // relative phases in [0, 2 pi)
  const std::size_t dims = nmag + nphase;

  auto point = [&](const std::vector<double>& c) {
    DenseVector x(static_cast<Eigen::Index>(d));
    if (d == 1) {
      x(0) = 1.0;
    } else if (d == 2) {
      x(0) = std::cos(c[0]);
      x(1) = std::sin(c[0]) * std::polar(1.0, c[1]);
    } else {
      x(0) = std::cos(c[0]);
      x(1) = std::sin(c[0]) * std::cos(c[1]) * std::polar(1.0, c[2]);
      x(2) = std::sin(c[0]) * std::sin(c[1]) * std::polar(1.0, c[3]);
    }
    return x;
  };
  auto value = [&](const std::vector<double>& c) { return objective_raw(ops, p, point(c), nullptr); };

  std::vector<double> coords(dims, 0.0);
  std::vector<double> best_coords = coords;
  double best = value(coords);
  if (dims == 0) return std::pow(best, 1.0 / p);

  const double mag_step = std::numbers::pi / 2.0 / static_cast<double>(grid_density - 1);
  const double phase_step = kTwoPi / static_cast<double>(grid_density);
  std::vector<std::size_t> idx(dims, 0);
  while (true) {
    for (std::size_t i = 0; i < dims; ++i) {
      coords[i] = i < nmag ? mag_step * static_cast<double>(idx[i]) : phase_step * static_cast<double>(idx[i]);
    }
    const double v = value(coords);
    if (v > best) {
      best = v;
      best_coords = coords;
    }
    std::size_t pos = 0;
    while (pos < dims && ++idx[pos] == grid_density) idx[pos++] = 0;
    if (pos == dims) break;
  }

  // Compass search polish.
  double step = std::max(mag_step, phase_step);
  while (step > 1e-11) {
    bool improved = false;
    for (std::size_t i = 0; i < dims; ++i) {
      for (double dir : {1.0, -1.0}) {
        std::vector<double> trial = best_coords;
        trial[i] += dir * step;
        const double v = value(trial);
        if (v > best) {
          best = v;
          best_coords = std::move(trial);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return std::pow(best, 1.0 / p);
}

}  // namespace numrad
