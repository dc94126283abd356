#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "numrad/funcpair.hpp"
#include "numrad/linalg.hpp"
#include "numrad/radius.hpp"

namespace numrad {

/// Exact identifiers used by the CLI and in reports.
inline constexpr std::array<std::string_view, 14> kBoundIds{
    "main1.v1", "main1.v2",         "product_xy",       "sum_norm", "sum_norm.normal",
    "main11.v1", "main11.v2",       "main11.young.v1",  "main11.young.v2",
    "main3.v1", "main3.v2",         "main4.v1",         "main4.v2", "th1"};

bool is_known_bound(std::string_view id) noexcept;

enum class Variant { v1 = 1, v2 = 2 };
enum class ConstantMode { as_stated, as_proved };
enum class Sign { plus, minus };

std::string_view to_string(ConstantMode mode) noexcept;
std::optional<ConstantMode> parse_constant_mode(std::string_view s) noexcept;

struct BoundParams {
  double r = 1.0;  // r for the off-diagonal families, p for the omega_p families
  std::optional<double> alpha;
  std::string pair_tag;
  std::optional<double> holder_p;
  std::optional<double> holder_q;
  std::optional<ConstantMode> constant_mode;
  std::optional<Sign> sign;
  bool heuristic = false;
};

/// Right-hand side of one inequality. The contract is lhs^exponent <= value,
/// where lhs is the quantity named by the bound (omega(T), omega(XY),
/// ||X +- Y*||, or omega_p of the listed operators).
struct BoundOutcome {
  std::string bound_id;
  double value = 0.0;
  double exponent = 1.0;
  std::vector<std::pair<std::string, double>> terms;
  BoundParams params;

  std::optional<double> term(std::string_view name) const;
};

/// Scalar Young refinement with p = q = 2:
/// (sqrt(ab))^m + 2^{-m} (a^{m/2} - b^{m/2})^2 <= 2^{-m} (a + b)^m.
struct YoungSides {
  double lhs;
  double rhs;
};
YoungSides refined_young(double a, double b, int m);

/// omega^r([[0,X],[Y,0]]) <= 2^{r-2} ||A||^{1/2} ||B||^{1/2} with
/// v1: A = f^{2r}(|X|) + g^{2r}(|Y*|), B = f^{2r}(|Y|) + g^{2r}(|X*|);
/// v2: A = f^{2r}(|X|) + f^{2r}(|Y*|), B = g^{2r}(|Y|) + g^{2r}(|X*|).
BoundOutcome bound_main1(const OffDiagPair& pair, const FunctionPair& fg, double r, Variant variant);

/// omega(XY)^{r/2} <= power-pair right-hand side of bound_main1 for (X, Y).
BoundOutcome bound_product_xy(const ComplexMatrix& x, const ComplexMatrix& y, double alpha, double r, Variant variant);

/// ||X +- Y*||^r <= 2^{2r-2} || |X|^r + |Y*|^r ||^{1/2} || |Y|^r + |X*|^r ||^{1/2}.
/// With normal_mode (X, Y square and normal): ||X +- Y||^r <= 2^{2r-2} || |X|^r + |Y|^r ||.
/// Throws NotNormal when normal_mode is requested for non-normal input.
BoundOutcome bound_sum_norm(const ComplexMatrix& x, const ComplexMatrix& y, double r, Sign sign, bool normal_mode);

/// omega^{2r}(T) <= C (||A^p|| / p^2 + ||B^q|| / q^2), C = 4^{r-1} (as_proved,
/// the default) or the printed 4^{r-2} (as_stated). Terms record alpha^2 and beta^2.
BoundOutcome bound_main11(const OffDiagPair& pair, const FunctionPair& fg, double r, const HolderPair& hp,
                          Variant variant, ConstantMode mode = ConstantMode::as_proved);

/// omega^r(T) <= 2^{r-2} (||A||^{p/2} / p + ||B||^{q/2} / q).
BoundOutcome bound_main11_young(const OffDiagPair& pair, const FunctionPair& fg, double r, const HolderPair& hp,
                                Variant variant);

/// Approximate minimiser of
///   zeta(x1, x2) = (<A x2, x2>^{1/2} - <B x1, x1>^{1/2})^2, |x1|^2 + |x2|^2 = 1.
/// `value` upper-bounds the infimum; the only guaranteed lower bound is 0.
struct ZetaEstimate {
  double value = 0.0;
  DenseVector x1;
  DenseVector x2;
  double guaranteed_lower = 0.0;
};

/// Multi-start projected descent on the sphere. A acts on x2, B on x1.
ZetaEstimate minimize_zeta(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t restarts, const RngStream& stream);
double zeta_value(const ComplexMatrix& a, const ComplexMatrix& b, const DenseVector& x1, const DenseVector& x2);

struct Main3Result {
  BoundOutcome guaranteed;  // subtracts the safe lower bound 0 for inf zeta
  BoundOutcome refined;     // subtracts the estimate; heuristic
  ZetaEstimate zeta;
};

Main3Result bound_main3(const OffDiagPair& pair, const FunctionPair& fg, double r, Variant variant,
                        std::size_t zeta_restarts, const RngStream& stream);

/// One summand of the contraction theorem: contractions A, B, C, D with
/// A, C: m x m, B, D: n x n, and X: m x n, Y: n x m.
struct ContractionItem {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexMatrix c;
  ComplexMatrix d;
  ComplexMatrix x;
  ComplexMatrix y;

  /// [[0, A* X D], [B* Y C, 0]]
  ComplexMatrix product() const;
};

/// omega_p^p(S_i* T_i U_i) <= 2^{p-2} sum_i ||D* f^{2p}(|X|) D + B* g^{2p}(|Y*|) B||^{1/2}
///                                          ||C* f^{2p}(|Y|) C + A* g^{2p}(|X*|) A||^{1/2}
/// (v2: f,f / g,g grouping). Throws NotContraction, DimensionMismatch.
BoundOutcome bound_main4(std::span<const ContractionItem> items, const FunctionPair& fg, double p, Variant variant);

/// omega_p^p(T_1..T_n) <= 2^{-p} sum (wA + wD + sqrt((wA - wD)^2 + (||B|| + ||C||)^2))^p
/// with wA, wD the upper endpoints of certified radii.
BoundOutcome bound_th1(std::span<const Block2x2> blocks, double p, double omega_tol);

}  // namespace numrad
