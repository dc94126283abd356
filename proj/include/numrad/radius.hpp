#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "numrad/linalg.hpp"
#include "numrad/rng.hpp"

namespace numrad {

/// Enclosure lo <= omega(M) <= hi with hi - lo <= tol.
///
/// `lo` is attained: |<M w, w>| = lo for the unit vector `witness`, which is
/// the top eigenvector of Re(e^{i theta} M) at theta = `witness_theta`.
struct CertifiedRadius {
  double lo = 0.0;
  double hi = 0.0;
  double witness_theta = 0.0;
  double tol = 0.0;
  DenseVector witness;
  std::size_t evaluations = 0;

  bool overlaps(const CertifiedRadius& other, double widen) const {
    return lo - widen <= other.hi && other.lo - widen <= hi;
  }
};

inline constexpr std::size_t kDefaultEigBudget = 2'000'000;

/// Certified numerical radius.
///
/// h(theta) = lambda_max(Re(e^{i theta} M)) is the support function of the
/// numerical range W(M) and omega(M) = max h. Every sampled angle gives a
/// boundary point of W (lower bound) and a supporting line; between two
/// sampled angles the boundary arc lies in the triangle formed by the two
/// boundary points and the intersection of their supporting lines, and h is
/// ||M||-Lipschitz. The smaller of the two cell bounds is refined
/// best-first until the global gap is within `tol`.
///
/// Throws NotSquare, OutOfRange (tol below 1e-12 max(1, ||M||)) and
/// ToleranceUnreachable when `budget` eigendecompositions do not suffice.
CertifiedRadius omega(const ComplexMatrix& m, double tol, std::size_t budget = kDefaultEigBudget);

/// Radii of X and of [[0, X], [X, 0]]; they must agree (rotation lemma).
std::pair<CertifiedRadius, CertifiedRadius> omega_offdiag_symmetric_check(const ComplexMatrix& x, double tol);

struct OmegaPEstimate {
  double value = 0.0;  // lower bound on omega_p
  DenseVector witness;
  double p = 1.0;
  std::size_t restarts_used = 0;
  bool converged = false;
};

struct OmegaPOptions {
  std::size_t restarts = 0;  // 0 -> 8 * side
  double tol = 0.0;          // 0 -> 1e-8 max(1, max ||T_i||)
  std::size_t max_iterations = 2000;
};

/// sum_i |<T_i x, x>|^p at x (x need not be normalised).
double omega_p_objective(std::span<const ComplexMatrix> ops, double p, const DenseVector& x);

/// Euclidean gradient of omega_p_objective with respect to (Re x, Im x),
/// packed back as a complex vector: d F = Re(<grad, dx>).
DenseVector omega_p_gradient(std::span<const ComplexMatrix> ops, double p, const DenseVector& x);

/// Estimates omega_p(T_1..T_n) = sup_{|x|=1} (sum |<T_i x, x>|^p)^{1/p} from below.
///
/// Each restart starts from a Gaussian vector drawn from derive(stream, k) and
/// ascends by linearising the convex map z -> sum |z_i|^p at the current
/// iterate: the next iterate is the top eigenvector of
/// Herm(sum_i |z_i|^{p-1} conj(sign z_i) T_i), which never decreases F.
/// Result selection is a deterministic max over restarts.
/// Throws EmptyList, NotSquare, DimensionMismatch, OutOfRange (p < 1).
OmegaPEstimate omega_p(std::span<const ComplexMatrix> ops, double p, const RngStream& stream,
                       const OmegaPOptions& options = {});

/// Grid search over the unit sphere of C^d (d <= 3, global phase fixed) with
/// `grid_density` points per angular coordinate, followed by a compass search
/// polish at the best grid point. A lower-bound oracle for omega_p.
/// Throws DimensionTooLarge for d > 3.
double omega_p_bruteforce(std::span<const ComplexMatrix> ops, double p, std::size_t grid_density);

}  // namespace numrad
