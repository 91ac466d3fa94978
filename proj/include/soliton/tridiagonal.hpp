#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace soliton {

/// Real symmetric tridiagonal matrix: `diag` has N entries, `off` has N-1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }

  /// y = T x
  std::vector<double> apply(std::span<const double> x) const;

  /// Gershgorin interval containing every eigenvalue.
  std::pair<double, double> gershgorin() const;
};

/// Number of eigenvalues strictly below `x` (Sturm sequence / LDL^T inertia).
std::size_t sturm_count(const SymTridiagonal& t, double x);

/// The `index`-th smallest eigenvalue (0-based) by bisection on the Sturm count.
/// Bracketing is fixed so results are bit-reproducible.
double bisect_eigenvalue(const SymTridiagonal& t, std::size_t index);

struct EigenPair {
  double bisection_value = 0.0;
  double rayleigh_quotient = 0.0;
  double residual = 0.0;  ///< ||(T - lambda I) v|| with ||v|| = 1
  bool converged = false;
  int iterations = 0;
  std::vector<double> vector;  ///< unit 2-norm
};

/// Inverse iteration at a bisection eigenvalue. Stops once the residual is below
/// `tolerance` (relative to ||v||) or after `max_iterations` steps.
EigenPair inverse_iteration(const SymTridiagonal& t, double eigenvalue, double tolerance = 1e-8,
                            int max_iterations = 100);

/// The `count` smallest eigenpairs, ascending.
std::vector<EigenPair> smallest_eigenpairs(const SymTridiagonal& t, std::size_t count,
                                           double tolerance = 1e-8);

}  // namespace soliton
