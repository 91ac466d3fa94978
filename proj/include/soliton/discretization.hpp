#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "soliton/tridiagonal.hpp"

namespace soliton::numeric {

/// The three unitarily equivalent realizations of the drift Laplacian on the
/// Gaussian fiber f(y) = (rho/2) y^2:
///   drift         Delta_f                  in L^2(e^{-f})
///   schrodinger   Delta + V                in L^2
///   conjugate     Delta_{-f} + n rho - S   in L^2(e^{+f})
enum class Form { drift, schrodinger, conjugate };
const char* to_string(Form form) noexcept;

/// Interior nodes y_i = -R + i h, i = 1..N, h = 2R/(N+1); zero Dirichlet data at +-R.
struct Grid {
  double half_width = 12.0;
  std::size_t interior = 2048;

  double spacing() const noexcept { return 2.0 * half_width / static_cast<double>(interior + 1); }
  double node(std::size_t i) const noexcept;  ///< 0-based interior index
  std::vector<double> nodes() const;
};

/// Tridiagonal operator L as assembled (not necessarily symmetric).
/// Row i reads (L u)_i = lower[i] u_{i-1} + diagonal[i] u_i + upper[i] u_{i+1};
/// lower[0] and upper[N-1] couple to the Dirichlet boundary and are not used.
struct DiscretizedOperator {
  Form form = Form::drift;
  double rho = 0.0;
  int n = 1;
  int k = 0;
  Grid grid;
  std::vector<double> diagonal;
  std::vector<double> lower;
  std::vector<double> upper;
  /// Measure weights of the space the operator is self-adjoint in:
  /// e^{-f(y_i)} h (drift), h (schrodinger), e^{f(y_i)} h (conjugate).
  std::vector<double> weight;
  /// Zeroth-order coefficient (L 1)_i with the boundary neighbours included:
  /// 0 for drift, the discrete V for schrodinger, the discrete n rho - S for conjugate.
  std::vector<double> potential;

  std::vector<double> apply(const std::vector<double>& u) const;

  /// Weighted symmetric part: off_i = sqrt(upper_i lower_{i+1}); equals the
  /// similarity transform by diag(sqrt(weight)).
  SymTridiagonal symmetrized() const;
};

/// Assembles one form on the three-point stencil. The drift form uses edge weights
/// e^{(f_i - f_{i+1})/2} / h^2, which agree with the second difference plus a central
/// first derivative to O(h^2) and keep constants in the kernel. The Schrodinger form is
/// then the plain second difference plus a diagonal potential, and the three forms are
/// exact conjugates by diag(e^{-f/2}) and diag(e^{-f}). Requires n - k = 1.
DiscretizedOperator assemble(Form form, double rho, int n, int k, double half_width,
                             std::size_t interior);

struct EigenResult {
  std::vector<double> eigenvalues;  ///< of -(operator), ascending
  std::vector<double> residuals;
  std::vector<double> rayleigh_quotients;
  std::vector<bool> certified;
  Grid grid;
};

/// `count` smallest eigenvalues of -(operator): Sturm bisection, then inverse
/// iteration to certify residuals.
EigenResult eigen_smallest(const DiscretizedOperator& op, std::size_t count);

struct EquivalenceReport {
  std::vector<double> drift;
  std::vector<double> schrodinger;
  std::vector<double> conjugate;
  double max_deviation = 0.0;  ///< max pairwise |a - b| / max(1, |a|)
  bool passed = false;
};

inline constexpr double kEquivalenceTolerance = 1e-10;

EquivalenceReport equivalence_check(double rho, int n, int k, double half_width,
                                    std::size_t interior, std::size_t count);

struct ConvergenceRow {
  int degree = 0;
  double target = 0.0;
  std::vector<double> errors;  ///< one per grid, signed (computed - target)
  std::vector<double> ratios;  ///< |e(h)| / |e(h/2)| for consecutive grids; NaN when skipped
  bool finest_ratio_ok = false;
  bool skipped = false;        ///< error below the noise floor on the finest pair
};

struct ConvergenceReport {
  double rho = 0.0;
  double half_width = 0.0;
  std::vector<std::size_t> grids;
  std::vector<ConvergenceRow> rows;
  bool passed = false;
};

inline constexpr double kRatioLow = 3.6;
inline constexpr double kRatioHigh = 4.4;
inline constexpr double kNoiseFloor = 1e-12;

/// Errors against lambda_p = rho p (shrinker) or -rho (1 + p) (expander) for p <= p_max.
/// half_width <= 0 selects max(8, 2 sqrt((2 p_max + 1)/|rho|)).
ConvergenceReport convergence_study(double rho, int p_max, const std::vector<std::size_t>& grids,
                                    double half_width = 0.0);

/// 1-D quadratic profile F(y) = a y^2 / 2.
struct QuadraticProfile {
  double a = 0.0;
};

/// Test function y^d exp(-c y^2).
struct TestFunction {
  int degree = 0;
  double decay = 0.5;
};

struct ConjugationReport {
  double max_residual = 0.0;  ///< relative to the magnitude of the terms involved
  std::size_t evaluations = 0;
};

/// Checks e^{-H} Delta_F (e^{H} u) = Delta_{F-2H} u + (Delta H + <grad(H - F), grad H>) u
/// pointwise, both sides by forward-mode second derivatives.
ConjugationReport conjugation_residual(QuadraticProfile F, QuadraticProfile H,
                                       const std::vector<TestFunction>& tests, double half_width,
                                       std::size_t points);

}  // namespace soliton::numeric
