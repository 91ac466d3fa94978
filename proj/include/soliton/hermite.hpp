#pragma once

#include <cstddef>
#include <vector>

namespace soliton::hermite {

inline constexpr int kMaxDegree = 60;

/// Probabilists' Hermite polynomial He_p(x) by forward recurrence.
double he_eval(int p, double x);

/// He_0(x), ..., He_p(x).
std::vector<double> he_all(int p, double x);

enum class Mode { shrinker, expander };

/// Eigenfunction of the drift Laplacian of the 1-D Gaussian soliton
/// f(y) = (rho/2) y^2.
///
///   shrinker (rho > 0): u(y) = He_p(sqrt(rho) y),                   nu = rho p
///   expander (rho < 0): u(y) = exp((rho/2) y^2) He_p(sqrt(-rho) y), nu = -rho (1 + p)
struct GaussianEigenfunction {
  Mode mode = Mode::shrinker;
  double rho = 1.0;
  int degree = 0;

  /// Throws ValidationError if the sign of rho does not match the mode.
  void validate() const;
  double eigenvalue() const;
};

double eigenfunction_eval(const GaussianEigenfunction& e, double y);

/// u, u', u'' from the Hermite derivative identity He_p' = p He_{p-1}.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};
Jet eigenfunction_jet(const GaussianEigenfunction& e, double y);

struct UniformGrid {
  double half_width = 8.0;
  std::size_t points = 2001;

  std::vector<double> nodes() const;
};

/// R = max(8, 2 sqrt((2 p_max + 1) / |rho|)).
double residual_half_width(int p_max, double rho);

/// max_grid |Delta_f u + nu u| / max_grid |u| with Delta_f u = u'' - f' u'.
double drift_residual(const GaussianEigenfunction& e, const UniformGrid& grid);

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss rule for the weight exp(-x^2/2) on the real line. Nodes are the
/// eigenvalues of the Jacobi matrix (Sturm bisection); weights are the squared
/// first components of the normalized eigenvectors times sqrt(2 pi).
Quadrature gauss_hermite(std::size_t n);

/// Integral of u1 u2 exp(-f) over the line; both eigenfunctions must share mode and rho.
double weighted_inner_product(const GaussianEigenfunction& e1, const GaussianEigenfunction& e2);

}  // namespace soliton::hermite
