#include "soliton/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "soliton/errors.hpp"
#include "soliton/tridiagonal.hpp"

namespace soliton::hermite {

namespace {

void check_degree(int p) {
  if (p < 0) throw ValidationError("Hermite degree must be nonnegative");
  if (p > kMaxDegree) {
    throw ValidationError("Hermite degree " + std::to_string(p) + " exceeds limit " +
                          std::to_string(kMaxDegree));
  }
}

}  // namespace

double he_eval(int p, double x) {
  check_degree(p);
  double prev = 0.0, cur = 1.0;
  for (int k = 0; k < p; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> he_all(int p, double x) {
  check_degree(p);
  std::vector<double> h(static_cast<std::size_t>(p) + 1);
  h[0] = 1.0;
  if (p >= 1) h[1] = x;
  for (int k = 1; k < p; ++k) h[k + 1] = x * h[k] - k * h[k - 1];
  return h;
}

void GaussianEigenfunction::validate() const {
  check_degree(degree);
  if (!std::isfinite(rho)) throw ValidationError("rho must be finite");
  if (mode == Mode::shrinker && !(rho > 0.0)) {
    throw ValidationError("shrinker eigenfunction needs rho > 0");
  }
  if (mode == Mode::expander && !(rho < 0.0)) {
    throw ValidationError("expander eigenfunction needs rho < 0");
  }
}

double GaussianEigenfunction::eigenvalue() const {
  return mode == Mode::shrinker ? rho * degree : -rho * (1.0 + degree);
}

Jet eigenfunction_jet(const GaussianEigenfunction& e, double y) {
  e.validate();
  const double a = std::sqrt(std::abs(e.rho));
  const int p = e.degree;
  const auto h = he_all(p, a * y);
  // Polynomial factor P(y) = He_p(a y) and its derivatives.
  const double poly = h[p];
  const double poly1 = p >= 1 ? a * p * h[p - 1] : 0.0;
  const double poly2 = p >= 2 ? a * a * p * (p - 1) * h[p - 2] : 0.0;
  if (e.mode == Mode::shrinker) return {poly, poly1, poly2};

  // Gaussian factor g(y) = exp((rho/2) y^2): g' = rho y g, g'' = (rho + rho^2 y^2) g.
  const double g = std::exp(0.5 * e.rho * y * y);
  const double g1 = e.rho * y * g;
  const double g2 = (e.rho + e.rho * e.rho * y * y) * g;
  return {g * poly, g1 * poly + g * poly1, g2 * poly + 2.0 * g1 * poly1 + g * poly2};
}

double eigenfunction_eval(const GaussianEigenfunction& e, double y) {
  e.validate();
  const double a = std::sqrt(std::abs(e.rho));
  const double poly = he_eval(e.degree, a * y);
  if (e.mode == Mode::shrinker) return poly;
  return std::exp(0.5 * e.rho * y * y) * poly;
}

std::vector<double> UniformGrid::nodes() const {
  if (!(half_width > 0.0) || points < 2) throw ValidationError("grid needs R > 0 and >= 2 points");
  std::vector<double> y(points);
  const double h = 2.0 * half_width / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) y[i] = -half_width + h * static_cast<double>(i);
  return y;
}

double residual_half_width(int p_max, double rho) {
  if (rho == 0.0) throw ValidationError("residual grid needs rho != 0");
  return std::max(8.0, 2.0 * std::sqrt((2.0 * p_max + 1.0) / std::abs(rho)));
}

double drift_residual(const GaussianEigenfunction& e, const UniformGrid& grid) {
  e.validate();
  const double nu = e.eigenvalue();
  double worst = 0.0, scale = 0.0;
  for (double y : grid.nodes()) {
    const Jet u = eigenfunction_jet(e, y);
    const double drift = u.d2 - e.rho * y * u.d1;  // f' = rho y
    worst = std::max(worst, std::abs(drift + nu * u.value));
    scale = std::max(scale, std::abs(u.value));
  }
  return scale > 0.0 ? worst / scale : worst;
}

Quadrature gauss_hermite(std::size_t n) {
  if (n == 0) throw ValidationError("quadrature needs at least one node");
  SymTridiagonal jacobi;
  jacobi.diag.assign(n, 0.0);
  jacobi.off.resize(n - 1);
  for (std::size_t j = 1; j < n; ++j) jacobi.off[j - 1] = std::sqrt(static_cast<double>(j));

  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const double mass = std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = bisect_eigenvalue(jacobi, i);
    // Eigenvector of the Jacobi matrix at x is (q_0(x), ..., q_{n-1}(x)) with q_j the
    // orthonormal Hermite polynomials; its normalized first component squared is 1 / sum q_j^2.
    double qm1 = 0.0, q0 = 1.0, sum = 1.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double sj = std::sqrt(static_cast<double>(j));
      const double q1 = (x * q0 - sj * qm1) / std::sqrt(static_cast<double>(j + 1));
      sum += q1 * q1;
      qm1 = q0;
      q0 = q1;
    }
    q.nodes[i] = x;
    q.weights[i] = mass / sum;
  }
  return q;
}

double weighted_inner_product(const GaussianEigenfunction& e1, const GaussianEigenfunction& e2) {
  e1.validate();
  e2.validate();
  if (e1.mode != e2.mode || e1.rho != e2.rho) {
    throw ValidationError("inner product needs eigenfunctions of the same mode and rho");
  }
  // Substituting x = sqrt(|rho|) y turns both modes into
  //   |rho|^{-1/2} * integral He_p1(x) He_p2(x) exp(-x^2/2) dx.
  const auto rule = gauss_hermite(static_cast<std::size_t>(e1.degree + e2.degree + 2));
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    sum += rule.weights[i] * he_eval(e1.degree, x) * he_eval(e2.degree, x);
  }
  return sum / std::sqrt(std::abs(e1.rho));
}

}  // namespace soliton::hermite
