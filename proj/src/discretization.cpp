#include "soliton/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "soliton/errors.hpp"

namespace soliton::numeric {

namespace {

// Value with first and second derivative, propagated through - and *.
struct Jet2 {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
};

Jet2 operator-(Jet2 a, Jet2 b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
Jet2 operator*(double s, Jet2 a) { return {s * a.v, s * a.d1, s * a.d2}; }
Jet2 operator*(Jet2 a, Jet2 b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
Jet2 exp(Jet2 a) {
  const double e = std::exp(a.v);
  return {e, e * a.d1, e * (a.d2 + a.d1 * a.d1)};
}

Jet2 variable(double y) { return {y, 1.0, 0.0}; }
Jet2 constant(double c) { return {c, 0.0, 0.0}; }

Jet2 quadratic(QuadraticProfile p, double y) {
  const Jet2 x = variable(y);
  return (0.5 * p.a) * (x * x);
}

Jet2 test_function(TestFunction t, double y) {
  const Jet2 x = variable(y);
  Jet2 power = constant(1.0);
  for (int i = 0; i < t.degree; ++i) power = power * x;
  return power * exp((-t.decay) * (x * x));
}

// Delta_G u = u'' - G' u' in one dimension.
double drift_laplacian(Jet2 g, Jet2 u) { return u.d2 - g.d1 * u.d1; }

void validate_assembly(double rho, int n, int k, double half_width, std::size_t interior) {
  if (!std::isfinite(rho)) throw ValidationError("assemble: rho must be finite");
  if (interior < 64) throw ValidationError("assemble: need at least 64 interior points");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ValidationError("assemble: radius must be positive");
  }
  if (k < 0 || n - k != 1) {
    throw ValidationError("assemble: the 1-D fiber needs n - k = 1 (got n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ")");
  }
}

}  // namespace

const char* to_string(Form form) noexcept {
  switch (form) {
    case Form::drift: return "drift";
    case Form::schrodinger: return "schrodinger";
    case Form::conjugate: return "conjugate";
  }
  return "unknown";
}

double Grid::node(std::size_t i) const noexcept {
  return -half_width + spacing() * static_cast<double>(i + 1);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> y(interior);
  for (std::size_t i = 0; i < interior; ++i) y[i] = node(i);
  return y;
}

std::vector<double> DiscretizedOperator::apply(const std::vector<double>& u) const {
  const std::size_t n_pts = diagonal.size();
  std::vector<double> out(n_pts);
  for (std::size_t i = 0; i < n_pts; ++i) {
    double s = diagonal[i] * u[i];
    if (i > 0) s += lower[i] * u[i - 1];
    if (i + 1 < n_pts) s += upper[i] * u[i + 1];
    out[i] = s;
  }
  return out;
}

SymTridiagonal DiscretizedOperator::symmetrized() const {
  SymTridiagonal t;
  t.diag = diagonal;
  const std::size_t n_pts = diagonal.size();
  t.off.resize(n_pts > 0 ? n_pts - 1 : 0);
  for (std::size_t i = 0; i + 1 < n_pts; ++i) {
    const double product = upper[i] * lower[i + 1];
    if (!(product > 0.0)) throw ValidationError("operator is not symmetrizable by a diagonal similarity");
    t.off[i] = std::sqrt(product);
  }
  return t;
}

DiscretizedOperator assemble(Form form, double rho, int n, int k, double half_width,
                             std::size_t interior) {
  validate_assembly(rho, n, k, half_width, interior);
  DiscretizedOperator op;
  op.form = form;
  op.rho = rho;
  op.n = n;
  op.k = k;
  op.grid = Grid{half_width, interior};

  const double h = op.grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  auto f = [rho](double y) { return 0.5 * rho * y * y; };

  op.diagonal.resize(interior);
  op.lower.resize(interior);
  op.upper.resize(interior);
  op.weight.resize(interior);
  op.potential.resize(interior);

  for (std::size_t i = 0; i < interior; ++i) {
    const double y = op.grid.node(i);
    const double fi = f(y), fl = f(y - h), fr = f(y + h);

    // Edge weights of the drift stencil; every form shares this diagonal.
    const double to_left = std::exp(0.5 * (fi - fl)) * inv_h2;
    const double to_right = std::exp(0.5 * (fi - fr)) * inv_h2;
    op.diagonal[i] = -(to_left + to_right);

    switch (form) {
      case Form::drift:
        op.lower[i] = to_left;
        op.upper[i] = to_right;
        op.weight[i] = std::exp(-fi) * h;
        break;
      case Form::schrodinger:
        op.lower[i] = inv_h2;
        op.upper[i] = inv_h2;
        op.weight[i] = h;
        break;
      case Form::conjugate:
        op.lower[i] = std::exp(0.5 * (fl - fi)) * inv_h2;
        op.upper[i] = std::exp(0.5 * (fr - fi)) * inv_h2;
        op.weight[i] = std::exp(fi) * h;
        break;
    }
    op.potential[i] = op.lower[i] + op.diagonal[i] + op.upper[i];
  }
  return op;
}

EigenResult eigen_smallest(const DiscretizedOperator& op, std::size_t count) {
  if (count == 0 || count > op.diagonal.size() / 4) {
    throw ValidationError("eigen_smallest: count must be between 1 and N/4");
  }
  SymTridiagonal t = op.symmetrized();
  for (double& d : t.diag) d = -d;
  for (double& e : t.off) e = -e;

  EigenResult out;
  out.grid = op.grid;
  for (const auto& pair : smallest_eigenpairs(t, count, 1e-8)) {
    out.eigenvalues.push_back(pair.bisection_value);
    out.residuals.push_back(pair.residual);
    out.rayleigh_quotients.push_back(pair.rayleigh_quotient);
    out.certified.push_back(pair.converged);
  }
  return out;
}

EquivalenceReport equivalence_check(double rho, int n, int k, double half_width,
                                    std::size_t interior, std::size_t count) {
  EquivalenceReport r;
  r.drift = eigen_smallest(assemble(Form::drift, rho, n, k, half_width, interior), count).eigenvalues;
  r.schrodinger =
      eigen_smallest(assemble(Form::schrodinger, rho, n, k, half_width, interior), count).eigenvalues;
  r.conjugate =
      eigen_smallest(assemble(Form::conjugate, rho, n, k, half_width, interior), count).eigenvalues;
  auto dev = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); };
  for (std::size_t i = 0; i < count; ++i) {
    r.max_deviation = std::max({r.max_deviation, dev(r.drift[i], r.schrodinger[i]),
                                dev(r.drift[i], r.conjugate[i]), dev(r.schrodinger[i], r.conjugate[i])});
  }
  r.passed = r.max_deviation <= kEquivalenceTolerance;
  return r;
}

ConvergenceReport convergence_study(double rho, int p_max, const std::vector<std::size_t>& grids,
                                    double half_width) {
  if (rho == 0.0 || !std::isfinite(rho)) throw ValidationError("convergence_study: rho must be nonzero");
  if (p_max < 0) throw ValidationError("convergence_study: p_max must be nonnegative");
  if (grids.size() < 2) throw ValidationError("convergence_study: need at least two grids");
  for (std::size_t i = 0; i < grids.size(); ++i) {
    if (grids[i] < 64 || (i > 0 && grids[i] <= grids[i - 1])) {
      throw ValidationError("convergence_study: grids must be strictly increasing and >= 64");
    }
  }

  ConvergenceReport report;
  report.rho = rho;
  report.grids = grids;
  report.half_width = half_width > 0.0
                          ? half_width
                          : std::max(8.0, 2.0 * std::sqrt((2.0 * p_max + 1.0) / std::abs(rho)));

  const std::size_t count = static_cast<std::size_t>(p_max) + 1;
  std::vector<std::vector<double>> computed;
  for (std::size_t n_pts : grids) {
    computed.push_back(
        eigen_smallest(assemble(Form::drift, rho, 1, 0, report.half_width, n_pts), count).eigenvalues);
  }

  report.passed = true;
  for (int p = 0; p <= p_max; ++p) {
    ConvergenceRow row;
    row.degree = p;
    row.target = rho > 0.0 ? rho * p : -rho * (1.0 + p);
    for (const auto& values : computed) row.errors.push_back(values[p] - row.target);
    for (std::size_t g = 0; g + 1 < grids.size(); ++g) {
      const double coarse = std::abs(row.errors[g]), fine = std::abs(row.errors[g + 1]);
      row.ratios.push_back(coarse < kNoiseFloor || fine == 0.0
                               ? std::numeric_limits<double>::quiet_NaN()
                               : coarse / fine);
    }
    const double last_coarse = std::abs(row.errors[grids.size() - 2]);
    if (last_coarse < kNoiseFloor) {
      row.skipped = true;
      row.finest_ratio_ok = true;
    } else {
      const double ratio = row.ratios.back();
      row.finest_ratio_ok = ratio >= kRatioLow && ratio <= kRatioHigh;
    }
    report.passed = report.passed && row.finest_ratio_ok;
    report.rows.push_back(std::move(row));
  }
  return report;
}

ConjugationReport conjugation_residual(QuadraticProfile F, QuadraticProfile H,
                                       const std::vector<TestFunction>& tests, double half_width,
                                       std::size_t points) {
  if (points < 2 || !(half_width > 0.0)) throw ValidationError("conjugation_residual: bad grid");
  ConjugationReport report;
  for (const TestFunction& t : tests) {
    if (t.degree < 0 || t.degree > 6 || !(t.decay > 0.0)) {
      throw ValidationError("conjugation_residual: test functions are y^d exp(-c y^2), d <= 6, c > 0");
    }
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
      const double y = -half_width + 2.0 * half_width * static_cast<double>(i) / static_cast<double>(points - 1);
      const Jet2 u = test_function(t, y);
      const Jet2 fj = quadratic(F, y);
      const Jet2 hj = quadratic(H, y);

      // Left side: conjugate the drift Laplacian by e^{H}.
      const Jet2 w = exp(hj) * u;
      const double lhs = std::exp(-hj.v) * drift_laplacian(fj, w);

      // Right side: Delta_{F-2H} u + (Delta H + <grad(H - F), grad H>) u.
      const Jet2 g = fj - 2.0 * hj;
      const double first = drift_laplacian(g, u);
      const double coefficient = hj.d2 + (hj.d1 - fj.d1) * hj.d1;
      const double rhs = first + coefficient * u.v;

      worst = std::max(worst, std::abs(lhs - rhs));
      scale = std::max({scale, std::abs(u.d2), std::abs(g.d1 * u.d1), std::abs(coefficient * u.v),
                        std::abs(lhs)});
      ++report.evaluations;
    }
    report.max_residual = std::max(report.max_residual, scale > 0.0 ? worst / scale : worst);
  }
  return report;
}

}  // namespace soliton::numeric
