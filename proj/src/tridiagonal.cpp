#include "soliton/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "soliton/errors.hpp"

namespace soliton {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Solves (T - shift I) x = b in place with partial pivoting (LAPACK gttrf/gttrs layout).
// Exactly singular pivots are nudged so inverse iteration at an eigenvalue still works.
void shifted_solve(const SymTridiagonal& t, double shift, std::vector<double>& b) {
  const std::size_t n = t.size();
  std::vector<double> d(n), du(n > 1 ? n - 1 : 0), dl(n > 1 ? n - 1 : 0), du2(n > 2 ? n - 2 : 0);
  std::vector<char> swapped(n, 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) dl[i] = du[i] = t.off[i];

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(d[i]));
  for (double e : t.off) scale = std::max(scale, std::abs(e));
  const double tiny = kEps * std::max(scale, 1.0);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double l = dl[i] / d[i];
      dl[i] = l;
      d[i + 1] -= l * du[i];
    } else {
      const double l = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = l;
      const double tmp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = tmp - l * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -l * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (n > 0 && d[n - 1] == 0.0) d[n - 1] = tiny;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (swapped[i]) {
      std::swap(b[i], b[i + 1]);
      b[i + 1] -= dl[i] * b[i];
    } else {
      b[i + 1] -= dl[i] * b[i];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    if (k + 1 < n) s -= du[k] * b[k + 1];
    if (k + 2 < n) s -= du2[k] * b[k + 2];
    b[k] = s / d[k];
  }
}

}  // namespace

std::vector<double> SymTridiagonal::apply(std::span<const double> x) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += off[i - 1] * x[i - 1];
    if (i + 1 < n) s += off[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

std::pair<double, double> SymTridiagonal::gershgorin() const {
  const std::size_t n = size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < n) r += std::abs(off[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  return {lo, hi};
}

std::size_t sturm_count(const SymTridiagonal& t, double x) {
  const std::size_t n = t.size();
  std::size_t negatives = 0;
  double q = 1.0;
  const double pivmin = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < n; ++i) {
    const double e2 = i > 0 ? t.off[i - 1] * t.off[i - 1] : 0.0;
    q = t.diag[i] - x - (i > 0 ? e2 / q : 0.0);
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++negatives;
  }
  return negatives;
}

double bisect_eigenvalue(const SymTridiagonal& t, std::size_t index) {
  if (index >= t.size()) throw ValidationError("eigenvalue index out of range");
  auto [lo, hi] = t.gershgorin();
  const double pad = kEps * std::max({1.0, std::abs(lo), std::abs(hi)}) * 4.0;
  lo -= pad;
  hi += pad;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

EigenPair inverse_iteration(const SymTridiagonal& t, double eigenvalue, double tolerance,
                            int max_iterations) {
  const std::size_t n = t.size();
  EigenPair out;
  out.bisection_value = eigenvalue;
  // Fixed, non-symmetric start vector so no eigenvector is orthogonal to it by parity.
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + 0.37 * static_cast<double>(i));
  double nv = norm2(v);
  for (double& x : v) x /= nv;

  for (int it = 1; it <= max_iterations; ++it) {
    shifted_solve(t, eigenvalue, v);
    nv = norm2(v);
    for (double& x : v) x /= nv;
    const auto tv = t.apply(v);
    double rq = 0.0;
    for (std::size_t i = 0; i < n; ++i) rq += v[i] * tv[i];
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = tv[i] - eigenvalue * v[i];
      r2 += r * r;
    }
    out.iterations = it;
    out.rayleigh_quotient = rq;
    out.residual = std::sqrt(r2);
    if (out.residual <= tolerance) {
      out.converged = true;
      break;
    }
  }
  out.vector = std::move(v);
  return out;
}

std::vector<EigenPair> smallest_eigenpairs(const SymTridiagonal& t, std::size_t count,
                                           double tolerance) {
  if (count > t.size()) throw ValidationError("requested more eigenpairs than the matrix order");
  std::vector<EigenPair> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    pairs.push_back(inverse_iteration(t, bisect_eigenvalue(t, i), tolerance));
  }
  return pairs;
}

}  // namespace soliton
