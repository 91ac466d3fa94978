#include "soliton/rigid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "soliton/errors.hpp"

namespace soliton {

namespace {

// Points y in R^m with |y| <= radius; directions cycle deterministically.
std::vector<std::vector<double>> sample_points(int m, double radius, std::size_t samples) {
  std::vector<std::vector<double>> pts;
  pts.reserve(samples);
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    const double r = samples > 1 ? radius * static_cast<double>(s) / static_cast<double>(samples - 1) : 0.0;
    std::vector<double> y(static_cast<std::size_t>(m));
    double norm = 0.0;
    for (int i = 0; i < m; ++i) {
      y[i] = std::cos(2.0 * std::numbers::pi * golden * static_cast<double>((s + 1) * (i + 1)));
      norm += y[i] * y[i];
    }
    norm = std::sqrt(norm);
    for (double& c : y) c = norm > 0.0 ? r * c / norm : 0.0;
    pts.push_back(std::move(y));
  }
  return pts;
}

}  // namespace

SolitonModel::SolitonModel(FactorSpectrum factor, int n, double rho)
    : factor_(std::move(factor)), n_(n), rho_(rho) {
  if (!std::isfinite(rho_) || rho_ == 0.0) {
    throw ValidationError("soliton model needs rho != 0 (steady solitons are not treated)");
  }
  factor_.validate();
  if (!approx_equal(factor_.rho, rho_)) {
    throw ValidationError("factor Einstein constant does not match the soliton constant rho");
  }
  if (n_ <= factor_.dim) throw ValidationError("soliton model needs n > k (at least one Euclidean direction)");
}

double SolitonModel::certified_cutoff() const noexcept {
  return factor_.complete_below + (is_expander() ? std::abs(rho_) * m() : 0.0);
}

std::uint64_t degree_block_multiplicity(std::uint32_t degree, int m) {
  if (m < 1) throw ValidationError("Gaussian dimension must be at least 1");
  // C(P + m - 1, m - 1) via the multiplicative formula; every partial product is an integer.
  boost::multiprecision::cpp_int out = 1;
  const long long r = m - 1;
  const long long top = static_cast<long long>(degree) + r;
  for (long long i = 1; i <= r; ++i) {
    out *= top - r + i;
    out /= i;
  }
  if (out > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("multiplicity overflow");
  return out.convert_to<std::uint64_t>();
}

EigenfunctionDescriptor EigenfunctionDescriptor::representative(std::size_t j, std::uint32_t degree,
                                                                int m) {
  EigenfunctionDescriptor d;
  d.factor_index = j;
  d.total_degree = degree;
  d.multi_index.assign(static_cast<std::size_t>(m), 0);
  if (m > 0) d.multi_index[0] = degree;
  return d;
}

std::string EigenfunctionDescriptor::describe() const {
  std::ostringstream os;
  os << "v" << factor_index << " x H(";
  for (std::size_t i = 0; i < multi_index.size(); ++i) os << (i ? "," : "") << multi_index[i];
  os << ")";
  return os.str();
}

DiscreteSpectrum rigid_spectrum(const SolitonModel& model, double cutoff) {
  if (!std::isfinite(cutoff)) throw ValidationError("rigid_spectrum: cutoff must be finite");
  const double certified = model.certified_cutoff();
  if (cutoff > certified) {
    std::ostringstream os;
    os.precision(15);
    os << "incomplete spectrum: cutoff " << cutoff << " exceeds certified cutoff " << certified;
    throw IncompleteSpectrumError(os.str(), certified);
  }

  const double unit = std::abs(model.rho());
  const int m = model.m();
  std::vector<SpectralLine> lines;
  const auto& factor = model.factor().lines;
  for (std::size_t j = 0; j < factor.size(); ++j) {
    for (std::uint32_t degree = 0;; ++degree) {
      // Shrinker: mu_j + rho P. Expander: mu_j + |rho| (m + P).
      const Rational shift = model.is_shrinker() ? Rational(degree) : Rational(m + static_cast<long long>(degree));
      const ScalarValue value = factor[j].value + ScalarValue::exact(shift, unit);
      if (!(value.value() < cutoff)) break;
      std::uint64_t mult = 0;
      if (__builtin_mul_overflow(factor[j].multiplicity, degree_block_multiplicity(degree, m), &mult)) {
        throw std::overflow_error("multiplicity overflow");
      }
      lines.push_back(SpectralLine{value, mult, {Provenance{j, degree, mult}}});
    }
  }
  return merge_lines(std::move(lines), cutoff);
}

const char* to_string(SecondCase c) noexcept {
  switch (c) {
    case SecondCase::gaussian: return "gaussian";
    case SecondCase::mixed: return "mixed";
    case SecondCase::factor: return "factor";
  }
  return "unknown";
}

SecondEigenvalue second_eigenvalue_case(const SolitonModel& model) {
  if (!model.is_expander()) {
    throw ValidationError("second_eigenvalue_case applies to expanders (rho < 0)");
  }
  const auto& lines = model.factor().lines;
  if (lines.size() < 2) throw ValidationError("factor spectrum has no certified second eigenvalue");

  const double unit = std::abs(model.rho());
  const int m = model.m();
  const FactorLine& second = lines[1];
  const ScalarValue threshold = ScalarValue::exact(1, unit);  // -rho
  const ScalarValue gaussian_value = ScalarValue::exact(m + 1, unit);

  if (second.value.equals(threshold)) {
    return {gaussian_value, second.multiplicity + static_cast<std::uint64_t>(m), SecondCase::mixed};
  }
  if (second.value.value() > threshold.value()) {
    return {gaussian_value, static_cast<std::uint64_t>(m), SecondCase::gaussian};
  }
  return {second.value + ScalarValue::exact(m, unit), second.multiplicity, SecondCase::factor};
}

NormalizationReport normalization_constant(const SolitonModel& model, double radius,
                                           std::size_t samples) {
  const double rho = model.rho();
  const double scalar = model.k() * rho;  // S of N^k x R^m
  NormalizationReport report;
  report.constant = scalar;  // value at y = 0, where f = 0 and grad f = 0
  report.samples = samples;
  for (const auto& y : sample_points(model.m(), radius, samples)) {
    double grad2 = 0.0, f = 0.0;
    for (double c : y) {
      grad2 += (rho * c) * (rho * c);
      f += 0.5 * rho * c * c;
    }
    const double lhs = scalar + grad2 - 2.0 * rho * f;
    const double scale = std::max(1.0, std::abs(scalar) + grad2 + std::abs(2.0 * rho * f));
    report.max_deviation = std::max(report.max_deviation, std::abs(lhs - report.constant) / scale);
  }
  return report;
}

PotentialProfile schrodinger_potential(const SolitonModel& model, double y_radius,
                                       std::size_t samples) {
  if (samples < 2) throw ValidationError("schrodinger_potential needs at least 2 samples");
  if (!(y_radius > 0.0)) throw ValidationError("schrodinger_potential needs a positive radius");
  const double rho = model.rho();
  const double n = model.n();
  const double scalar = model.k() * rho;
  const double c = normalization_constant(model, 0.0, 1).constant;

  PotentialProfile out;
  out.radius.resize(samples);
  out.potential.resize(samples);
  bool decreasing = true;
  for (std::size_t i = 0; i < samples; ++i) {
    const double r = y_radius * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double f = 0.5 * rho * r * r;
    out.radius[i] = r;
    out.potential[i] = 0.25 * (2.0 * n * rho - scalar - c) - 0.5 * rho * f;
    if (i > 0 && !(out.potential[i] < out.potential[i - 1])) decreasing = false;
  }
  out.v_at_origin = out.potential.front();
  out.v_at_radius = out.potential.back();
  out.diverges = decreasing && out.v_at_radius < out.v_at_origin - 1.0;
  return out;
}

GrowthReport potential_growth_check(const SolitonModel& model, double radius, std::size_t samples) {
  if (!(radius > 0.0) || samples < 1) throw ValidationError("growth check needs radius > 0");
  const double rho = model.rho();
  GrowthReport g;
  g.expected_ratio = -rho / 2.0;
  g.sup_ratio = -std::numeric_limits<double>::infinity();
  g.inf_ratio = std::numeric_limits<double>::infinity();
  // Ric of N^k x R^m is bounded below by min(rho, 0) when the factor is nontrivial, by 0 otherwise.
  g.ricci_lower_bound = model.k() > 0 ? std::min(rho, 0.0) : 0.0;
  g.lower_coefficient = g.ricci_lower_bound - rho / 2.0;
  g.upper_bound_holds = true;
  g.lower_bound_holds = true;

  for (std::size_t i = 1; i <= samples; ++i) {
    const double r = radius * static_cast<double>(i) / static_cast<double>(samples);
    const double r2 = r * r;
    const double f = (0.5 * rho) * r2;  // distance from (x0, 0) along the fiber is |y|
    const double ratio = -f / r2;
    g.sup_ratio = std::max(g.sup_ratio, ratio);
    g.inf_ratio = std::min(g.inf_ratio, ratio);
    if (model.is_expander()) {
      if (!(-f <= (-rho / 2.0) * r * r)) g.upper_bound_holds = false;
      if (!(g.lower_coefficient * r * r <= -f)) g.lower_bound_holds = false;
    } else {
      // Two-sided quadratic bound for shrinkers: (rho/2) r^2 <= f <= (rho/2) r^2.
      if (!(f <= (rho / 2.0) * r * r)) g.upper_bound_holds = false;
      if (!((rho / 2.0) * r * r <= f)) g.lower_bound_holds = false;
    }
  }
  g.lower_bound_vacuous = model.is_expander() && !(g.lower_coefficient > 0.0);
  return g;
}

}  // namespace soliton
