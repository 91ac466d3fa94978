#include "soliton/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "soliton/errors.hpp"

namespace soliton {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("multiplicity overflow");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("multiplicity overflow");
  return r;
}

// Missing components sort first.
std::pair<long long, long long> provenance_key(const Provenance& p) {
  return {p.factor_index ? static_cast<long long>(*p.factor_index) : -1,
          p.gaussian_degree ? static_cast<long long>(*p.gaussian_degree) : -1};
}

std::pair<long long, long long> line_key(const SpectralLine& line) {
  if (line.provenance.empty()) return {-1, -1};
  return provenance_key(line.provenance.front());
}

void normalize_provenance(std::vector<Provenance>& prov) {
  std::sort(prov.begin(), prov.end(), [](const Provenance& a, const Provenance& b) {
    return provenance_key(a) < provenance_key(b);
  });
  std::vector<Provenance> merged;
  for (const auto& p : prov) {
    if (!merged.empty() && provenance_key(merged.back()) == provenance_key(p)) {
      merged.back().multiplicity = checked_add(merged.back().multiplicity, p.multiplicity);
    } else {
      merged.push_back(p);
    }
  }
  prov = std::move(merged);
}

Provenance combine(const Provenance& a, const Provenance& b) {
  Provenance out;
  out.factor_index = a.factor_index ? a.factor_index : b.factor_index;
  if (a.gaussian_degree || b.gaussian_degree) {
    out.gaussian_degree = a.gaussian_degree.value_or(0) + b.gaussian_degree.value_or(0);
  }
  out.multiplicity = checked_mul(a.multiplicity, b.multiplicity);
  return out;
}

std::vector<Provenance> combine_all(const SpectralLine& a, const SpectralLine& b) {
  if (a.provenance.empty() && b.provenance.empty()) return {};
  // An untracked side contributes a single anonymous entry so multiplicities stay consistent.
  std::vector<Provenance> pa = a.provenance, pb = b.provenance;
  if (pa.empty()) pa.push_back(Provenance{std::nullopt, std::nullopt, a.multiplicity});
  if (pb.empty()) pb.push_back(Provenance{std::nullopt, std::nullopt, b.multiplicity});
  std::vector<Provenance> out;
  out.reserve(pa.size() * pb.size());
  for (const auto& x : pa)
    for (const auto& y : pb) out.push_back(combine(x, y));
  return out;
}

}  // namespace

bool approx_equal(double x, double y) noexcept {
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= kEqualityTolerance * scale;
}

ScalarValue ScalarValue::exact(Rational coefficient, double unit) {
  if (!(unit > 0.0) || !std::isfinite(unit)) {
    throw ValidationError("exact scalar needs a positive finite unit");
  }
  ScalarValue v;
  v.exact_ = std::move(coefficient);
  v.unit_ = unit;
  return v;
}

ScalarValue ScalarValue::numeric(double value) {
  if (!std::isfinite(value)) throw ValidationError("scalar value must be finite");
  ScalarValue v;
  v.numeric_ = value;
  return v;
}

double ScalarValue::value() const {
  if (exact_ == 0) return numeric_;
  return exact_.convert_to<double>() * unit_ + numeric_;
}

bool ScalarValue::equals(const ScalarValue& other) const {
  if (is_exact() && other.is_exact()) {
    if (exact_ == 0 || other.exact_ == 0) return exact_ == other.exact_;
    if (unit_ == other.unit_) return exact_ == other.exact_;
  }
  return approx_equal(value(), other.value());
}

ScalarValue operator+(const ScalarValue& a, const ScalarValue& b) {
  ScalarValue out;
  out.numeric_ = a.numeric_ + b.numeric_;
  if (b.exact_ == 0) {
    out.exact_ = a.exact_;
    out.unit_ = a.unit_;
  } else if (a.exact_ == 0) {
    out.exact_ = b.exact_;
    out.unit_ = b.unit_;
  } else if (a.unit_ == b.unit_) {
    out.exact_ = a.exact_ + b.exact_;
    out.unit_ = a.unit_;
  } else {
    out.exact_ = a.exact_;
    out.unit_ = a.unit_;
    out.numeric_ += b.exact_.convert_to<double>() * b.unit_;
  }
  return out;
}

std::string ScalarValue::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value());
  return buf;
}

const SpectralLine& DiscreteSpectrum::min_line() const {
  if (lines_.empty()) throw ValidationError("empty spectrum has no minimum");
  return lines_.front();
}

DiscreteSpectrum merge_lines(std::vector<SpectralLine> lines, double cutoff) {
  if (std::isnan(cutoff) || cutoff == -std::numeric_limits<double>::infinity()) {
    throw ValidationError("spectrum cutoff must be finite or +infinity");
  }
  for (const auto& line : lines) {
    if (line.multiplicity == 0) throw ValidationError("multiplicity must be positive");
    if (!std::isfinite(line.value.value())) throw ValidationError("eigenvalue must be finite");
  }

  std::stable_sort(lines.begin(), lines.end(), [](const SpectralLine& a, const SpectralLine& b) {
    const double va = a.value.value(), vb = b.value.value();
    if (va != vb) return va < vb;
    return line_key(a) < line_key(b);
  });

  DiscreteSpectrum out;
  out.complete_below_ = cutoff;
  std::size_t i = 0;
  while (i < lines.size()) {
    SpectralLine merged = lines[i];
    const ScalarValue anchor = lines[i].value;
    std::size_t j = i + 1;
    for (; j < lines.size() && lines[j].value.equals(anchor); ++j) {
      merged.multiplicity = checked_add(merged.multiplicity, lines[j].multiplicity);
      merged.provenance.insert(merged.provenance.end(), lines[j].provenance.begin(),
                               lines[j].provenance.end());
      // Prefer an exact representative for the merged value.
      if (!merged.value.is_exact() && lines[j].value.is_exact()) merged.value = lines[j].value;
    }
    normalize_provenance(merged.provenance);
    if (merged.value.value() < cutoff) out.lines_.push_back(std::move(merged));
    i = j;
  }
  return out;
}

DiscreteSpectrum minkowski_sum(const DiscreteSpectrum& a, const DiscreteSpectrum& b) {
  if (a.empty() || b.empty()) {
    throw ValidationError("minkowski_sum: empty input spectrum has no minimum");
  }
  const double min_a = a.min_line().value.value();
  const double min_b = b.min_line().value.value();
  const double cutoff = std::min(a.complete_below() + min_b, b.complete_below() + min_a);

  using Entry = std::tuple<double, std::size_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  std::set<std::pair<std::size_t, std::size_t>> seen;

  auto push = [&](std::size_t i, std::size_t j) {
    if (i >= a.size() || j >= b.size()) return;
    if (!seen.emplace(i, j).second) return;
    frontier.emplace((a[i].value + b[j].value).value(), i, j);
  };

  std::vector<SpectralLine> sums;
  push(0, 0);
  while (!frontier.empty()) {
    const auto [value, i, j] = frontier.top();
    frontier.pop();
    if (!(value < cutoff)) break;
    SpectralLine line;
    line.value = a[i].value + b[j].value;
    line.multiplicity = checked_mul(a[i].multiplicity, b[j].multiplicity);
    line.provenance = combine_all(a[i], b[j]);
    sums.push_back(std::move(line));
    push(i + 1, j);
    push(i, j + 1);
  }
  return merge_lines(std::move(sums), cutoff);
}

std::vector<SpectralLine> enumerate_up_to(const DiscreteSpectrum& s, std::size_t k) {
  if (k == 0) throw ValidationError("enumerate_up_to: k must be at least 1");
  if (s.size() < k) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "incomplete spectrum: only %zu lines certified below cutoff %.15g, %zu requested",
                  s.size(), s.complete_below(), k);
    throw IncompleteSpectrumError(buf, s.complete_below());
  }
  return {s.lines().begin(), s.lines().begin() + static_cast<std::ptrdiff_t>(k)};
}

bool same_multiset(const DiscreteSpectrum& a, const DiscreteSpectrum& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].value.equals(b[i].value) || a[i].multiplicity != b[i].multiplicity) return false;
  }
  return true;
}

}  // namespace soliton
