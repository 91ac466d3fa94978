#include "soliton/oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "soliton/errors.hpp"

namespace soliton::oracle {

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("SOLITON_SPECTRA_SEED");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0') return fallback;
  return v;
}

DiscreteSpectrum pairwise_sum(const DiscreteSpectrum& a, const DiscreteSpectrum& b) {
  if (a.empty() || b.empty()) throw ValidationError("pairwise_sum: empty spectrum");
  const double cutoff = std::min(a.complete_below() + b[0].value.value(),
                                 b.complete_below() + a[0].value.value());
  std::vector<SpectralLine> all;
  for (const auto& x : a.lines()) {
    for (const auto& y : b.lines()) {
      all.push_back(SpectralLine{x.value + y.value, x.multiplicity * y.multiplicity, {}});
    }
  }
  return merge_lines(std::move(all), cutoff);
}

DiscreteSpectrum random_spectrum(std::mt19937_64& rng, std::size_t max_lines, bool exact, double unit) {
  std::uniform_int_distribution<std::size_t> count_dist(1, std::max<std::size_t>(1, max_lines));
  std::uniform_int_distribution<int> num_dist(1, 6), den_dist(1, 4), mult_dist(1, 5), start_dist(0, 3);
  std::uniform_real_distribution<double> gap_dist(0.05, 2.0);

  const std::size_t count = count_dist(rng);
  std::vector<SpectralLine> lines;
  if (exact) {
    Rational value(start_dist(rng), 2);
    for (std::size_t i = 0; i < count; ++i) {
      lines.push_back(SpectralLine{ScalarValue::exact(value, unit),
                                   static_cast<std::uint64_t>(mult_dist(rng)), {}});
      value += Rational(num_dist(rng), den_dist(rng));
    }
    return merge_lines(std::move(lines), (ScalarValue::exact(value, unit)).value());
  }
  double value = 0.5 * start_dist(rng);
  for (std::size_t i = 0; i < count; ++i) {
    lines.push_back(SpectralLine{ScalarValue::numeric(value), static_cast<std::uint64_t>(mult_dist(rng)), {}});
    value += gap_dist(rng);
  }
  return merge_lines(std::move(lines), value);
}

ProductOracleReport product_oracle(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution exact_dist(0.5);
  ProductOracleReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const bool exact = exact_dist(rng);
    const auto a = random_spectrum(rng, 50, exact, 1.0);
    const auto b = random_spectrum(rng, 50, exact, 1.0);
    const auto fast = minkowski_sum(a, b);
    const auto slow = pairwise_sum(a, b);
    if (!same_multiset(fast, slow) || fast.complete_below() != slow.complete_below()) ++report.mismatches;
    const ScalarValue expected_min = a[0].value + b[0].value;
    if (fast.empty() || !fast[0].value.equals(expected_min) ||
        (exact && fast[0].value.exact_part() != expected_min.exact_part())) {
      ++report.additivity_failures;
    }
  }
  report.passed = report.mismatches == 0 && report.additivity_failures == 0;
  return report;
}

}  // namespace soliton::oracle
