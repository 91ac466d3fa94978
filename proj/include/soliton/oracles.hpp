#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "soliton/spectrum.hpp"

namespace soliton::oracle {

/// Seed from SOLITON_SPECTRA_SEED if set and numeric, `fallback` otherwise.
std::uint64_t seed_from_env(std::uint64_t fallback = 20240611);

/// Product spectrum by a plain double loop over all pairs, cut at the same
/// certified cutoff as minkowski_sum.
DiscreteSpectrum pairwise_sum(const DiscreteSpectrum& a, const DiscreteSpectrum& b);

/// Random truncated spectrum with 1..max_lines lines. Exact spectra use rational
/// multiples of `unit`; inexact ones use floating-point gaps.
DiscreteSpectrum random_spectrum(std::mt19937_64& rng, std::size_t max_lines, bool exact, double unit);

struct ProductOracleReport {
  std::size_t trials = 0;
  std::size_t mismatches = 0;
  std::size_t additivity_failures = 0;
  bool passed = false;
};

/// minkowski_sum against pairwise_sum on `trials` random pairs (<= 50 lines each),
/// plus lambda_min(a + b) == lambda_min(a) + lambda_min(b).
ProductOracleReport product_oracle(std::size_t trials, std::uint64_t seed);

}  // namespace soliton::oracle
