#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace soliton {

using Rational = boost::multiprecision::cpp_rational;

/// Relative tolerance used when at least one side of a comparison is inexact.
inline constexpr double kEqualityTolerance = 1e-9;

/// |x - y| <= 1e-9 * max(1, |x|, |y|).
bool approx_equal(double x, double y) noexcept;

/// An eigenvalue-like quantity split into an exact rational multiple of a
/// unit (|rho| of the owning model) and a floating-point remainder.
///
/// Sphere eigenvalues and Gaussian shifts stay exact; anything ingested from
/// a file lands in the numeric part. Sums keep the exact part exact as long
/// as both operands share the same unit.
class ScalarValue {
 public:
  ScalarValue() = default;

  static ScalarValue exact(Rational coefficient, double unit);
  static ScalarValue numeric(double value);

  const Rational& exact_part() const noexcept { return exact_; }
  double numeric_part() const noexcept { return numeric_; }
  double unit() const noexcept { return unit_; }
  bool is_exact() const noexcept { return numeric_ == 0.0; }

  double value() const;

  /// Exact comparison of the rationals when both sides are exact, the
  /// tolerance predicate otherwise.
  bool equals(const ScalarValue& other) const;

  friend ScalarValue operator+(const ScalarValue& a, const ScalarValue& b);

  std::string to_string() const;

 private:
  Rational exact_{0};
  double numeric_ = 0.0;
  double unit_ = 1.0;
};

/// Which factor eigenvalue and Gaussian degree produced (part of) a line.
struct Provenance {
  std::optional<std::size_t> factor_index;
  std::optional<std::uint32_t> gaussian_degree;
  std::uint64_t multiplicity = 1;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct SpectralLine {
  ScalarValue value;
  std::uint64_t multiplicity = 1;
  /// Empty when the origin is not tracked. Coincident eigenvalues of
  /// different origin keep one entry each.
  std::vector<Provenance> provenance;
};

/// Sorted, merged spectrum that is certified complete below `complete_below`.
class DiscreteSpectrum {
 public:
  DiscreteSpectrum() = default;

  const std::vector<SpectralLine>& lines() const noexcept { return lines_; }
  double complete_below() const noexcept { return complete_below_; }
  bool empty() const noexcept { return lines_.empty(); }
  std::size_t size() const noexcept { return lines_.size(); }
  const SpectralLine& operator[](std::size_t i) const { return lines_[i]; }

  /// Smallest eigenvalue; throws ValidationError when empty.
  const SpectralLine& min_line() const;

 private:
  friend DiscreteSpectrum merge_lines(std::vector<SpectralLine> lines, double cutoff);

  std::vector<SpectralLine> lines_;
  double complete_below_ = 0.0;
};

/// Sorts, merges coinciding values and drops everything at or above `cutoff`.
/// `cutoff` may be +infinity for a finite spectrum that is complete (a point).
DiscreteSpectrum merge_lines(std::vector<SpectralLine> lines, double cutoff);

/// Spectrum of a product: every pairwise sum with product multiplicities,
/// enumerated lazily in increasing order from a priority-queue frontier.
DiscreteSpectrum minkowski_sum(const DiscreteSpectrum& a, const DiscreteSpectrum& b);

/// First `k` distinct lines. Throws IncompleteSpectrumError if fewer than `k`
/// lines are certified below the cutoff.
std::vector<SpectralLine> enumerate_up_to(const DiscreteSpectrum& s, std::size_t k);

/// Multiset equality under the ScalarValue equality predicate.
bool same_multiset(const DiscreteSpectrum& a, const DiscreteSpectrum& b);

}  // namespace soliton
