#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "soliton/factor_spectrum.hpp"
#include "soliton/spectrum.hpp"

namespace soliton {

/// Rigid gradient Ricci soliton M^n = N^k x R^{n-k} with f(x, y) = (rho/2)|y|^2.
class SolitonModel {
 public:
  /// Validates: factor.rho == rho, factor.dim == k, n > k, factor invariants.
  SolitonModel(FactorSpectrum factor, int n, double rho);

  const FactorSpectrum& factor() const noexcept { return factor_; }
  int n() const noexcept { return n_; }
  int k() const noexcept { return factor_.dim; }
  int m() const noexcept { return n_ - factor_.dim; }
  double rho() const noexcept { return rho_; }
  bool is_shrinker() const noexcept { return rho_ > 0.0; }
  bool is_expander() const noexcept { return rho_ < 0.0; }

  /// Largest cutoff for which the product spectrum is certified complete:
  /// factor.complete_below + |rho| m for expanders, factor.complete_below for shrinkers.
  double certified_cutoff() const noexcept;

 private:
  FactorSpectrum factor_;
  int n_;
  double rho_;
};

/// C(P + m - 1, m - 1): number of multi-indices of total degree P in m variables.
std::uint64_t degree_block_multiplicity(std::uint32_t degree, int m);

/// One representative multi-index for (factor line j, total Gaussian degree P).
struct EigenfunctionDescriptor {
  std::size_t factor_index = 0;
  std::uint32_t total_degree = 0;
  std::vector<std::uint32_t> multi_index;

  static EigenfunctionDescriptor representative(std::size_t j, std::uint32_t degree, int m);
  std::string describe() const;
};

/// Full drift-Laplacian spectrum below `cutoff`:
///   shrinker: lambda(j, P) = mu_j + rho P
///   expander: lambda(j, P) = mu_j + |rho| (m + P)
/// with multiplicity mult(mu_j) C(P + m - 1, m - 1).
DiscreteSpectrum rigid_spectrum(const SolitonModel& model, double cutoff);

enum class SecondCase { gaussian, mixed, factor };
const char* to_string(SecondCase c) noexcept;

struct SecondEigenvalue {
  ScalarValue value;
  std::uint64_t multiplicity = 0;
  SecondCase which = SecondCase::gaussian;
};

/// lambda_2 of a rigid expander = min{-rho (m + 1), lambda_2(N) - rho m}, split by
/// comparing lambda_2(N) against -rho.
SecondEigenvalue second_eigenvalue_case(const SolitonModel& model);

struct NormalizationReport {
  double constant = 0.0;  ///< C = k rho
  /// max |S + |grad f|^2 - 2 rho f - C| / max(1, |S| + |grad f|^2 + |2 rho f|) over the samples.
  double max_deviation = 0.0;
  std::size_t samples = 0;
};

/// C in S + |grad f|^2 - 2 rho f = C, checked on a deterministic sample of points y in R^m
/// with |y| <= radius.
NormalizationReport normalization_constant(const SolitonModel& model, double radius = 10.0,
                                           std::size_t samples = 1000);

struct PotentialProfile {
  std::vector<double> radius;
  std::vector<double> potential;
  double v_at_origin = 0.0;
  double v_at_radius = 0.0;
  bool diverges = false;
};

/// V = (1/4)(2 n rho - S - C) - (1/2) rho f along |y| in [0, y_radius].
PotentialProfile schrodinger_potential(const SolitonModel& model, double y_radius,
                                       std::size_t samples);

struct GrowthReport {
  double expected_ratio = 0.0;  ///< -rho / 2
  double sup_ratio = 0.0;       ///< sup (-f) / r^2 over r in (0, radius]
  double inf_ratio = 0.0;
  bool upper_bound_holds = false;   ///< -f <= (-rho/2)(r + c2)^2 with c2 = 0
  bool lower_bound_holds = false;   ///< (eta - rho/2) r^2 - c1 r <= -f with c1 = 0
  double ricci_lower_bound = 0.0;   ///< eta
  double lower_coefficient = 0.0;   ///< eta - rho/2
  bool lower_bound_vacuous = false; ///< coefficient <= 0: no growth information
};

/// Quadratic growth of the potential along the Euclidean factor, where r = |y|.
GrowthReport potential_growth_check(const SolitonModel& model, double radius,
                                    std::size_t samples = 1000);

}  // namespace soliton
