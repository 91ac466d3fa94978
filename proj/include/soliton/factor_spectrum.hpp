#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "soliton/spectrum.hpp"

namespace soliton {

struct FactorLine {
  ScalarValue value;
  std::uint64_t multiplicity = 1;
};

/// Laplace spectrum of a compact Einstein factor N^k with Ric_N = rho g_N.
struct FactorSpectrum {
  std::string name;
  int dim = 0;
  double rho = 0.0;
  std::vector<FactorLine> lines;
  double complete_below = 0.0;

  /// Every violated invariant, empty if the spectrum is valid.
  std::vector<std::string> violations() const;
  /// Throws ValidationError listing all violations.
  void validate() const;

  /// Lines tagged with their factor index j.
  DiscreteSpectrum as_spectrum() const;
};

/// Round sphere S^k with Ric = rho g: mu_j = j (j + k - 1) rho / (k - 1),
/// multiplicity C(j+k, k) - C(j+k-2, k), for all mu_j < cutoff.
FactorSpectrum sphere_spectrum(int k, double rho, double cutoff);

/// A single point (k = 0). Its spectrum {0} is complete everywhere.
FactorSpectrum point_spectrum(double rho);

/// Parses and validates a spectrum document (JSON object with name, dim, rho,
/// eigenvalues[{value, multiplicity}], complete_below).
FactorSpectrum load_factor_spectrum(std::string_view document);
FactorSpectrum load_factor_spectrum_file(const std::string& path);

/// Inverse of load_factor_spectrum; values are written with round-trip precision.
std::string write_factor_spectrum(const FactorSpectrum& spectrum);

/// Bottom of the spectrum of -Delta on hyperbolic space H^k with Ric = rho g (rho < 0):
/// -(k - 1) rho / 4.
double hyperbolic_bottom(int k, double rho);

}  // namespace soliton
