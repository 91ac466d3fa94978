#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "soliton/factor_spectrum.hpp"

namespace soliton::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;

/// Runs one command line (arguments without the program name). Results go to
/// `out` unless --output names a file; diagnostics go to `err` as a single
/// line prefixed "error:".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Factor source "sphere:k=K", "point" or "file:PATH". `cutoff` sizes analytic spectra.
FactorSpectrum resolve_factor(const std::string& source, double rho, double cutoff);

}  // namespace soliton::cli
