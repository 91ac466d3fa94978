#pragma once

#include <stdexcept>
#include <string>

namespace soliton {

/// Input rejected by a precondition or schema check. The CLI maps this to exit 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request reached past the certified completeness cutoff of a spectrum.
class IncompleteSpectrumError : public std::runtime_error {
 public:
  IncompleteSpectrumError(const std::string& what, double cutoff)
      : std::runtime_error(what), cutoff_(cutoff) {}

  double cutoff() const noexcept { return cutoff_; }

 private:
  double cutoff_;
};

}  // namespace soliton
