#include "soliton/factor_spectrum.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "soliton/errors.hpp"

namespace soliton {

namespace {

using boost::multiprecision::cpp_int;

cpp_int binomial(long long n, long long r) {
  if (r < 0 || n < r) return 0;
  cpp_int out = 1;
  for (long long i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;
  }
  return out;
}

std::uint64_t to_multiplicity(const cpp_int& v) {
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error("multiplicity does not fit in 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

}  // namespace

std::vector<std::string> FactorSpectrum::violations() const {
  std::vector<std::string> out;
  if (dim < 0) out.push_back("dim must be nonnegative");
  if (!std::isfinite(rho)) out.push_back("rho must be finite");
  if (dim == 1 && rho != 0.0) out.push_back("a one-dimensional factor has Ric = 0, rho must be 0");
  if (std::isnan(complete_below)) out.push_back("complete_below must be a number");
  if (dim > 0 && !std::isfinite(complete_below)) {
    out.push_back("complete_below must be finite for a factor of positive dimension");
  }

  if (lines.empty()) {
    out.push_back("spectrum must contain the line mu0 = 0");
    return out;
  }
  if (lines.front().value.value() != 0.0) out.push_back("mu0 must be 0");
  if (lines.front().multiplicity != 1) out.push_back("mu0 must have multiplicity 1 (connected factor)");
  if (dim == 0 && lines.size() != 1) out.push_back("a point factor has only the eigenvalue 0");

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const double v = lines[i].value.value();
    if (lines[i].multiplicity == 0) {
      out.push_back("line " + std::to_string(i) + ": multiplicity must be at least 1");
    }
    if (v < 0.0) out.push_back("line " + std::to_string(i) + ": eigenvalue must be nonnegative");
    if (i > 0 && !(v > lines[i - 1].value.value())) {
      out.push_back("line " + std::to_string(i) + ": eigenvalues must be strictly increasing");
    }
    if (!(v < complete_below)) {
      out.push_back("line " + std::to_string(i) + ": eigenvalue " + fmt(v) +
                    " is not below complete_below " + fmt(complete_below));
    }
  }

  if (rho > 0.0 && dim >= 2 && lines.size() >= 2) {
    const double bound = dim * rho / (dim - 1.0);
    const double mu1 = lines[1].value.value();
    if (mu1 < bound - 1e-9) {
      out.push_back("Lichnerowicz bound violated: mu1 = " + fmt(mu1) + " < k rho/(k-1) = " +
                    fmt(bound));
    }
  }
  return out;
}

void FactorSpectrum::validate() const {
  const auto v = violations();
  if (!v.empty()) throw ValidationError("invalid factor spectrum '" + name + "': " + join(v, "; "));
}

DiscreteSpectrum FactorSpectrum::as_spectrum() const {
  std::vector<SpectralLine> out;
  out.reserve(lines.size());
  for (std::size_t j = 0; j < lines.size(); ++j) {
    out.push_back(SpectralLine{lines[j].value, lines[j].multiplicity,
                               {Provenance{j, std::nullopt, lines[j].multiplicity}}});
  }
  return merge_lines(std::move(out), complete_below);
}

FactorSpectrum sphere_spectrum(int k, double rho, double cutoff) {
  if (k < 2) throw ValidationError("sphere_spectrum: k must be at least 2");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ValidationError("sphere_spectrum: rho must be > 0");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
    throw ValidationError("sphere_spectrum: cutoff must be positive and finite");
  }
  FactorSpectrum s;
  s.name = "S^" + std::to_string(k);
  s.dim = k;
  s.rho = rho;
  s.complete_below = cutoff;
  for (long long j = 0;; ++j) {
    const Rational coeff(j * (j + k - 1), k - 1);
    const auto value = ScalarValue::exact(coeff, rho);
    if (!(value.value() < cutoff)) break;
    const cpp_int mult = binomial(j + k, k) - binomial(j + k - 2, k);
    s.lines.push_back(FactorLine{value, to_multiplicity(mult)});
  }
  return s;
}

FactorSpectrum point_spectrum(double rho) {
  FactorSpectrum s;
  s.name = "point";
  s.dim = 0;
  s.rho = rho;
  s.complete_below = std::numeric_limits<double>::infinity();
  s.lines.push_back(FactorLine{ScalarValue{}, 1});
  return s;
}

FactorSpectrum load_factor_spectrum(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("spectrum file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("spectrum file must be a JSON object");

  std::vector<std::string> problems;
  FactorSpectrum s;
  s.complete_below = std::numeric_limits<double>::quiet_NaN();

  if (auto it = doc.find("name"); it == doc.end() || !it->is_string()) {
    problems.push_back("missing or non-string name");
  } else {
    s.name = it->get<std::string>();
  }
  if (auto it = doc.find("dim"); it == doc.end() || !it->is_number_integer()) {
    problems.push_back("missing or non-integer dim");
  } else {
    s.dim = it->get<int>();
  }
  if (auto it = doc.find("rho"); it == doc.end() || !it->is_number()) {
    problems.push_back("missing or non-numeric rho");
  } else {
    s.rho = it->get<double>();
  }
  if (auto it = doc.find("complete_below"); it == doc.end() || !it->is_number()) {
    problems.push_back("missing complete_below");
  } else {
    s.complete_below = it->get<double>();
  }
  if (auto it = doc.find("eigenvalues"); it == doc.end() || !it->is_array()) {
    problems.push_back("missing eigenvalues array");
  } else {
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& entry = (*it)[i];
      const auto where = "eigenvalues[" + std::to_string(i) + "]";
      if (!entry.is_object() || !entry.contains("value") || !entry["value"].is_number()) {
        problems.push_back(where + ": missing numeric value");
        continue;
      }
      if (!entry.contains("multiplicity") || !entry["multiplicity"].is_number_integer() ||
          entry["multiplicity"].get<long long>() < 1) {
        problems.push_back(where + ": multiplicity must be a positive integer");
        continue;
      }
      s.lines.push_back(FactorLine{ScalarValue::numeric(entry["value"].get<double>()),
                                   entry["multiplicity"].get<std::uint64_t>()});
    }
  }

  if (problems.empty()) {
    for (auto& v : s.violations()) problems.push_back(std::move(v));
  }
  if (!problems.empty()) {
    throw ValidationError("invalid factor spectrum '" + s.name + "': " + join(problems, "; "));
  }
  return s;
}

FactorSpectrum load_factor_spectrum_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open spectrum file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_factor_spectrum(buf.str());
}

std::string write_factor_spectrum(const FactorSpectrum& spectrum) {
  if (!std::isfinite(spectrum.complete_below)) {
    throw ValidationError("cannot write a spectrum with an infinite cutoff");
  }
  nlohmann::ordered_json doc;
  doc["name"] = spectrum.name;
  doc["dim"] = spectrum.dim;
  doc["rho"] = spectrum.rho;
  auto lines = nlohmann::ordered_json::array();
  for (const auto& line : spectrum.lines) {
    nlohmann::ordered_json entry;
    entry["value"] = line.value.value();
    entry["multiplicity"] = line.multiplicity;
    lines.push_back(std::move(entry));
  }
  doc["eigenvalues"] = std::move(lines);
  doc["complete_below"] = spectrum.complete_below;
  return doc.dump(2) + "\n";
}

double hyperbolic_bottom(int k, double rho) {
  if (k < 2) throw ValidationError("hyperbolic_bottom: k must be at least 2");
  if (!(rho < 0.0)) throw ValidationError("hyperbolic_bottom: rho must be negative");
  return -(k - 1) * rho / 4.0;
}

}  // namespace soliton
