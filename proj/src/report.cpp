#include "soliton/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "soliton/errors.hpp"
#include "soliton/rigid.hpp"

namespace soliton::report {

namespace {

// Round to 15 significant digits so JSON output carries the same digits as CSV.
double rounded(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_number(value).c_str(), nullptr);
}

std::string describe(const SpectralLine& line, int gaussian_dim) {
  std::string out;
  for (const auto& p : line.provenance) {
    if (!out.empty()) out += "; ";
    if (!p.factor_index) {
      out += "untracked";
    } else if (!p.gaussian_degree || gaussian_dim == 0) {
      out += "v" + std::to_string(*p.factor_index);
    } else {
      out += EigenfunctionDescriptor::representative(*p.factor_index, *p.gaussian_degree, gaussian_dim)
                 .describe();
    }
    if (line.provenance.size() > 1) out += " [x" + std::to_string(p.multiplicity) + "]";
  }
  return out;
}

std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double d) const { return format_number(d); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(double d) const {
      if (!std::isfinite(d)) return nullptr;
      return rounded(d);
    }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(bool b) const { return b; }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ValidationError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<SpectrumRow> spectrum_rows(const DiscreteSpectrum& spectrum, int gaussian_dim,
                                       std::size_t limit) {
  std::vector<SpectrumRow> rows;
  const std::size_t count = limit == 0 ? spectrum.size() : std::min(limit, spectrum.size());
  for (std::size_t i = 0; i < count; ++i) {
    const auto& line = spectrum[i];
    SpectrumRow row;
    row.index = i + 1;
    row.value = line.value.value();
    row.multiplicity = line.multiplicity;
    if (!line.provenance.empty()) {
      row.factor_index = line.provenance.front().factor_index;
      row.gaussian_degree = line.provenance.front().gaussian_degree;
    }
    row.description = describe(line, gaussian_dim);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string emit_table(const std::vector<SpectrumRow>& rows, Format format, const SpectrumMeta& meta) {
  if (format == Format::csv) {
    std::ostringstream os;
    os << "index,value,multiplicity,factor_index,gaussian_degree,description\n";
    for (const auto& r : rows) {
      os << r.index << ',' << format_number(r.value) << ',' << r.multiplicity << ','
         << (r.factor_index ? std::to_string(*r.factor_index) : "") << ','
         << (r.gaussian_degree ? std::to_string(*r.gaussian_degree) : "") << ','
         << csv_field(r.description) << '\n';
    }
    return os.str();
  }

  nlohmann::ordered_json doc;
  doc["name"] = meta.name;
  doc["dim"] = meta.dim;
  doc["rho"] = rounded(meta.rho);
  auto lines = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json entry;
    entry["value"] = rounded(r.value);
    entry["multiplicity"] = r.multiplicity;
    entry["index"] = r.index;
    entry["factor_index"] = r.factor_index ? nlohmann::ordered_json(*r.factor_index) : nullptr;
    entry["gaussian_degree"] = r.gaussian_degree ? nlohmann::ordered_json(*r.gaussian_degree) : nullptr;
    entry["description"] = r.description;
    lines.push_back(std::move(entry));
  }
  doc["eigenvalues"] = std::move(lines);
  doc["complete_below"] = rounded(meta.complete_below);
  return doc.dump(2) + "\n";
}

std::string emit(const Table& table, Format format) {
  if (format == Format::csv) {
    std::ostringstream os;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      os << (c ? "," : "") << csv_field(table.columns[c]);
    }
    os << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_field(cell_text(row[c]));
      os << '\n';
    }
    return os.str();
  }
  auto doc = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
      obj[table.columns[c]] = cell_json(row[c]);
    }
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

}  // namespace soliton::report
