#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "soliton/spectrum.hpp"

namespace soliton::report {

enum class Format { csv, json };

/// "csv" or "json"; anything else is a ValidationError.
Format parse_format(std::string_view name);

/// 15 significant digits, shortest form ("%.15g").
std::string format_number(double value);

/// RFC 4180 quoting: fields with separators, quotes or line breaks are wrapped in quotes.
std::string csv_field(std::string_view field);

struct SpectrumRow {
  std::size_t index = 0;  ///< 1-based
  double value = 0.0;
  std::uint64_t multiplicity = 0;
  std::optional<std::size_t> factor_index;
  std::optional<std::uint32_t> gaussian_degree;
  std::string description;
};

/// Rows for the first `limit` lines (all when limit == 0). `gaussian_dim` sizes the
/// representative multi-index in the description; 0 for a bare factor spectrum.
std::vector<SpectrumRow> spectrum_rows(const DiscreteSpectrum& spectrum, int gaussian_dim,
                                       std::size_t limit = 0);

struct SpectrumMeta {
  std::string name;
  int dim = 0;
  double rho = 0.0;
  double complete_below = 0.0;
};

/// CSV columns index,value,multiplicity,factor_index,gaussian_degree,description.
/// JSON mirrors the spectrum-file schema with provenance fields added per eigenvalue.
std::string emit_table(const std::vector<SpectrumRow>& rows, Format format, const SpectrumMeta& meta);

using Cell = std::variant<std::string, double, long long, bool>;

/// Generic result table for reports that are not spectra.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// CSV with a header row, or a JSON array of objects keyed by column.
std::string emit(const Table& table, Format format);

}  // namespace soliton::report
