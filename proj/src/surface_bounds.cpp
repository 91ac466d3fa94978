#include "soliton/surface_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "soliton/errors.hpp"

namespace soliton::surface {

void SurfaceData::validate() const {
  if (genus < 2) throw ValidationError("surface bounds need genus >= 2");
  if (!(rho < 0.0) || !std::isfinite(rho)) throw ValidationError("surface bounds need rho < 0");
}

double SurfaceData::area() const {
  validate();
  return 4.0 * std::numbers::pi * (genus - 1) / -rho;
}

double yang_yau_bound(const SurfaceData& s) {
  s.validate();
  const int floor_term = (s.genus + 3) / 2;
  return 2.0 * -s.rho * floor_term / (s.genus - 1);
}

double kv_bound(const SurfaceData& s) {
  s.validate();
  const double sqrt15 = std::sqrt(15.0);
  const int ceil_term = (5 * s.genus + 5) / 6;  // ceil(5 g / 6)
  const double bracket = s.genus + (33.0 - 4.0 * sqrt15) * ceil_term + 4.0 * (41.0 - 5.0 * sqrt15);
  return -s.rho * bracket / (2.0 * (13.0 - sqrt15) * (s.genus - 1));
}

ThresholdReport genus_threshold(double rho, int gamma_max) {
  if (!(rho < 0.0) || !std::isfinite(rho)) throw ValidationError("genus_threshold: rho must be negative");
  if (gamma_max < kSufficientGenus) {
    throw ValidationError("genus_threshold: gamma_max must be at least 46");
  }
  ThresholdReport report;
  report.rho = rho;
  report.gamma_max = gamma_max;
  report.sufficient_from_46 = true;
  report.yang_yau_never_below = true;

  const double target = -rho;
  const double guard = kGuardBand * std::abs(rho);
  for (int g = 2; g <= gamma_max; ++g) {
    const SurfaceData s{g, rho};
    GenusRow row;
    row.genus = g;
    row.yang_yau = yang_yau_bound(s);
    row.kv = kv_bound(s);
    row.best = std::min(row.yang_yau, row.kv);
    row.kv_margin = target - row.kv;
    row.kv_below = row.kv_margin > guard;
    row.near_guard = std::abs(row.kv_margin) <= guard || std::abs(target - row.yang_yau) <= guard;
    report.any_near_guard = report.any_near_guard || row.near_guard;
    if (g >= kSufficientGenus && !row.kv_below) report.sufficient_from_46 = false;
    if (!(row.yang_yau - target > guard)) report.yang_yau_never_below = false;
    report.rows.push_back(row);
  }

  // Walk down from gamma_max while the inequality keeps holding.
  int minimal = gamma_max + 1;
  for (auto it = report.rows.rbegin(); it != report.rows.rend() && it->kv_below; ++it) {
    minimal = it->genus;
  }
  report.minimal_genus = minimal;
  for (const auto& row : report.rows) {
    if (row.genus < minimal && !row.kv_below) report.failing_below.push_back(row.genus);
  }
  return report;
}

}  // namespace soliton::surface
