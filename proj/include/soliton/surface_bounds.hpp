#pragma once

#include <vector>

namespace soliton::surface {

/// Closed surface of genus >= 2 with constant curvature rho < 0.
struct SurfaceData {
  int genus = 2;
  double rho = -1.0;

  void validate() const;
  /// Gauss-Bonnet: rho Area = 4 pi (1 - genus).
  double area() const;
};

/// Yang-Yau: lambda_2 Area <= 8 pi floor((genus + 3)/2), normalized by Gauss-Bonnet.
double yang_yau_bound(const SurfaceData& s);

/// Karpukhin-Vinokurov upper bound on lambda_2, normalized by Gauss-Bonnet, with an
/// exact integer ceiling of 5 genus / 6.
double kv_bound(const SurfaceData& s);

/// Comparisons against -rho use this band, scaled by |rho|.
inline constexpr double kGuardBand = 1e-12;

/// The genus from which the bound is claimed sufficient.
inline constexpr int kSufficientGenus = 46;

struct GenusRow {
  int genus = 0;
  double yang_yau = 0.0;
  double kv = 0.0;
  double best = 0.0;        ///< min(yang_yau, kv)
  double kv_margin = 0.0;   ///< -rho - kv; positive means kv < -rho
  bool kv_below = false;    ///< kv_margin > guard band
  bool near_guard = false;  ///< |kv_margin| <= guard band
};

struct ThresholdReport {
  double rho = 0.0;
  int gamma_max = 0;
  std::vector<GenusRow> rows;  ///< genus 2 .. gamma_max
  bool sufficient_from_46 = false;      ///< kv < -rho for every genus in [46, gamma_max]
  int minimal_genus = 0;                ///< smallest g with kv < -rho for every genus in [g, gamma_max]
  std::vector<int> failing_below;       ///< genera in [2, minimal_genus) with kv >= -rho
  bool yang_yau_never_below = false;    ///< yang_yau > -rho for every genus in [2, gamma_max]
  bool any_near_guard = false;
};

ThresholdReport genus_threshold(double rho, int gamma_max);

}  // namespace soliton::surface
