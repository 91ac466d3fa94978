#include <doctest.h>

#include <functional>
#include <map>
#include <random>

#include "soliton/errors.hpp"
#include "soliton/oracles.hpp"
#include "soliton/rigid.hpp"

using namespace soliton;

namespace {

FactorSpectrum synthetic(int dim, double rho, std::vector<std::pair<double, std::uint64_t>> lines, double cutoff) {
  FactorSpectrum s;
  s.name = "synthetic";
  s.dim = dim;
  s.rho = rho;
  for (auto [v, m] : lines) s.lines.push_back({ScalarValue::numeric(v), m});
  s.complete_below = cutoff;
  return s;
}

// Every (j, p_1..p_m) enumerated one multi-index at a time; values keyed on a 1e-9 grid.
std::map<long long, std::uint64_t> brute_force(const SolitonModel& model, double cutoff) {
  std::map<long long, std::uint64_t> out;
  const double r = model.rho();
  const int m = model.m();
  for (const auto& line : model.factor().lines) {
    std::function<void(int, int)> walk = [&](int var, int total) {
      const double lambda = line.value.value() + (r > 0 ? r * total : -r * (m + total));
      if (lambda >= cutoff) return;
      if (var == m) {
        out[std::llround(lambda * 1e9)] += line.multiplicity;
        return;
      }
      for (int p = 0;; ++p) {
        const double partial = line.value.value() + (r > 0 ? r * (total + p) : -r * (m + total + p));
        if (partial >= cutoff) break;
        walk(var + 1, total + p);
      }
    };
    walk(0, 0);
  }
  return out;
}

std::map<long long, std::uint64_t> as_map(const DiscreteSpectrum& s) {
  std::map<long long, std::uint64_t> out;
  for (const auto& l : s.lines()) out[std::llround(l.value.value() * 1e9)] += l.multiplicity;
  return out;
}

}  // namespace

TEST_CASE("model validation") {
  const auto s2 = sphere_spectrum(2, 1.0, 10.0);
  CHECK_THROWS_AS(SolitonModel(s2, 4, 0.0), ValidationError);
  CHECK_THROWS_AS(SolitonModel(s2, 4, 2.0), ValidationError);
  CHECK_THROWS_AS(SolitonModel(s2, 2, 1.0), ValidationError);
  auto bad = s2;
  bad.lines[0].value = ScalarValue::numeric(0.5);
  CHECK_THROWS_AS(SolitonModel(bad, 4, 1.0), ValidationError);
  const SolitonModel ok(s2, 5, 1.0);
  CHECK(ok.m() == 3);
  CHECK(ok.is_shrinker());
  CHECK(ok.certified_cutoff() == 10.0);
}

TEST_CASE("degree block multiplicities are binomials") {
  CHECK(degree_block_multiplicity(0, 1) == 1);
  CHECK(degree_block_multiplicity(5, 1) == 1);
  CHECK(degree_block_multiplicity(3, 2) == 4);
  CHECK(degree_block_multiplicity(2, 3) == 6);
  CHECK(degree_block_multiplicity(10, 4) == 286);
}

TEST_CASE("descriptor representative") {
  const auto d = EigenfunctionDescriptor::representative(1, 3, 3);
  CHECK(d.multi_index == std::vector<std::uint32_t>{3, 0, 0});
  CHECK(d.describe() == "v1 x H(3,0,0)");
}

TEST_CASE("shrinker S^2 x R^2, rho = 1, cutoff 2.5") {
  const SolitonModel model(sphere_spectrum(2, 1.0, 10.0), 4, 1.0);
  const auto s = rigid_spectrum(model, 2.5);
  REQUIRE(s.size() == 3);
  CHECK(s[0].value.exact_part() == 0);
  CHECK(s[0].multiplicity == 1);
  CHECK(s[1].value.exact_part() == 1);
  CHECK(s[1].multiplicity == 2);
  CHECK(s[2].value.exact_part() == 2);
  CHECK(s[2].multiplicity == 6);
  CHECK(s[2].value.is_exact());
}

TEST_CASE("expander Bolza x R^2, rho = -1, cutoff 3.5") {
  const auto bolza = load_factor_spectrum_file(std::string(SOLITON_DATA_DIR) + "/bolza.json");
  const SolitonModel model(bolza, 4, -1.0);
  CHECK(model.certified_cutoff() == 6.0);
  const auto s = rigid_spectrum(model, 3.5);
  REQUIRE(s.size() == 2);
  CHECK(s[0].value.value() == 2.0);
  CHECK(s[0].multiplicity == 1);
  CHECK(s[1].value.value() == 3.0);
  CHECK(s[1].multiplicity == 2);
  CHECK_THROWS_AS(rigid_spectrum(model, 6.5), IncompleteSpectrumError);
}

TEST_CASE("pure Gaussian expander over a point") {
  const SolitonModel model(point_spectrum(-2.0), 3, -2.0);
  const auto s = rigid_spectrum(model, 20.0);
  for (std::size_t P = 0; P < s.size(); ++P) {
    CHECK(s[P].value.value() == doctest::Approx(2.0 * (3 + P)));
    CHECK(s[P].multiplicity == degree_block_multiplicity(static_cast<std::uint32_t>(P), 3));
  }
}

TEST_CASE("rigid spectrum agrees with per-multi-index enumeration") {
  std::mt19937_64 rng(oracle::seed_from_env());
  std::uniform_int_distribution<int> m_dist(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const bool shrink = trial % 2 == 0;
    const double rho = shrink ? 1.0 : -1.0;
    const int m = m_dist(rng);
    FactorSpectrum f = shrink ? sphere_spectrum(2, rho, 9.0)
                              : synthetic(2, rho, {{0, 1}, {0.7 + 0.1 * (trial % 5), 2}, {2.3, 4}}, 3.0);
    const SolitonModel model(f, 2 + m, rho);
    const double cutoff = model.certified_cutoff();
    INFO("trial " << trial << " m=" << m);
    CHECK(as_map(rigid_spectrum(model, cutoff)) == brute_force(model, cutoff));
  }
}

TEST_CASE("second eigenvalue trichotomy, spec-style examples") {
  SUBCASE("gaussian: Bolza, n = 4") {
    const auto bolza = load_factor_spectrum_file(std::string(SOLITON_DATA_DIR) + "/bolza.json");
    const auto r = second_eigenvalue_case(SolitonModel(bolza, 4, -1.0));
    CHECK(r.which == SecondCase::gaussian);
    CHECK(r.value.value() == 3.0);
    CHECK(r.multiplicity == 2);
  }
  SUBCASE("mixed: lambda_2(N) = -rho, n = 5, k = 2") {
    const SolitonModel model(synthetic(2, -1.0, {{0, 1}, {1, 4}}, 2.0), 5, -1.0);
    const auto r = second_eigenvalue_case(model);
    CHECK(r.which == SecondCase::mixed);
    // Direct enumeration: Gaussian degree one gives 1*(3+1) = 4 (x3), factor line gives 1 + 3 = 4 (x4).
    CHECK(r.value.value() == 4.0);
    CHECK(r.multiplicity == 7);
    const auto lines = enumerate_up_to(rigid_spectrum(model, model.certified_cutoff()), 2);
    CHECK(lines[1].value.value() == 4.0);
    CHECK(lines[1].multiplicity == 7);
  }
  SUBCASE("factor: lambda_2(N) = 0.5, n = 4, k = 2") {
    const auto r = second_eigenvalue_case(SolitonModel(synthetic(2, -1.0, {{0, 1}, {0.5, 2}}, 2.0), 4, -1.0));
    CHECK(r.which == SecondCase::factor);
    CHECK(r.value.value() == 2.5);
    CHECK(r.multiplicity == 2);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(second_eigenvalue_case(SolitonModel(sphere_spectrum(2, 1.0, 9.0), 4, 1.0)), ValidationError);
    CHECK_THROWS_AS(second_eigenvalue_case(SolitonModel(point_spectrum(-1.0), 3, -1.0)), std::exception);
  }
}

TEST_CASE("trichotomy matches enumeration on random factor spectra") {
  std::mt19937_64 rng(oracle::seed_from_env() + 7);
  std::uniform_real_distribution<double> rho_dist(-3.0, -0.25);
  std::uniform_int_distribution<int> k_dist(2, 4), m_dist(1, 4), mult_dist(1, 6), shape(0, 2);
  int counts[3] = {0, 0, 0};
  for (int trial = 0; trial < 300; ++trial) {
    const double rho = rho_dist(rng);
    const int k = k_dist(rng), m = m_dist(rng);
    const int which = shape(rng);
    const double l2 = -rho + (which == 0 ? 0.5 : which == 1 ? 0.0 : -0.5) * std::min(1.0, -rho);
    const auto mult = static_cast<std::uint64_t>(mult_dist(rng));
    const auto f = synthetic(k, rho, {{0, 1}, {l2, mult}, {l2 + 1.0, 2}}, l2 + 1.5);
    const SolitonModel model(f, k + m, rho);
    const auto r = second_eigenvalue_case(model);
    const auto lines = enumerate_up_to(rigid_spectrum(model, model.certified_cutoff()), 2);
    INFO("trial " << trial << " rho=" << rho << " k=" << k << " m=" << m << " l2=" << l2);
    const SecondCase expected = which == 0 ? SecondCase::gaussian : which == 1 ? SecondCase::mixed : SecondCase::factor;
    CHECK(r.which == expected);
    CHECK(r.value.equals(lines[1].value));
    CHECK(r.multiplicity == lines[1].multiplicity);
    const std::uint64_t expected_mult = which == 0 ? m : which == 1 ? mult + m : mult;
    CHECK(r.multiplicity == expected_mult);
    ++counts[which];
  }
  CHECK(counts[0] > 0);
  CHECK(counts[1] > 0);
  CHECK(counts[2] > 0);
}

TEST_CASE("normalization constant is k rho") {
  const auto s2 = sphere_spectrum(2, 1.0, 9.0);
  const auto r = normalization_constant(SolitonModel(s2, 4, 1.0));
  CHECK(r.constant == 2.0);
  CHECK(r.max_deviation <= 1e-14);
  CHECK(r.samples == 1000);
  const auto bolza = load_factor_spectrum_file(std::string(SOLITON_DATA_DIR) + "/bolza.json");
  CHECK(normalization_constant(SolitonModel(bolza, 4, -1.0)).constant == -2.0);
}

TEST_CASE("Schrodinger potential values and divergence") {
  const auto bolza = load_factor_spectrum_file(std::string(SOLITON_DATA_DIR) + "/bolza.json");
  const auto e = schrodinger_potential(SolitonModel(bolza, 4, -1.0), 10.0, 101);
  CHECK(e.v_at_origin == doctest::Approx(-1.0));
  CHECK(e.v_at_radius == doctest::Approx(-1.0 - 25.0));
  CHECK(e.diverges);
  const auto s = schrodinger_potential(SolitonModel(sphere_spectrum(2, 1.0, 9.0), 4, 1.0), 10.0, 101);
  CHECK(s.v_at_origin == doctest::Approx(1.0));
  CHECK(s.diverges);
  const auto again = schrodinger_potential(SolitonModel(sphere_spectrum(2, 1.0, 9.0), 4, 1.0), 3.0, 7);
  CHECK(again.v_at_origin == s.v_at_origin);
}

TEST_CASE("growth ratios equal -rho / 2") {
  const auto bolza = load_factor_spectrum_file(std::string(SOLITON_DATA_DIR) + "/bolza.json");
  const auto e = potential_growth_check(SolitonModel(bolza, 4, -1.0), 10.0);
  CHECK(e.sup_ratio == 0.5);
  CHECK(e.inf_ratio == 0.5);
  CHECK(e.upper_bound_holds);
  CHECK(e.lower_coefficient == -0.5);
  CHECK(e.lower_bound_vacuous);
  const auto s = potential_growth_check(SolitonModel(sphere_spectrum(2, 1.0, 9.0), 4, 1.0), 10.0);
  CHECK(s.sup_ratio == -0.5);
  CHECK(s.inf_ratio == -0.5);
  CHECK(s.upper_bound_holds);
  CHECK(s.lower_bound_holds);
}
