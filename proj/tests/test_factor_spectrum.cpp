#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "soliton/errors.hpp"
#include "soliton/factor_spectrum.hpp"

using namespace soliton;

namespace {

// Number of monomials of total degree d in `vars` variables, by explicit enumeration.
std::uint64_t count_monomials(int vars, int d) {
  std::uint64_t count = 0;
  std::function<void(int, int)> walk = [&](int var, int remaining) {
    if (var == vars - 1) {
      ++count;
      return;
    }
    for (int e = 0; e <= remaining; ++e) walk(var + 1, remaining - e);
  };
  if (d < 0) return 0;
  walk(0, d);
  return count;
}

// Harmonic homogeneous polynomials of degree j in k+1 variables: the Laplacian maps
// degree-j polynomials onto degree-(j-2) ones, so the kernel has the difference dimension.
std::uint64_t harmonic_dimension(int k, int j) { return count_monomials(k + 1, j) - count_monomials(k + 1, j - 2); }

bool mentions(const std::string& text, const std::string& fragment) { return text.find(fragment) != std::string::npos; }

std::string rejection(const std::string& doc) {
  try {
    load_factor_spectrum(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("S^2 with rho = 1: mu_j = j(j+1), multiplicity 2j+1") {
  const auto s = sphere_spectrum(2, 1.0, 13.0);
  REQUIRE(s.lines.size() == 4);
  CHECK(s.lines[0].value.value() == 0.0);
  CHECK(s.lines[1].value.value() == 2.0);
  CHECK(s.lines[2].value.value() == 6.0);
  CHECK(s.lines[3].value.value() == 12.0);
  for (std::size_t j = 0; j < 4; ++j) CHECK(s.lines[j].multiplicity == 2 * j + 1);
  CHECK(s.lines[2].value.is_exact());
  CHECK(s.violations().empty());
}

TEST_CASE("sphere multiplicities match a brute-force harmonic polynomial count") {
  for (int k : {2, 3, 4}) {
    const auto s = sphere_spectrum(k, 1.0, 200.0);
    REQUIRE(s.lines.size() >= 11);
    for (int j = 0; j <= 10; ++j) {
      INFO("k=" << k << " j=" << j);
      CHECK(s.lines[j].multiplicity == harmonic_dimension(k, j));
      CHECK(s.lines[j].value.value() == doctest::Approx(j * (j + k - 1) / double(k - 1)));
    }
  }
}

TEST_CASE("S^3 with rho = 2 attains the Lichnerowicz bound") {
  const auto s = sphere_spectrum(3, 2.0, 10.0);
  CHECK(s.lines[1].value.value() == doctest::Approx(3.0));
  CHECK(s.lines[1].value.exact_part() * 2 == 3);  // exact multiple of |rho| = 2
  CHECK(s.violations().empty());
}

TEST_CASE("sphere cutoff excludes a line equal to the cutoff") {
  const auto s = sphere_spectrum(2, 1.0, 6.0);
  REQUIRE(s.lines.size() == 2);
  CHECK(s.lines.back().value.value() == 2.0);
  CHECK(s.complete_below == 6.0);
}

TEST_CASE("sphere_spectrum argument checks") {
  CHECK_THROWS_AS(sphere_spectrum(1, 1.0, 5.0), ValidationError);
  CHECK_THROWS_AS(sphere_spectrum(2, -1.0, 5.0), ValidationError);
  CHECK_THROWS_AS(sphere_spectrum(2, 1.0, 0.0), ValidationError);
}

TEST_CASE("point factor") {
  const auto p = point_spectrum(-1.0);
  CHECK(p.dim == 0);
  CHECK(p.lines.size() == 1);
  CHECK(std::isinf(p.complete_below));
  CHECK(p.violations().empty());
  CHECK(p.as_spectrum().size() == 1);
}

TEST_CASE("Bolza document is accepted") {
  const auto s = load_factor_spectrum(
      R"({"name":"bolza","dim":2,"rho":-1,"eigenvalues":[{"value":0,"multiplicity":1},{"value":3.8,"multiplicity":3}],"complete_below":4})");
  CHECK(s.name == "bolza");
  CHECK(s.dim == 2);
  REQUIRE(s.lines.size() == 2);
  CHECK(s.lines[1].value.value() == 3.8);
  CHECK_FALSE(s.lines[1].value.is_exact());
  CHECK(s.complete_below == 4.0);
}

TEST_CASE("the shipped Bolza data file loads") {
  const auto s = load_factor_spectrum_file(std::string(SOLITON_DATA_DIR) + "/bolza.json");
  CHECK(s.rho == -1.0);
  CHECK(s.lines[1].multiplicity == 3);
}

TEST_CASE("rejections name every violated invariant") {
  const auto first = rejection(
      R"({"name":"x","dim":2,"rho":-1,"eigenvalues":[{"value":0.5,"multiplicity":1}],"complete_below":4})");
  CHECK(mentions(first, "mu0 must be 0"));

  const auto lich = rejection(
      R"({"name":"x","dim":2,"rho":1,"eigenvalues":[{"value":0,"multiplicity":1},{"value":1.5,"multiplicity":3}],"complete_below":4})");
  CHECK(mentions(lich, "Lichnerowicz"));

  const auto unsorted = rejection(
      R"({"name":"x","dim":2,"rho":-1,"eigenvalues":[{"value":0,"multiplicity":1},{"value":3,"multiplicity":1},{"value":2,"multiplicity":1}],"complete_below":4})");
  CHECK(mentions(unsorted, "strictly increasing"));

  const auto missing = rejection(R"({"name":"x","dim":2,"rho":-1,"eigenvalues":[{"value":0,"multiplicity":1}]})");
  CHECK(mentions(missing, "missing complete_below"));

  const auto several = rejection(
      R"({"name":"x","dim":2,"rho":1,"eigenvalues":[{"value":0.5,"multiplicity":2},{"value":1.0,"multiplicity":3},{"value":9,"multiplicity":1}],"complete_below":4})");
  CHECK(mentions(several, "mu0 must be 0"));
  CHECK(mentions(several, "multiplicity 1"));
  CHECK(mentions(several, "Lichnerowicz"));
  CHECK(mentions(several, "not below complete_below"));

  CHECK(mentions(rejection("not json"), "not valid JSON"));
  CHECK(mentions(rejection("[]"), "JSON object"));
  CHECK(mentions(rejection(R"({"name":"x","dim":2,"rho":-1,"eigenvalues":[{"value":0,"multiplicity":0}],"complete_below":4})"),
                 "positive integer"));
}

TEST_CASE("Lichnerowicz slack of 1e-9") {
  auto s = sphere_spectrum(2, 1.0, 10.0);
  s.lines[1].value = ScalarValue::numeric(2.0 - 5e-10);
  CHECK(s.violations().empty());
  s.lines[1].value = ScalarValue::numeric(2.0 - 1e-8);
  CHECK_FALSE(s.violations().empty());
}

TEST_CASE("extra keys are ignored") {
  CHECK_NOTHROW(load_factor_spectrum(
      R"({"name":"x","dim":2,"rho":-1,"source":"ref","eigenvalues":[{"value":0,"multiplicity":1,"note":"c"}],"complete_below":4})"));
}

TEST_CASE("write then load is the identity, bit for bit") {
  FactorSpectrum s;
  s.name = "synthetic";
  s.dim = 3;
  s.rho = -0.7;
  s.lines = {{ScalarValue::numeric(0.0), 1},
             {ScalarValue::numeric(0.1 + 0.2), 4},
             {ScalarValue::numeric(std::nextafter(1.0, 2.0)), 2},
             {ScalarValue::numeric(2.718281828459045), 7}};
  s.complete_below = 3.141592653589793;
  const auto back = load_factor_spectrum(write_factor_spectrum(s));
  CHECK(back.name == s.name);
  CHECK(back.dim == s.dim);
  CHECK(back.rho == s.rho);
  CHECK(back.complete_below == s.complete_below);
  REQUIRE(back.lines.size() == s.lines.size());
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    CHECK(back.lines[i].value.value() == s.lines[i].value.value());
    CHECK(back.lines[i].multiplicity == s.lines[i].multiplicity);
  }
  CHECK(write_factor_spectrum(back) == write_factor_spectrum(s));
}

TEST_CASE("hyperbolic bottom -(k-1) rho / 4") {
  // Oracle: rho = -(k-1) c^2 for sectional curvature -c^2, bottom (k-1)^2 c^2 / 4.
  auto oracle = [](int k, double rho) {
    const double c2 = -rho / (k - 1);
    return (k - 1) * (k - 1) * c2 / 4.0;
  };
  CHECK(hyperbolic_bottom(2, -1.0) == doctest::Approx(0.25));
  CHECK(hyperbolic_bottom(3, -2.0) == doctest::Approx(oracle(3, -2.0)));
  CHECK(hyperbolic_bottom(3, -2.0) == doctest::Approx(1.0));
  CHECK(hyperbolic_bottom(5, -0.3) == doctest::Approx(oracle(5, -0.3)));
  CHECK_THROWS_AS(hyperbolic_bottom(2, 0.0), ValidationError);
  CHECK_THROWS_AS(hyperbolic_bottom(1, -1.0), ValidationError);
}
