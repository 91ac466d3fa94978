#include "soliton/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "soliton/discretization.hpp"
#include "soliton/errors.hpp"
#include "soliton/hermite.hpp"
#include "soliton/oracles.hpp"
#include "soliton/report.hpp"
#include "soliton/rigid.hpp"
#include "soliton/surface_bounds.hpp"

namespace soliton::cli {

namespace {

using report::Cell;
using report::Format;
using report::Table;

using Section = std::pair<std::string, Table>;

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

// CSV: tables separated by a blank line. JSON: object keyed by section name.
std::string emit_sections(const std::vector<Section>& sections, Format format) {
  if (format == Format::csv) {
    std::string out;
    for (std::size_t i = 0; i < sections.size(); ++i) {
      if (i) out += "\n";
      out += report::emit(sections[i].second, format);
    }
    return out;
  }
  nlohmann::ordered_json doc;
  for (const auto& [name, table] : sections) doc[name] = nlohmann::ordered_json::parse(report::emit(table, format));
  return doc.dump(2) + "\n";
}

Table key_values(std::vector<std::pair<std::string, Cell>> entries) {
  Table t{{"key", "value"}, {}};
  for (auto& [k, v] : entries) t.rows.push_back({k, std::move(v)});
  return t;
}

std::vector<std::size_t> parse_grids(const std::string& text) {
  std::vector<std::size_t> grids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v <= 0) throw std::invalid_argument(item);
      grids.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ValidationError("--grids expects a comma-separated list of positive integers");
    }
  }
  return grids;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? " " : "") + std::to_string(values[i]);
  return out;
}

struct Options {
  std::string format = "csv";
  std::string output;

  std::string factor;
  double rho = 0.0;
  int n = 0;
  int k = 0;
  double cutoff = 0.0;
  std::size_t count = 0;

  int gamma_max = 200;

  int p_max = 20;
  std::size_t points = 2001;
  std::string grids = "512,1024,2048";
  double radius = 0.0;
  std::size_t grid = 2048;
  std::size_t trials = 100;
  long long seed = -1;
  std::size_t samples = 1000;
};

std::string run_spectrum(const Options& o, Format format) {
  SolitonModel model(resolve_factor(o.factor, o.rho, o.cutoff), o.n, o.rho);
  const auto spectrum = rigid_spectrum(model, o.cutoff);
  const auto rows = report::spectrum_rows(spectrum, model.m(), o.count);
  const report::SpectrumMeta meta{model.factor().name + " x R^" + std::to_string(model.m()), model.n(),
                                  model.rho(), spectrum.complete_below()};
  return report::emit_table(rows, format, meta);
}

std::string run_second(const Options& o, Format format) {
  SolitonModel model(resolve_factor(o.factor, o.rho, 0.0), o.n, o.rho);
  const auto second = second_eigenvalue_case(model);
  const auto spectrum = rigid_spectrum(model, model.certified_cutoff());
  const auto first_two = enumerate_up_to(spectrum, 2);
  const bool consistent = first_two[1].value.equals(second.value) &&
                          first_two[1].multiplicity == second.multiplicity;
  return emit_sections(
      {{"second",
        key_values({{"lambda1", first_two[0].value.value()},
                    {"lambda1_multiplicity", static_cast<long long>(first_two[0].multiplicity)},
                    {"lambda2", second.value.value()},
                    {"lambda2_multiplicity", static_cast<long long>(second.multiplicity)},
                    {"case", std::string(to_string(second.which))},
                    {"factor_lambda2", model.factor().lines[1].value.value()},
                    {"threshold_minus_rho", -model.rho()},
                    {"enumerated_lambda2", first_two[1].value.value()},
                    {"enumerated_multiplicity", static_cast<long long>(first_two[1].multiplicity)},
                    {"consistent", consistent}})}},
      format);
}

std::string run_bounds(const Options& o, Format format) {
  const auto r = surface::genus_threshold(o.rho, o.gamma_max);
  Table genera{{"genus", "yang_yau", "kv", "best", "kv_margin", "kv_below", "near_guard"}, {}};
  for (const auto& row : r.rows) {
    genera.rows.push_back({static_cast<long long>(row.genus), row.yang_yau, row.kv, row.best,
                           row.kv_margin, row.kv_below, row.near_guard});
  }
  Table summary = key_values({
      {"rho", r.rho},
      {"gamma_max", static_cast<long long>(r.gamma_max)},
      {"sufficient genus (claimed)", static_cast<long long>(surface::kSufficientGenus)},
      {"all genus>=46: kv < -rho", r.sufficient_from_46},
      {"minimal genus (exact ceiling)", static_cast<long long>(r.minimal_genus)},
      {"failing genera below minimal", join_ints(r.failing_below)},
      {"yang-yau > -rho for all genus", r.yang_yau_never_below},
      {"margins within guard band", r.any_near_guard},
  });
  return emit_sections({{"summary", std::move(summary)}, {"genera", std::move(genera)}}, format);
}

std::string run_verify_hermite(const Options& o, Format format) {
  using hermite::GaussianEigenfunction;
  using hermite::Mode;
  Table t{{"mode", "rho", "max_orthogonality", "max_drift_residual", "passed"}, {}};
  bool all = true;
  for (double rho : {0.5, 1.0, 2.0, -0.5, -1.0, -2.0}) {
    const Mode mode = rho > 0 ? Mode::shrinker : Mode::expander;
    double ortho = 0.0, resid = 0.0;
    std::vector<double> norms;
    for (int p = 0; p <= o.p_max; ++p) {
      const GaussianEigenfunction e{mode, rho, p};
      norms.push_back(std::sqrt(hermite::weighted_inner_product(e, e)));
      const hermite::UniformGrid grid{hermite::residual_half_width(o.p_max, rho), o.points};
      resid = std::max(resid, hermite::drift_residual(e, grid));
    }
    for (int p = 0; p <= o.p_max; ++p) {
      for (int q = p + 1; q <= o.p_max; ++q) {
        const double ip = hermite::weighted_inner_product({mode, rho, p}, {mode, rho, q});
        ortho = std::max(ortho, std::abs(ip) / (norms[p] * norms[q]));
      }
    }
    const bool ok = ortho <= 1e-10 && resid <= 1e-8;
    all = all && ok;
    t.rows.push_back({std::string(mode == Mode::shrinker ? "shrinker" : "expander"), rho, ortho, resid, ok});
  }
  return emit_sections({{"summary", key_values({{"p_max", static_cast<long long>(o.p_max)}, {"passed", all}})},
                        {"hermite", std::move(t)}},
                       format);
}

std::string run_verify_oscillator(const Options& o, Format format) {
  const auto grids = parse_grids(o.grids);
  const auto r = numeric::convergence_study(o.rho, o.p_max, grids, o.radius);
  Table t{{"degree", "target"}, {}};
  for (std::size_t g : grids) t.columns.push_back("error_N" + std::to_string(g));
  t.columns.push_back("finest_ratio");
  t.columns.push_back("ratio_ok");
  t.columns.push_back("skipped");
  for (const auto& row : r.rows) {
    std::vector<Cell> cells{static_cast<long long>(row.degree), row.target};
    for (double e : row.errors) cells.emplace_back(e);
    cells.emplace_back(row.skipped ? std::numeric_limits<double>::quiet_NaN() : row.ratios.back());
    cells.emplace_back(row.finest_ratio_ok);
    cells.emplace_back(row.skipped);
    t.rows.push_back(std::move(cells));
  }
  return emit_sections({{"summary", key_values({{"rho", r.rho},
                                                {"radius", r.half_width},
                                                {"passed", r.passed},
                                                {"truncation", std::string("Dirichlet at +-radius, "
                                                                           "controlled empirically")}})},
                        {"convergence", std::move(t)}},
                       format);
}

std::string run_verify_equivalence(const Options& o, Format format) {
  const double radius = o.radius > 0.0 ? o.radius : 12.0;
  const std::size_t count = o.count > 0 ? o.count : 5;
  const auto r = numeric::equivalence_check(o.rho, o.n, o.k, radius, o.grid, count);
  Table t{{"index", "drift", "schrodinger", "conjugate"}, {}};
  for (std::size_t i = 0; i < r.drift.size(); ++i) {
    t.rows.push_back({static_cast<long long>(i + 1), r.drift[i], r.schrodinger[i], r.conjugate[i]});
  }
  return emit_sections({{"summary", key_values({{"max_deviation", r.max_deviation},
                                                {"tolerance", numeric::kEquivalenceTolerance},
                                                {"passed", r.passed}})},
                        {"eigenvalues", std::move(t)}},
                       format);
}

std::string run_verify_conjugation(const Options& o, Format format) {
  const double radius = o.radius > 0.0 ? o.radius : 8.0;
  std::vector<numeric::TestFunction> tests;
  for (int d = 0; d <= 6; ++d) {
    for (double c : {0.25, 0.5, 1.0}) tests.push_back({d, c});
  }
  Table t{{"F_coefficient", "H_coefficient", "label", "max_residual"}, {}};
  double worst = 0.0;
  auto add = [&](double a_f, double a_h, const std::string& label) {
    const auto r = numeric::conjugation_residual({a_f}, {a_h}, tests, radius, o.points);
    worst = std::max(worst, r.max_residual);
    t.rows.push_back({a_f, a_h, label, r.max_residual});
  };
  const std::vector<double> coefficients{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  for (double a_f : coefficients)
    for (double a_h : coefficients) add(a_f, a_h, "grid");
  for (double rho : {-2.0, -1.0, 1.0, 2.0}) {
    add(rho, 0.5 * rho, "F=f, H=f/2 (rho=" + report::format_number(rho) + ")");
    add(rho, rho, "F=H=f (rho=" + report::format_number(rho) + ")");
  }
  return emit_sections({{"summary", key_values({{"max_residual", worst},
                                                {"tolerance", 1e-9},
                                                {"passed", worst <= 1e-9}})},
                        {"conjugation", std::move(t)}},
                       format);
}

std::string run_verify_product(const Options& o, Format format) {
  const std::uint64_t seed = o.seed >= 0 ? static_cast<std::uint64_t>(o.seed) : oracle::seed_from_env();
  const auto r = oracle::product_oracle(o.trials, seed);
  return emit_sections({{"summary", key_values({{"trials", static_cast<long long>(r.trials)},
                                                {"seed", std::to_string(seed)},
                                                {"mismatches", static_cast<long long>(r.mismatches)},
                                                {"additivity_failures",
                                                 static_cast<long long>(r.additivity_failures)},
                                                {"passed", r.passed}})}},
                       format);
}

std::string run_identities(const Options& o, Format format) {
  SolitonModel model(resolve_factor(o.factor, o.rho, 0.0), o.n, o.rho);
  const double radius = o.radius > 0.0 ? o.radius : 10.0;
  const auto c = normalization_constant(model, radius, o.samples);
  const auto v = schrodinger_potential(model, radius, o.samples);
  const auto g = potential_growth_check(model, radius, o.samples);
  return emit_sections(
      {{"identities",
        key_values({{"normalization_constant", c.constant},
                    {"normalization_max_deviation", c.max_deviation},
                    {"samples", static_cast<long long>(c.samples)},
                    {"potential_at_origin", v.v_at_origin},
                    {"potential_at_radius", v.v_at_radius},
                    {"potential_diverges", v.diverges},
                    {"growth_expected_ratio", g.expected_ratio},
                    {"growth_sup_ratio", g.sup_ratio},
                    {"growth_inf_ratio", g.inf_ratio},
                    {"growth_upper_bound_holds", g.upper_bound_holds},
                    {"growth_lower_bound_holds", g.lower_bound_holds},
                    {"growth_lower_coefficient", g.lower_coefficient},
                    {"growth_lower_bound",
                     std::string(g.lower_bound_vacuous ? "vacuous" : "informative")}})}},
      format);
}

}  // namespace

FactorSpectrum resolve_factor(const std::string& source, double rho, double cutoff) {
  if (source == "point") return point_spectrum(rho);
  if (source.rfind("file:", 0) == 0) {
    auto f = load_factor_spectrum_file(source.substr(5));
    if (!approx_equal(f.rho, rho)) {
      throw ValidationError("factor file rho " + report::format_number(f.rho) +
                            " does not match --rho " + report::format_number(rho));
    }
    return f;
  }
  if (source.rfind("sphere:k=", 0) == 0) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(source.substr(9), &used);
      if (used != source.size() - 9) throw std::invalid_argument(source);
    } catch (const std::exception&) {
      throw ValidationError("bad factor source '" + source + "' (expected sphere:k=K)");
    }
    if (!(cutoff > 0.0)) {
      // Enough lines for the second eigenvalue and the identities.
      cutoff = 7.0 * k * std::abs(rho) / std::max(1, k - 1);
    }
    return sphere_spectrum(k, rho, cutoff);
  }
  throw ValidationError("unknown factor source '" + source + "' (expected sphere:k=K, point or file:PATH)");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of drift Laplacians on rigid gradient Ricci solitons", "soliton-spectra"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", o.output, "Write results to this path instead of stdout");

  auto* spectrum = app.add_subcommand("spectrum", "Drift-Laplacian spectrum of N^k x R^(n-k) below a cutoff");
  spectrum->add_option("--factor", o.factor, "sphere:k=K, point or file:PATH")->required();
  spectrum->add_option("--rho", o.rho, "Soliton constant")->required();
  spectrum->add_option("--n", o.n, "Total dimension")->required();
  spectrum->add_option("--cutoff", o.cutoff, "List eigenvalues below this value")->required();
  spectrum->add_option("--count", o.count, "Only the first COUNT lines");

  auto* second = app.add_subcommand("second", "Second eigenvalue case analysis for rigid expanders");
  second->add_option("--factor", o.factor, "point or file:PATH")->required();
  second->add_option("--rho", o.rho, "Soliton constant (negative)")->required();
  second->add_option("--n", o.n, "Total dimension")->required();

  auto* bounds = app.add_subcommand("bounds", "Yang-Yau and Karpukhin-Vinokurov bounds by genus");
  bounds->add_option("--rho", o.rho, "Constant curvature (negative)")->required();
  bounds->add_option("--gamma-max", o.gamma_max, "Largest genus to tabulate (>= 46)");

  auto* verify = app.add_subcommand("verify", "Numerical verification suites");
  verify->require_subcommand(1);
  auto* v_hermite = verify->add_subcommand("hermite", "Hermite orthogonality and eigen-residuals");
  v_hermite->add_option("--p-max", o.p_max, "Largest degree");
  v_hermite->add_option("--points", o.points, "Residual grid points");
  auto* v_osc = verify->add_subcommand("oscillator", "Grid convergence toward the Gaussian spectrum");
  v_osc->add_option("--rho", o.rho, "Soliton constant")->required();
  v_osc->add_option("--p-max", o.p_max, "Largest degree")->default_val(4);
  v_osc->add_option("--grids", o.grids, "Comma-separated interior point counts");
  v_osc->add_option("--radius", o.radius, "Half-width R (default from the degree rule)");
  auto* v_eq = verify->add_subcommand("equivalence", "Drift, Schrodinger and conjugate forms agree");
  v_eq->add_option("--rho", o.rho, "Soliton constant")->required();
  v_eq->add_option("--n", o.n, "Total dimension")->required();
  v_eq->add_option("--k", o.k, "Factor dimension")->required();
  v_eq->add_option("--grid", o.grid, "Interior points");
  v_eq->add_option("--radius", o.radius, "Half-width R");
  v_eq->add_option("--count", o.count, "Eigenvalues to compare");
  auto* v_conj = verify->add_subcommand("conjugation", "Conjugation identity for drift Laplacians");
  v_conj->add_option("--radius", o.radius, "Half-width of the sample grid");
  v_conj->add_option("--points", o.points, "Sample points")->default_val(801);
  auto* v_prod = verify->add_subcommand("product-oracle", "Product spectrum against brute force");
  v_prod->add_option("--trials", o.trials, "Random pairs");
  v_prod->add_option("--seed", o.seed, "RNG seed (default: SOLITON_SPECTRA_SEED)");

  auto* identities = app.add_subcommand("identities", "Normalization, Schrodinger potential and growth checks");
  identities->add_option("--factor", o.factor, "sphere:k=K, point or file:PATH")->required();
  identities->add_option("--rho", o.rho, "Soliton constant")->required();
  identities->add_option("--n", o.n, "Total dimension")->required();
  identities->add_option("--radius", o.radius, "Largest |y| sampled");
  identities->add_option("--samples", o.samples, "Sample count");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << app.help();
    err << "error: " << one_line(e.what()) << '\n';
    return kExitValidation;
  }

  try {
    const Format format = report::parse_format(o.format);
    std::string result;
    if (spectrum->parsed()) {
      result = run_spectrum(o, format);
    } else if (second->parsed()) {
      result = run_second(o, format);
    } else if (bounds->parsed()) {
      result = run_bounds(o, format);
    } else if (v_hermite->parsed()) {
      result = run_verify_hermite(o, format);
    } else if (v_osc->parsed()) {
      result = run_verify_oscillator(o, format);
    } else if (v_eq->parsed()) {
      result = run_verify_equivalence(o, format);
    } else if (v_conj->parsed()) {
      result = run_verify_conjugation(o, format);
    } else if (v_prod->parsed()) {
      result = run_verify_product(o, format);
    } else if (identities->parsed()) {
      result = run_identities(o, format);
    }

    if (o.output.empty()) {
      out << result;
    } else {
      std::ofstream file(o.output, std::ios::binary | std::ios::trunc);
      if (!file || !(file << result) || !file.flush()) {
        err << "error: cannot write output file " << one_line(o.output) << '\n';
        return kExitInternal;
      }
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitValidation;
  } catch (const IncompleteSpectrumError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: internal: " << one_line(e.what()) << '\n';
    return kExitInternal;
  }
}

}  // namespace soliton::cli
