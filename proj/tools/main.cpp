// Command-line front door. Subcommands: norm, bounds, check, experiment, gen.
// Exit codes: 0 success, 2 input error, 3 solver failure, 4 verdict failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trinorm/trinorm.hpp"

namespace {

using nlohmann::json;
using namespace trinorm;

struct Shape {
  int d1 = 0, d2 = 0, d3 = 0;
};

Shape parse_shape(const std::string& s) {
  Shape sh;
  char x1 = 0, x2 = 0;
  std::istringstream in(s);
  if (!(in >> sh.d1 >> x1 >> sh.d2 >> x2 >> sh.d3) || x1 != 'x' || x2 != 'x' || !in.eof() ||
      sh.d1 < 1 || sh.d2 < 1 || sh.d3 < 1)
    throw std::invalid_argument("shape must look like d1xd2xd3 with positive dimensions, got '" +
                                s + "'");
  return sh;
}

json verdicts_json(const std::vector<Verdict>& vs) {
  json arr = json::array();
  for (const Verdict& v : vs) arr.push_back({{"name", v.name}, {"pass", v.pass}, {"slack", v.slack}});
  return arr;
}

json report_json(const BoundsReport& r) {
  json lower = json::array();
  for (const LowerEntry& lo : r.lower_slice)
    lower.push_back({{"axis", lo.axis}, {"mode", slice_mode_name(lo.mode)}, {"value", lo.value}});
  json sanw = json::array();
  for (const SandwichRecord& s : r.sandwiches)
    sanw.push_back({{"axis", s.axis},
                    {"d", s.d},
                    {"rho_over_d", s.rho_over_d},
                    {"L", s.L},
                    {"estimate_sq", s.estimate_sq},
                    {"rho", s.rho},
                    {"d_times_L", s.d_times_L}});
  json nuc_axes = json::array();
  for (const NuclearAxisRecord& a : r.nuclear.per_axis)
    nuc_axes.push_back({{"axis", a.axis},
                        {"flatten_nuclear", a.flatten_nuclear},
                        {"gram_nuclear", a.gram_nuclear},
                        {"unfold_nuclear", a.unfold_nuclear},
                        {"bracket_lo", a.bracket_lo},
                        {"bracket_hi", a.bracket_hi}});
  json upper;
  upper["flatten"] = json::array({r.upper_flatten[0], r.upper_flatten[1], r.upper_flatten[2]});
  upper["gram"] = json::array({r.upper_gram[0], r.upper_gram[1], r.upper_gram[2]});
  return json{{"estimate", r.estimate},
              {"route", {{"hopm", r.hopm_route}, {"meig", r.meig_route}}},
              {"upper", upper},
              {"lower", lower},
              {"sandwich", sanw},
              {"nuclear",
               {{"per_axis", nuc_axes},
                {"best_lower", r.nuclear.best_lower},
                {"bracket_lo", r.nuclear.bracket_lo},
                {"bracket_hi", r.nuclear.bracket_hi},
                {"upper",
                 {{"value", r.nuclear.upper.value},
                  {"tail", r.nuclear.upper.tail},
                  {"terms", r.nuclear.upper.terms},
                  {"converged", r.nuclear.upper.converged}}}}},
              {"verdicts", verdicts_json(r.verdicts)},
              {"footnotes", r.footnotes},
              {"errors", r.errors}};
}

int run_norm(const Tensor3& A, const RunConfig& cfg) {
  const SpectralEstimate e = spectral_norm(A, cfg.restarts, cfg.seed, cfg.tol);
  if (cfg.format == OutputFormat::structured) {
    json j{{"command", "norm"},
           {"spectral_norm", e.value},
           {"route", {{"hopm", e.hopm_route}, {"meig", e.meig_route}}},
           {"residual",
            {{"triple", {e.triple.residuals[0], e.triple.residuals[1], e.triple.residuals[2]}},
             {"pair", {e.pair.residuals[0], e.pair.residuals[1]}}}}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "spectral_norm = " << format_double(e.value) << "\n"
            << "route.hopm = " << format_double(e.hopm_route) << "\n"
            << "route.meig = " << format_double(e.meig_route) << "\n";
  for (int i = 0; i < 3; ++i)
    std::cout << "residual.triple." << (i + 1) << " = " << format_double(e.triple.residuals[i])
              << "\n";
  for (int i = 0; i < 2; ++i)
    std::cout << "residual.pair." << (i + 1) << " = " << format_double(e.pair.residuals[i])
              << "\n";
  return 0;
}

int run_bounds(const Tensor3& A, const RunConfig& cfg) {
  const BoundsReport r = build_report(A, cfg);
  if (cfg.format == OutputFormat::structured) {
    json j = report_json(r);
    j["command"] = "bounds";
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render_report(r);
  }
  return 0;
}

int run_check_cmd(const Tensor3& A, const RunConfig& cfg) {
  const CheckResult res = run_check(A, cfg);
  const bool ok = res.all_pass();
  if (cfg.format == OutputFormat::structured) {
    json j{{"command", "check"},
           {"oracle",
            {{"method", res.oracle.method},
             {"value", res.oracle.value},
             {"slack", res.oracle.slack},
             {"resolution", res.oracle.resolution},
             {"restarts", res.oracle.restarts}}},
           {"verdicts", verdicts_json(res.verdicts)},
           {"errors", res.report.errors},
           {"pass", ok}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "oracle.method = " << res.oracle.method << "\n"
              << "oracle.value = " << format_double(res.oracle.value) << "\n"
              << "oracle.slack = " << format_double(res.oracle.slack) << "\n";
    for (const Verdict& v : res.verdicts)
      std::cout << "verdict." << v.name << " = " << (v.pass ? "pass " : "fail ")
                << format_double(v.slack) << "\n";
    for (const std::string& e : res.report.errors) std::cout << "error = " << e << "\n";
    std::cout << "check = " << (ok ? "pass" : "fail") << "\n";
  }
  if (!ok) {
    for (const Verdict& v : res.verdicts)
      if (!v.pass)
        std::cerr << "verdict failure: " << v.name << " (slack " << format_double(v.slack)
                  << ")\n";
    return 4;
  }
  return 0;
}

int run_experiment_cmd(const Shape& sh, int count, const RunConfig& cfg) {
  const ExperimentResult res = run_experiment(sh.d1, sh.d2, sh.d3, count, cfg);
  if (cfg.format == OutputFormat::structured) {
    json rows = json::array();
    for (const ExperimentRow& row : res.rows)
      rows.push_back(
          {{"threshold", row.threshold}, {"within", row.within}, {"fraction", row.fraction}});
    json j{{"command", "experiment"},
           {"shape", {res.d1, res.d2, res.d3}},
           {"count", res.count},
           {"distribution", res.distribution},
           {"note",
            "gap fractions depend on the entry distribution; tables produced with a different "
            "or unstated distribution are not directly comparable"},
           {"reference", res.reference},
           {"mean_gap", res.mean_gap},
           {"max_gap", res.max_gap},
           {"rows", rows}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render_experiment(res);
  }
  return 0;
}

int run_gen(const Shape& sh, std::uint64_t seed, const std::string& dist) {
  const int n = sh.d1 * sh.d2 * sh.d3;
  Rng rng(seed);
  std::vector<double> entries(static_cast<std::size_t>(n));
  for (double& v : entries)
    v = dist == "uniform" ? rng.uniform(-1.0, 1.0) : rng.normal();
  const Tensor3 A(sh.d1, sh.d2, sh.d3, std::move(entries));
  std::cout << "# shape " << sh.d1 << "x" << sh.d2 << "x" << sh.d3 << " seed " << seed << " dist "
            << dist << "\n"
            << write_tensor(A);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral and nuclear norm estimates, bounds, and cross-checks for real third-"
               "order tensors"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "text";
  app.add_option("--seed", cfg.seed, "base seed for all randomized solvers")
      ->capture_default_str();
  app.add_option("--restarts", cfg.restarts, "multistart count for the solvers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol", cfg.tol, "solver convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--grid", cfg.n_grid, "grid resolution per angle for the 2x2xn oracle")
      ->check(CLI::Range(100, 100000))
      ->capture_default_str();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  std::string norm_file, bounds_file, check_file;
  CLI::App* sc_norm = app.add_subcommand("norm", "spectral norm estimate via both routes");
  sc_norm->add_option("file", norm_file, "tensor file")->required();
  CLI::App* sc_bounds = app.add_subcommand("bounds", "full upper/lower bound report");
  sc_bounds->add_option("file", bounds_file, "tensor file")->required();
  CLI::App* sc_check = app.add_subcommand("check", "cross-validate bounds against oracles");
  sc_check->add_option("file", check_file, "tensor file")->required();

  std::string exp_shape;
  int exp_count = 1000;
  CLI::App* sc_exp = app.add_subcommand("experiment", "gap statistics over random tensors");
  sc_exp->add_option("--shape", exp_shape, "tensor shape d1xd2xd3")->required();
  sc_exp->add_option("--count", exp_count, "number of random instances")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string gen_shape, gen_dist = "normal";
  std::uint64_t gen_seed = 0;
  CLI::App* sc_gen = app.add_subcommand("gen", "write a random tensor file to standard output");
  sc_gen->add_option("--shape", gen_shape, "tensor shape d1xd2xd3")->required();
  CLI::Option* gen_seed_opt = sc_gen->add_option("--seed", gen_seed, "generator seed");
  sc_gen->add_option("--dist", gen_dist, "entry distribution")
      ->check(CLI::IsMember({"normal", "uniform"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.format = format == "structured" ? OutputFormat::structured : OutputFormat::text;

  try {
    cfg.validate();
    if (sc_norm->parsed()) return run_norm(load_tensor(norm_file), cfg);
    if (sc_bounds->parsed()) return run_bounds(load_tensor(bounds_file), cfg);
    if (sc_check->parsed()) return run_check_cmd(load_tensor(check_file), cfg);
    if (sc_exp->parsed()) return run_experiment_cmd(parse_shape(exp_shape), exp_count, cfg);
    if (sc_gen->parsed())
      return run_gen(parse_shape(gen_shape), gen_seed_opt->count() > 0 ? gen_seed : cfg.seed,
                     gen_dist);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const EigError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const RestartSignal& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
}
