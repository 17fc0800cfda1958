// rankwin: estimate win probabilities from benchmark rankings.
//
//   rankwin estimate  <file>   per-method win probabilities and top-3 table
//   rankwin validate  <file>   k-fold cross-entropy with paired p-values
//   rankwin bound              data-independent minimax bound curves
//   rankwin simulate           Monte Carlo risk on synthetic families
//   rankwin sample             draw a synthetic benchmark as matrix CSV
//
// Exit codes: 0 success, 2 bad input or arguments, 3 infeasible settings.

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rankwin/error.hpp"
#include "rankwin/io.hpp"
#include "rankwin/methods.hpp"
#include "rankwin/minimax.hpp"
#include "rankwin/random.hpp"
#include "rankwin/report.hpp"
#include "rankwin/synthetic.hpp"
#include "rankwin/validation.hpp"

namespace {

using namespace rankwin;

constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;

struct InputArgs {
  std::string path;
  std::string format = "auto";
  std::string roster;
  bool extend_roster = false;
};

struct SharedArgs {
  std::string output_format;
  std::string output;
  std::uint64_t seed = 0;
  double floor = kProbabilityFloor;
  std::size_t order = kDefaultOrder;
  bool no_monotone = false;
  std::size_t grid_resolution = 100;
  std::vector<std::string> methods;

  static constexpr std::size_t kDefaultOrder = 3;
};

struct FamilyArgs {
  std::vector<std::string> families;
  std::size_t m = 6;
  FamilyParams params;
};

void add_input(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("input", in.path, "Rankings CSV")->required();
  cmd->add_option("--input-format", in.format, "auto, matrix or topk")
      ->capture_default_str();
  cmd->add_option("--roster", in.roster,
                  "Algorithm names (topk), one per line");
  cmd->add_flag("--extend-roster", in.extend_roster,
                "Append names missing from the roster instead of failing");
}

void add_output(CLI::App* cmd, SharedArgs& s, const std::string& format) {
  s.output_format = format;
  cmd->add_option("--format", s.output_format, "json, csv or table")
      ->capture_default_str();
  cmd->add_option("-o,--output", s.output, "Write here instead of stdout");
}

void add_model(CLI::App* cmd, SharedArgs& s) {
  cmd->add_option("-K,--order", s.order, "Rank positions used by weights")
      ->capture_default_str();
  cmd->add_flag("--no-monotone", s.no_monotone,
                "Search all weights, not only non-increasing ones");
  cmd->add_option("--grid-resolution", s.grid_resolution,
                  "Initial weight grid resolution")
      ->capture_default_str();
  cmd->add_option("--eps", s.floor, "Probability floor for log losses")
      ->capture_default_str();
}

void add_family(CLI::App* cmd, FamilyArgs& f, bool many) {
  if (many) {
    cmd->add_option("--family", f.families,
                    "zipf, geometric, negative_binomial, beta_binomial, "
                    "uniform, step (default: all)")
        ->delimiter(',');
  } else {
    f.families = {"zipf"};
    cmd->add_option("--family", f.families, "Distribution family")
        ->expected(1);
  }
  cmd->add_option("--m", f.m, "Number of algorithms (2..8)")
      ->capture_default_str();
  cmd->add_option("--zipf-s", f.params.zipf_s)->capture_default_str();
  cmd->add_option("--geometric-alpha", f.params.geometric_alpha)
      ->capture_default_str();
  cmd->add_option("--negbin-l", f.params.negbin_l)->capture_default_str();
  cmd->add_option("--negbin-r", f.params.negbin_r)->capture_default_str();
  cmd->add_option("--betabin-alpha", f.params.betabin_alpha)
      ->capture_default_str();
  cmd->add_option("--betabin-beta", f.params.betabin_beta)
      ->capture_default_str();
}

MethodSettings method_settings(const SharedArgs& s) {
  MethodSettings settings;
  settings.order = s.order;
  settings.monotone = !s.no_monotone;
  settings.floor = s.floor;
  settings.seed = s.seed;
  settings.search.grid_resolution = s.grid_resolution;
  return settings;
}

RunConfig base_config(const std::string& command, const SharedArgs& s) {
  RunConfig config;
  config.command = command;
  config.methods = s.methods;
  config.order = s.order;
  config.seed = s.seed;
  config.grid_resolution = s.grid_resolution;
  config.output_format = s.output_format;
  config.floor = s.floor;
  config.monotone = !s.no_monotone;
  return config;
}

void add_family_params(RunConfig& config, const FamilyArgs& f) {
  auto put = [&](const char* key, double v) {
    char buf[32];
    auto end = std::to_chars(buf, buf + sizeof buf, v).ptr;
    config.extra.emplace_back(key, std::string(buf, end));
  };
  config.extra.emplace_back("m", std::to_string(f.m));
  put("zipf_s", f.params.zipf_s);
  put("geometric_alpha", f.params.geometric_alpha);
  put("negbin_l", f.params.negbin_l);
  put("negbin_r", f.params.negbin_r);
  put("betabin_alpha", f.params.betabin_alpha);
  put("betabin_beta", f.params.betabin_beta);
}

ParsedSample load(const InputArgs& in, RunConfig& config) {
  CsvOptions options;
  options.format = parse_csv_format(in.format);
  if (!in.roster.empty()) options.roster = read_roster(in.roster);
  options.extend_roster = in.extend_roster;
  config.inputs.push_back(in.path);
  if (!in.roster.empty()) config.inputs.push_back(in.roster);
  config.input_format = in.format;
  config.extra.emplace_back("extend_roster", in.extend_roster ? "1" : "0");
  return parse_rankings_csv(std::filesystem::path(in.path), options);
}

void emit(const SharedArgs& s, const std::string& text) {
  if (s.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(s.output, std::ios::binary);
  if (!out) throw InputError("cannot write " + s.output);
  out << text;
}

std::vector<std::size_t> n_grid(const std::vector<std::size_t>& listed,
                                std::size_t lo, std::size_t hi,
                                std::size_t step) {
  if (!listed.empty()) return listed;
  if (step == 0 || lo == 0 || hi < lo) {
    throw InputError("need 1 <= n-min <= n-max and n-step >= 1");
  }
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; n += step) out.push_back(n);
  return out;
}

std::uint64_t family_tag(Family family) {
  return static_cast<std::uint64_t>(family) + 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Estimate the probability that each algorithm wins a future "
               "dataset from benchmark rankings."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " +
                                        kToolVersion);

  // estimate
  InputArgs est_in;
  SharedArgs est;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "Win-probability estimates from every requested method");
  add_input(estimate, est_in);
  add_output(estimate, est, "table");
  add_model(estimate, est);
  double pl_pseudo = -1.0;
  estimate->add_option("--methods", est.methods,
                       "Comma-separated method names")
      ->delimiter(',');
  estimate->add_option("--pl-pseudo-count", pl_pseudo,
                       "Plackett-Luce pseudo-count (negative: automatic)")
      ->capture_default_str();

  // validate
  InputArgs val_in;
  SharedArgs val;
  std::size_t folds = kDefaultFolds;
  std::string reference = "mle";
  std::string test_name = "t";
  CLI::App* validate = app.add_subcommand(
      "validate", "k-fold held-out cross-entropy per method");
  add_input(validate, val_in);
  add_output(validate, val, "table");
  add_model(validate, val);
  validate->add_option("--k", folds, "Number of folds")->capture_default_str();
  validate->add_option("--seed", val.seed, "Fold shuffle seed")
      ->capture_default_str();
  validate->add_option("--methods", val.methods, "Comma-separated methods")
      ->delimiter(',');
  validate->add_option("--reference", reference,
                       "Method the p-values compare against")
      ->capture_default_str();
  validate->add_option("--test", test_name, "t or sign_permutation")
      ->capture_default_str();
  validate->add_option("--pl-pseudo-count", pl_pseudo,
                       "Plackett-Luce pseudo-count (negative: automatic)")
      ->capture_default_str();

  // bound
  SharedArgs bnd;
  std::size_t bound_m = 5;
  std::vector<std::size_t> bound_n;
  std::size_t n_min = 5, n_max = 50, n_step = 5;
  std::vector<std::size_t> bound_orders{2, 3};
  std::size_t bound_resolution = TopKSearchOptions{}.grid_resolution;
  CLI::App* bound =
      app.add_subcommand("bound", "Minimax total-variation bound curves");
  add_output(bound, bnd, "csv");
  bound->add_option("--m", bound_m, "Number of algorithms")
      ->capture_default_str();
  bound->add_option("--n", bound_n, "Sample sizes (overrides the range)")
      ->delimiter(',');
  bound->add_option("--n-min", n_min)->capture_default_str();
  bound->add_option("--n-max", n_max)->capture_default_str();
  bound->add_option("--n-step", n_step)->capture_default_str();
  bound->add_option("--K", bound_orders, "Model orders for top-K curves")
      ->delimiter(',')
      ->capture_default_str();
  bound->add_option("--grid-resolution", bound_resolution,
                    "Outer weight grid resolution")
      ->capture_default_str();

  // simulate
  SharedArgs sim;
  FamilyArgs sim_family;
  std::vector<std::size_t> sim_n{20};
  std::size_t replicas = 1000;
  std::size_t oracle_replicas = MethodSettings{}.oracle_replicas;
  std::string divergence_name = "kl";
  std::string weights_out;
  std::size_t threads = 0;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo risk of estimators on synthetic rankings");
  add_output(simulate, sim, "csv");
  add_model(simulate, sim);
  add_family(simulate, sim_family, true);
  simulate->add_option("--n", sim_n, "Sample sizes")
      ->delimiter(',')
      ->capture_default_str();
  simulate->add_option("--replicas", replicas)->capture_default_str();
  simulate->add_option("--seed", sim.seed)->capture_default_str();
  simulate->add_option("--methods", sim.methods,
                       "Estimators (default mle,loo_kl,loo_tv)")
      ->delimiter(',');
  simulate->add_option("--divergence", divergence_name, "kl, tv or both")
      ->capture_default_str();
  simulate->add_option("--oracle-replicas", oracle_replicas,
                       "Samples scoring each oracle candidate")
      ->capture_default_str();
  simulate->add_option("--weights-out", weights_out,
                       "CSV of mean fitted weights per estimator and n");
  simulate->add_option("--threads", threads,
                       "Worker threads (0: RANKWIN_THREADS or 1)")
      ->capture_default_str();

  // sample
  SharedArgs smp;
  FamilyArgs smp_family;
  std::size_t sample_n = 100;
  std::size_t sample_depth = 0;
  CLI::App* sample = app.add_subcommand(
      "sample", "Draw a synthetic benchmark (matrix CSV, or topk with --top)");
  smp.output_format = "csv";
  sample->add_option("-o,--output", smp.output, "Write here instead of stdout");
  add_family(sample, smp_family, false);
  sample->add_option("--n", sample_n, "Number of datasets")
      ->capture_default_str();
  sample->add_option("--seed", smp.seed)->capture_default_str();
  sample->add_option("--top", sample_depth,
                     "Write only the first K positions (topk CSV)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*estimate) {
      RunConfig config = base_config("estimate", est);
      const ParsedSample parsed = load(est_in, config);
      std::vector<std::string> methods =
          est.methods.empty() ? default_estimate_methods(parsed.sample)
                              : est.methods;
      config.methods = methods;
      config.extra.emplace_back("pl_pseudo_count", std::to_string(pl_pseudo));
      MethodSettings settings = method_settings(est);
      settings.pl_pseudo_count = pl_pseudo;
      const EstimateReport report =
          run_estimate(parsed.sample, methods, settings);
      emit(est, render_estimate(report, config,
                                parse_output_format(est.output_format)));
    } else if (*validate) {
      RunConfig config = base_config("validate", val);
      const ParsedSample parsed = load(val_in, config);
      std::vector<std::string> methods =
          val.methods.empty() ? default_validation_methods() : val.methods;
      config.methods = methods;
      config.folds = folds;
      config.extra.emplace_back("reference", reference);
      config.extra.emplace_back("test", test_name);
      config.extra.emplace_back("pl_pseudo_count", std::to_string(pl_pseudo));
      MethodSettings settings = method_settings(val);
      settings.pl_pseudo_count = pl_pseudo;
      CvOptions options;
      options.floor = val.floor;
      options.reference = reference;
      options.test = parse_paired_test(test_name);
      const ValidationSummary summary = run_validation(
          parsed.sample, folds, methods, val.seed, settings, options);
      emit(val, render_validation(summary, config,
                                  parse_output_format(val.output_format)));
    } else if (*bound) {
      RunConfig config = base_config("bound", bnd);
      const std::vector<std::size_t> ns =
          n_grid(bound_n, n_min, n_max, n_step);
      config.grid_resolution = bound_resolution;
      config.extra.emplace_back("m", std::to_string(bound_m));
      std::string nlist, klist;
      for (std::size_t n : ns) nlist += (nlist.empty() ? "" : ",") + std::to_string(n);
      for (std::size_t k : bound_orders) klist += (klist.empty() ? "" : ",") + std::to_string(k);
      config.extra.emplace_back("n", nlist);
      config.extra.emplace_back("K", klist);
      const auto rows = bound_curves(bound_m, ns, bound_orders, bound_resolution);
      emit(bnd, render_bounds(bound_m, rows, config,
                              parse_output_format(bnd.output_format)));
    } else if (*simulate) {
      RunConfig config = base_config("simulate", sim);
      std::vector<Family> families;
      if (sim_family.families.empty()) {
        families = all_families();
      } else {
        for (const auto& f : sim_family.families) {
          families.push_back(parse_family(f));
        }
      }
      std::vector<std::string> methods =
          sim.methods.empty()
              ? std::vector<std::string>{"mle", "loo_kl", "loo_tv"}
              : sim.methods;
      config.methods = methods;
      config.replicas = replicas;
      config.divergence = divergence_name;
      add_family_params(config, sim_family);
      std::string flist, nlist;
      for (Family f : families) flist += (flist.empty() ? "" : ",") + std::string(to_string(f));
      for (std::size_t n : sim_n) nlist += (nlist.empty() ? "" : ",") + std::to_string(n);
      config.extra.emplace_back("families", flist);
      config.extra.emplace_back("n", nlist);
      config.extra.emplace_back("oracle_replicas",
                                std::to_string(oracle_replicas));

      RiskExperimentConfig risk;
      risk.n_values = sim_n;
      risk.replicas = replicas;
      risk.floor = sim.floor;
      risk.threads = threads;
      if (divergence_name == "both") {
        risk.kinds = {Divergence::kKL, Divergence::kTV};
      } else {
        risk.kinds = {parse_divergence(divergence_name)};
      }
      std::vector<RiskTable> tables;
      for (Family family : families) {
        const std::uint64_t tag = family_tag(family);
        const RankingDistribution dist(sim_family.m, family, sim_family.params,
                                       derive_seed(sim.seed, {tag, 1}));
        MethodSettings settings = method_settings(sim);
        settings.oracle_replicas = oracle_replicas;
        settings.seed = derive_seed(sim.seed, {tag, 2});
        std::vector<RiskEstimator> estimators;
        for (const auto& name : methods) {
          estimators.push_back(make_risk_estimator(name, settings));
        }
        risk.master_seed = derive_seed(sim.seed, {tag, 3});
        tables.push_back(risk_experiment(dist, estimators, risk));
      }
      if (!weights_out.empty()) {
        SharedArgs traces;
        traces.output = weights_out;
        emit(traces, render_weight_traces(tables, config));
      }
      emit(sim, render_risk(tables, config,
                            parse_output_format(sim.output_format)));
    } else if (*sample) {
      RunConfig config = base_config("sample", smp);
      config.methods.clear();
      const Family family = parse_family(smp_family.families.front());
      add_family_params(config, smp_family);
      config.extra.emplace_back("family", to_string(family));
      config.extra.emplace_back("n", std::to_string(sample_n));
      config.extra.emplace_back("top", std::to_string(sample_depth));
      const RankingDistribution dist(smp_family.m, family, smp_family.params,
                                     derive_seed(smp.seed, {1}));
      BenchmarkSample drawn =
          sample_rankings(dist, sample_n, derive_seed(smp.seed, {2}));
      CsvFormat format = CsvFormat::kMatrix;
      if (sample_depth > 0) {
        if (sample_depth > smp_family.m) {
          throw InfeasibleError("--top exceeds the number of algorithms");
        }
        std::vector<RankingObservation> cut;
        for (const auto& obs : drawn.observations()) {
          cut.emplace_back(std::vector<AlgorithmIndex>(
                               obs.order().begin(),
                               obs.order().begin() + sample_depth),
                           smp_family.m);
        }
        drawn = BenchmarkSample(drawn.algorithm_names(), std::move(cut));
        format = CsvFormat::kTopK;
      }
      std::ostringstream out;
      write_rankings_csv(out, drawn, format, {}, provenance_lines(config));
      emit(smp, out.str());
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "rankwin: infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InputError& e) {
    std::cerr << "rankwin: error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "rankwin: error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "rankwin: internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
