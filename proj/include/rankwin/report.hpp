#pragma once

// Run configuration and the report shapes produced by the command-line
// tool, with JSON, CSV and plain-table renderers. Numbers print with 6
// significant digits except in JSON, which keeps full precision.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "rankwin/methods.hpp"
#include "rankwin/ranking.hpp"
#include "rankwin/synthetic.hpp"
#include "rankwin/validation.hpp"

namespace rankwin {

inline constexpr const char* kToolName = "rankwin";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

enum class OutputFormat { kJson, kCsv, kTable };

const char* to_string(OutputFormat format);
OutputFormat parse_output_format(const std::string& text);

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string input_format = "auto";
  std::vector<std::string> methods;
  std::size_t order = 3;
  std::string divergence = "kl";
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  std::size_t replicas = 1000;
  std::size_t grid_resolution = 100;
  std::string output_format = "table";
  double floor = 1e-6;
  bool monotone = true;
  // Command-specific settings, kept in insertion order.
  std::vector<std::pair<std::string, std::string>> extra;
};

Json to_json(const RunConfig& config);

// "rankwin <version>" and "config: <compact json>", for '#' headers.
std::vector<std::string> provenance_lines(const RunConfig& config);

// --- estimate ---------------------------------------------------------------

// Methods the estimate command runs when none are named: mle, loo_kl,
// loo_tv, borda, average_rank, plackett_luce, plus good_turing for full
// rankings of m <= 8 algorithms.
std::vector<std::string> default_estimate_methods(const BenchmarkSample& sample);

struct EstimateEntry {
  std::string method;
  std::vector<double> win_prob;  // empty for average_rank and failures
  std::vector<double> scores;    // average_rank: mean rank per algorithm
  std::vector<double> weights;
  std::vector<std::size_t> top;  // best first, up to 3
  std::string note;
  std::string error;  // non-empty when the method failed
};

struct EstimateReport {
  std::vector<std::string> algorithms;
  std::size_t n;
  std::size_t depth;
  std::vector<EstimateEntry> entries;
};

// Runs each method; a method that throws is recorded with its error and the
// rest still run. Unknown method names are rejected up front.
EstimateReport run_estimate(const BenchmarkSample& sample,
                            const std::vector<std::string>& methods,
                            const MethodSettings& settings);

std::string render_estimate(const EstimateReport& report,
                            const RunConfig& config, OutputFormat format);

// --- bound ------------------------------------------------------------------

struct BoundRow {
  std::size_t n;
  std::string curve;  // mle, two_rank, top_k
  std::size_t order;  // K; 1 for mle, 2 for two_rank
  double value;
  std::vector<double> weights;
};

// Per n: the MLE bound, the two-rank bound at its minimax weight, and the
// optimized top-K bound for each K in orders.
std::vector<BoundRow> bound_curves(std::size_t m,
                                   const std::vector<std::size_t>& n_values,
                                   const std::vector<std::size_t>& orders,
                                   std::size_t grid_resolution = 200);

std::string render_bounds(std::size_t m, const std::vector<BoundRow>& rows,
                          const RunConfig& config, OutputFormat format);

// --- simulate ---------------------------------------------------------------

std::string render_risk(const std::vector<RiskTable>& tables,
                        const RunConfig& config, OutputFormat format);

// family, estimator, n, w1..wK rows of mean fitted weights.
std::string render_weight_traces(const std::vector<RiskTable>& tables,
                                 const RunConfig& config);

// --- validate ---------------------------------------------------------------

struct ValidationSummary {
  CvReport cv;
  std::vector<std::string> algorithms;
  // Per method (same order as cv.methods): top 3 on the full sample.
  std::vector<std::vector<std::size_t>> top;
};

std::vector<std::string> default_validation_methods();

ValidationSummary run_validation(const BenchmarkSample& sample, std::size_t k,
                                 const std::vector<std::string>& methods,
                                 std::uint64_t seed,
                                 const MethodSettings& settings,
                                 const CvOptions& options);

std::string render_validation(const ValidationSummary& summary,
                              const RunConfig& config, OutputFormat format);

}  // namespace rankwin
