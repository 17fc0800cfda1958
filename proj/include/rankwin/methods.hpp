#pragma once

// Named win-probability methods shared by the CLI, cross-validation and the
// synthetic harness.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rankwin/divergence.hpp"
#include "rankwin/ranking.hpp"
#include "rankwin/simplex_search.hpp"

namespace rankwin {

struct MethodSettings {
  std::size_t order = 3;  // K for the weighted estimators
  bool monotone = true;
  double floor = kProbabilityFloor;
  // Negative: use 0 unless some algorithm is never chosen, then 0.1.
  double pl_pseudo_count = -1.0;
  std::size_t oracle_replicas = 200;
  std::uint64_t seed = 0;
  SimplexSearchOptions search;  // leave-one-out and oracle weight search
};

struct MethodOutput {
  ProbVector win_prob;
  std::vector<double> weights;  // empty when the method has none
  std::string note;
};

using WinProbMethod = std::function<MethodOutput(const BenchmarkSample&)>;

// mle, loo_kl, loo_tv, borda, plackett_luce, good_turing, minimax_two_rank,
// minimax_top_k, uniform. Throws InputError for other names.
WinProbMethod make_method(const std::string& name,
                          const MethodSettings& settings = {});

std::vector<std::string> available_methods();

// Pseudo-count used for the regularized Plackett-Luce fallback.
inline constexpr double kDefaultPseudoCount = 0.1;

}  // namespace rankwin
