#pragma once

// Reference rank-aggregation methods: Borda count, average rank,
// Plackett-Luce maximum likelihood and a Good-Turing estimate over the
// full ranking alphabet.

#include <cstddef>
#include <span>
#include <vector>

#include "rankwin/ranking.hpp"

namespace rankwin {

struct BordaResult {
  std::vector<double> scores;
  ProbVector prob;  // scores / sum(scores)
};

// Position j (0-based) earns m - 1 - j points. Algorithms missing from a
// top-K observation share the leftover points equally.
BordaResult borda(const BenchmarkSample& sample);

// Mean 1-based rank; algorithms missing from a top-K observation get the
// mean of the unlisted ranks, (K + 1 + m) / 2.
std::vector<double> average_rank(const BenchmarkSample& sample);

struct PlackettLuceOptions {
  std::size_t max_iter = 10000;
  double tol = 1e-10;
  // Pseudo-count c > 0 adds, for every algorithm, c virtual wins from the
  // full roster. Keeps scores positive when an algorithm is never chosen.
  double pseudo_count = 0.0;
  // Record the objective after every iteration.
  bool record_trace = false;
};

struct PlackettLuceFit {
  ProbVector alpha;  // scores normalized to sum 1; also the win probabilities
  std::size_t iterations;
  bool converged;
  // Log-likelihood at alpha (including the pseudo-count terms, if any).
  double log_likelihood;
  std::vector<double> log_likelihood_trace;
};

// Stagewise Plackett-Luce likelihood over each observation's listed
// positions, maximized with Hunter's MM iteration. Throws InputError when
// some algorithm is never chosen at any stage and pseudo_count is 0.
PlackettLuceFit plackett_luce_fit(const BenchmarkSample& sample,
                                  const PlackettLuceOptions& options = {});

// Log-likelihood of scores `alpha` (any positive scale) under the same
// stagewise model, with the same pseudo-count convention.
double plackett_luce_log_likelihood(const BenchmarkSample& sample,
                                    std::span<const double> alpha,
                                    double pseudo_count = 0.0);

inline constexpr std::size_t kMaxAlphabetAlgorithms = 8;

// Good-Turing over distinct full rankings: a ranking seen r times gets
// (r+1) N_{r+1} / (n N_r), or r/n when N_{r+1} = 0. The unseen mass N_1/n is
// split across winners in proportion to their unseen rankings, and the
// result is renormalized. Requires full rankings and m <= 8.
ProbVector good_turing_win_prob(const BenchmarkSample& sample);

}  // namespace rankwin
