#pragma once

// Weighted rank-count estimators of the win probability vector and their
// leave-one-out weight selection.

#include <cstddef>
#include <span>
#include <vector>

#include "rankwin/divergence.hpp"
#include "rankwin/ranking.hpp"
#include "rankwin/simplex_search.hpp"

namespace rankwin {

// Number of leading rank positions used by default.
inline constexpr std::size_t kDefaultModelOrder = 3;

// Fraction of datasets each algorithm won: counts(i, 0) / n.
ProbVector mle_win_prob(const RankCountMatrix& counts);

// p_i = (1/n) sum_j w_j counts(i, j) over the first w.size() positions.
// Throws InfeasibleError if w is longer than the counted depth.
ProbVector weighted_estimate(const RankCountMatrix& counts,
                             const WeightVector& w);

// Leave-one-out loss of the weighted estimator as a function of the
// weights. Each held-out estimate is normalized by n - 1, so it is a proper
// distribution.
//   KL: -(1/n) sum_i log max(floor, p[-i]_{winner_i})
//   TV:  (1/n) sum_i sum_a |1{a = winner_i} - p[-i]_a|
// Construction is O(n K); each evaluation is O(m K) for KL and O(n K) for TV.
class LooObjective {
 public:
  LooObjective(const BenchmarkSample& sample, std::size_t K, Divergence kind,
               double floor = kProbabilityFloor);

  double operator()(std::span<const double> w) const;

  std::size_t order() const { return K_; }
  Divergence kind() const { return kind_; }

 private:
  double kl_loss(std::span<const double> w,
                 const std::vector<double>& q) const;
  double tv_loss(std::span<const double> w,
                 const std::vector<double>& q) const;

  std::size_t n_;
  std::size_t m_;
  std::size_t K_;
  Divergence kind_;
  double floor_;
  std::vector<double> counts_;          // m x K, row-major
  std::vector<std::size_t> wins_;       // per algorithm
  std::vector<AlgorithmIndex> top_;     // n x K, row-major
};

// Throws InputError for n < 2 and InfeasibleError if w is longer than the
// sample's effective depth.
double loo_loss(const BenchmarkSample& sample, const WeightVector& w,
                Divergence kind, double floor = kProbabilityFloor);

struct LooFitOptions {
  bool monotone = true;
  double floor = kProbabilityFloor;
  SimplexSearchOptions search;
};

struct LooFitResult {
  WeightVector weights;
  double loo_loss;
  Divergence divergence;
  std::size_t evaluations;
  std::size_t refinement_sweeps;
  std::size_t grid_resolution;
  double final_step;
};

// Minimizes the leave-one-out loss over (monotone) weights of length K.
// Requires n >= 2 and 1 <= K <= effective depth.
LooFitResult fit_loo_weights(const BenchmarkSample& sample,
                             std::size_t K = kDefaultModelOrder,
                             Divergence kind = Divergence::kKL,
                             const LooFitOptions& options = {});

}  // namespace rankwin
