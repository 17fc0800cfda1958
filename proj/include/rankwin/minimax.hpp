#pragma once

// Data-independent weight selection: worst-case expected TV bounds for the
// weighted rank-count estimator and the weights that minimize them.

#include <cstddef>
#include <span>
#include <vector>

#include "rankwin/ranking.hpp"

namespace rankwin {

// sqrt(m / n): the classical worst-case expected TV bound of the win-count
// estimator.
double mle_minimax_bound(std::size_t m, std::size_t n);

// Minimizer 1 - 1/(2n + 2) of the two-rank bound below.
double two_rank_minimax_weight(std::size_t n);

// Worst-case expected TV bound for p = (w r1 + (1 - w) r2) / n:
//   sqrt(m) * sqrt(2 (1-w)^2 + (w^2 + (1-w)^2) / n).
double two_rank_bound(std::size_t m, std::size_t n, double w);

// Smallest admissible w_1 for the top-K bound: (8n - sqrt(8n)) / (8n - 1).
double top_k_weight_threshold(std::size_t n);

// Throws InfeasibleError naming the violated condition when w is not
// non-increasing, w_1 is below the threshold, or K > m.
void check_top_k_feasible(std::size_t m, std::size_t n,
                          std::span<const double> w);

// Inner objective of the top-K bound at a point t of the K-simplex:
//   sum_{j<K} sqrt(((1-w1) t_j - w_{j+1})^2 + (w1^2 t_j + w2^2) / n)
//   + sqrt((1-w1)^2 t_K^2 + (c/n) (w1^2 t_K + w2^2 c)),  c = m - K + 1.
// Concave in t on the feasible weight set.
double top_k_bound_objective(std::span<const double> t, std::size_t m,
                             std::size_t n, std::span<const double> w);

struct TopKBoundResult {
  double bound;
  std::vector<double> worst_case_t;
  std::size_t iterations;
};

// Maximizes the inner objective over the K-simplex by projected gradient
// ascent with backtracking, starting from uniform t. Stops when an accepted
// step improves the objective by less than 1e-10, or after 10^4 iterations.
TopKBoundResult top_k_bound(std::size_t m, std::size_t n,
                            std::span<const double> w);

struct TopKOptimum {
  WeightVector weights;
  double bound;
  std::size_t candidates;
};

struct TopKSearchOptions {
  std::size_t grid_resolution = 200;
  double final_step = 1e-5;
};

// Grid search over feasible monotone weights of length K (w_1 over
// [threshold, 1], the remaining mass split over w_2..w_K), each scored by
// top_k_bound, followed by coordinate refinement. Requires 1 <= K <= m.
TopKOptimum top_k_optimal_weights(std::size_t m, std::size_t n, std::size_t K,
                                  const TopKSearchOptions& options = {});

// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::span<const double> v);

}  // namespace rankwin
