#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "rankwin/ranking.hpp"

namespace rankwin {

// Objective evaluated at a point of the K-simplex (the weight vector).
using SimplexObjective = std::function<double(std::span<const double>)>;

struct SimplexSearchOptions {
  // Stage 1 grid spacing is 1/grid_resolution.
  std::size_t grid_resolution = 100;
  // Stage 2 halves its step from 1/grid_resolution until it drops below this.
  double final_step = 1e-6;
  // The grid is coarsened until it has at most this many points (only
  // relevant for long weight vectors).
  std::size_t max_grid_points = 200000;
  std::size_t max_sweeps_per_step = 10000;
};

struct SimplexSearchResult {
  WeightVector weights;
  double value;
  std::size_t evaluations = 0;
  std::size_t refinement_sweeps = 0;
  // Resolution the grid stage actually used.
  std::size_t grid_resolution = 0;
  // Smallest step the refinement stage took.
  double final_step = 0.0;
};

// Deterministic two-stage minimizer over {w in simplex_K} or, when
// `monotone`, over {w in simplex_K : w_1 >= ... >= w_K}.
//
// Stage 1 scans every grid point in lexicographic order of the integer grid
// coordinates. Stage 2 runs coordinate refinement by moving mass between
// pairs of extreme points of the feasible set (unit vectors, or the
// "uniform over the first k" vectors in the monotone case), clamping every
// move so the point stays feasible, and halving the step when a full sweep
// finds no improvement.
//
// Equal objective values are resolved towards the larger w_1, then the
// larger w_2, and so on. Throws InfeasibleError for K < 1.
SimplexSearchResult simplex_minimize(const SimplexObjective& objective,
                                     std::size_t K, bool monotone,
                                     const SimplexSearchOptions& options = {});

// Number of stage 1 grid points at a given resolution.
std::size_t simplex_grid_size(std::size_t K, std::size_t resolution,
                              bool monotone);

// Calls `visit` with every grid point (as weights) in the stage 1 order.
void for_each_simplex_grid_point(
    std::size_t K, std::size_t resolution, bool monotone,
    const std::function<void(std::span<const double>)>& visit);

}  // namespace rankwin
