#include "rankwin/simplex_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rankwin/error.hpp"

namespace rankwin {
namespace {

// True when (value, w) should replace (best_value, best_w).
bool improves(double value, std::span<const double> w, double best_value,
              std::span<const double> best_w) {
  if (best_w.empty()) return true;
  if (std::isnan(value)) return false;
  if (value < best_value) return true;
  if (value > best_value) return false;
  return std::lexicographical_compare(best_w.begin(), best_w.end(), w.begin(),
                                      w.end());
}

// Recursive lexicographic enumeration of integer compositions of `remaining`
// into the tail of `parts`; with `monotone`, each part is capped by the
// previous one.
void enumerate(std::vector<std::size_t>& parts, std::size_t pos,
               std::size_t remaining, bool monotone,
               const std::function<void(const std::vector<std::size_t>&)>& f) {
  const std::size_t K = parts.size();
  if (pos + 1 == K) {
    if (monotone && pos > 0 && remaining > parts[pos - 1]) return;
    parts[pos] = remaining;
    f(parts);
    return;
  }
  std::size_t cap = remaining;
  if (monotone && pos > 0) cap = std::min(cap, parts[pos - 1]);
  for (std::size_t a = 0; a <= cap; ++a) {
    // A monotone tail must fit under `a` in every remaining slot.
    if (monotone && (K - pos - 1) * a < remaining - a) continue;
    parts[pos] = a;
    enumerate(parts, pos + 1, remaining - a, monotone, f);
  }
}

// Extreme points of the feasible set; the monotone set is the convex hull
// of u_k = (1/(k+1), ..., 1/(k+1), 0, ..., 0).
std::vector<double> to_weights(const std::vector<double>& theta,
                               bool monotone) {
  const std::size_t K = theta.size();
  if (!monotone) return theta;
  std::vector<double> w(K, 0.0);
  double tail = 0.0;
  for (std::size_t k = K; k-- > 0;) {
    tail += theta[k] / static_cast<double>(k + 1);
    w[k] = tail;
  }
  return w;
}

std::vector<double> to_mixture(std::span<const double> w, bool monotone) {
  const std::size_t K = w.size();
  std::vector<double> theta(w.begin(), w.end());
  if (!monotone) return theta;
  for (std::size_t k = 0; k < K; ++k) {
    const double next = k + 1 < K ? w[k + 1] : 0.0;
    theta[k] = std::max(0.0, static_cast<double>(k + 1) * (w[k] - next));
  }
  return theta;
}

std::vector<double> renormalized(std::vector<double> w) {
  double s = 0.0;
  for (double v : w) s += v;
  for (double& v : w) v /= s;
  return w;
}

}  // namespace

std::size_t simplex_grid_size(std::size_t K, std::size_t resolution,
                              bool monotone) {
  if (K == 0) return 0;
  // count[r] = number of ways to write r with the parts placed so far.
  std::vector<double> count(resolution + 1, 0.0);
  if (!monotone) {
    // Compositions: C(R + K - 1, K - 1).
    double c = 1.0;
    for (std::size_t i = 1; i < K; ++i) {
      c = c * static_cast<double>(resolution + i) / static_cast<double>(i);
    }
    return static_cast<std::size_t>(std::llround(c));
  }
  // Partitions of R into at most K parts: parts of size <= K (conjugate).
  count[0] = 1.0;
  for (std::size_t part = 1; part <= K; ++part) {
    for (std::size_t r = part; r <= resolution; ++r) {
      count[r] += count[r - part];
    }
  }
  return static_cast<std::size_t>(std::llround(count[resolution]));
}

void for_each_simplex_grid_point(
    std::size_t K, std::size_t resolution, bool monotone,
    const std::function<void(std::span<const double>)>& visit) {
  if (K == 0) throw InfeasibleError("simplex dimension must be >= 1");
  std::vector<std::size_t> parts(K, 0);
  std::vector<double> w(K, 0.0);
  const double scale = 1.0 / static_cast<double>(resolution);
  enumerate(parts, 0, resolution, monotone,
            [&](const std::vector<std::size_t>& p) {
              for (std::size_t k = 0; k < K; ++k) {
                w[k] = static_cast<double>(p[k]) * scale;
              }
              visit(w);
            });
}

SimplexSearchResult simplex_minimize(const SimplexObjective& objective,
                                     std::size_t K, bool monotone,
                                     const SimplexSearchOptions& options) {
  if (K < 1) throw InfeasibleError("simplex dimension must be >= 1");
  if (options.grid_resolution < 1) {
    throw InfeasibleError("grid resolution must be >= 1");
  }

  std::size_t resolution = options.grid_resolution;
  while (resolution > 1 &&
         simplex_grid_size(K, resolution, monotone) > options.max_grid_points) {
    resolution = resolution * 3 / 4;
  }

  std::size_t evaluations = 0;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<double> best_w;
  for_each_simplex_grid_point(K, resolution, monotone,
                              [&](std::span<const double> w) {
                                const double v = objective(w);
                                ++evaluations;
                                if (improves(v, w, best_value, best_w)) {
                                  best_value = v;
                                  best_w.assign(w.begin(), w.end());
                                }
                              });

  std::vector<double> theta = to_mixture(best_w, monotone);
  std::size_t sweeps = 0;
  double step = 1.0 / static_cast<double>(resolution);
  double last_step = step;
  if (K > 1) {
    // Halve down to final_step; the last sweep runs at exactly final_step.
    for (bool last = false; !last;
         step = std::max(step / 2.0, options.final_step)) {
      last = step <= options.final_step;
      last_step = step;
      for (std::size_t sweep = 0; sweep < options.max_sweeps_per_step;
           ++sweep) {
        ++sweeps;
        bool improved = false;
        for (std::size_t from = 0; from < K; ++from) {
          for (std::size_t to = 0; to < K; ++to) {
            if (from == to) continue;
            const double amount = std::min(step, theta[from]);
            if (amount <= 0.0) continue;
            std::vector<double> trial = theta;
            trial[from] -= amount;
            trial[to] += amount;
            const std::vector<double> w = to_weights(trial, monotone);
            const double v = objective(w);
            ++evaluations;
            if (v < best_value) {
              best_value = v;
              theta = std::move(trial);
              best_w = w;
              improved = true;
            }
          }
        }
        if (!improved) break;
      }
    }
  }

  SimplexSearchResult result{
      WeightVector(renormalized(best_w), monotone), best_value, evaluations,
      sweeps, resolution, last_step};
  return result;
}

}  // namespace rankwin
