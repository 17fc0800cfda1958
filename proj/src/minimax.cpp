#include "rankwin/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "rankwin/error.hpp"
#include "rankwin/simplex_search.hpp"

namespace rankwin {
namespace {

constexpr double kFeasibilitySlack = 1e-12;
constexpr double kMinRadicand = 1e-30;

double second_weight(std::span<const double> w) {
  return w.size() > 1 ? w[1] : 0.0;
}

std::vector<double> objective_gradient(std::span<const double> t,
                                       std::size_t m, std::size_t n,
                                       std::span<const double> w) {
  const std::size_t K = w.size();
  const double nn = static_cast<double>(n);
  const double a = 1.0 - w[0];
  const double w1sq = w[0] * w[0];
  const double w2sq = second_weight(w) * second_weight(w);
  std::vector<double> g(K, 0.0);
  for (std::size_t j = 0; j + 1 < K; ++j) {
    const double lin = a * t[j] - w[j + 1];
    const double rad =
        std::max(kMinRadicand, lin * lin + (w1sq * t[j] + w2sq) / nn);
    g[j] = (2.0 * a * lin + w1sq / nn) / (2.0 * std::sqrt(rad));
  }
  const double c = static_cast<double>(m - K + 1);
  const double tk = t[K - 1];
  const double rad = std::max(
      kMinRadicand, a * a * tk * tk + (c / nn) * (w1sq * tk + w2sq * c));
  g[K - 1] = (2.0 * a * a * tk + c * w1sq / nn) / (2.0 * std::sqrt(rad));
  return g;
}

bool better_candidate(double value, std::span<const double> w,
                      double best_value, std::span<const double> best_w) {
  if (best_w.empty()) return true;
  if (value < best_value) return true;
  if (value > best_value) return false;
  return std::lexicographical_compare(best_w.begin(), best_w.end(), w.begin(),
                                      w.end());
}

// w = (w1, (1 - w1) v) with v in the monotone (K-1)-simplex given by its
// mixture coordinates over the "uniform over the first k" vertices.
std::vector<double> assemble(double w1, const std::vector<double>& theta) {
  const std::size_t rest = theta.size();
  std::vector<double> w(rest + 1, 0.0);
  w[0] = w1;
  double tail = 0.0;
  for (std::size_t k = rest; k-- > 0;) {
    tail += theta[k] / static_cast<double>(k + 1);
    w[k + 1] = (1.0 - w1) * tail;
  }
  return w;
}

}  // namespace

double mle_minimax_bound(std::size_t m, std::size_t n) {
  return std::sqrt(static_cast<double>(m) / static_cast<double>(n));
}

double two_rank_minimax_weight(std::size_t n) {
  return 1.0 - 1.0 / (2.0 * static_cast<double>(n) + 2.0);
}

double two_rank_bound(std::size_t m, std::size_t n, double w) {
  const double v = 1.0 - w;
  const double inner =
      2.0 * v * v + (w * w + v * v) / static_cast<double>(n);
  return std::sqrt(static_cast<double>(m)) * std::sqrt(inner);
}

double top_k_weight_threshold(std::size_t n) {
  const double e = 8.0 * static_cast<double>(n);
  return (e - std::sqrt(e)) / (e - 1.0);
}

void check_top_k_feasible(std::size_t m, std::size_t n,
                          std::span<const double> w) {
  if (w.empty()) throw InfeasibleError("weight vector is empty");
  if (n < 1) throw InfeasibleError("sample size must be >= 1");
  if (w.size() > m) {
    throw InfeasibleError("model order K=" + std::to_string(w.size()) +
                          " exceeds algorithm count m=" + std::to_string(m));
  }
  double sum = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) throw InfeasibleError("weights must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw InfeasibleError("weights must sum to 1 (sum is " +
                          std::to_string(sum) + ")");
  }
  for (std::size_t j = 0; j + 1 < w.size(); ++j) {
    if (w[j] + kFeasibilitySlack < w[j + 1]) {
      throw InfeasibleError("weights must be non-increasing: w_" +
                            std::to_string(j + 1) + " < w_" +
                            std::to_string(j + 2));
    }
  }
  const double threshold = top_k_weight_threshold(n);
  if (w[0] + kFeasibilitySlack < threshold) {
    throw InfeasibleError("w_1 = " + std::to_string(w[0]) +
                          " is below the concavity threshold " +
                          std::to_string(threshold) + " for n = " +
                          std::to_string(n));
  }
}

double top_k_bound_objective(std::span<const double> t, std::size_t m,
                             std::size_t n, std::span<const double> w) {
  const std::size_t K = w.size();
  const double nn = static_cast<double>(n);
  const double a = 1.0 - w[0];
  const double w1sq = w[0] * w[0];
  const double w2sq = second_weight(w) * second_weight(w);
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < K; ++j) {
    const double lin = a * t[j] - w[j + 1];
    total += std::sqrt(std::max(0.0, lin * lin + (w1sq * t[j] + w2sq) / nn));
  }
  const double c = static_cast<double>(m - K + 1);
  const double tk = t[K - 1];
  total += std::sqrt(
      std::max(0.0, a * a * tk * tk + (c / nn) * (w1sq * tk + w2sq * c)));
  return total;
}

std::vector<double> project_to_simplex(std::span<const double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) shift = candidate;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::max(0.0, v[i] - shift);
  }
  return out;
}

TopKBoundResult top_k_bound(std::size_t m, std::size_t n,
                            std::span<const double> w) {
  check_top_k_feasible(m, n, w);
  const std::size_t K = w.size();
  std::vector<double> t(K, 1.0 / static_cast<double>(K));
  double value = top_k_bound_objective(t, m, n, w);
  if (K == 1) return {value, t, 0};

  constexpr std::size_t kMaxIterations = 10000;
  constexpr double kMinImprovement = 1e-10;
  constexpr double kArmijo = 1e-4;
  double step = 1.0;
  std::size_t iteration = 0;
  for (; iteration < kMaxIterations; ++iteration) {
    const std::vector<double> grad = objective_gradient(t, m, n, w);
    std::vector<double> moved(K);
    bool accepted = false;
    std::vector<double> candidate;
    double candidate_value = value;
    while (step > 1e-20) {
      for (std::size_t j = 0; j < K; ++j) moved[j] = t[j] + step * grad[j];
      candidate = project_to_simplex(moved);
      double ascent = 0.0;
      double dist = 0.0;
      for (std::size_t j = 0; j < K; ++j) {
        ascent += grad[j] * (candidate[j] - t[j]);
        dist += std::abs(candidate[j] - t[j]);
      }
      if (dist < 1e-15) break;  // projected gradient vanishes
      candidate_value = top_k_bound_objective(candidate, m, n, w);
      if (candidate_value >= value + kArmijo * ascent) {
        accepted = true;
        break;
      }
      step /= 2.0;
    }
    if (!accepted) break;
    const double improvement = candidate_value - value;
    t = std::move(candidate);
    value = candidate_value;
    step = std::min(step * 2.0, 1e6);
    if (improvement < kMinImprovement) {
      ++iteration;
      break;
    }
  }
  return {value, t, iteration};
}

TopKOptimum top_k_optimal_weights(std::size_t m, std::size_t n, std::size_t K,
                                  const TopKSearchOptions& options) {
  if (m < 2) throw InfeasibleError("need at least 2 algorithms");
  if (n < 1) throw InfeasibleError("sample size must be >= 1");
  if (K < 1 || K > m) {
    throw InfeasibleError("model order K=" + std::to_string(K) +
                          " outside [1, m=" + std::to_string(m) + "]");
  }
  if (K == 1) {
    const std::vector<double> w{1.0};
    return {WeightVector(w, true), top_k_bound(m, n, w).bound, 1};
  }

  const double threshold = top_k_weight_threshold(n);
  const std::size_t R = options.grid_resolution;
  std::size_t candidates = 0;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<double> best_w;
  auto score = [&](const std::vector<double>& w) {
    ++candidates;
    return top_k_bound(m, n, w).bound;
  };

  for (std::size_t i = 0; i <= R; ++i) {
    const double w1 = i == R ? 1.0
                             : threshold + (1.0 - threshold) *
                                               static_cast<double>(i) /
                                               static_cast<double>(R);
    for_each_simplex_grid_point(
        K - 1, R, true, [&](std::span<const double> split) {
          std::vector<double> w(K);
          w[0] = w1;
          for (std::size_t k = 0; k + 1 < K; ++k) {
            w[k + 1] = (1.0 - w1) * split[k];
          }
          const double v = score(w);
          if (better_candidate(v, w, best_value, best_w)) {
            best_value = v;
            best_w = std::move(w);
          }
        });
  }

  // Coordinate refinement in (w1, mixture) coordinates.
  double w1 = best_w[0];
  std::vector<double> theta(K - 1, 0.0);
  if (w1 < 1.0) {
    std::vector<double> v(K - 1);
    for (std::size_t k = 0; k + 1 < K; ++k) v[k] = best_w[k + 1] / (1.0 - w1);
    for (std::size_t k = 0; k + 1 < K; ++k) {
      const double next = k + 2 < K ? v[k + 1] : 0.0;
      theta[k] = std::max(0.0, static_cast<double>(k + 1) * (v[k] - next));
    }
    const double s = std::accumulate(theta.begin(), theta.end(), 0.0);
    for (double& x : theta) x /= s;
  } else {
    theta[0] = 1.0;
  }

  auto try_point = [&](double cand_w1, const std::vector<double>& cand_theta) {
    std::vector<double> w = assemble(cand_w1, cand_theta);
    const double v = score(w);
    if (v < best_value) {
      best_value = v;
      best_w = std::move(w);
      w1 = cand_w1;
      theta = cand_theta;
      return true;
    }
    return false;
  };

  for (double step = 1.0 / static_cast<double>(R); step >= options.final_step;
       step /= 2.0) {
    for (int sweep = 0; sweep < 10000; ++sweep) {
      bool improved = false;
      for (double dir : {1.0, -1.0}) {
        const double cand = std::clamp(w1 + dir * step, threshold, 1.0);
        if (cand != w1) improved |= try_point(cand, theta);
      }
      for (std::size_t from = 0; from + 1 < K; ++from) {
        for (std::size_t to = 0; to + 1 < K; ++to) {
          if (from == to) continue;
          const double amount = std::min(step, theta[from]);
          if (amount <= 0.0) continue;
          std::vector<double> trial = theta;
          trial[from] -= amount;
          trial[to] += amount;
          improved |= try_point(w1, trial);
        }
      }
      if (!improved) break;
    }
  }

  double s = std::accumulate(best_w.begin(), best_w.end(), 0.0);
  for (double& x : best_w) x /= s;
  return {WeightVector(best_w, true), best_value, candidates};
}

}  // namespace rankwin
