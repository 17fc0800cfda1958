#include "rankwin/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rankwin/error.hpp"

namespace rankwin {

ProbVector mle_win_prob(const RankCountMatrix& counts) {
  const double n = static_cast<double>(counts.sample_size());
  std::vector<double> p(counts.num_algorithms());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = static_cast<double>(counts(i, 0)) / n;
  }
  return ProbVector(std::move(p));
}

ProbVector weighted_estimate(const RankCountMatrix& counts,
                             const WeightVector& w) {
  if (w.size() > counts.depth()) {
    throw InfeasibleError("weight vector of length " +
                          std::to_string(w.size()) +
                          " exceeds the available rank depth " +
                          std::to_string(counts.depth()));
  }
  const double n = static_cast<double>(counts.sample_size());
  std::vector<double> p(counts.num_algorithms(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      s += w[j] * static_cast<double>(counts(i, j));
    }
    p[i] = s / n;
  }
  return ProbVector(std::move(p));
}

LooObjective::LooObjective(const BenchmarkSample& sample, std::size_t K,
                           Divergence kind, double floor)
    : n_(sample.size()),
      m_(sample.num_algorithms()),
      K_(K),
      kind_(kind),
      floor_(floor) {
  if (n_ < 2) {
    throw InputError("leave-one-out needs at least 2 observations, got " +
                     std::to_string(n_));
  }
  if (K_ < 1 || K_ > sample.effective_depth()) {
    throw InfeasibleError("model order " + std::to_string(K_) +
                          " outside [1, " +
                          std::to_string(sample.effective_depth()) + "]");
  }
  counts_.assign(m_ * K_, 0.0);
  wins_.assign(m_, 0);
  top_.resize(n_ * K_);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto& obs = sample.observation(i);
    ++wins_[obs.winner()];
    for (std::size_t j = 0; j < K_; ++j) {
      counts_[obs.at(j) * K_ + j] += 1.0;
      top_[i * K_ + j] = obs.at(j);
    }
  }
}

double LooObjective::operator()(std::span<const double> w) const {
  if (w.size() != K_) {
    throw InfeasibleError("expected " + std::to_string(K_) + " weights, got " +
                          std::to_string(w.size()));
  }
  // q_a = sum_j w_j r_a^(j): the unnormalized full-sample estimate.
  std::vector<double> q(m_, 0.0);
  for (std::size_t a = 0; a < m_; ++a) {
    double s = 0.0;
    for (std::size_t j = 0; j < K_; ++j) s += w[j] * counts_[a * K_ + j];
    q[a] = s;
  }
  return kind_ == Divergence::kKL ? kl_loss(w, q) : tv_loss(w, q);
}

double LooObjective::kl_loss(std::span<const double> w,
                             const std::vector<double>& q) const {
  // Dropping a dataset won by a removes exactly w_1 from q_a.
  const double denom = static_cast<double>(n_ - 1);
  double total = 0.0;
  for (std::size_t a = 0; a < m_; ++a) {
    if (wins_[a] == 0) continue;
    const double p = std::max(floor_, (q[a] - w[0]) / denom);
    total -= static_cast<double>(wins_[a]) * std::log(p);
  }
  return total / static_cast<double>(n_);
}

double LooObjective::tv_loss(std::span<const double> w,
                             const std::vector<double>& q) const {
  const double denom = static_cast<double>(n_ - 1);
  const double q_total = static_cast<double>(n_);  // sum_a q_a with sum w = 1
  double total = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const AlgorithmIndex* top = &top_[i * K_];
    // Algorithms outside this dataset's top K keep their full counts.
    double listed_q = 0.0;
    double listed = 0.0;
    for (std::size_t j = 0; j < K_; ++j) {
      listed_q += q[top[j]];
      const double p = (q[top[j]] - w[j]) / denom;
      listed += std::abs((j == 0 ? 1.0 : 0.0) - p);
    }
    total += listed + std::max(0.0, q_total - listed_q) / denom;
  }
  return total / static_cast<double>(n_);
}

double loo_loss(const BenchmarkSample& sample, const WeightVector& w,
                Divergence kind, double floor) {
  LooObjective objective(sample, w.size(), kind, floor);
  return objective(w.values());
}

LooFitResult fit_loo_weights(const BenchmarkSample& sample, std::size_t K,
                             Divergence kind, const LooFitOptions& options) {
  LooObjective objective(sample, K, kind, options.floor);
  SimplexSearchResult search = simplex_minimize(
      [&](std::span<const double> w) { return objective(w); }, K,
      options.monotone, options.search);
  const double loss = objective(search.weights.values());
  return LooFitResult{std::move(search.weights),  loss,
                      kind,                       search.evaluations,
                      search.refinement_sweeps,   search.grid_resolution,
                      search.final_step};
}

}  // namespace rankwin
