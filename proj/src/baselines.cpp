#include "rankwin/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "rankwin/error.hpp"

namespace rankwin {

BordaResult borda(const BenchmarkSample& sample) {
  const std::size_t m = sample.num_algorithms();
  std::vector<double> scores(m, 0.0);
  std::vector<bool> listed(m);
  for (const auto& obs : sample.observations()) {
    const std::size_t K = obs.depth();
    std::fill(listed.begin(), listed.end(), false);
    for (std::size_t j = 0; j < K; ++j) {
      scores[obs.at(j)] += static_cast<double>(m - 1 - j);
      listed[obs.at(j)] = true;
    }
    if (K < m) {
      // Leftover points (m-1-K) + ... + 0, shared by the m - K unlisted.
      const double leftover =
          static_cast<double>((m - K) * (m - K - 1)) / 2.0;
      const double share = leftover / static_cast<double>(m - K);
      for (std::size_t a = 0; a < m; ++a) {
        if (!listed[a]) scores[a] += share;
      }
    }
  }
  return BordaResult{scores, ProbVector::normalized(scores)};
}

std::vector<double> average_rank(const BenchmarkSample& sample) {
  const std::size_t m = sample.num_algorithms();
  std::vector<double> total(m, 0.0);
  std::vector<bool> listed(m);
  for (const auto& obs : sample.observations()) {
    const std::size_t K = obs.depth();
    std::fill(listed.begin(), listed.end(), false);
    for (std::size_t j = 0; j < K; ++j) {
      total[obs.at(j)] += static_cast<double>(j + 1);
      listed[obs.at(j)] = true;
    }
    const double unlisted_rank = static_cast<double>(K + 1 + m) / 2.0;
    for (std::size_t a = 0; a < m; ++a) {
      if (!listed[a]) total[a] += unlisted_rank;
    }
  }
  for (double& t : total) t /= static_cast<double>(sample.size());
  return total;
}

namespace {

// Stages with a real choice: a full ranking's last position is forced.
std::size_t stage_count(const RankingObservation& obs, std::size_t m) {
  return obs.depth() < m ? obs.depth() : m - 1;
}

}  // namespace

double plackett_luce_log_likelihood(const BenchmarkSample& sample,
                                    std::span<const double> alpha,
                                    double pseudo_count) {
  const std::size_t m = sample.num_algorithms();
  const double total = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  double ll = 0.0;
  for (const auto& obs : sample.observations()) {
    double remaining = total;
    const std::size_t S = stage_count(obs, m);
    for (std::size_t s = 0; s < S; ++s) {
      const double chosen = alpha[obs.at(s)];
      ll += std::log(chosen) - std::log(remaining);
      remaining -= chosen;
    }
  }
  if (pseudo_count > 0.0) {
    for (std::size_t a = 0; a < m; ++a) {
      ll += pseudo_count * (std::log(alpha[a]) - std::log(total));
    }
  }
  return ll;
}

PlackettLuceFit plackett_luce_fit(const BenchmarkSample& sample,
                                  const PlackettLuceOptions& options) {
  const std::size_t m = sample.num_algorithms();
  const double c = options.pseudo_count;
  if (c < 0.0) throw InputError("pseudo-count must be nonnegative");

  std::vector<double> chosen(m, 0.0);
  for (const auto& obs : sample.observations()) {
    const std::size_t S = stage_count(obs, m);
    for (std::size_t s = 0; s < S; ++s) chosen[obs.at(s)] += 1.0;
  }
  if (c == 0.0) {
    for (std::size_t a = 0; a < m; ++a) {
      if (chosen[a] == 0.0) {
        throw InputError("Plackett-Luce scores degenerate: algorithm '" +
                         sample.algorithm_names()[a] +
                         "' is never ranked above another; enable a "
                         "pseudo-count");
      }
    }
  }

  std::vector<double> alpha(m, 1.0 / static_cast<double>(m));
  std::vector<double> denom(m);
  std::vector<double> cumulative;
  std::vector<double> trace;
  std::size_t iteration = 0;
  bool converged = false;
  while (iteration < options.max_iter) {
    ++iteration;
    const double total = std::accumulate(alpha.begin(), alpha.end(), 0.0);
    // Every algorithm sits in the remaining set of each virtual stage.
    double everyone = c * static_cast<double>(m) / total;
    std::fill(denom.begin(), denom.end(), 0.0);
    for (const auto& obs : sample.observations()) {
      const std::size_t S = stage_count(obs, m);
      cumulative.assign(S, 0.0);
      double remaining = total;
      double running = 0.0;
      for (std::size_t s = 0; s < S; ++s) {
        running += 1.0 / remaining;
        cumulative[s] = running;
        remaining -= alpha[obs.at(s)];
      }
      // Unlisted algorithms are present at all S stages; the one in
      // position p drops out after stage p.
      everyone += running;
      for (std::size_t p = 0; p < obs.depth(); ++p) {
        denom[obs.at(p)] += cumulative[std::min(p, S - 1)] - running;
      }
    }
    std::vector<double> next(m);
    for (std::size_t a = 0; a < m; ++a) {
      next[a] = (chosen[a] + c) / (denom[a] + everyone);
    }
    const double s = std::accumulate(next.begin(), next.end(), 0.0);
    double change = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      next[a] /= s;
      change = std::max(change, std::abs(next[a] - alpha[a]));
    }
    alpha = std::move(next);
    if (options.record_trace) {
      trace.push_back(plackett_luce_log_likelihood(sample, alpha, c));
    }
    if (change < options.tol) {
      converged = true;
      break;
    }
  }
  const double ll = plackett_luce_log_likelihood(sample, alpha, c);
  return PlackettLuceFit{ProbVector::normalized(alpha), iteration, converged,
                         ll, std::move(trace)};
}

ProbVector good_turing_win_prob(const BenchmarkSample& sample) {
  const std::size_t m = sample.num_algorithms();
  if (!sample.is_full()) {
    throw InputError("Good-Turing needs full rankings (effective depth " +
                     std::to_string(sample.effective_depth()) + " < m = " +
                     std::to_string(m) + ")");
  }
  if (m > kMaxAlphabetAlgorithms) {
    throw InputError("Good-Turing over the ranking alphabet supports m <= " +
                     std::to_string(kMaxAlphabetAlgorithms));
  }
  std::map<std::vector<AlgorithmIndex>, std::size_t> seen;
  for (const auto& obs : sample.observations()) {
    ++seen[std::vector<AlgorithmIndex>(obs.order().begin(),
                                       obs.order().end())];
  }
  const double n = static_cast<double>(sample.size());
  std::map<std::size_t, std::size_t> freq_of_freq;  // N_r
  for (const auto& [ranking, r] : seen) ++freq_of_freq[r];
  auto N = [&](std::size_t r) -> double {
    auto it = freq_of_freq.find(r);
    return it == freq_of_freq.end() ? 0.0 : static_cast<double>(it->second);
  };

  std::size_t class_size = 1;  // (m-1)!
  for (std::size_t k = 2; k < m; ++k) class_size *= k;

  std::vector<double> p(m, 0.0);
  std::vector<std::size_t> distinct_per_winner(m, 0);
  for (const auto& [ranking, r] : seen) {
    const double rr = static_cast<double>(r);
    const double next = N(r + 1);
    const double mass = next > 0.0 ? (rr + 1.0) * next / (n * N(r)) : rr / n;
    p[ranking.front()] += mass;
    ++distinct_per_winner[ranking.front()];
  }
  const std::size_t unseen_total = class_size * m - seen.size();
  if (unseen_total > 0) {
    const double unseen_mass = N(1) / n;
    for (std::size_t a = 0; a < m; ++a) {
      const double unseen = static_cast<double>(class_size -
                                                distinct_per_winner[a]);
      p[a] += unseen_mass * unseen / static_cast<double>(unseen_total);
    }
  }
  return ProbVector::normalized(std::move(p));
}

}  // namespace rankwin
