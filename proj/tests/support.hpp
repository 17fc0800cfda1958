#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "rankwin/random.hpp"
#include "rankwin/ranking.hpp"
#include "rankwin/synthetic.hpp"

namespace test {

inline rankwin::BenchmarkSample sample_of(
    std::size_t m, std::initializer_list<std::vector<std::size_t>> rows) {
  std::vector<rankwin::RankingObservation> obs;
  for (const auto& r : rows) obs.emplace_back(r, m);
  return rankwin::BenchmarkSample(rankwin::default_algorithm_names(m),
                                  std::move(obs));
}

inline rankwin::BenchmarkSample sample_of(
    std::size_t m, const std::vector<std::vector<std::size_t>>& rows) {
  std::vector<rankwin::RankingObservation> obs;
  for (const auto& r : rows) obs.emplace_back(r, m);
  return rankwin::BenchmarkSample(rankwin::default_algorithm_names(m),
                                  std::move(obs));
}

// n uniformly random rankings truncated to `depth` positions.
inline rankwin::BenchmarkSample random_sample(std::size_t m, std::size_t n,
                                              std::size_t depth,
                                              std::uint64_t seed) {
  rankwin::Rng rng(seed);
  std::vector<std::vector<std::size_t>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t k = m - 1; k > 0; --k) {
      std::swap(perm[k], perm[rng.below(k + 1)]);
    }
    perm.resize(depth);
    rows.push_back(perm);
  }
  return sample_of(m, rows);
}

// Uniform point of the K-simplex; sorted descending when `monotone`.
inline std::vector<double> random_simplex(std::size_t K, rankwin::Rng& rng,
                                          bool monotone = false) {
  std::vector<double> w(K);
  double s = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    s += x;
  }
  for (auto& x : w) x /= s;
  if (monotone) std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

inline rankwin::ProbVector random_prob(std::size_t m, rankwin::Rng& rng) {
  return rankwin::ProbVector::normalized(random_simplex(m, rng));
}

// Relabels algorithm a as perm[a] in every observation.
inline rankwin::BenchmarkSample relabel(const rankwin::BenchmarkSample& s,
                                        const std::vector<std::size_t>& perm) {
  std::vector<std::vector<std::size_t>> rows;
  for (const auto& obs : s.observations()) {
    std::vector<std::size_t> r;
    for (auto a : obs.order()) r.push_back(perm[a]);
    rows.push_back(r);
  }
  return sample_of(s.num_algorithms(), rows);
}

}  // namespace test
