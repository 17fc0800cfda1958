#include "rankwin/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "rankwin/error.hpp"

namespace rankwin {

RankingObservation::RankingObservation(std::vector<AlgorithmIndex> order,
                                       std::size_t m)
    : order_(std::move(order)) {
  if (order_.empty()) throw InputError("ranking is empty");
  if (order_.size() > m) {
    throw InputError("ranking lists " + std::to_string(order_.size()) +
                     " algorithms but the roster has " + std::to_string(m));
  }
  std::vector<bool> seen(m, false);
  for (AlgorithmIndex a : order_) {
    if (a >= m) {
      throw InputError("algorithm index " + std::to_string(a) +
                       " outside roster of size " + std::to_string(m));
    }
    if (seen[a]) {
      throw InputError("algorithm index " + std::to_string(a) +
                       " appears twice in one ranking");
    }
    seen[a] = true;
  }
}

BenchmarkSample::BenchmarkSample(std::vector<std::string> algorithm_names,
                                 std::vector<RankingObservation> observations)
    : names_(std::move(algorithm_names)),
      observations_(std::move(observations)) {
  if (names_.size() < 2) throw InputError("need at least 2 algorithms");
  if (observations_.empty()) throw InputError("need at least 1 observation");
  std::set<std::string> unique(names_.begin(), names_.end());
  if (unique.size() != names_.size()) {
    throw InputError("algorithm names must be distinct");
  }
  effective_depth_ = names_.size();
  for (const auto& obs : observations_) {
    for (AlgorithmIndex a : obs.order()) {
      if (a >= names_.size()) {
        throw InputError("observation references algorithm index " +
                         std::to_string(a) + " outside the roster");
      }
    }
    effective_depth_ = std::min(effective_depth_, obs.depth());
  }
}

BenchmarkSample BenchmarkSample::subset(
    std::span<const std::size_t> indices) const {
  std::vector<RankingObservation> picked;
  picked.reserve(indices.size());
  for (std::size_t i : indices) picked.push_back(observations_.at(i));
  return BenchmarkSample(names_, std::move(picked));
}

BenchmarkSample BenchmarkSample::without(std::size_t i) const {
  if (i >= observations_.size()) {
    throw std::out_of_range("observation index " + std::to_string(i) +
                            " out of range");
  }
  std::vector<RankingObservation> rest;
  rest.reserve(observations_.size() - 1);
  for (std::size_t k = 0; k < observations_.size(); ++k) {
    if (k != i) rest.push_back(observations_[k]);
  }
  return BenchmarkSample(names_, std::move(rest));
}

RankCountMatrix::RankCountMatrix(std::size_t m, std::size_t depth,
                                 std::size_t n)
    : m_(m), depth_(depth), n_(n), counts_(m * depth, 0) {}

std::int64_t RankCountMatrix::column_sum(std::size_t position) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < m_; ++i) s += (*this)(i, position);
  return s;
}

std::int64_t RankCountMatrix::row_sum(std::size_t algorithm) const {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < depth_; ++j) s += (*this)(algorithm, j);
  return s;
}

RankCountMatrix compute_rank_counts(const BenchmarkSample& sample) {
  const std::size_t depth = sample.effective_depth();
  RankCountMatrix counts(sample.num_algorithms(), depth, sample.size());
  for (const auto& obs : sample.observations()) {
    for (std::size_t j = 0; j < depth; ++j) ++counts(obs.at(j), j);
  }
  return counts;
}

RankCountMatrix compute_rank_counts_excluding(const BenchmarkSample& sample,
                                              std::size_t excluded) {
  if (excluded >= sample.size()) {
    throw std::out_of_range("excluded index " + std::to_string(excluded) +
                            " >= sample size " +
                            std::to_string(sample.size()));
  }
  // Depth stays the full sample's so the result lines up with the full
  // counts even if the excluded row was the shallowest one.
  const std::size_t depth = sample.effective_depth();
  RankCountMatrix counts(sample.num_algorithms(), depth, sample.size() - 1);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (i == excluded) continue;
    const auto& obs = sample.observation(i);
    for (std::size_t j = 0; j < depth; ++j) ++counts(obs.at(j), j);
  }
  return counts;
}

ProbVector::ProbVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("probability vector is empty");
  double sum = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InputError("probability entries must be finite and nonnegative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw InputError("probability vector sums to " + std::to_string(sum));
  }
}

ProbVector ProbVector::normalized(std::vector<double> values) {
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InputError("cannot normalize negative or non-finite entries");
    }
    sum += v;
  }
  if (!(sum > 0.0)) throw InputError("cannot normalize a zero vector");
  for (double& v : values) v /= sum;
  return ProbVector(std::move(values));
}

ProbVector ProbVector::uniform(std::size_t size) {
  return ProbVector(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

std::size_t ProbVector::argmax() const {
  return static_cast<std::size_t>(
      std::max_element(values_.begin(), values_.end()) - values_.begin());
}

std::vector<std::size_t> ProbVector::ranking() const {
  std::vector<std::size_t> idx(values_.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return values_[a] > values_[b];
  });
  return idx;
}

WeightVector::WeightVector(std::vector<double> weights, bool monotone)
    : weights_(std::move(weights)), monotone_(monotone) {
  if (weights_.empty()) throw InputError("weight vector is empty");
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InputError("weights must be finite and nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw InputError("weights sum to " + std::to_string(sum));
  }
  if (monotone_) {
    for (std::size_t j = 0; j + 1 < weights_.size(); ++j) {
      if (weights_[j] + 1e-12 < weights_[j + 1]) {
        throw InputError("weights are not non-increasing at position " +
                         std::to_string(j + 1));
      }
    }
  }
}

WeightVector WeightVector::winner_only(std::size_t length) {
  std::vector<double> w(length, 0.0);
  w.at(0) = 1.0;
  return WeightVector(std::move(w), true);
}

}  // namespace rankwin
