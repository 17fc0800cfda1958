#pragma once

// Core data model: rankings of algorithms over datasets, benchmark samples,
// rank-count statistics and the two simplex-valued vector types every
// estimator produces or consumes.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rankwin {

using AlgorithmIndex = std::size_t;

// Tolerance used when checking that a vector sums to one.
inline constexpr double kSimplexTolerance = 1e-9;

// One dataset's ranking, stored position -> algorithm. Position 0 holds the
// winner. A ranking of depth K < m is a top-K prefix.
class RankingObservation {
 public:
  // Throws InputError unless `order` is non-empty, at most `m` long, has
  // distinct entries and every entry is < m.
  RankingObservation(std::vector<AlgorithmIndex> order, std::size_t m);

  std::size_t depth() const { return order_.size(); }
  AlgorithmIndex at(std::size_t position) const { return order_.at(position); }
  AlgorithmIndex winner() const { return order_.front(); }
  std::span<const AlgorithmIndex> order() const { return order_; }
  bool is_full(std::size_t m) const { return order_.size() == m; }

  friend bool operator==(const RankingObservation&,
                         const RankingObservation&) = default;

 private:
  std::vector<AlgorithmIndex> order_;
};

inline AlgorithmIndex winner_of(const RankingObservation& obs) {
  return obs.winner();
}

// n observations over a fixed roster of m algorithms.
class BenchmarkSample {
 public:
  BenchmarkSample(std::vector<std::string> algorithm_names,
                  std::vector<RankingObservation> observations);

  std::size_t num_algorithms() const { return names_.size(); }
  std::size_t size() const { return observations_.size(); }
  // Minimum depth over all observations.
  std::size_t effective_depth() const { return effective_depth_; }
  bool is_full() const { return effective_depth_ == names_.size(); }

  const std::vector<std::string>& algorithm_names() const { return names_; }
  const std::vector<RankingObservation>& observations() const {
    return observations_;
  }
  const RankingObservation& observation(std::size_t i) const {
    return observations_.at(i);
  }

  // Same roster, observations selected by index (in the given order).
  BenchmarkSample subset(std::span<const std::size_t> indices) const;
  // Same roster, observation `i` removed.
  BenchmarkSample without(std::size_t i) const;

  friend bool operator==(const BenchmarkSample&,
                         const BenchmarkSample&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<RankingObservation> observations_;
  std::size_t effective_depth_ = 0;
};

// counts(i, j) = number of observations in which algorithm i finished in
// position j (0-based). Covers positions 0..depth-1 where depth is the
// sample's effective depth.
class RankCountMatrix {
 public:
  RankCountMatrix(std::size_t m, std::size_t depth, std::size_t n);

  std::size_t num_algorithms() const { return m_; }
  std::size_t depth() const { return depth_; }
  std::size_t sample_size() const { return n_; }

  std::int64_t operator()(std::size_t algorithm, std::size_t position) const {
    return counts_[algorithm * depth_ + position];
  }
  std::int64_t& operator()(std::size_t algorithm, std::size_t position) {
    return counts_[algorithm * depth_ + position];
  }

  std::int64_t column_sum(std::size_t position) const;
  std::int64_t row_sum(std::size_t algorithm) const;

  friend bool operator==(const RankCountMatrix&,
                         const RankCountMatrix&) = default;

 private:
  std::size_t m_;
  std::size_t depth_;
  std::size_t n_;
  std::vector<std::int64_t> counts_;
};

RankCountMatrix compute_rank_counts(const BenchmarkSample& sample);

// Counts of the sample with observation `excluded` removed. Throws
// std::out_of_range for a bad index.
RankCountMatrix compute_rank_counts_excluding(const BenchmarkSample& sample,
                                              std::size_t excluded);

// A point on the probability simplex.
class ProbVector {
 public:
  // Throws InputError on negative/non-finite entries or a sum further than
  // kSimplexTolerance from one.
  explicit ProbVector(std::vector<double> values);

  // Divides by the sum. Throws InputError if the sum is not positive.
  static ProbVector normalized(std::vector<double> values);
  static ProbVector uniform(std::size_t size);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  // Index of the largest entry; ties go to the lowest index.
  std::size_t argmax() const;
  // Indices sorted by decreasing probability, ties by index.
  std::vector<std::size_t> ranking() const;

  friend bool operator==(const ProbVector&, const ProbVector&) = default;

 private:
  std::vector<double> values_;
};

// Rank weights: nonnegative, summing to one and, when flagged monotone,
// non-increasing with position.
class WeightVector {
 public:
  WeightVector(std::vector<double> weights, bool monotone);

  // (1, 0, ..., 0): the win-count estimator.
  static WeightVector winner_only(std::size_t length);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t j) const { return weights_[j]; }
  std::span<const double> values() const { return weights_; }
  bool monotone() const { return monotone_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> weights_;
  bool monotone_;
};

}  // namespace rankwin
