#pragma once

// Synthetic ranking distributions over the m! alphabet, sampling, ground
// truth win probabilities, the oracle weight selector and Monte Carlo risk
// experiments.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankwin/divergence.hpp"
#include "rankwin/methods.hpp"
#include "rankwin/random.hpp"
#include "rankwin/ranking.hpp"
#include "rankwin/simplex_search.hpp"

namespace rankwin {

enum class Family {
  kZipf,
  kGeometric,
  kNegativeBinomial,
  kBetaBinomial,
  kUniform,
  kStep
};

struct FamilyParams {
  double zipf_s = 1.01;
  double geometric_alpha = 0.4;
  double negbin_l = 1.0;
  double negbin_r = 0.003;
  double betabin_alpha = 2.0;
  double betabin_beta = 2.0;
};

const char* to_string(Family family);
Family parse_family(const std::string& text);
std::vector<Family> all_families();

// Probability of outcomes u = 1..M (returned 0-based):
//   zipf      u^-s / sum_v v^-s
//   geometric (1-a)^(u-1) a, truncated to M and renormalized
//   negbin    C(u+l-1, u) r^u (1-r)^l, truncated to M and renormalized
//   betabin   C(N, k) B(k+a, N-k+b) / B(a, b) with k = u-1, N = M-1
//   uniform   1/M
//   step      2:1 weight for the first floor(M/2) outcomes vs the rest
// Throws InputError for M < 2 or invalid parameters.
ProbVector family_pmf(Family family, const FamilyParams& params,
                      std::size_t M);

// A distribution over full rankings of m <= 8 algorithms. Outcome u of the
// pmf is attached to a ranking through a seeded uniform shuffle of the
// permutation indices, so which ranking gets which probability is random
// but reproducible.
class RankingDistribution {
 public:
  RankingDistribution(std::size_t m, Family family, const FamilyParams& params,
                      std::uint64_t assignment_seed);

  // Explicit probabilities indexed by lexicographic permutation index (no
  // shuffle).
  static RankingDistribution from_permutation_pmf(std::size_t m,
                                                  std::vector<double> pmf);

  std::size_t num_algorithms() const { return m_; }
  std::size_t alphabet_size() const { return pmf_.size(); }
  std::optional<Family> family() const { return family_; }
  std::uint64_t assignment_seed() const { return assignment_seed_; }

  // Probability of outcome u and the ranking it is attached to.
  double outcome_probability(std::size_t u) const { return pmf_[u]; }
  std::span<const AlgorithmIndex> outcome_ranking(std::size_t u) const {
    return {&rankings_[u * m_], m_};
  }
  // Inverse-CDF draw of one outcome.
  std::size_t draw_outcome(Rng& rng) const;

 private:
  RankingDistribution(std::size_t m, std::optional<Family> family,
                      std::uint64_t assignment_seed, std::vector<double> pmf,
                      std::vector<std::uint64_t> assignment);
  static std::vector<double> pmf_values(Family family,
                                        const FamilyParams& params,
                                        std::size_t m);
  static std::vector<std::uint64_t> shuffled_indices(std::size_t m,
                                                     std::uint64_t seed);

  std::size_t m_;
  std::optional<Family> family_;
  std::uint64_t assignment_seed_;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
  std::vector<AlgorithmIndex> rankings_;  // M x m
};

// "A", "B", ... for m <= 26, "alg0", "alg1", ... otherwise.
std::vector<std::string> default_algorithm_names(std::size_t m);

// p_j = total probability of rankings won by algorithm j.
ProbVector true_win_prob(const RankingDistribution& dist);

// n i.i.d. rankings; reproducible from (assignment seed, sample_seed).
BenchmarkSample sample_rankings(const RankingDistribution& dist, std::size_t n,
                                std::uint64_t sample_seed);

struct OracleOptions {
  bool monotone = true;
  double floor = kProbabilityFloor;
  SimplexSearchOptions search;
};

struct OracleResult {
  WeightVector weights;
  // Monte Carlo estimate of E D(p, p^w) at the returned weights.
  double expected_divergence;
};

// Weights minimizing the Monte Carlo expected divergence between the true
// win probabilities and the weighted estimator. The same R samples (common
// random numbers) score every candidate; the search is the one used for
// leave-one-out fitting.
OracleResult oracle_weights(const RankingDistribution& dist, std::size_t n,
                            std::size_t K, Divergence kind, std::size_t R,
                            std::uint64_t seed,
                            const OracleOptions& options = {});

// Per-sample estimator prepared once per (distribution, n).
using SampleEstimator = std::function<MethodOutput(const BenchmarkSample&)>;

struct RiskEstimator {
  std::string name;
  std::function<SampleEstimator(const RankingDistribution&, std::size_t n)>
      prepare;
};

// Any sample method from methods.hpp, plus
//   truth              returns the true win probabilities (debugging)
//   oracle_kl/oracle_tv  oracle weights (settings.oracle_replicas samples)
RiskEstimator make_risk_estimator(const std::string& name,
                                  const MethodSettings& settings = {});

struct RiskExperimentConfig {
  std::vector<std::size_t> n_values;
  std::size_t replicas = 1000;
  std::vector<Divergence> kinds{Divergence::kKL};
  std::uint64_t master_seed = 0;
  double floor = kProbabilityFloor;
  // 0 means "from the environment" (RANKWIN_THREADS, default 1).
  std::size_t threads = 0;
};

struct RiskRow {
  std::string estimator;
  std::size_t n;
  Divergence kind;
  double mean_risk;
  double standard_error;
  std::size_t replicas;
  std::vector<double> per_replica;
  // Mean fitted weights across replicas; empty for weight-free methods.
  std::vector<double> mean_weights;
};

struct RiskTable {
  std::string distribution;
  std::vector<RiskRow> rows;

  // Throws std::out_of_range if absent.
  const RiskRow& row(const std::string& estimator, std::size_t n,
                     Divergence kind) const;
};

// For each n and replica r, one sample is drawn from a seed derived from
// (master_seed, n, r) and every estimator is scored on it, so rows are
// paired across estimators. Results do not depend on thread count.
RiskTable risk_experiment(const RankingDistribution& dist,
                          const std::vector<RiskEstimator>& estimators,
                          const RiskExperimentConfig& config);

}  // namespace rankwin
