#include "rankwin/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rankwin/error.hpp"
#include "rankwin/estimators.hpp"
#include "rankwin/parallel.hpp"
#include "rankwin/permutation.hpp"

namespace rankwin {
namespace {

constexpr std::uint64_t kOracleStream = 0x0dac1e5eedULL;

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

ProbVector from_log_weights(std::vector<double> logw) {
  const double top = *std::max_element(logw.begin(), logw.end());
  for (double& v : logw) v = std::exp(v - top);
  return ProbVector::normalized(std::move(logw));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

void require_alphabet(std::size_t m) {
  if (m < 2 || m > 8) {
    throw InputError("ranking distributions support 2 <= m <= 8, got " +
                     std::to_string(m));
  }
}

}  // namespace

std::vector<double> RankingDistribution::pmf_values(Family family,
                                                    const FamilyParams& params,
                                                    std::size_t m) {
  require_alphabet(m);
  const ProbVector p = family_pmf(family, params, factorial(m));
  return {p.values().begin(), p.values().end()};
}

// Fisher-Yates shuffle of permutation indices: outcome u -> ranking.
std::vector<std::uint64_t> RankingDistribution::shuffled_indices(
    std::size_t m, std::uint64_t seed) {
  require_alphabet(m);
  const std::size_t M = factorial(m);
  std::vector<std::uint64_t> assignment(M);
  for (std::size_t u = 0; u < M; ++u) assignment[u] = u;
  Rng rng(derive_seed(seed, {}));
  for (std::size_t i = M - 1; i > 0; --i) {
    std::swap(assignment[i], assignment[rng.below(i + 1)]);
  }
  return assignment;
}

const char* to_string(Family family) {
  switch (family) {
    case Family::kZipf:
      return "zipf";
    case Family::kGeometric:
      return "geometric";
    case Family::kNegativeBinomial:
      return "negative_binomial";
    case Family::kBetaBinomial:
      return "beta_binomial";
    case Family::kUniform:
      return "uniform";
    case Family::kStep:
      return "step";
  }
  return "unknown";
}

Family parse_family(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (Family f : all_families()) {
    if (lower == to_string(f)) return f;
  }
  if (lower == "negbin") return Family::kNegativeBinomial;
  if (lower == "betabin") return Family::kBetaBinomial;
  throw InputError("unknown distribution family '" + text + "'");
}

std::vector<Family> all_families() {
  return {Family::kZipf,         Family::kGeometric, Family::kNegativeBinomial,
          Family::kBetaBinomial, Family::kUniform,   Family::kStep};
}

ProbVector family_pmf(Family family, const FamilyParams& params,
                      std::size_t M) {
  require(M >= 2, "alphabet size must be >= 2");
  std::vector<double> logw(M);
  switch (family) {
    case Family::kZipf:
      require(params.zipf_s > 0.0, "zipf exponent must be > 0");
      for (std::size_t u = 1; u <= M; ++u) {
        logw[u - 1] = -params.zipf_s * std::log(static_cast<double>(u));
      }
      break;
    case Family::kGeometric: {
      const double a = params.geometric_alpha;
      require(a > 0.0 && a < 1.0, "geometric alpha must be in (0, 1)");
      for (std::size_t u = 1; u <= M; ++u) {
        logw[u - 1] = static_cast<double>(u - 1) * std::log1p(-a) + std::log(a);
      }
      break;
    }
    case Family::kNegativeBinomial: {
      const double l = params.negbin_l;
      const double r = params.negbin_r;
      require(l >= 1.0, "negative binomial l must be >= 1");
      require(r > 0.0 && r < 1.0, "negative binomial r must be in (0, 1)");
      for (std::size_t u = 1; u <= M; ++u) {
        const double uu = static_cast<double>(u);
        logw[u - 1] = std::lgamma(uu + l) - std::lgamma(uu + 1.0) -
                      std::lgamma(l) + uu * std::log(r) + l * std::log1p(-r);
      }
      break;
    }
    case Family::kBetaBinomial: {
      const double a = params.betabin_alpha;
      const double b = params.betabin_beta;
      require(a > 0.0 && b > 0.0, "beta-binomial alpha, beta must be > 0");
      const double N = static_cast<double>(M - 1);
      for (std::size_t k = 0; k < M; ++k) {
        const double kk = static_cast<double>(k);
        const double log_choose =
            std::lgamma(N + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(N - kk + 1.0);
        logw[k] = log_choose + log_beta(kk + a, N - kk + b) - log_beta(a, b);
      }
      break;
    }
    case Family::kUniform:
      std::fill(logw.begin(), logw.end(), 0.0);
      break;
    case Family::kStep:
      for (std::size_t u = 0; u < M; ++u) {
        logw[u] = u < M / 2 ? std::log(2.0) : 0.0;
      }
      break;
  }
  return from_log_weights(std::move(logw));
}

RankingDistribution::RankingDistribution(std::size_t m, Family family,
                                         const FamilyParams& params,
                                         std::uint64_t assignment_seed)
    : RankingDistribution(m, family, assignment_seed,
                          pmf_values(family, params, m),
                          shuffled_indices(m, assignment_seed)) {}

RankingDistribution::RankingDistribution(std::size_t m,
                                         std::optional<Family> family,
                                         std::uint64_t assignment_seed,
                                         std::vector<double> pmf,
                                         std::vector<std::uint64_t> assignment)
    : m_(m), family_(family), assignment_seed_(assignment_seed),
      pmf_(std::move(pmf)) {
  require_alphabet(m);
  const std::size_t M = factorial(m);
  if (pmf_.size() != M || assignment.size() != M) {
    throw InputError("ranking pmf must have m! = " + std::to_string(M) +
                     " entries");
  }
  ProbVector check(pmf_);  // validates the simplex
  cdf_.resize(M);
  double running = 0.0;
  for (std::size_t u = 0; u < M; ++u) {
    running += pmf_[u];
    cdf_[u] = running;
  }
  rankings_.resize(M * m);
  for (std::size_t u = 0; u < M; ++u) {
    permutation_by_index(assignment[u],
                         std::span<AlgorithmIndex>(&rankings_[u * m], m));
  }
}

RankingDistribution RankingDistribution::from_permutation_pmf(
    std::size_t m, std::vector<double> pmf) {
  require_alphabet(m);
  std::vector<std::uint64_t> identity(factorial(m));
  for (std::size_t u = 0; u < identity.size(); ++u) identity[u] = u;
  return RankingDistribution(m, std::nullopt, 0, std::move(pmf),
                             std::move(identity));
}

std::size_t RankingDistribution::draw_outcome(Rng& rng) const {
  const double x = rng.uniform() * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), x);
  std::size_t u = static_cast<std::size_t>(it - cdf_.begin());
  if (u >= cdf_.size()) u = cdf_.size() - 1;
  // Never return a zero-probability outcome sitting on a flat CDF step.
  while (pmf_[u] == 0.0 && u > 0) --u;
  return u;
}

std::vector<std::string> default_algorithm_names(std::size_t m) {
  std::vector<std::string> names(m);
  for (std::size_t i = 0; i < m; ++i) {
    names[i] = m <= 26 ? std::string(1, static_cast<char>('A' + i))
                       : "alg" + std::to_string(i);
  }
  return names;
}

ProbVector true_win_prob(const RankingDistribution& dist) {
  std::vector<double> p(dist.num_algorithms(), 0.0);
  for (std::size_t u = 0; u < dist.alphabet_size(); ++u) {
    p[dist.outcome_ranking(u)[0]] += dist.outcome_probability(u);
  }
  return ProbVector::normalized(std::move(p));
}

BenchmarkSample sample_rankings(const RankingDistribution& dist, std::size_t n,
                                std::uint64_t sample_seed) {
  const std::size_t m = dist.num_algorithms();
  Rng rng(derive_seed(sample_seed, {dist.assignment_seed()}));
  std::vector<RankingObservation> observations;
  observations.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ranking = dist.outcome_ranking(dist.draw_outcome(rng));
    observations.emplace_back(
        std::vector<AlgorithmIndex>(ranking.begin(), ranking.end()), m);
  }
  return BenchmarkSample(default_algorithm_names(m), std::move(observations));
}

OracleResult oracle_weights(const RankingDistribution& dist, std::size_t n,
                            std::size_t K, Divergence kind, std::size_t R,
                            std::uint64_t seed, const OracleOptions& options) {
  const std::size_t m = dist.num_algorithms();
  if (R < 1) throw InputError("oracle needs at least one replica");
  if (n < 1) throw InputError("oracle needs n >= 1");
  if (K < 1 || K > m) {
    throw InfeasibleError("model order " + std::to_string(K) +
                          " outside [1, m]");
  }
  const ProbVector truth = true_win_prob(dist);

  // Samples with identical top-K count matrices give identical estimates;
  // group them so the objective costs one pass over distinct matrices.
  std::map<std::vector<std::int32_t>, std::size_t> groups;
  std::vector<std::int32_t> key(m * K);
  for (std::size_t r = 0; r < R; ++r) {
    Rng rng(derive_seed(seed, {r, dist.assignment_seed()}));
    std::fill(key.begin(), key.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ranking = dist.outcome_ranking(dist.draw_outcome(rng));
      for (std::size_t j = 0; j < K; ++j) ++key[ranking[j] * K + j];
    }
    ++groups[key];
  }
  std::vector<std::vector<std::int32_t>> matrices;
  std::vector<double> multiplicity;
  for (auto& [counts, mult] : groups) {
    matrices.push_back(counts);
    multiplicity.push_back(static_cast<double>(mult));
  }

  const double nn = static_cast<double>(n);
  const double floor = options.floor;
  auto objective = [&](std::span<const double> w) {
    double total = 0.0;
    for (std::size_t g = 0; g < matrices.size(); ++g) {
      const auto& c = matrices[g];
      double d = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        double est = 0.0;
        for (std::size_t j = 0; j < K; ++j) est += w[j] * c[a * K + j];
        est /= nn;
        if (kind == Divergence::kTV) {
          d += std::abs(truth[a] - est);
        } else if (truth[a] > 0.0) {
          d += truth[a] * std::log(truth[a] / std::max(est, floor));
        }
      }
      total += multiplicity[g] * d;
    }
    return total / static_cast<double>(R);
  };
  SimplexSearchResult best =
      simplex_minimize(objective, K, options.monotone, options.search);
  const double value = objective(best.weights.values());
  return {std::move(best.weights), value};
}

RiskEstimator make_risk_estimator(const std::string& name,
                                  const MethodSettings& settings) {
  if (name == "truth") {
    return {name, [](const RankingDistribution& dist, std::size_t) {
              ProbVector p = true_win_prob(dist);
              return SampleEstimator([p](const BenchmarkSample&) {
                return MethodOutput{p, {}, {}};
              });
            }};
  }
  if (name == "oracle_kl" || name == "oracle_tv") {
    const Divergence kind =
        name == "oracle_kl" ? Divergence::kKL : Divergence::kTV;
    return {name, [kind, settings](const RankingDistribution& dist,
                                   std::size_t n) {
              OracleOptions options;
              options.monotone = settings.monotone;
              options.floor = settings.floor;
              options.search = settings.search;
              const std::size_t K =
                  std::min(settings.order, dist.num_algorithms());
              WeightVector w =
                  oracle_weights(dist, n, K, kind, settings.oracle_replicas,
                                 derive_seed(settings.seed, {n, kOracleStream}),
                                 options)
                      .weights;
              return SampleEstimator([w](const BenchmarkSample& sample) {
                ProbVector p = weighted_estimate(compute_rank_counts(sample), w);
                return MethodOutput{
                    std::move(p),
                    std::vector<double>(w.values().begin(), w.values().end()),
                    {}};
              });
            }};
  }
  // Validates the name now rather than on first use.
  WinProbMethod probe = make_method(name, settings);
  return {name, [name, settings](const RankingDistribution&, std::size_t) {
            return SampleEstimator(make_method(name, settings));
          }};
}

const RiskRow& RiskTable::row(const std::string& estimator, std::size_t n,
                              Divergence kind) const {
  for (const auto& r : rows) {
    if (r.estimator == estimator && r.n == n && r.kind == kind) return r;
  }
  throw std::out_of_range("no risk row for " + estimator + " n=" +
                          std::to_string(n) + " " + to_string(kind));
}

RiskTable risk_experiment(const RankingDistribution& dist,
                          const std::vector<RiskEstimator>& estimators,
                          const RiskExperimentConfig& config) {
  if (config.replicas < 1) throw InputError("need at least one replica");
  const std::size_t threads =
      config.threads == 0 ? default_thread_count() : config.threads;
  const ProbVector truth = true_win_prob(dist);
  const std::size_t E = estimators.size();
  const std::size_t D = config.kinds.size();
  const std::size_t R = config.replicas;

  RiskTable table;
  table.distribution =
      dist.family() ? to_string(*dist.family()) : std::string("custom");
  for (std::size_t n : config.n_values) {
    std::vector<SampleEstimator> prepared;
    prepared.reserve(E);
    for (const auto& e : estimators) prepared.push_back(e.prepare(dist, n));

    // losses[(e * D + d) * R + r], weights[e * R + r]
    std::vector<double> losses(E * D * R, 0.0);
    std::vector<std::vector<double>> weights(E * R);
    parallel_for(R, threads, [&](std::size_t r) {
      const BenchmarkSample sample =
          sample_rankings(dist, n, derive_seed(config.master_seed, {n, r}));
      for (std::size_t e = 0; e < E; ++e) {
        MethodOutput out = prepared[e](sample);
        for (std::size_t d = 0; d < D; ++d) {
          losses[(e * D + d) * R + r] =
              divergence(config.kinds[d], truth, out.win_prob, config.floor);
        }
        weights[e * R + r] = std::move(out.weights);
      }
    });

    for (std::size_t e = 0; e < E; ++e) {
      std::vector<double> mean_w;
      for (std::size_t r = 0; r < R; ++r) {
        const auto& w = weights[e * R + r];
        if (w.empty()) continue;
        if (mean_w.size() < w.size()) mean_w.resize(w.size(), 0.0);
        for (std::size_t j = 0; j < w.size(); ++j) mean_w[j] += w[j];
      }
      for (double& v : mean_w) v /= static_cast<double>(R);
      for (std::size_t d = 0; d < D; ++d) {
        std::vector<double> per(losses.begin() + (e * D + d) * R,
                                losses.begin() + (e * D + d + 1) * R);
        double sum = 0.0;
        for (double v : per) sum += v;
        const double mean = sum / static_cast<double>(R);
        double ss = 0.0;
        for (double v : per) ss += (v - mean) * (v - mean);
        const double se =
            R > 1 ? std::sqrt(ss / static_cast<double>(R - 1) /
                              static_cast<double>(R))
                  : 0.0;
        table.rows.push_back(RiskRow{estimators[e].name, n, config.kinds[d],
                                     mean, se, R, std::move(per), mean_w});
      }
    }
  }
  return table;
}

}  // namespace rankwin
