#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "rankwin/error.hpp"
#include "rankwin/estimators.hpp"
#include "rankwin/io.hpp"
#include "rankwin/synthetic.hpp"
#include "support.hpp"

using namespace rankwin;

namespace {
constexpr std::size_t A = 0, B = 1, C = 2;

// Second implementation of the leave-one-out losses: rebuild the reduced
// sample for every i and evaluate the estimator literally.
double loo_oracle(const BenchmarkSample& s, const std::vector<double>& w,
                  Divergence kind, double floor = kProbabilityFloor) {
  const std::size_t n = s.size();
  const std::size_t m = s.num_algorithms();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const BenchmarkSample rest = s.without(i);
    std::vector<double> p(m, 0.0);
    for (const auto& obs : rest.observations()) {
      for (std::size_t j = 0; j < w.size(); ++j) p[obs.order()[j]] += w[j];
    }
    for (double& v : p) v /= static_cast<double>(n - 1);
    const std::size_t y = s.observation(i).winner();
    if (kind == Divergence::kKL) {
      total -= std::log(std::max(floor, p[y]));
    } else {
      for (std::size_t a = 0; a < m; ++a) {
        total += std::abs((a == y ? 1.0 : 0.0) - p[a]);
      }
    }
  }
  return total / static_cast<double>(n);
}

std::vector<double> vec(const WeightVector& w) {
  return {w.values().begin(), w.values().end()};
}
}  // namespace

TEST_CASE("mle examples") {
  auto s = test::sample_of(3, {{A, B, C}, {A, C, B}, {B, A, C}, {C, B, A}});
  ProbVector p = mle_win_prob(compute_rank_counts(s));
  CHECK(p[0] == 0.5);
  CHECK(p[1] == 0.25);
  CHECK(p[2] == 0.25);

  auto all = test::sample_of(4, {{0, 1, 2, 3}, {0, 3, 2, 1}, {0, 2, 1, 3}});
  ProbVector q = mle_win_prob(compute_rank_counts(all));
  CHECK(q[0] == 1.0);
  CHECK(q[3] == 0.0);
}

TEST_CASE("mle on the top-3 leaderboard fixture") {
  CsvOptions options;
  options.roster = read_roster(RANKWIN_TEST_DATA "/roster_19.txt");
  auto parsed =
      parse_rankings_csv(RANKWIN_TEST_DATA "/top3_19algos_n30.csv", options);
  ProbVector p = mle_win_prob(compute_rank_counts(parsed.sample));
  auto order = p.ranking();
  CHECK(p[order[0]] == doctest::Approx(0.2667).epsilon(5e-4));
  CHECK(p[order[1]] == doctest::Approx(0.2667).epsilon(5e-4));
  CHECK(p[order[2]] == doctest::Approx(0.2333).epsilon(5e-4));
  CHECK(p[order[0]] == 8.0 / 30.0);
  CHECK(p[order[2]] == 7.0 / 30.0);
}

TEST_CASE("weighted estimate examples") {
  auto s = test::sample_of(3, {{A, B, C}, {B, A, C}});
  auto counts = compute_rank_counts(s);
  ProbVector p = weighted_estimate(counts, WeightVector({0.6, 0.3, 0.1}, true));
  CHECK(p[0] == doctest::Approx(0.45));
  CHECK(p[1] == doctest::Approx(0.45));
  CHECK(p[2] == doctest::Approx(0.10));
  CHECK(weighted_estimate(counts, WeightVector::winner_only(3)) ==
        mle_win_prob(counts));

  auto one = test::sample_of(4, {{2, 0, 3, 1}});
  ProbVector u = weighted_estimate(compute_rank_counts(one),
                                   WeightVector({0.25, 0.25, 0.25, 0.25}, true));
  for (std::size_t a = 0; a < 4; ++a) CHECK(u[a] == doctest::Approx(0.25));

  auto top2 = test::sample_of(4, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(weighted_estimate(compute_rank_counts(top2),
                                    WeightVector({0.5, 0.3, 0.2}, true)),
                  InfeasibleError);
}

TEST_CASE("weighted estimate is a distribution for every feasible w") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 3 + trial % 5;
    const std::size_t depth = 1 + trial % m;
    auto s = test::random_sample(m, 3 + trial % 11, depth, 100 + trial);
    auto w = test::random_simplex(1 + trial % depth, rng, trial % 2 == 0);
    ProbVector p = weighted_estimate(compute_rank_counts(s),
                                     WeightVector(w, trial % 2 == 0));
    double sum = 0.0;
    for (double v : p.values()) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("loo loss examples") {
  auto both_a = test::sample_of(2, {{A, B}, {A, B}});
  CHECK(loo_loss(both_a, WeightVector::winner_only(1), Divergence::kKL) ==
        doctest::Approx(0.0));
  auto split = test::sample_of(2, {{A, B}, {B, A}});
  CHECK(loo_loss(split, WeightVector::winner_only(1), Divergence::kKL) ==
        doctest::Approx(-std::log(1e-6)));
  CHECK(loo_loss(split, WeightVector::winner_only(1), Divergence::kTV) ==
        doctest::Approx(2.0));
  auto single = test::sample_of(2, {{A, B}});
  CHECK_THROWS_AS(loo_loss(single, WeightVector::winner_only(1), Divergence::kKL),
                  InputError);
  CHECK_THROWS_AS(
      loo_loss(test::sample_of(3, {{A, B}, {B, A}}),
               WeightVector({0.5, 0.3, 0.2}, true), Divergence::kKL),
      InfeasibleError);
}

TEST_CASE("loo loss matches a second implementation") {
  auto s = test::sample_of(3, {{A, B, C}, {B, A, C}, {A, C, B}, {C, A, B},
                               {B, C, A}});
  const std::vector<double> w{0.5, 0.3, 0.2};
  for (auto kind : {Divergence::kKL, Divergence::kTV}) {
    CHECK(loo_loss(s, WeightVector(w, true), kind) ==
          doctest::Approx(loo_oracle(s, w, kind)).epsilon(1e-12));
  }
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + trial % 6;
    const std::size_t depth = 1 + trial % m;
    auto smp = test::random_sample(m, 2 + trial % 9, depth, 500 + trial);
    auto wv = test::random_simplex(1 + trial % depth, rng, false);
    for (auto kind : {Divergence::kKL, Divergence::kTV}) {
      LooObjective obj(smp, wv.size(), kind);
      const double expected = loo_oracle(smp, wv, kind);
      CHECK(obj(wv) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(loo_loss(smp, WeightVector(wv, false), kind) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("loo loss is convex in w") {
  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = test::random_sample(4 + trial % 3, 6 + trial % 10, 3, 900 + trial);
    auto kind = trial % 2 ? Divergence::kTV : Divergence::kKL;
    LooObjective obj(s, 3, kind);
    auto w = test::random_simplex(3, rng, true);
    auto v = test::random_simplex(3, rng, true);
    for (double lambda : {0.25, 0.5, 0.75}) {
      std::vector<double> mid(3);
      for (int j = 0; j < 3; ++j) mid[j] = lambda * w[j] + (1 - lambda) * v[j];
      CHECK(obj(mid) <= lambda * obj(w) + (1 - lambda) * obj(v) + 1e-9);
    }
  }
}

TEST_CASE("fit with K = 1 is the MLE") {
  auto s = test::random_sample(5, 12, 5, 3);
  auto fit = fit_loo_weights(s, 1, Divergence::kKL);
  CHECK(fit.weights.size() == 1);
  CHECK(fit.weights[0] == 1.0);
  CHECK(weighted_estimate(compute_rank_counts(s), fit.weights) ==
        mle_win_prob(compute_rank_counts(s)));
}

TEST_CASE("fit reports its own loss and never loses to the MLE point") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    auto s = test::random_sample(5, 10 + seed, 4, seed);
    for (auto kind : {Divergence::kKL, Divergence::kTV}) {
      auto fit = fit_loo_weights(s, 3, kind);
      CHECK(fit.weights.monotone());
      CHECK(fit.divergence == kind);
      CHECK(fit.loo_loss ==
            doctest::Approx(loo_loss(s, fit.weights, kind)).epsilon(1e-9));
      CHECK(fit.loo_loss <= loo_loss(s, WeightVector::winner_only(3), kind) +
                                1e-12);
      CHECK(fit.grid_resolution == 100);
      CHECK(fit.final_step <= 1e-6);
      CHECK(fit.evaluations > 0);
    }
  }
}

TEST_CASE("fit errors") {
  auto s = test::sample_of(4, {{0, 1}, {1, 0}, {2, 3}});
  CHECK_THROWS_AS(fit_loo_weights(s, 3), InfeasibleError);
  CHECK_THROWS_AS(fit_loo_weights(s, 0), InfeasibleError);
  CHECK_THROWS_AS(fit_loo_weights(test::sample_of(3, {{0, 1, 2}}), 2),
                  InputError);
}

TEST_CASE("fit matches a 1/1000 grid on K = 2") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto s = test::random_sample(4, 6, 4, 40 + seed);
    for (auto kind : {Divergence::kKL, Divergence::kTV}) {
      auto fit = fit_loo_weights(s, 2, kind);
      double best = kInfinity;
      for (int i = 500; i <= 1000; ++i) {
        const double w1 = i / 1000.0;
        best = std::min(best, loo_oracle(s, {w1, 1.0 - w1}, kind));
      }
      CHECK(fit.loo_loss <= best + 1e-3);
      CHECK(fit.loo_loss >= best - 1e-3);
    }
  }
}

TEST_CASE("relabeling and reordering do not change fitted weights") {
  auto s = test::random_sample(5, 15, 5, 11);
  const std::vector<std::size_t> perm{3, 0, 4, 1, 2};
  auto r = test::relabel(s, perm);
  auto base = fit_loo_weights(s, 3, Divergence::kKL);
  auto moved = fit_loo_weights(r, 3, Divergence::kKL);
  CHECK(vec(base.weights) == vec(moved.weights));
  ProbVector p = weighted_estimate(compute_rank_counts(s), base.weights);
  ProbVector q = weighted_estimate(compute_rank_counts(r), base.weights);
  for (std::size_t a = 0; a < 5; ++a) CHECK(q[perm[a]] == doctest::Approx(p[a]));

  std::vector<std::size_t> reversed;
  for (std::size_t i = s.size(); i-- > 0;) reversed.push_back(i);
  auto shuffled = s.subset(reversed);
  auto again = fit_loo_weights(shuffled, 3, Divergence::kTV);
  CHECK(vec(again.weights) == vec(fit_loo_weights(s, 3, Divergence::kTV).weights));
}

TEST_CASE("fitted weights spread out under uniform rankings") {
  RankingDistribution dist(6, Family::kUniform, FamilyParams{}, 1);
  auto s = sample_rankings(dist, 200, 2);
  auto fit = fit_loo_weights(s, 3, Divergence::kKL);
  auto w = vec(fit.weights);
  CHECK(*std::max_element(w.begin(), w.end()) -
            *std::min_element(w.begin(), w.end()) <
        0.25);
}

TEST_CASE("fitted first weight is large for a heavy-tailed sample") {
  RankingDistribution dist(6, Family::kZipf, FamilyParams{}, 1);
  auto s = sample_rankings(dist, 500, 2);
  auto fit = fit_loo_weights(s, 3, Divergence::kKL);
  CHECK(fit.weights[0] > 0.8);
}
