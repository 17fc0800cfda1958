#include "doctest.h"

#include <stdexcept>

#include "rankwin/error.hpp"
#include "rankwin/ranking.hpp"
#include "support.hpp"

using namespace rankwin;

namespace {
constexpr std::size_t A = 0, B = 1, C = 2, D = 3;

// Brute-force tally straight from the observation list.
std::vector<std::vector<long>> tally(const BenchmarkSample& s) {
  std::vector<std::vector<long>> t(s.num_algorithms(),
                                   std::vector<long>(s.effective_depth(), 0));
  for (const auto& obs : s.observations()) {
    for (std::size_t j = 0; j < s.effective_depth(); ++j) {
      for (std::size_t a = 0; a < s.num_algorithms(); ++a) {
        if (obs.order()[j] == a) t[a][j] += 1;
      }
    }
  }
  return t;
}
}  // namespace

TEST_CASE("observation validation") {
  CHECK_NOTHROW(RankingObservation({B, A, C}, 3));
  CHECK_THROWS_AS(RankingObservation({}, 3), InputError);
  CHECK_THROWS_AS(RankingObservation({A, A, C}, 3), InputError);
  CHECK_THROWS_AS(RankingObservation({A, B, 3}, 3), InputError);
  CHECK_THROWS_AS(RankingObservation({A, B, C, D}, 3), InputError);
  RankingObservation top({4, 7, 1}, 19);
  CHECK(top.depth() == 3);
  CHECK_FALSE(top.is_full(19));
  CHECK(RankingObservation({C, A, B}, 3).is_full(3));
}

TEST_CASE("winner_of returns the first position") {
  CHECK(winner_of(RankingObservation({B, A, C}, 3)) == B);
  CHECK(winner_of(RankingObservation({11, 3, 17}, 19)) == 11);
}

TEST_CASE("sample validation and effective depth") {
  CHECK_THROWS_AS(BenchmarkSample({"A"}, {RankingObservation({0}, 1)}),
                  InputError);
  CHECK_THROWS_AS(BenchmarkSample({"A", "B"}, {}), InputError);
  CHECK_THROWS_AS(
      BenchmarkSample({"A", "A"}, {RankingObservation({0, 1}, 2)}),
      InputError);
  // An observation referencing an index beyond the roster is rejected.
  CHECK_THROWS_AS(
      BenchmarkSample({"A", "B"}, {RankingObservation({0, 2}, 3)}),
      InputError);
  auto s = test::sample_of(4, {{A, B, C, D}, {B, A}, {C, D, A}});
  CHECK(s.effective_depth() == 2);
  CHECK_FALSE(s.is_full());
  CHECK(s.size() == 3);
}

TEST_CASE("rank counts: direct examples") {
  auto s = test::sample_of(3, {{A, B, C}, {B, A, C}});
  RankCountMatrix c = compute_rank_counts(s);
  CHECK(c(A, 0) == 1);
  CHECK(c(B, 0) == 1);
  CHECK(c(C, 0) == 0);
  CHECK(c(C, 2) == 2);

  auto one = test::sample_of(3, {{C, A, B}});
  RankCountMatrix p = compute_rank_counts(one);
  const long expected[3][3] = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(p(a, j) == expected[a][j]);
  }
}

TEST_CASE("rank counts match a brute-force tally") {
  // Hand-built m=4 table of 6 observations.
  auto s = test::sample_of(4, {{A, B, C, D},
                               {D, C, B, A},
                               {B, D, A, C},
                               {B, A, D, C},
                               {C, A, B, D},
                               {A, C, D, B}});
  RankCountMatrix c = compute_rank_counts(s);
  auto t = tally(s);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(c(a, j) == t[a][j]);
  }
  // Frozen from the table above: A finishes 1st,2nd,3rd,4th = 2,2,1,1.
  CHECK(c(A, 0) == 2);
  CHECK(c(A, 1) == 2);
  CHECK(c(A, 2) == 1);
  CHECK(c(A, 3) == 1);
}

TEST_CASE("counting identities on random samples") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t m = 3 + seed % 5;
    const std::size_t depth = 1 + seed % m;
    auto s = test::random_sample(m, 5 + seed, depth, seed);
    RankCountMatrix c = compute_rank_counts(s);
    const auto n = static_cast<long>(s.size());
    for (std::size_t j = 0; j < depth; ++j) CHECK(c.column_sum(j) == n);
    for (std::size_t a = 0; a < m; ++a) CHECK(c.row_sum(a) <= n);
    if (depth == m) {
      for (std::size_t a = 0; a < m; ++a) CHECK(c.row_sum(a) == n);
    }
    // Winner tallies equal the first column.
    std::vector<long> wins(m, 0);
    for (const auto& obs : s.observations()) ++wins[winner_of(obs)];
    for (std::size_t a = 0; a < m; ++a) CHECK(wins[a] == c(a, 0));
  }
}

TEST_CASE("counts excluding one observation") {
  auto two = test::sample_of(3, {{A, B, C}, {C, B, A}});
  CHECK(compute_rank_counts_excluding(two, 0) ==
        compute_rank_counts(test::sample_of(3, {{C, B, A}})));
  CHECK_THROWS_AS(compute_rank_counts_excluding(two, 2), std::out_of_range);

  auto s = test::random_sample(4, 8, 4, 99);
  RankCountMatrix full = compute_rank_counts(s);
  RankCountMatrix sum(4, 4, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    RankCountMatrix ex = compute_rank_counts_excluding(s, i);
    // Recount oracle: rebuild the reduced sample and count from scratch.
    CHECK(ex == compute_rank_counts(s.without(i)));
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(ex.column_sum(j) == static_cast<long>(s.size() - 1));
    }
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t j = 0; j < 4; ++j) {
        // excluded + indicator of observation i = full
        const long ind = s.observation(i).order()[j] == a ? 1 : 0;
        CHECK(ex(a, j) + ind == full(a, j));
        sum(a, j) += ex(a, j);
      }
    }
  }
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(sum(a, j) == static_cast<long>(s.size() - 1) * full(a, j));
    }
  }
}

TEST_CASE("subset and without") {
  auto s = test::sample_of(3, {{A, B, C}, {B, A, C}, {C, A, B}});
  const std::vector<std::size_t> idx{2, 0};
  auto sub = s.subset(idx);
  CHECK(sub.size() == 2);
  CHECK(sub.observation(0).winner() == C);
  CHECK(sub.observation(1).winner() == A);
  CHECK(s.without(1).size() == 2);
  CHECK_THROWS_AS(s.without(3), std::out_of_range);
}

TEST_CASE("ProbVector invariants") {
  CHECK_NOTHROW(ProbVector({0.5, 0.5}));
  CHECK_NOTHROW(ProbVector({0.5, 0.5 + 5e-10}));
  CHECK_THROWS_AS(ProbVector({0.5, 0.6}), InputError);
  CHECK_THROWS_AS(ProbVector({1.5, -0.5}), InputError);
  CHECK_THROWS_AS(ProbVector({std::nan(""), 1.0}), InputError);
  ProbVector u = ProbVector::uniform(4);
  CHECK(u[3] == doctest::Approx(0.25));
  ProbVector n = ProbVector::normalized({2.0, 1.0, 1.0});
  CHECK(n[0] == doctest::Approx(0.5));
  ProbVector p({0.2, 0.4, 0.4});
  CHECK(p.argmax() == 1);  // lowest index among ties
  CHECK(p.ranking() == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("WeightVector invariants") {
  CHECK_NOTHROW(WeightVector({0.6, 0.3, 0.1}, true));
  CHECK_NOTHROW(WeightVector({0.1, 0.3, 0.6}, false));
  CHECK_THROWS_AS(WeightVector({0.1, 0.3, 0.6}, true), InputError);
  CHECK_THROWS_AS(WeightVector({0.6, 0.3}, true), InputError);
  CHECK_THROWS_AS(WeightVector({1.2, -0.2}, false), InputError);
  WeightVector w = WeightVector::winner_only(3);
  CHECK(w[0] == 1.0);
  CHECK(w[2] == 0.0);
  CHECK(w.monotone());
}
