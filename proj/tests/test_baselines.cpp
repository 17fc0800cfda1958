#include "doctest.h"

#include <cmath>

#include "rankwin/baselines.hpp"
#include "rankwin/error.hpp"
#include "support.hpp"

using namespace rankwin;

namespace {
constexpr std::size_t A = 0, B = 1, C = 2;
}

TEST_CASE("borda examples") {
  auto one = borda(test::sample_of(3, {{A, B, C}}));
  CHECK(one.scores == std::vector<double>{2, 1, 0});
  CHECK(one.prob[0] == doctest::Approx(2.0 / 3.0));
  CHECK(one.prob[2] == 0.0);

  auto sym = borda(test::sample_of(3, {{A, B, C}, {C, B, A}}));
  CHECK(sym.scores == std::vector<double>{2, 2, 2});
  CHECK(sym.prob[1] == doctest::Approx(1.0 / 3.0));

  auto top2 = borda(test::sample_of(5, {{A, B}}));
  CHECK(top2.scores == std::vector<double>{4, 3, 1, 1, 1});
  CHECK(top2.prob[0] == doctest::Approx(0.4));
}

TEST_CASE("average rank examples") {
  CHECK(average_rank(test::sample_of(3, {{C, A, B}})) ==
        std::vector<double>{2, 3, 1});
  CHECK(average_rank(test::sample_of(3, {{A, B, C}, {C, B, A}})) ==
        std::vector<double>{2, 2, 2});
  CHECK(average_rank(test::sample_of(5, {{A, B}})) ==
        std::vector<double>{1, 2, 4, 4, 4});
}

TEST_CASE("borda and average rank agree on full rankings") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t m = 3 + seed % 5;
    auto s = test::random_sample(m, 4 + seed % 9, m, seed);
    auto b = borda(s);
    auto r = average_rank(s);
    for (double v : r) {
      CHECK(v >= 1.0);
      CHECK(v <= static_cast<double>(m));
    }
    // score = n (m - mean rank)
    for (std::size_t a = 0; a < m; ++a) {
      CHECK(b.scores[a] ==
            doctest::Approx(static_cast<double>(s.size()) *
                            (static_cast<double>(m) - r[a])));
    }
    const std::size_t best_rank =
        std::min_element(r.begin(), r.end()) - r.begin();
    CHECK(b.prob.argmax() == best_rank);
  }
}

TEST_CASE("plackett-luce with two algorithms is the win fraction") {
  std::vector<std::vector<std::size_t>> rows;
  for (int i = 0; i < 7; ++i) rows.push_back({A, B});
  for (int i = 0; i < 3; ++i) rows.push_back({B, A});
  auto s = test::sample_of(2, rows);
  auto fit = plackett_luce_fit(s);
  CHECK(fit.converged);
  CHECK(fit.alpha[0] == doctest::Approx(0.7).epsilon(1e-8));
  // 1-D likelihood grid.
  double best = -1e300, best_a = 0;
  for (int i = 1; i < 1000; ++i) {
    const double a = i / 1000.0;
    const std::vector<double> alpha{a, 1 - a};
    const double ll = plackett_luce_log_likelihood(s, alpha);
    if (ll > best) {
      best = ll;
      best_a = a;
    }
  }
  CHECK(std::abs(best_a - fit.alpha[0]) <= 1e-3);
  CHECK(fit.log_likelihood == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("plackett-luce on all permutations is uniform") {
  auto s = test::sample_of(3, {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0},
                               {2, 0, 1}, {2, 1, 0}});
  auto fit = plackett_luce_fit(s);
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(fit.alpha[a] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  }
}

TEST_CASE("plackett-luce matches likelihood maximization") {
  auto s = test::sample_of(3, {{A, B, C}, {A, B, C}, {B, C, A}});
  auto fit = plackett_luce_fit(s);
  CHECK(fit.converged);
  // Independent quasi-Newton maximization in log-parameters.
  CHECK(fit.alpha[0] == doctest::Approx(0.4093327145874135).epsilon(1e-6));
  CHECK(fit.alpha[1] == doctest::Approx(0.46977756474500587).epsilon(1e-6));
  CHECK(fit.alpha[2] == doctest::Approx(0.12088972066758066).epsilon(1e-6));
  CHECK(fit.log_likelihood == doctest::Approx(-4.478354928677355).epsilon(1e-9));
  // 2-simplex grid at resolution 1e-3.
  double best = -1e300;
  std::vector<double> arg;
  for (int i = 1; i < 1000; ++i) {
    for (int j = 1; i + j < 1000; ++j) {
      const std::vector<double> alpha{i / 1000.0, j / 1000.0,
                                      (1000 - i - j) / 1000.0};
      const double ll = plackett_luce_log_likelihood(s, alpha);
      if (ll > best) {
        best = ll;
        arg = alpha;
      }
    }
  }
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(std::abs(arg[a] - fit.alpha[a]) <= 2e-3);
  }
  CHECK(fit.log_likelihood >= best - 1e-12);
}

TEST_CASE("plackett-luce never-chosen algorithms") {
  // D never occupies a choice stage in any top-2 list.
  auto s = test::sample_of(4, {{A, B}, {B, C}, {C, A}});
  CHECK_THROWS_AS(plackett_luce_fit(s), InputError);
  PlackettLuceOptions options;
  options.pseudo_count = 0.1;
  auto fit = plackett_luce_fit(s, options);
  CHECK(fit.alpha[3] > 0.0);
  CHECK(fit.alpha[3] < fit.alpha[0]);
  double sum = 0;
  for (double v : fit.alpha.values()) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("plackett-luce log-likelihood never decreases") {
  PlackettLuceOptions options;
  options.record_trace = true;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t m = 3 + seed % 5;
    auto s = test::random_sample(m, 6 + seed, 1 + seed % m, seed);
    options.pseudo_count = seed % 2 ? 0.1 : 0.5;
    auto fit = plackett_luce_fit(s, options);
    REQUIRE(fit.log_likelihood_trace.size() >= 1);
    for (std::size_t i = 1; i < fit.log_likelihood_trace.size(); ++i) {
      CHECK(fit.log_likelihood_trace[i] >=
            fit.log_likelihood_trace[i - 1] - 1e-10);
    }
    for (double v : fit.alpha.values()) CHECK(v > 0.0);
  }
}

TEST_CASE("good-turing examples") {
  auto s = test::sample_of(3, {{A, B, C}, {A, B, C}, {B, A, C}, {C, A, B}});
  ProbVector p = good_turing_win_prob(s);
  // Independent script implementing the same rule.
  CHECK(p[0] == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(5.0 / 18.0).epsilon(1e-12));
  CHECK(p[2] == doctest::Approx(5.0 / 18.0).epsilon(1e-12));

  std::vector<std::vector<std::size_t>> same(5, {A, B, C});
  ProbVector q = good_turing_win_prob(test::sample_of(3, same));
  CHECK(q[0] >= 1.0 - 1.0 / 5.0);

  auto all = test::sample_of(3, {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0},
                                 {2, 0, 1}, {2, 1, 0}});
  ProbVector u = good_turing_win_prob(all);
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(u[a] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }

  auto m4 = test::sample_of(4, {{0, 1, 2, 3}, {0, 1, 2, 3}, {1, 0, 2, 3},
                                {2, 3, 1, 0}, {3, 2, 1, 0}, {3, 2, 1, 0},
                                {3, 2, 1, 0}, {0, 2, 1, 3}});
  ProbVector g = good_turing_win_prob(m4);
  CHECK(g[0] == doctest::Approx(0.390749601275917).epsilon(1e-12));
  CHECK(g[1] == doctest::Approx(0.1323763955342903).epsilon(1e-12));
  CHECK(g[2] == doctest::Approx(0.1323763955342903).epsilon(1e-12));
  CHECK(g[3] == doctest::Approx(0.3444976076555024).epsilon(1e-12));
}

TEST_CASE("good-turing errors") {
  CHECK_THROWS_AS(good_turing_win_prob(test::sample_of(3, {{A, B}})),
                  InputError);
  CHECK_THROWS_AS(good_turing_win_prob(test::random_sample(9, 3, 9, 1)),
                  InputError);
}

TEST_CASE("baselines are equivariant under relabeling") {
  const std::vector<std::size_t> perm{2, 0, 3, 1};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto s = test::random_sample(4, 9, seed % 2 ? 4 : 2, seed);
    auto r = test::relabel(s, perm);
    auto b1 = borda(s), b2 = borda(r);
    auto a1 = average_rank(s), a2 = average_rank(r);
    PlackettLuceOptions options;
    options.pseudo_count = 0.1;
    auto p1 = plackett_luce_fit(s, options), p2 = plackett_luce_fit(r, options);
    for (std::size_t a = 0; a < 4; ++a) {
      CHECK(b2.prob[perm[a]] == doctest::Approx(b1.prob[a]));
      CHECK(a2[perm[a]] == doctest::Approx(a1[a]));
      CHECK(p2.alpha[perm[a]] == doctest::Approx(p1.alpha[a]).epsilon(1e-8));
    }
    if (s.is_full()) {
      auto g1 = good_turing_win_prob(s), g2 = good_turing_win_prob(r);
      for (std::size_t a = 0; a < 4; ++a) {
        CHECK(g2[perm[a]] == doctest::Approx(g1[a]));
      }
    }
  }
}
