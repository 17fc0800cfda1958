#include "rankwin/validation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "rankwin/error.hpp"
#include "rankwin/random.hpp"

namespace rankwin {
namespace {

constexpr std::size_t kMaxPermutationFolds = 24;

double t_test(const std::vector<double>& d) {
  const double len = static_cast<double>(d.size());
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / len;
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  const bool all_zero =
      std::all_of(d.begin(), d.end(), [](double x) { return x == 0.0; });
  if (all_zero) return 1.0;
  if (ss == 0.0) return 0.0;
  const double se = std::sqrt(ss / (len - 1.0) / len);
  const double t = mean / se;
  boost::math::students_t dist(len - 1.0);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(
                                 dist, std::abs(t))));
}

// Counts sign patterns whose |sum| reaches the observed |sum|. Ties are
// compared with a relative tolerance so that mirrored patterns count.
double sign_permutation_test(const std::vector<double>& d) {
  if (d.size() > kMaxPermutationFolds) {
    throw InputError("exact sign-permutation test supports at most " +
                     std::to_string(kMaxPermutationFolds) + " folds");
  }
  const double observed = std::abs(std::accumulate(d.begin(), d.end(), 0.0));
  double scale = 0.0;
  for (double x : d) scale += std::abs(x);
  if (scale == 0.0) return 1.0;
  const double tol = 1e-12 * scale;
  const std::uint64_t patterns = std::uint64_t{1} << d.size();
  std::uint64_t extreme = 0;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      s += (mask >> i & 1U) ? -d[i] : d[i];
    }
    if (std::abs(s) >= observed - tol) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(patterns);
}

}  // namespace

std::vector<std::vector<std::size_t>> make_folds(std::size_t n, std::size_t k,
                                                 std::uint64_t seed) {
  if (k < 2) throw InputError("number of folds must be >= 2");
  if (k > n) {
    throw InputError("number of folds k=" + std::to_string(k) +
                     " exceeds sample size n=" + std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, {n, k}));
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t start = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(order.begin() + start, order.begin() + start + size);
    std::sort(folds[f].begin(), folds[f].end());
    start += size;
  }
  return folds;
}

double held_out_cross_entropy(const ProbVector& p, const BenchmarkSample& test,
                              double floor) {
  if (p.size() != test.num_algorithms()) {
    throw InputError("estimate length does not match the roster");
  }
  double total = 0.0;
  for (const auto& obs : test.observations()) {
    total -= std::log(std::max(floor, p[obs.winner()]));
  }
  return total / static_cast<double>(test.size());
}

const char* to_string(PairedTest test) {
  return test == PairedTest::kTTest ? "t" : "sign_permutation";
}

PairedTest parse_paired_test(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "t" || lower == "ttest" || lower == "t_test") {
    return PairedTest::kTTest;
  }
  if (lower == "sign_permutation" || lower == "permutation") {
    return PairedTest::kSignPermutation;
  }
  throw InputError("unknown paired test '" + text + "'");
}

double paired_pvalue(std::span<const double> a, std::span<const double> b,
                     PairedTest test) {
  if (a.size() != b.size()) {
    throw InputError("paired test needs equal lengths (" +
                     std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  if (a.size() < 2) throw InputError("paired test needs at least 2 folds");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return test == PairedTest::kTTest ? t_test(d) : sign_permutation_test(d);
}

CvReport kfold_cv(const BenchmarkSample& sample, std::size_t k,
                  const std::vector<CvMethod>& methods, std::uint64_t seed,
                  const CvOptions& options) {
  CvReport report{k,  seed, options.floor, options.reference, options.test,
                  make_folds(sample.size(), k, seed), {}};
  const std::size_t n = sample.size();

  std::vector<BenchmarkSample> train;
  std::vector<BenchmarkSample> test;
  for (const auto& fold : report.folds) {
    std::vector<bool> held(n, false);
    for (std::size_t i : fold) held[i] = true;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i) {
      if (!held[i]) rest.push_back(i);
    }
    train.push_back(sample.subset(rest));
    test.push_back(sample.subset(fold));
  }

  for (const auto& method : methods) {
    CvMethodReport row{method.name, std::vector<double>(k), 0.0};
    for (std::size_t f = 0; f < k; ++f) {
      try {
        const MethodOutput out = method.fit(train[f]);
        row.fold_losses[f] =
            held_out_cross_entropy(out.win_prob, test[f], options.floor);
      } catch (const InfeasibleError& e) {
        throw InfeasibleError(method.name + " failed on fold " +
                              std::to_string(f + 1) + ": " + e.what());
      } catch (const std::exception& e) {
        throw InputError(method.name + " failed on fold " +
                         std::to_string(f + 1) + ": " + e.what());
      }
    }
    row.mean_loss =
        std::accumulate(row.fold_losses.begin(), row.fold_losses.end(), 0.0) /
        static_cast<double>(k);
    report.methods.push_back(std::move(row));
  }

  if (!options.reference.empty()) {
    auto ref = std::find_if(
        report.methods.begin(), report.methods.end(),
        [&](const CvMethodReport& r) { return r.name == options.reference; });
    if (ref != report.methods.end()) {
      for (auto& row : report.methods) {
        if (row.name == options.reference) continue;
        row.p_value_vs_reference =
            paired_pvalue(row.fold_losses, ref->fold_losses, options.test);
      }
    }
  }
  return report;
}

}  // namespace rankwin
