#pragma once

// k-fold cross-validation of win-probability methods on held-out winners,
// with paired significance tests over fold losses.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rankwin/divergence.hpp"
#include "rankwin/methods.hpp"
#include "rankwin/ranking.hpp"

namespace rankwin {

inline constexpr std::size_t kDefaultFolds = 10;

// Seeded shuffle of 0..n-1 cut into k folds whose sizes differ by at most 1.
// The first n % k folds hold the extra element. Each fold is sorted.
std::vector<std::vector<std::size_t>> make_folds(std::size_t n, std::size_t k,
                                                 std::uint64_t seed);

// -(1/|test|) sum over test datasets of log max(floor, p[winner]).
double held_out_cross_entropy(const ProbVector& p, const BenchmarkSample& test,
                              double floor = kProbabilityFloor);

enum class PairedTest { kTTest, kSignPermutation };

const char* to_string(PairedTest test);
PairedTest parse_paired_test(const std::string& text);

// Two-sided p-value for the mean of a - b being zero.
//   kTTest: Student t with len-1 degrees of freedom. 1 when every difference
//     is zero, 0 when the differences are a nonzero constant.
//   kSignPermutation: exact, over all 2^len sign flips (len <= 24).
// Throws InputError for unequal lengths or fewer than 2 folds.
double paired_pvalue(std::span<const double> a, std::span<const double> b,
                     PairedTest test = PairedTest::kTTest);

struct CvMethod {
  std::string name;
  WinProbMethod fit;
};

struct CvOptions {
  double floor = kProbabilityFloor;
  // Method the p-values are computed against; empty disables them.
  std::string reference = "mle";
  PairedTest test = PairedTest::kTTest;
};

struct CvMethodReport {
  std::string name;
  std::vector<double> fold_losses;
  double mean_loss;
  // Against the reference method; absent (negative) for the reference
  // itself or when no reference is requested.
  double p_value_vs_reference = -1.0;
};

struct CvReport {
  std::size_t k;
  std::uint64_t seed;
  double floor;
  std::string reference;
  PairedTest test;
  std::vector<std::vector<std::size_t>> folds;
  std::vector<CvMethodReport> methods;
};

// Requires 2 <= k <= n. A method that throws on some training fold is
// reported as InputError/InfeasibleError naming the method and fold. Mean
// loss is the average of the fold losses.
CvReport kfold_cv(const BenchmarkSample& sample, std::size_t k,
                  const std::vector<CvMethod>& methods, std::uint64_t seed,
                  const CvOptions& options = {});

}  // namespace rankwin
