#pragma once

#include <limits>

#include "rankwin/ranking.hpp"

namespace rankwin {

enum class Divergence { kKL, kTV };

// Floor applied to estimated probabilities before taking logarithms.
inline constexpr double kProbabilityFloor = 1e-6;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Sum of absolute differences (no factor 1/2), in [0, 2].
double tv(const ProbVector& p, const ProbVector& q);

// sum_j p_j log(p_j / q_j), natural log, 0 log(0/q) = 0. Returns kInfinity
// when some p_j > 0 meets q_j = 0.
double kl(const ProbVector& p, const ProbVector& q);

// kl with every q_j replaced by max(q_j, floor); q is not renormalized.
double kl_floored(const ProbVector& p, const ProbVector& q,
                  double floor = kProbabilityFloor);

// Dispatches on `kind`; KL uses the floored form.
double divergence(Divergence kind, const ProbVector& truth,
                  const ProbVector& estimate, double floor = kProbabilityFloor);

const char* to_string(Divergence kind);
// Accepts "kl" / "tv" (any case). Throws InputError otherwise.
Divergence parse_divergence(const std::string& text);

}  // namespace rankwin
