#include "rankwin/divergence.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "rankwin/error.hpp"

namespace rankwin {
namespace {

void require_same_size(const ProbVector& p, const ProbVector& q) {
  if (p.size() != q.size()) {
    throw InputError("divergence between vectors of length " +
                     std::to_string(p.size()) + " and " +
                     std::to_string(q.size()));
  }
}

}  // namespace

double tv(const ProbVector& p, const ProbVector& q) {
  require_same_size(p, q);
  double s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) s += std::abs(p[j] - q[j]);
  return s;
}

double kl(const ProbVector& p, const ProbVector& q) {
  require_same_size(p, q);
  double s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0.0) continue;
    if (q[j] == 0.0) return kInfinity;
    s += p[j] * std::log(p[j] / q[j]);
  }
  // Rounding can leave a tiny negative value for p == q.
  return std::max(s, 0.0);
}

double kl_floored(const ProbVector& p, const ProbVector& q, double floor) {
  require_same_size(p, q);
  double s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0.0) continue;
    s += p[j] * std::log(p[j] / std::max(q[j], floor));
  }
  return s;
}

double divergence(Divergence kind, const ProbVector& truth,
                  const ProbVector& estimate, double floor) {
  return kind == Divergence::kKL ? kl_floored(truth, estimate, floor)
                                 : tv(truth, estimate);
}

const char* to_string(Divergence kind) {
  return kind == Divergence::kKL ? "kl" : "tv";
}

Divergence parse_divergence(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "kl") return Divergence::kKL;
  if (lower == "tv") return Divergence::kTV;
  throw InputError("unknown divergence '" + text + "' (expected kl or tv)");
}

}  // namespace rankwin
