#include "rankwin/methods.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>

#include "rankwin/baselines.hpp"
#include "rankwin/error.hpp"
#include "rankwin/estimators.hpp"
#include "rankwin/minimax.hpp"

namespace rankwin {
namespace {

std::size_t usable_order(const BenchmarkSample& sample, std::size_t order,
                         std::string& note) {
  const std::size_t K = std::min(order, sample.effective_depth());
  if (K < order) {
    note = "order reduced to " + std::to_string(K) + " (rank depth)";
  }
  return K;
}

MethodOutput weighted(const BenchmarkSample& sample, const WeightVector& w,
                      std::string note = {}) {
  ProbVector p = weighted_estimate(compute_rank_counts(sample), w);
  return {std::move(p), std::vector<double>(w.values().begin(),
                                            w.values().end()),
          std::move(note)};
}

WinProbMethod loo_method(Divergence kind, const MethodSettings& settings) {
  return [kind, settings](const BenchmarkSample& sample) {
    std::string note;
    const std::size_t K = usable_order(sample, settings.order, note);
    LooFitOptions options;
    options.monotone = settings.monotone;
    options.floor = settings.floor;
    options.search = settings.search;
    LooFitResult fit = fit_loo_weights(sample, K, kind, options);
    return weighted(sample, fit.weights, note);
  };
}

WinProbMethod top_k_minimax_method(const MethodSettings& settings) {
  // Bounds are data independent, so folds and replicas of equal size share
  // one search.
  using Key = std::tuple<std::size_t, std::size_t, std::size_t>;
  auto cache = std::make_shared<std::map<Key, WeightVector>>();
  auto mutex = std::make_shared<std::mutex>();
  return [settings, cache, mutex](const BenchmarkSample& sample) {
    std::string note;
    const std::size_t K = usable_order(sample, settings.order, note);
    const Key key{sample.num_algorithms(), sample.size(), K};
    std::optional<WeightVector> w;
    {
      std::lock_guard<std::mutex> lock(*mutex);
      auto it = cache->find(key);
      if (it != cache->end()) w = it->second;
    }
    if (!w) {
      w = top_k_optimal_weights(sample.num_algorithms(), sample.size(), K)
              .weights;
      std::lock_guard<std::mutex> lock(*mutex);
      cache->emplace(key, *w);
    }
    return weighted(sample, *w, note);
  };
}

}  // namespace

std::vector<std::string> available_methods() {
  return {"mle",         "loo_kl",           "loo_tv",
          "borda",       "plackett_luce",    "good_turing",
          "minimax_two_rank", "minimax_top_k", "uniform"};
}

WinProbMethod make_method(const std::string& name,
                          const MethodSettings& settings) {
  if (name == "mle") {
    return [](const BenchmarkSample& sample) {
      return MethodOutput{mle_win_prob(compute_rank_counts(sample)), {}, {}};
    };
  }
  if (name == "loo_kl") return loo_method(Divergence::kKL, settings);
  if (name == "loo_tv") return loo_method(Divergence::kTV, settings);
  if (name == "borda") {
    return [](const BenchmarkSample& sample) {
      return MethodOutput{borda(sample).prob, {}, {}};
    };
  }
  if (name == "plackett_luce") {
    return [settings](const BenchmarkSample& sample) {
      PlackettLuceOptions options;
      std::string note;
      if (settings.pl_pseudo_count >= 0.0) {
        options.pseudo_count = settings.pl_pseudo_count;
      } else {
        try {
          PlackettLuceFit fit = plackett_luce_fit(sample, options);
          if (!fit.converged) note = "not converged";
          return MethodOutput{fit.alpha, {}, note};
        } catch (const InputError&) {
          options.pseudo_count = kDefaultPseudoCount;
        }
      }
      PlackettLuceFit fit = plackett_luce_fit(sample, options);
      if (options.pseudo_count > 0.0) {
        note = "pseudo-count " + std::to_string(options.pseudo_count);
      }
      if (!fit.converged) note += note.empty() ? "not converged"
                                               : "; not converged";
      return MethodOutput{fit.alpha, {}, note};
    };
  }
  if (name == "good_turing") {
    return [](const BenchmarkSample& sample) {
      return MethodOutput{good_turing_win_prob(sample), {}, {}};
    };
  }
  if (name == "minimax_two_rank") {
    return [](const BenchmarkSample& sample) {
      if (sample.effective_depth() < 2) {
        throw InfeasibleError("two-rank minimax weights need rank depth >= 2");
      }
      const double w = two_rank_minimax_weight(sample.size());
      return weighted(sample, WeightVector({w, 1.0 - w}, true));
    };
  }
  if (name == "minimax_top_k") return top_k_minimax_method(settings);
  if (name == "uniform") {
    return [](const BenchmarkSample& sample) {
      return MethodOutput{ProbVector::uniform(sample.num_algorithms()), {}, {}};
    };
  }
  throw InputError("unknown method '" + name + "'");
}

}  // namespace rankwin
