#include "rankwin/permutation.hpp"

#include <stdexcept>
#include <string>

#include "rankwin/error.hpp"

namespace rankwin {

std::uint64_t factorial(std::size_t m) {
  if (m > 20) throw InputError("factorial overflows 64 bits beyond 20");
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= m; ++k) f *= k;
  return f;
}

void permutation_by_index(std::uint64_t index, std::span<AlgorithmIndex> out) {
  const std::size_t m = out.size();
  std::vector<AlgorithmIndex> pool(m);
  for (std::size_t i = 0; i < m; ++i) pool[i] = i;
  for (std::size_t pos = 0; pos < m; ++pos) {
    const std::uint64_t block = factorial(m - 1 - pos);
    const std::uint64_t digit = index / block;
    index %= block;
    out[pos] = pool[digit];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
}

RankingObservation permutation_by_index(std::uint64_t index, std::size_t m) {
  if (index >= factorial(m)) {
    throw std::out_of_range("permutation index " + std::to_string(index) +
                            " >= " + std::to_string(m) + "!");
  }
  std::vector<AlgorithmIndex> order(m);
  permutation_by_index(index, order);
  return RankingObservation(std::move(order), m);
}

std::uint64_t permutation_index(std::span<const AlgorithmIndex> order) {
  const std::size_t m = order.size();
  std::uint64_t index = 0;
  for (std::size_t pos = 0; pos < m; ++pos) {
    // Lehmer digit: later entries smaller than this one.
    std::uint64_t smaller = 0;
    for (std::size_t later = pos + 1; later < m; ++later) {
      if (order[later] < order[pos]) ++smaller;
    }
    index += smaller * factorial(m - 1 - pos);
  }
  return index;
}

std::uint64_t permutation_index(const RankingObservation& obs, std::size_t m) {
  if (!obs.is_full(m)) {
    throw InputError("permutation index needs a full ranking");
  }
  return permutation_index(obs.order());
}

}  // namespace rankwin
