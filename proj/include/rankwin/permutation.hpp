#pragma once

// Bijection between {0, ..., m! - 1} and permutations of m items, in
// lexicographic order (Lehmer code / factorial number system). Index 0 is
// the identity, index m! - 1 the reversal.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rankwin/ranking.hpp"

namespace rankwin {

// m! for m <= 20. Throws InputError beyond that.
std::uint64_t factorial(std::size_t m);

// Writes the permutation with the given index into `out` (size m).
void permutation_by_index(std::uint64_t index, std::span<AlgorithmIndex> out);

// Throws std::out_of_range if index >= m!.
RankingObservation permutation_by_index(std::uint64_t index, std::size_t m);

// Inverse of permutation_by_index; requires a full ranking.
std::uint64_t permutation_index(std::span<const AlgorithmIndex> order);
std::uint64_t permutation_index(const RankingObservation& obs, std::size_t m);

}  // namespace rankwin
