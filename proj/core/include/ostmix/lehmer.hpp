#pragma once

// Permutation ranking in the factorial number system (Lehmer code).
// Permutations are 0-based image sequences of length n; the identity has
// rank 0 and ranks run over [0, n!).

#include <cstdint>
#include <span>

namespace ostmix {

/// n! for n <= 20 (the largest factorial that fits in 64 bits).
std::uint64_t factorial(std::uint32_t n);

std::uint64_t lehmer_rank(std::span<const std::uint32_t> perm);

/// Writes the permutation with the given rank into `out` (size n).
void lehmer_unrank(std::uint64_t rank, std::span<std::uint32_t> out);

}  // namespace ostmix
