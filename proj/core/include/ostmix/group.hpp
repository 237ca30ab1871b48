#pragma once

// The generalized symmetric group G_{m,n}: permutations of n cards where
// every card carries one of m orientations. An element pairs a color vector
// in Z_m^n with a permutation of [n] stored as its image sequence, and acts
// on a card at position p by sending it to position image_of(p) and adding
// color_at(p) to its orientation exponent.
//
// The product convention: in compose(a, b) the left factor acts first, so
// the composed permutation is p -> b(a(p)) and the composed colors are
// colors_a[p] + colors_b[a(p)]. This is the unique convention under which
// the color-mixing product is associative (checked exhaustively in tests).
//
// Positions are 1-based in the public API; storage is 0-based.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ostmix/errors.hpp"

namespace ostmix {

/// Default element-count cap for the dense exact engine (2^24).
inline constexpr std::uint64_t kDefaultExactCap = std::uint64_t{1} << 24;

/// Group parameters: m orientations per card, n cards. |G_{m,n}| = m^n * n!.
struct GroupParams {
  std::uint32_t m = 1;
  std::uint32_t n = 1;

  /// Requires m >= 1 and n >= 1; throws std::invalid_argument otherwise.
  /// The order m^n * n! is not constrained here: only the dense exact
  /// engine needs it to fit, and it checks its cap on entry.
  GroupParams(std::uint32_t m_, std::uint32_t n_);

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

/// m^n * n!, or nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> group_order(const GroupParams& params) noexcept;

/// m^n * n!; throws CapacityError when the order overflows or exceeds cap.
std::uint64_t checked_order(const GroupParams& params,
                            std::uint64_t cap = kDefaultExactCap);

/// Dense rank of an element, in [0, m^n * n!).
struct GroupIndex {
  std::uint64_t value = 0;
  friend bool operator==(const GroupIndex&, const GroupIndex&) = default;
  friend auto operator<=>(const GroupIndex&, const GroupIndex&) = default;
};

/// A card in transit: 1-based position plus orientation exponent in [0, m).
struct Card {
  std::uint32_t position = 1;
  std::uint32_t exponent = 0;
  friend bool operator==(const Card&, const Card&) = default;
};

class GroupElement {
 public:
  /// Builds an element from 1-based data: perm_images lists the images
  /// sigma(1), ..., sigma(n) and must be a bijection on {1..n}; every
  /// colors entry must lie in [0, m). Throws std::invalid_argument.
  GroupElement(GroupParams params, std::vector<std::uint32_t> colors,
               std::vector<std::uint32_t> perm_images);

  static GroupElement identity(GroupParams params);

  const GroupParams& params() const noexcept { return params_; }

  std::uint32_t color_at(std::uint32_t position) const;  // 1-based
  std::uint32_t image_of(std::uint32_t position) const;  // 1-based

  /// Raw 0-based storage: perm0()[p] == image_of(p + 1) - 1.
  std::span<const std::uint32_t> colors0() const noexcept { return colors_; }
  std::span<const std::uint32_t> perm0() const noexcept { return perm_; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  struct Unchecked {};
  GroupElement(Unchecked, GroupParams params, std::vector<std::uint32_t> colors,
               std::vector<std::uint32_t> perm);

  GroupParams params_;
  std::vector<std::uint32_t> colors_;  // entries in [0, m)
  std::vector<std::uint32_t> perm_;    // 0-based image sequence

  friend GroupElement compose(const GroupElement&, const GroupElement&);
  friend GroupElement inverse(const GroupElement&);
  friend GroupElement project(const GroupElement&);
  friend GroupElement unrank(GroupIndex, const GroupParams&);
};

/// Group product; the left factor acts first (see file header).
/// Throws DimensionError when the operands' parameters differ.
GroupElement compose(const GroupElement& a, const GroupElement& b);

GroupElement inverse(const GroupElement& a);

/// The color-forgetting homomorphism onto S_n, represented as G_{1,n}.
GroupElement project(const GroupElement& a);

/// Dense rank: lehmer_rank(perm) * m^n + mixed-radix colors, colors[0]
/// least significant. All colorings of one permutation are contiguous.
GroupIndex rank(const GroupElement& a);

/// Inverse of rank(); throws IndexError when idx is out of range and
/// CapacityError when the group order does not fit in 64 bits.
GroupElement unrank(GroupIndex idx, const GroupParams& params);

/// Deck action on one card: position p goes to image_of(p), the exponent
/// gains color_at(p) mod m. Throws IndexError on a bad position.
Card act_on_card(const GroupElement& a, Card card);

/// Canonical text form "k1,k2,...,kn|s1,s2,...,sn" (1-based images).
std::string to_string(const GroupElement& a);

/// Parses the canonical text form; throws std::invalid_argument.
GroupElement element_from_string(std::string_view text, const GroupParams& params);

}  // namespace ostmix
