#include "ostmix/group.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "ostmix/lehmer.hpp"

namespace ostmix {

namespace {

std::uint64_t pow_u64(std::uint64_t base, std::uint32_t exp, bool& overflow) {
  std::uint64_t r = 1;
  for (std::uint32_t e = 0; e < exp; ++e) {
    if (__builtin_mul_overflow(r, base, &r)) {
      overflow = true;
      return 0;
    }
  }
  return r;
}

}  // namespace

std::uint64_t factorial(std::uint32_t n) {
  if (n > 20) throw CapacityError("factorial(" + std::to_string(n) + ") exceeds 64 bits");
  std::uint64_t r = 1;
  for (std::uint32_t i = 2; i <= n; ++i) r *= i;
  return r;
}

std::uint64_t lehmer_rank(std::span<const std::uint32_t> perm) {
  const std::size_t n = perm.size();
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t smaller_after = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (perm[j] < perm[i]) ++smaller_after;
    r = r * (n - i) + smaller_after;
  }
  return r;
}

void lehmer_unrank(std::uint64_t rank, std::span<std::uint32_t> out) {
  const std::size_t n = out.size();
  // Factorial digits, most significant first.
  std::vector<std::uint32_t> digit(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    digit[i] = static_cast<std::uint32_t>(rank % (n - i));
    rank /= (n - i);
  }
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = pool[digit[i]];
    pool.erase(pool.begin() + digit[i]);
  }
}

GroupParams::GroupParams(std::uint32_t m_, std::uint32_t n_) : m(m_), n(n_) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("GroupParams requires m >= 1 and n >= 1");
}

std::optional<std::uint64_t> group_order(const GroupParams& params) noexcept {
  bool overflow = false;
  std::uint64_t colors = pow_u64(params.m, params.n, overflow);
  if (overflow || params.n > 20) return std::nullopt;
  std::uint64_t order = colors;
  for (std::uint32_t i = 2; i <= params.n; ++i)
    if (__builtin_mul_overflow(order, i, &order)) return std::nullopt;
  return order;
}

std::uint64_t checked_order(const GroupParams& params, std::uint64_t cap) {
  auto order = group_order(params);
  if (!order)
    throw CapacityError("group order m^n*n! overflows 64 bits (m=" +
                        std::to_string(params.m) + ", n=" + std::to_string(params.n) + ")");
  if (*order > cap)
    throw CapacityError("group order " + std::to_string(*order) +
                        " exceeds the exact-engine cap " + std::to_string(cap));
  return *order;
}

GroupElement::GroupElement(GroupParams params, std::vector<std::uint32_t> colors,
                           std::vector<std::uint32_t> perm_images)
    : params_(params), colors_(std::move(colors)), perm_(std::move(perm_images)) {
  const std::uint32_t n = params_.n;
  if (colors_.size() != n || perm_.size() != n)
    throw std::invalid_argument("element data must have length n");
  for (std::uint32_t c : colors_)
    if (c >= params_.m) throw std::invalid_argument("color exponent out of [0, m)");
  std::vector<bool> seen(n, false);
  for (std::uint32_t& v : perm_) {
    if (v < 1 || v > n || seen[v - 1])
      throw std::invalid_argument("perm images must be a bijection on {1..n}");
    seen[v - 1] = true;
    v -= 1;  // store 0-based
  }
}

GroupElement::GroupElement(Unchecked, GroupParams params, std::vector<std::uint32_t> colors,
                           std::vector<std::uint32_t> perm)
    : params_(params), colors_(std::move(colors)), perm_(std::move(perm)) {}

GroupElement GroupElement::identity(GroupParams params) {
  std::vector<std::uint32_t> colors(params.n, 0);
  std::vector<std::uint32_t> perm(params.n);
  std::iota(perm.begin(), perm.end(), 0u);
  return GroupElement(Unchecked{}, params, std::move(colors), std::move(perm));
}

std::uint32_t GroupElement::color_at(std::uint32_t position) const {
  if (position < 1 || position > params_.n) throw IndexError("position out of [1, n]");
  return colors_[position - 1];
}

std::uint32_t GroupElement::image_of(std::uint32_t position) const {
  if (position < 1 || position > params_.n) throw IndexError("position out of [1, n]");
  return perm_[position - 1] + 1;
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  if (a.params_ != b.params_)
    throw DimensionError("compose: operands from different groups");
  const std::uint32_t n = a.params_.n;
  const std::uint32_t m = a.params_.m;
  std::vector<std::uint32_t> colors(n), perm(n);
  for (std::uint32_t p = 0; p < n; ++p) {
    const std::uint32_t ap = a.perm_[p];
    perm[p] = b.perm_[ap];
    colors[p] = (a.colors_[p] + b.colors_[ap]) % m;
  }
  return GroupElement(GroupElement::Unchecked{}, a.params_, std::move(colors), std::move(perm));
}

GroupElement inverse(const GroupElement& a) {
  const std::uint32_t n = a.params_.n;
  const std::uint32_t m = a.params_.m;
  std::vector<std::uint32_t> colors(n), perm(n);
  for (std::uint32_t p = 0; p < n; ++p) {
    perm[a.perm_[p]] = p;
    colors[a.perm_[p]] = (m - a.colors_[p]) % m;
  }
  return GroupElement(GroupElement::Unchecked{}, a.params_, std::move(colors), std::move(perm));
}

GroupElement project(const GroupElement& a) {
  GroupParams target(1, a.params_.n);
  std::vector<std::uint32_t> colors(a.params_.n, 0);
  std::vector<std::uint32_t> perm(a.perm_.begin(), a.perm_.end());
  return GroupElement(GroupElement::Unchecked{}, target, std::move(colors), std::move(perm));
}

GroupIndex rank(const GroupElement& a) {
  const GroupParams& params = a.params();
  std::uint64_t color_rank = 0;
  auto colors = a.colors0();
  for (std::size_t i = colors.size(); i-- > 0;)
    color_rank = color_rank * params.m + colors[i];
  std::uint64_t radix = 1;
  for (std::uint32_t e = 0; e < params.n; ++e) radix *= params.m;
  return GroupIndex{lehmer_rank(a.perm0()) * radix + color_rank};
}

GroupElement unrank(GroupIndex idx, const GroupParams& params) {
  auto order = group_order(params);
  if (!order) throw CapacityError("unrank: group order overflows 64 bits");
  if (idx.value >= *order) throw IndexError("unrank: index out of range");
  std::uint64_t radix = 1;
  for (std::uint32_t e = 0; e < params.n; ++e) radix *= params.m;
  std::uint64_t color_rank = idx.value % radix;
  std::uint64_t perm_rank = idx.value / radix;
  std::vector<std::uint32_t> colors(params.n);
  for (std::uint32_t i = 0; i < params.n; ++i) {
    colors[i] = static_cast<std::uint32_t>(color_rank % params.m);
    color_rank /= params.m;
  }
  std::vector<std::uint32_t> perm(params.n);
  lehmer_unrank(perm_rank, perm);
  return GroupElement(GroupElement::Unchecked{}, params, std::move(colors), std::move(perm));
}

Card act_on_card(const GroupElement& a, Card card) {
  const GroupParams& params = a.params();
  if (card.position < 1 || card.position > params.n)
    throw IndexError("act_on_card: position out of [1, n]");
  return Card{a.image_of(card.position),
              (card.exponent + a.color_at(card.position)) % params.m};
}

std::string to_string(const GroupElement& a) {
  std::ostringstream out;
  auto colors = a.colors0();
  auto perm = a.perm0();
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (i) out << ',';
    out << colors[i];
  }
  out << '|';
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i) out << ',';
    out << perm[i] + 1;
  }
  return out.str();
}

namespace {

std::vector<std::uint32_t> parse_u32_list(std::string_view text) {
  std::vector<std::uint32_t> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view token = text.substr(pos, comma == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : comma - pos);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size())
      throw std::invalid_argument("element_from_string: bad integer token");
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return values;
}

}  // namespace

GroupElement element_from_string(std::string_view text, const GroupParams& params) {
  std::size_t bar = text.find('|');
  if (bar == std::string_view::npos)
    throw std::invalid_argument("element_from_string: missing '|' separator");
  auto colors = parse_u32_list(text.substr(0, bar));
  auto images = parse_u32_list(text.substr(bar + 1));
  return GroupElement(params, std::move(colors), std::move(images));
}

}  // namespace ostmix
