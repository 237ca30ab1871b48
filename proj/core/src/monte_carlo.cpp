#include "ostmix/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace ostmix {

namespace {

// Mutable deck state: position-to-card table plus first-draw bookkeeping.
// Applying a move swaps the cards at positions i, j and rotates both by k
// (a diagonal move rotates the single card at i once).
struct DeckWalk {
  explicit DeckWalk(const GroupParams& params)
      : m(params.m),
        n(params.n),
        colors(params.n, 0),
        cards(params.n),
        seen(params.n, false),
        remaining(params.n) {
    std::iota(cards.begin(), cards.end(), 0u);
  }

  void step(Rng& rng, int t_now) {
    std::uniform_int_distribution<std::uint32_t> draw_j(1, n);
    const std::uint32_t j = draw_j(rng);
    std::uniform_int_distribution<std::uint32_t> draw_i(1, j);
    const std::uint32_t i = draw_i(rng);
    std::uniform_int_distribution<std::uint32_t> draw_k(0, m - 1);
    const std::uint32_t k = draw_k(rng);

    const std::uint32_t a = i - 1, b = j - 1;
    if (a != b) {
      std::swap(cards[a], cards[b]);
      std::swap(colors[a], colors[b]);
      colors[b] = (colors[b] + k) % m;
    }
    colors[a] = (colors[a] + k) % m;

    if (!seen[b]) {
      seen[b] = true;
      if (--remaining == 0) sst = t_now;
    }
  }

  GroupElement element(const GroupParams& params) const {
    std::vector<std::uint32_t> images(n);
    for (std::uint32_t p = 0; p < n; ++p) images[p] = cards[p] + 1;
    return GroupElement(params, colors, std::move(images));
  }

  std::uint32_t m, n;
  std::vector<std::uint32_t> colors;  // orientation at each position
  std::vector<std::uint32_t> cards;   // card at each position, 0-based
  std::vector<bool> seen;             // position used as first draw
  std::uint32_t remaining;
  std::optional<int> sst;
};

int sst_threshold(std::uint32_t n, double c) {
  const double t = std::ceil(n * std::log(static_cast<double>(n)) + c * n);
  if (t >= static_cast<double>(std::numeric_limits<int>::max()))
    throw std::invalid_argument("sst threshold n ln n + c n exceeds the step limit");
  return static_cast<int>(t);
}

double binomial_stderr(double p, std::uint64_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

}  // namespace

Rng make_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(trial_index),
                    static_cast<std::uint32_t>(trial_index >> 32)};
  return Rng(seq);
}

std::vector<std::uint32_t> ChainState::uncollected() const {
  std::vector<std::uint32_t> out;
  for (std::size_t p = 0; p < collected.size(); ++p)
    if (!collected[p]) out.push_back(static_cast<std::uint32_t>(p + 1));
  return out;
}

ChainState simulate_chain(const GroupParams& params, int t, Rng& rng) {
  if (t < 0) throw std::invalid_argument("simulate_chain: t must be >= 0");
  DeckWalk walk(params);
  for (int step = 1; step <= t; ++step) walk.step(rng, step);
  return ChainState{walk.element(params), t,
                    std::vector<bool>(walk.seen.begin(), walk.seen.end()), walk.sst};
}

std::optional<int> sample_sst(const GroupParams& params, Rng& rng, int t_cap) {
  if (t_cap < 1) throw std::invalid_argument("sample_sst: t_cap must be >= 1");
  const std::uint32_t n = params.n;
  std::vector<bool> seen(n, false);
  std::uint32_t remaining = n;
  std::uniform_int_distribution<std::uint32_t> draw_j(1, n);
  for (int t = 1; t <= t_cap; ++t) {
    const std::uint32_t j = draw_j(rng) - 1;
    if (!seen[j]) {
      seen[j] = true;
      if (--remaining == 0) return t;
    }
  }
  return std::nullopt;
}

TailEstimate sst_tail(const GroupParams& params, double c, std::uint64_t trials,
                      std::uint64_t master_seed) {
  const double cs[] = {c};
  return sst_tail_grid(params, cs, trials, master_seed).front();
}

std::vector<TailEstimate> sst_tail_grid(const GroupParams& params,
                                        std::span<const double> cs,
                                        std::uint64_t trials,
                                        std::uint64_t master_seed) {
  if (trials < 1) throw std::invalid_argument("sst_tail: trials must be >= 1");
  if (cs.empty()) return {};
  std::vector<int> thresholds(cs.size());
  int t_cap = 1;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    thresholds[i] = sst_threshold(params.n, cs[i]);
    t_cap = std::max(t_cap, thresholds[i]);
  }

  std::vector<std::uint64_t> exceed(cs.size(), 0);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_trial_rng(master_seed, trial);
    // A censored trial has T > t_cap >= every threshold.
    std::optional<int> t = sample_sst(params, rng, t_cap);
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (!t || *t > thresholds[i]) ++exceed[i];
  }

  std::vector<TailEstimate> rows(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    TailEstimate& row = rows[i];
    row.n = params.n;
    row.c = cs[i];
    row.t = thresholds[i];
    row.trials = trials;
    row.exceed = exceed[i];
    row.p_hat = static_cast<double>(exceed[i]) / static_cast<double>(trials);
    row.stderr_ = binomial_stderr(row.p_hat, trials);
    row.bound = std::exp(-cs[i]);
  }
  return rows;
}

std::vector<SepBoundPoint> sep_upper_bound_check(const GroupParams& params,
                                                 std::span<const int> t_list,
                                                 std::uint64_t trials,
                                                 std::uint64_t master_seed,
                                                 std::uint64_t cap) {
  if (trials < 1) throw std::invalid_argument("sep_upper_bound_check: trials must be >= 1");
  std::vector<int> ts(t_list.begin(), t_list.end());
  if (ts.empty()) return {};
  const int t_max = *std::max_element(ts.begin(), ts.end());
  if (*std::min_element(ts.begin(), ts.end()) < 0)
    throw std::invalid_argument("sep_upper_bound_check: steps must be >= 0");

  // Exact separation along one convolution pass.
  std::vector<double> seps(ts.size(), 0.0);
  {
    ConvolutionPlan plan(ost_generators(params), cap);
    DenseDistribution p = delta_at_identity(params, cap);
    for (int t = 0; t <= t_max; ++t) {
      for (std::size_t i = 0; i < ts.size(); ++i)
        if (ts[i] == t) seps[i] = sep_distance(p);
      if (t < t_max) p = plan.apply(p);
    }
  }

  // Tail of T from the coupon-only path; a censored trial exceeds every t.
  std::vector<std::uint64_t> exceed(ts.size(), 0);
  const int t_cap = std::max(1, t_max);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_trial_rng(master_seed, trial);
    std::optional<int> t = sample_sst(params, rng, t_cap);
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (!t || *t > ts[i]) ++exceed[i];
  }

  std::vector<SepBoundPoint> out(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out[i].t = ts[i];
    out[i].exact_sep = seps[i];
    out[i].p_hat = static_cast<double>(exceed[i]) / static_cast<double>(trials);
    out[i].stderr_ = binomial_stderr(out[i].p_hat, trials);
  }
  return out;
}

PjReport empirical_pj_check(const GroupParams& params, std::uint32_t j, int t,
                            std::uint64_t trials, std::uint64_t master_seed,
                            std::uint64_t min_group_samples) {
  const std::uint32_t n = params.n;
  const std::uint32_t m = params.m;
  if (j < 1 || j > n) throw IndexError("empirical_pj_check: j out of [1, n]");
  if (t < 1) throw std::invalid_argument("empirical_pj_check: t must be >= 1");

  // Group keys pack one (card, orientation) digit per position above j.
  const std::uint64_t digit_radix = std::uint64_t{n} * m;
  std::uint32_t key_bits = 0;
  for (std::uint64_t v = 1; v < digit_radix; v <<= 1) ++key_bits;
  if (std::uint64_t{n - j} * key_bits > 63)
    throw CapacityError("empirical_pj_check: configuration above j does not fit a 64-bit key");

  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> counts;
  std::uint64_t conditioned = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_trial_rng(master_seed, trial);
    DeckWalk walk(params);
    for (int step = 1; step <= t; ++step) walk.step(rng, step);
    if (!walk.seen[j - 1]) continue;  // first draw has not reached j yet
    ++conditioned;
    std::uint64_t key = 0;
    for (std::uint32_t p = j; p < n; ++p)
      key = (key << key_bits) | (std::uint64_t{walk.cards[p]} * m + walk.colors[p]);
    auto& bucket = counts.try_emplace(key, digit_radix, 0u).first->second;
    ++bucket[std::uint64_t{walk.cards[j - 1]} * m + walk.colors[j - 1]];
  }

  PjReport report;
  report.j = j;
  report.t = t;
  report.trials = trials;
  report.conditioned = conditioned;
  report.target = 1.0 / (static_cast<double>(m) * j);
  report.groups = counts.size();
  report.min_group_count = ~std::uint64_t{0};

  const double p = report.target;
  for (const auto& [key, bucket] : counts) {
    std::uint64_t group_total = 0;
    for (std::uint32_t c : bucket) group_total += c;
    if (group_total < min_group_samples) {
      ++report.small_groups;
      continue;
    }
    report.min_group_count = std::min(report.min_group_count, group_total);

    // Cards named in the key sit above j and cannot appear at j.
    std::vector<bool> excluded(n, false);
    std::uint64_t rest = key;
    for (std::uint32_t d = 0; d < n - j; ++d) {
      excluded[(rest & ((std::uint64_t{1} << key_bits) - 1)) / m] = true;
      rest >>= key_bits;
    }

    const double sigma = binomial_stderr(p, group_total);
    for (std::uint32_t card = 0; card < n; ++card) {
      if (excluded[card]) continue;
      for (std::uint32_t orient = 0; orient < m; ++orient) {
        const double freq = static_cast<double>(bucket[std::uint64_t{card} * m + orient]) /
                            static_cast<double>(group_total);
        const double dev = std::abs(freq - p);
        report.max_abs_deviation = std::max(report.max_abs_deviation, dev);
        if (sigma > 0.0)
          report.max_deviation_sigmas = std::max(report.max_deviation_sigmas, dev / sigma);
        else if (dev > 0.0)
          report.max_deviation_sigmas = std::numeric_limits<double>::infinity();
      }
    }
  }
  if (report.min_group_count == ~std::uint64_t{0}) report.min_group_count = 0;
  return report;
}

std::vector<TrialRecord> run_trials(const GroupParams& params, int t,
                                    std::uint64_t trials, std::uint64_t master_seed) {
  std::vector<TrialRecord> out;
  out.reserve(trials);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_trial_rng(master_seed, trial);
    ChainState state = simulate_chain(params, t, rng);
    out.push_back(TrialRecord{master_seed, trial, std::move(state.element), state.sst});
  }
  return out;
}

DenseDistribution empirical_law(const GroupParams& params, int t, std::uint64_t trials,
                                std::uint64_t master_seed, std::uint64_t cap) {
  const std::uint64_t order = checked_order(params, cap);
  if (trials < 1) throw std::invalid_argument("empirical_law: trials must be >= 1");
  std::vector<std::uint64_t> hist(order, 0);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_trial_rng(master_seed, trial);
    DeckWalk walk(params);
    for (int step = 1; step <= t; ++step) walk.step(rng, step);
    ++hist[rank(walk.element(params)).value];
  }
  std::vector<double> mass(order);
  for (std::uint64_t i = 0; i < order; ++i)
    mass[i] = static_cast<double>(hist[i]) / static_cast<double>(trials);
  return DenseDistribution(params, std::move(mass), cap);
}

}  // namespace ostmix
