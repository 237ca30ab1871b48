#pragma once

// Chain simulation at large n, strong-stationary-time sampling via the
// first-draw coupon collector, tail estimates, and the conditional
// uniformity check for the card at a given position.
//
// Every multi-trial driver derives one independent rng stream per trial
// from (master_seed, trial_index), so results are reproducible and do not
// depend on execution order.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ostmix/exact.hpp"
#include "ostmix/group.hpp"
#include "ostmix/shuffle.hpp"

namespace ostmix {

/// Deterministic per-trial stream: seeded from the master seed and the
/// trial index via std::seed_seq.
Rng make_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index);

/// State of one simulated chain after t steps.
///
/// `element` is the position-to-card table of the deck: image_of(p) is the
/// card at position p and color_at(p) its orientation, which makes it the
/// inverse of the card-to-position chain. The strong stationary time is
/// the first step at which every position has appeared as the first draw.
struct ChainState {
  GroupElement element;
  int t = 0;
  std::vector<bool> collected;  // collected[p-1]: position p seen as first draw
  std::optional<int> sst;       // set exactly when all positions are collected

  /// 1-based positions not yet seen as the first draw.
  std::vector<std::uint32_t> uncollected() const;
};

/// Runs t shuffle steps from the identity.
ChainState simulate_chain(const GroupParams& params, int t, Rng& rng);

/// Samples the strong stationary time by drawing only the first-draw
/// position each step (the deck itself is never built). Returns nullopt
/// when every position has not been seen within t_cap steps.
std::optional<int> sample_sst(const GroupParams& params, Rng& rng, int t_cap);

/// One tail row: estimate of P(T > t) from `trials` independent chains.
struct TailEstimate {
  std::uint32_t n = 0;
  double c = 0.0;            // threshold offset; t = ceil(n ln n + c n)
  int t = 0;
  std::uint64_t trials = 0;
  std::uint64_t exceed = 0;  // trials with T > t (censored trials included)
  double p_hat = 0.0;
  double stderr_ = 0.0;      // sqrt(p_hat (1 - p_hat) / trials)
  double bound = 0.0;        // e^{-c}
};

/// Estimates P(T > ceil(n ln n + c n)); natural logarithm throughout.
TailEstimate sst_tail(const GroupParams& params, double c, std::uint64_t trials,
                      std::uint64_t master_seed);

/// Shares one T sample per trial across a grid of offsets c. Row i of the
/// result equals sst_tail(params, cs[i], trials, master_seed) exactly.
std::vector<TailEstimate> sst_tail_grid(const GroupParams& params,
                                        std::span<const double> cs,
                                        std::uint64_t trials,
                                        std::uint64_t master_seed);

/// Exact separation next to the Monte Carlo tail of the strong stationary
/// time; separation is bounded by P(T > t), so exact_sep should not exceed
/// p_hat by more than sampling noise.
struct SepBoundPoint {
  int t = 0;
  double exact_sep = 0.0;
  double p_hat = 0.0;
  double stderr_ = 0.0;
};

std::vector<SepBoundPoint> sep_upper_bound_check(const GroupParams& params,
                                                 std::span<const int> t_list,
                                                 std::uint64_t trials,
                                                 std::uint64_t master_seed,
                                                 std::uint64_t cap = kDefaultExactCap);

/// Conditional uniformity of the card at position j. Trials whose first
/// draw has hit j by time t are grouped by the exact (card, orientation)
/// configuration strictly above j; within each group the (card,
/// orientation) value at j is binned against the uniform target 1/(m*j).
struct PjReport {
  std::uint32_t j = 0;
  int t = 0;
  std::uint64_t trials = 0;
  std::uint64_t conditioned = 0;      // trials with T_j <= t
  double target = 0.0;                // 1/(m*j)
  std::uint64_t groups = 0;
  std::uint64_t small_groups = 0;     // groups below min_group_samples (not scored)
  std::uint64_t min_group_count = 0;  // smallest scored group
  double max_abs_deviation = 0.0;     // over scored groups and feasible outcomes
  double max_deviation_sigmas = 0.0;  // deviation over per-group binomial stderr
};

PjReport empirical_pj_check(const GroupParams& params, std::uint32_t j, int t,
                            std::uint64_t trials, std::uint64_t master_seed,
                            std::uint64_t min_group_samples = 100);

/// One recorded trial; (master_seed, trial) names its rng stream.
struct TrialRecord {
  std::uint64_t master_seed = 0;
  std::uint64_t trial = 0;
  GroupElement final_element;
  std::optional<int> sst;
};

std::vector<TrialRecord> run_trials(const GroupParams& params, int t,
                                    std::uint64_t trials, std::uint64_t master_seed);

/// Histogram of t-step endpoints as a dense law; needs the exact cap.
DenseDistribution empirical_law(const GroupParams& params, int t, std::uint64_t trials,
                                std::uint64_t master_seed,
                                std::uint64_t cap = kDefaultExactCap);

}  // namespace ostmix
