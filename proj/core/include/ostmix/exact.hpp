#pragma once

// Dense exact engine: t-step laws of the shuffle as length-|G| probability
// vectors, convolution against the move set, total-variation and
// separation distance, mixing times, and the color-forgetting pushforward
// onto S_n. Everything here requires the group order to fit under an
// element-count cap (kDefaultExactCap unless overridden).

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ostmix/group.hpp"
#include "ostmix/shuffle.hpp"

namespace ostmix {

/// Neumaier compensated accumulator; keeps mass and distance sums tight.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Probability vector over G_{m,n}, indexed by dense rank.
class DenseDistribution {
 public:
  /// Validates size, nonnegativity, and total mass within 1e-10.
  DenseDistribution(GroupParams params, std::vector<double> mass,
                    std::uint64_t cap = kDefaultExactCap);

  const GroupParams& params() const noexcept { return params_; }
  std::span<const double> mass() const noexcept { return mass_; }
  double at(GroupIndex idx) const { return mass_.at(idx.value); }
  std::uint64_t size() const noexcept { return mass_.size(); }

  /// Compensated total mass.
  double total_mass() const;

 private:
  struct Unchecked {};
  DenseDistribution(Unchecked, GroupParams params, std::vector<double> mass)
      : params_(params), mass_(std::move(mass)) {}

  GroupParams params_;
  std::vector<double> mass_;

  friend class ConvolutionPlan;
  friend DenseDistribution delta_at_identity(const GroupParams&, std::uint64_t);
  friend DenseDistribution uniform(const GroupParams&, std::uint64_t);
  friend DenseDistribution pushforward_projection(const DenseDistribution&);
};

/// Point mass at the identity element (the t = 0 law).
DenseDistribution delta_at_identity(const GroupParams& params,
                                    std::uint64_t cap = kDefaultExactCap);

/// The stationary law: every element gets 1/(m^n * n!).
DenseDistribution uniform(const GroupParams& params,
                          std::uint64_t cap = kDefaultExactCap);

/// Half L1 distance. Throws DimensionError on parameter mismatch.
double tv_distance(const DenseDistribution& p, const DenseDistribution& q);

/// Separation from uniform for a walk law p: 1 - |G| * min_g p(g).
/// This equals the worst-case ratio form 1 - min_{g,h} p(hg^{-1})/U(h):
/// U is constant at 1/|G| and, for any fixed g, h -> hg^{-1} is a
/// bijection, so the arguments of p sweep the whole group.
double sep_distance(const DenseDistribution& p);

/// Sums p over each fiber of the color-forgetting map; returns a law on
/// S_n represented as G_{1,n}. With the dense rank layout each fiber is
/// one contiguous block of m^n entries.
DenseDistribution pushforward_projection(const DenseDistribution& p);

/// Precomputed one-step convolution against a move set. A step maps p to
/// out(g) = sum_s mass(s) * p(s^{-1} g): fresh moves multiply on the left.
///
/// The maps factor through the semidirect-product structure: one
/// permutation-block map per transposition pair (i, j) plus one color map
/// per move, so plan memory is O(n^2 * (n! + m * m^n)) instead of
/// O(|G| * moves).
class ConvolutionPlan {
 public:
  explicit ConvolutionPlan(const GeneratorDistribution& gens,
                           std::uint64_t cap = kDefaultExactCap);

  const GroupParams& params() const noexcept { return params_; }

  DenseDistribution apply(const DenseDistribution& p) const;

 private:
  struct ColorStage {
    double mass;
    std::vector<std::uint32_t> map;  // color-rank gather map
  };
  struct PairStage {
    std::uint32_t i, j;                   // 1-based, i <= j
    std::vector<std::uint32_t> perm_map;  // empty when i == j (identity)
    std::vector<ColorStage> color_stages; // one per orientation shift k
  };

  void apply_into(std::span<const double> in, std::span<double> out) const;

  GroupParams params_;
  std::uint64_t order_ = 0;
  std::uint64_t color_radix_ = 0;  // m^n
  std::uint64_t perm_count_ = 0;   // n!
  std::vector<PairStage> pairs_;
};

/// One convolution step; builds a throwaway plan. Prefer a ConvolutionPlan
/// when stepping repeatedly.
DenseDistribution convolve_step(const DenseDistribution& p,
                                const GeneratorDistribution& gens);

/// The t-step law from the identity.
DenseDistribution power(const ConvolutionPlan& plan, int t);
DenseDistribution power(const GroupParams& params, const GeneratorDistribution& gens,
                        int t, std::uint64_t cap = kDefaultExactCap);

enum class Metric { tv, sep };

/// Distances to uniform at t = 0, 1, ..., t_max.
struct DistanceCurve {
  std::vector<int> times;
  std::vector<double> tv;
  std::vector<double> sep;

  /// CSV with header "t,tv,sep", one row per step, 17 significant digits.
  void write_csv(std::ostream& out) const;
};

/// Runs the shuffle's distance curve with one convolution per step.
DistanceCurve distance_curve(const GroupParams& params, int t_max,
                             std::uint64_t cap = kDefaultExactCap);

/// nullopt when every recorded distance is >= eps.
std::optional<int> mixing_time(const DistanceCurve& curve, double eps, Metric metric);

inline constexpr int kDefaultMixingMaxT = 10000;

/// Smallest t with d(t) < eps, extending the curve step by step. Throws
/// NotConvergedError (carrying the last distance) if max_t is reached
/// first, and CapacityError if the group exceeds the cap.
int mixing_time(const GroupParams& params, double eps, Metric metric,
                int max_t = kDefaultMixingMaxT, std::uint64_t cap = kDefaultExactCap);

}  // namespace ostmix
