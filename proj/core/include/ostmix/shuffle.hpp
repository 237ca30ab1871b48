#pragma once

// The one-sided transposition move set on G_{m,n}. A move picks the right
// position j uniformly on [n], a left position i uniformly on [j], and an
// orientation shift k uniformly on Z_m, then transposes the cards at
// positions i and j and rotates both by k. Every move (i, j, k) carries
// mass 1/(n*j*m). A diagonal move (i = j) leaves positions alone and
// rotates the single card at i by k once; with k = 0 it is the identity.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ostmix/group.hpp"

namespace ostmix {

using Rational = boost::rational<std::int64_t>;

/// Random source used throughout; seeded per trial via make_trial_rng.
using Rng = std::mt19937_64;

/// One move: 1 <= i <= j <= n, k in [0, m).
struct Generator {
  std::uint32_t i = 1;
  std::uint32_t j = 1;
  std::uint32_t k = 0;
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Trace form "i-j^k", e.g. "1-3^2".
std::string to_string(const Generator& g);

struct WeightedGenerator {
  Generator gen;
  Rational exact_mass;  // exactly 1/(n*j*m)
  double mass;          // the same value rounded to double
};

/// The full move set with masses; m*n*(n+1)/2 entries ordered by (j, i, k).
/// The (j, i, k) order keeps partial sums of exact masses on small
/// denominators, so exact_total() never overflows for n <= 50, m <= 5.
class GeneratorDistribution {
 public:
  const GroupParams& params() const noexcept { return params_; }
  std::span<const WeightedGenerator> entries() const& noexcept { return entries_; }
  // A span into a temporary would dangle.
  std::span<const WeightedGenerator> entries() && = delete;

  /// Sum of exact masses in entry order; equals 1 by construction.
  Rational exact_total() const;
  /// Sum of double masses (compensated).
  double float_total() const;

 private:
  friend GeneratorDistribution ost_generators(const GroupParams&);
  GeneratorDistribution(GroupParams params, std::vector<WeightedGenerator> entries)
      : params_(params), entries_(std::move(entries)) {}

  GroupParams params_;
  std::vector<WeightedGenerator> entries_;
};

GeneratorDistribution ost_generators(const GroupParams& params);

/// The group element a move performs. Throws std::invalid_argument for a
/// malformed generator.
GroupElement generator_to_element(const Generator& g, const GroupParams& params);

/// Total move mass on the identity element: H_n / (n*m), where H_n is the
/// n-th harmonic number. Only the k = 0 diagonal moves land there.
double identity_mass(const GroupParams& params);

struct StepDraw {
  Generator gen;
  std::uint32_t first_draw;  // the position drawn first, i.e. gen.j
};

/// Samples one move: j, then i | j, then k, each uniform. The first draw
/// is returned separately for strong-stationary-time tracking.
StepDraw sample_step(const GeneratorDistribution& dist, Rng& rng);

}  // namespace ostmix
