#include "ostmix/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "ostmix/lehmer.hpp"

namespace ostmix {

namespace {

std::uint64_t pow_u64(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

void format_row(std::ostream& out, int t, double tv, double sep) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", t, tv, sep);
  out << buf;
}

}  // namespace

DenseDistribution::DenseDistribution(GroupParams params, std::vector<double> mass,
                                     std::uint64_t cap)
    : params_(params), mass_(std::move(mass)) {
  const std::uint64_t order = checked_order(params_, cap);
  if (mass_.size() != order)
    throw std::invalid_argument("DenseDistribution: mass vector must have length m^n*n!");
  CompensatedSum total;
  for (double v : mass_) {
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument("DenseDistribution: entries must be finite and >= 0");
    total.add(v);
  }
  if (std::abs(total.value() - 1.0) > 1e-10)
    throw std::invalid_argument("DenseDistribution: entries must sum to 1 within 1e-10");
}

double DenseDistribution::total_mass() const {
  CompensatedSum total;
  for (double v : mass_) total.add(v);
  return total.value();
}

DenseDistribution delta_at_identity(const GroupParams& params, std::uint64_t cap) {
  const std::uint64_t order = checked_order(params, cap);
  std::vector<double> mass(order, 0.0);
  mass[rank(GroupElement::identity(params)).value] = 1.0;
  return DenseDistribution(DenseDistribution::Unchecked{}, params, std::move(mass));
}

DenseDistribution uniform(const GroupParams& params, std::uint64_t cap) {
  const std::uint64_t order = checked_order(params, cap);
  std::vector<double> mass(order, 1.0 / static_cast<double>(order));
  return DenseDistribution(DenseDistribution::Unchecked{}, params, std::move(mass));
}

double tv_distance(const DenseDistribution& p, const DenseDistribution& q) {
  if (p.params() != q.params())
    throw DimensionError("tv_distance: distributions over different groups");
  CompensatedSum sum;
  auto pm = p.mass();
  auto qm = q.mass();
  for (std::size_t i = 0; i < pm.size(); ++i) sum.add(std::abs(pm[i] - qm[i]));
  return 0.5 * sum.value();
}

double sep_distance(const DenseDistribution& p) {
  auto pm = p.mass();
  double min_mass = pm[0];
  for (double v : pm) min_mass = std::min(min_mass, v);
  double sep = 1.0 - static_cast<double>(pm.size()) * min_mass;
  return std::clamp(sep, 0.0, 1.0);
}

DenseDistribution pushforward_projection(const DenseDistribution& p) {
  const GroupParams& params = p.params();
  const std::uint64_t radix = pow_u64(params.m, params.n);
  const std::uint64_t blocks = p.size() / radix;
  std::vector<double> out(blocks);
  auto pm = p.mass();
  for (std::uint64_t b = 0; b < blocks; ++b) {
    CompensatedSum sum;
    for (std::uint64_t r = 0; r < radix; ++r) sum.add(pm[b * radix + r]);
    out[b] = sum.value();
  }
  return DenseDistribution(DenseDistribution::Unchecked{}, GroupParams(1, params.n),
                           std::move(out));
}

ConvolutionPlan::ConvolutionPlan(const GeneratorDistribution& gens, std::uint64_t cap)
    : params_(gens.params()) {
  order_ = checked_order(params_, cap);
  const std::uint32_t n = params_.n;
  const std::uint32_t m = params_.m;
  color_radix_ = pow_u64(m, n);
  perm_count_ = factorial(n);

  // Group the moves by their transposition pair; entries are (j, i, k)
  // ordered, so each pair's k block is contiguous.
  std::vector<std::uint32_t> scratch(n), swapped(n);
  for (const auto& entry : gens.entries()) {
    const std::uint32_t i = entry.gen.i, j = entry.gen.j, k = entry.gen.k;
    if (pairs_.empty() || pairs_.back().i != i || pairs_.back().j != j) {
      PairStage stage;
      stage.i = i;
      stage.j = j;
      if (i != j) {
        // Applying the inverse move swaps the entries at positions i, j of
        // the image sequence; tabulate that swap on Lehmer ranks.
        stage.perm_map.resize(perm_count_);
        for (std::uint64_t r = 0; r < perm_count_; ++r) {
          lehmer_unrank(r, scratch);
          std::swap(scratch[i - 1], scratch[j - 1]);
          stage.perm_map[r] = static_cast<std::uint32_t>(lehmer_rank(scratch));
        }
      }
      pairs_.push_back(std::move(stage));
    }

    // Color digits of s^{-1} g: swap digits i, j of g's colors, then add
    // m - k to the moved digits.
    const std::uint32_t kinv = (m - k) % m;
    ColorStage cs;
    cs.mass = entry.mass;
    cs.map.resize(color_radix_);
    std::vector<std::uint32_t> digits(n);
    for (std::uint64_t r = 0; r < color_radix_; ++r) {
      std::uint64_t rest = r;
      for (std::uint32_t d = 0; d < n; ++d) {
        digits[d] = static_cast<std::uint32_t>(rest % m);
        rest /= m;
      }
      if (i != j) std::swap(digits[i - 1], digits[j - 1]);
      digits[i - 1] = (digits[i - 1] + kinv) % m;
      if (i != j) digits[j - 1] = (digits[j - 1] + kinv) % m;
      std::uint64_t enc = 0;
      for (std::uint32_t d = n; d-- > 0;) enc = enc * m + digits[d];
      cs.map[r] = static_cast<std::uint32_t>(enc);
    }
    pairs_.back().color_stages.push_back(std::move(cs));
  }
}

void ConvolutionPlan::apply_into(std::span<const double> in, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  const std::uint64_t radix = color_radix_;
  for (std::uint64_t block = 0; block < perm_count_; ++block) {
    double* dst = out.data() + block * radix;
    for (const PairStage& pair : pairs_) {
      const std::uint64_t src_block = pair.perm_map.empty()
                                          ? block
                                          : pair.perm_map[block];
      const double* src = in.data() + src_block * radix;
      for (const ColorStage& cs : pair.color_stages) {
        const double w = cs.mass;
        const std::uint32_t* map = cs.map.data();
        for (std::uint64_t r = 0; r < radix; ++r) dst[r] += w * src[map[r]];
      }
    }
  }
}

DenseDistribution ConvolutionPlan::apply(const DenseDistribution& p) const {
  if (p.params() != params_)
    throw DimensionError("ConvolutionPlan::apply: distribution over a different group");
  std::vector<double> out(order_);
  apply_into(p.mass(), out);
  return DenseDistribution(DenseDistribution::Unchecked{}, params_, std::move(out));
}

DenseDistribution convolve_step(const DenseDistribution& p,
                                const GeneratorDistribution& gens) {
  // p exists, so its group was already admitted under some cap; reuse its
  // size as the cap rather than re-imposing the default.
  return ConvolutionPlan(gens, p.size()).apply(p);
}

DenseDistribution power(const ConvolutionPlan& plan, int t) {
  if (t < 0) throw std::invalid_argument("power: t must be >= 0");
  DenseDistribution p = delta_at_identity(plan.params());
  for (int step = 0; step < t; ++step) p = plan.apply(p);
  return p;
}

DenseDistribution power(const GroupParams& params, const GeneratorDistribution& gens,
                        int t, std::uint64_t cap) {
  if (params != gens.params())
    throw DimensionError("power: generator set belongs to a different group");
  ConvolutionPlan plan(gens, cap);
  return power(plan, t);
}

void DistanceCurve::write_csv(std::ostream& out) const {
  out << "t,tv,sep\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    format_row(out, times[i], tv[i], sep[i]);
}

namespace {

// tv and sep against uniform without materializing the uniform vector.
void distances_to_uniform(std::span<const double> mass, double& tv_out, double& sep_out) {
  const double u = 1.0 / static_cast<double>(mass.size());
  CompensatedSum sum;
  double min_mass = mass[0];
  for (double v : mass) {
    sum.add(std::abs(v - u));
    min_mass = std::min(min_mass, v);
  }
  tv_out = std::clamp(0.5 * sum.value(), 0.0, 1.0);
  sep_out = std::clamp(1.0 - static_cast<double>(mass.size()) * min_mass, 0.0, 1.0);
}

}  // namespace

DistanceCurve distance_curve(const GroupParams& params, int t_max, std::uint64_t cap) {
  if (t_max < 0) throw std::invalid_argument("distance_curve: t_max must be >= 0");
  ConvolutionPlan plan(ost_generators(params), cap);
  DistanceCurve curve;
  curve.times.reserve(t_max + 1);
  curve.tv.reserve(t_max + 1);
  curve.sep.reserve(t_max + 1);
  DenseDistribution p = delta_at_identity(params, cap);
  for (int t = 0; t <= t_max; ++t) {
    double tv = 0.0, sep = 0.0;
    distances_to_uniform(p.mass(), tv, sep);
    curve.times.push_back(t);
    curve.tv.push_back(tv);
    curve.sep.push_back(sep);
    if (t < t_max) p = plan.apply(p);
  }
  return curve;
}

std::optional<int> mixing_time(const DistanceCurve& curve, double eps, Metric metric) {
  const std::vector<double>& d = metric == Metric::tv ? curve.tv : curve.sep;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] < eps) return curve.times[i];
  return std::nullopt;
}

int mixing_time(const GroupParams& params, double eps, Metric metric, int max_t,
                std::uint64_t cap) {
  if (!(eps > 0.0))
    throw std::invalid_argument("mixing_time: eps must be positive");
  ConvolutionPlan plan(ost_generators(params), cap);
  DenseDistribution p = delta_at_identity(params, cap);
  double last = 1.0;
  for (int t = 0; t <= max_t; ++t) {
    double tv = 0.0, sep = 0.0;
    distances_to_uniform(p.mass(), tv, sep);
    last = metric == Metric::tv ? tv : sep;
    if (last < eps) return t;
    if (t < max_t) p = plan.apply(p);
  }
  throw NotConvergedError("mixing_time: distance " + std::to_string(last) +
                              " still >= eps after " + std::to_string(max_t) + " steps",
                          max_t, last);
}

}  // namespace ostmix
