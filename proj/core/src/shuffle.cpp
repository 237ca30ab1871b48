#include "ostmix/shuffle.hpp"

#include <numeric>

namespace ostmix {

std::string to_string(const Generator& g) {
  return std::to_string(g.i) + "-" + std::to_string(g.j) + "^" + std::to_string(g.k);
}

GeneratorDistribution ost_generators(const GroupParams& params) {
  const std::uint32_t n = params.n;
  const std::uint32_t m = params.m;
  std::vector<WeightedGenerator> entries;
  entries.reserve(static_cast<std::size_t>(m) * n * (n + 1) / 2);
  for (std::uint32_t j = 1; j <= n; ++j) {
    const Rational mass(1, static_cast<std::int64_t>(n) * j * m);
    const double mass_f = boost::rational_cast<double>(mass);
    for (std::uint32_t i = 1; i <= j; ++i)
      for (std::uint32_t k = 0; k < m; ++k)
        entries.push_back({Generator{i, j, k}, mass, mass_f});
  }
  return GeneratorDistribution(params, std::move(entries));
}

Rational GeneratorDistribution::exact_total() const {
  Rational total(0);
  for (const auto& e : entries_) total += e.exact_mass;
  return total;
}

double GeneratorDistribution::float_total() const {
  double sum = 0.0, comp = 0.0;
  for (const auto& e : entries_) {
    double y = e.mass - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

GroupElement generator_to_element(const Generator& g, const GroupParams& params) {
  if (g.i < 1 || g.i > g.j || g.j > params.n || g.k >= params.m)
    throw std::invalid_argument("generator_to_element: need 1 <= i <= j <= n, k < m");
  std::vector<std::uint32_t> colors(params.n, 0);
  std::vector<std::uint32_t> images(params.n);
  std::iota(images.begin(), images.end(), 1u);
  colors[g.i - 1] = g.k;
  if (g.i != g.j) {
    colors[g.j - 1] = g.k;
    std::swap(images[g.i - 1], images[g.j - 1]);
  }
  return GroupElement(params, std::move(colors), std::move(images));
}

double identity_mass(const GroupParams& params) {
  double harmonic = 0.0;
  for (std::uint32_t i = 1; i <= params.n; ++i) harmonic += 1.0 / i;
  return harmonic / (static_cast<double>(params.n) * params.m);
}

StepDraw sample_step(const GeneratorDistribution& dist, Rng& rng) {
  const GroupParams& params = dist.params();
  std::uniform_int_distribution<std::uint32_t> draw_j(1, params.n);
  const std::uint32_t j = draw_j(rng);
  std::uniform_int_distribution<std::uint32_t> draw_i(1, j);
  const std::uint32_t i = draw_i(rng);
  std::uniform_int_distribution<std::uint32_t> draw_k(0, params.m - 1);
  const std::uint32_t k = draw_k(rng);
  return StepDraw{Generator{i, j, k}, j};
}

}  // namespace ostmix
