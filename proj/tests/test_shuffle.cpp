#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "ostmix/group.hpp"
#include "ostmix/shuffle.hpp"

using namespace ostmix;

namespace {

double harmonic(std::uint32_t n) {
  double h = 0.0;
  for (std::uint32_t i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

}  // namespace

TEST_CASE("move set size and masses") {
  for (GroupParams params : {GroupParams(1, 3), GroupParams(2, 2), GroupParams(3, 1),
                             GroupParams(4, 6)}) {
    auto dist = ost_generators(params);
    const std::uint64_t expected =
        std::uint64_t{params.m} * params.n * (params.n + 1) / 2;
    CHECK(dist.entries().size() == expected);
    for (const auto& e : dist.entries()) {
      CHECK(e.exact_mass ==
            Rational(1, std::int64_t{params.n} * e.gen.j * params.m));
      CHECK(e.mass == doctest::Approx(1.0 / (double(params.n) * e.gen.j * params.m))
                          .epsilon(1e-15));
      CHECK(e.gen.i >= 1);
      CHECK(e.gen.i <= e.gen.j);
      CHECK(e.gen.k < params.m);
    }
  }

  // Spot values from the definition.
  auto d13 = ost_generators(GroupParams(1, 3));
  bool found = false;
  for (const auto& e : d13.entries())
    if (e.gen == Generator{1, 2, 0}) {
      CHECK(e.exact_mass == Rational(1, 6));
      found = true;
    }
  CHECK(found);

  auto d22 = ost_generators(GroupParams(2, 2));
  for (const auto& e : d22.entries())
    if (e.gen.j == 2) CHECK(e.exact_mass == Rational(1, 8));

  auto d31 = ost_generators(GroupParams(3, 1));
  CHECK(d31.entries().size() == 3);
  for (const auto& e : d31.entries()) CHECK(e.exact_mass == Rational(1, 3));
}

TEST_CASE("masses sum to one exactly, m <= 5, n <= 50") {
  for (std::uint32_t m = 1; m <= 5; ++m)
    for (std::uint32_t n = 1; n <= 50; ++n) {
      auto dist = ost_generators(GroupParams(m, n));
      REQUIRE(dist.exact_total() == Rational(1));
      REQUIRE(std::abs(dist.float_total() - 1.0) < 1e-12);
    }
}

TEST_CASE("generator elements") {
  GroupParams p22(2, 2);
  CHECK(to_string(generator_to_element(Generator{1, 2, 1}, p22)) == "1,1|2,1");
  CHECK(generator_to_element(Generator{1, 1, 0}, p22) == GroupElement::identity(p22));
  GroupParams p33(3, 3);
  CHECK(to_string(generator_to_element(Generator{2, 2, 2}, p33)) == "0,2,0|1,2,3");
  CHECK_THROWS_AS(generator_to_element(Generator{2, 1, 0}, p22), std::invalid_argument);
  CHECK_THROWS_AS(generator_to_element(Generator{1, 3, 0}, p22), std::invalid_argument);
  CHECK(to_string(Generator{1, 3, 2}) == "1-3^2");
}

TEST_CASE("identity mass is H_n/(n*m)") {
  CHECK(identity_mass(GroupParams(1, 2)) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(identity_mass(GroupParams(2, 2)) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(identity_mass(GroupParams(1, 1)) == doctest::Approx(1.0).epsilon(1e-15));
  for (std::uint32_t m = 1; m <= 4; ++m)
    for (std::uint32_t n = 1; n <= 12; ++n)
      CHECK(identity_mass(GroupParams(m, n)) ==
            doctest::Approx(harmonic(n) / (double(n) * m)).epsilon(1e-14));
}

TEST_CASE("a double-rotation diagonal would break the identity mass") {
  // Mis-wiring the diagonal moves to rotate twice makes every diagonal
  // move with m = 2 a no-op, which doubles the identity mass. The checked
  // value H_n/(n*m) detects that, so the single-rotation reading is the
  // one consistent with the move probabilities.
  GroupParams params(2, 3);
  auto alt_diagonal = [&](const Generator& g) {
    std::vector<std::uint32_t> colors(params.n, 0);
    std::vector<std::uint32_t> images(params.n);
    for (std::uint32_t p = 0; p < params.n; ++p) images[p] = p + 1;
    if (g.i == g.j) {
      colors[g.i - 1] = (2 * g.k) % params.m;
    } else {
      colors[g.i - 1] = colors[g.j - 1] = g.k;
      std::swap(images[g.i - 1], images[g.j - 1]);
    }
    return GroupElement(params, std::move(colors), std::move(images));
  };

  auto id = GroupElement::identity(params);
  double mass_ok = 0.0, mass_alt = 0.0;
  auto gens = ost_generators(params);
  for (const auto& e : gens.entries()) {
    if (generator_to_element(e.gen, params) == id) mass_ok += e.mass;
    if (alt_diagonal(e.gen) == id) mass_alt += e.mass;
  }
  CHECK(mass_ok == doctest::Approx(identity_mass(params)).epsilon(1e-13));
  CHECK(std::abs(mass_alt - identity_mass(params)) > 0.1);
}

TEST_CASE("sample_step determinism") {
  auto dist = ost_generators(GroupParams(3, 5));
  Rng a(42), b(42);
  for (int i = 0; i < 200; ++i) {
    auto da = sample_step(dist, a);
    auto db = sample_step(dist, b);
    CHECK(da.gen == db.gen);
    CHECK(da.first_draw == db.first_draw);
    CHECK(da.first_draw == da.gen.j);
  }
}

TEST_CASE("sample_step matches the move masses") {
  const std::uint64_t draws = 1000000;

  SUBCASE("first draw is uniform (chi-square at 1e-3)") {
    GroupParams params(1, 10);
    auto dist = ost_generators(params);
    Rng rng(20240901);
    std::vector<std::uint64_t> count(params.n, 0);
    for (std::uint64_t i = 0; i < draws; ++i)
      ++count[sample_step(dist, rng).first_draw - 1];
    const double expected = double(draws) / params.n;
    double chi2 = 0.0;
    for (std::uint64_t c : count) {
      const double d = double(c) - expected;
      chi2 += d * d / expected;
    }
    boost::math::chi_squared dof(params.n - 1);
    CHECK(chi2 < boost::math::quantile(dof, 1.0 - 1e-3));
  }

  SUBCASE("move frequencies within 4 standard errors") {
    GroupParams params(2, 3);
    auto dist = ost_generators(params);
    Rng rng(7);
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint64_t> count;
    for (std::uint64_t i = 0; i < draws; ++i) {
      auto d = sample_step(dist, rng);
      ++count[{d.gen.i, d.gen.j, d.gen.k}];
    }
    for (const auto& e : dist.entries()) {
      const double p = e.mass;
      const double freq =
          double(count[{e.gen.i, e.gen.j, e.gen.k}]) / double(draws);
      const double sigma = std::sqrt(p * (1.0 - p) / double(draws));
      CHECK(std::abs(freq - p) < 4.0 * sigma);
    }
  }
}

TEST_CASE("m = 1 one-step law equals the plain transposition shuffle") {
  // Direct construction from the definition on S_n: mass 1/(n*j) per
  // transposition (i j) with i < j, identity mass H_n/n. Exact rational
  // comparison against the law accumulated from the full move list.
  for (std::uint32_t n = 1; n <= 5; ++n) {
    GroupParams params(1, n);

    std::map<std::uint64_t, Rational> direct;
    for (std::uint32_t j = 1; j <= n; ++j)
      for (std::uint32_t i = 1; i <= j; ++i) {
        std::vector<std::uint32_t> colors(n, 0);
        std::vector<std::uint32_t> images(n);
        for (std::uint32_t p = 0; p < n; ++p) images[p] = p + 1;
        if (i != j) std::swap(images[i - 1], images[j - 1]);
        GroupElement el(params, std::move(colors), std::move(images));
        direct[rank(el).value] += Rational(1, std::int64_t{n} * j);
      }

    std::map<std::uint64_t, Rational> from_moves;
    auto gens = ost_generators(params);
  for (const auto& e : gens.entries())
      from_moves[rank(generator_to_element(e.gen, params)).value] += e.exact_mass;

    CHECK(direct == from_moves);
  }
}
