#include "selftest.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "ostmix/exact.hpp"
#include "ostmix/lehmer.hpp"
#include "ostmix/shuffle.hpp"

namespace ostmix::selftest {

namespace {

std::string tag(const GroupParams& p, const char* what) {
  std::ostringstream out;
  out << what << " on G(m=" << p.m << ", n=" << p.n << ")";
  return out.str();
}

std::vector<GroupElement> all_elements(const GroupParams& params) {
  std::vector<GroupElement> out;
  const std::uint64_t order = checked_order(params);
  out.reserve(order);
  for (std::uint64_t r = 0; r < order; ++r) out.push_back(unrank(GroupIndex{r}, params));
  return out;
}

CheckResult check_axioms(const GroupParams& params,
                         const std::vector<GroupElement>& elems) {
  CheckResult result{tag(params, "group axioms"), true, ""};
  const GroupElement id = GroupElement::identity(params);
  for (const auto& g : elems) {
    if (!(compose(id, g) == g) || !(compose(g, id) == g)) {
      result.passed = false;
      result.detail = "identity law fails at " + to_string(g);
      return result;
    }
    if (!(compose(g, inverse(g)) == id) || !(compose(inverse(g), g) == id)) {
      result.passed = false;
      result.detail = "inverse law fails at " + to_string(g);
      return result;
    }
  }
  auto check_triple = [&](const GroupElement& a, const GroupElement& b,
                          const GroupElement& c) {
    return compose(compose(a, b), c) == compose(a, compose(b, c));
  };
  if (elems.size() <= 8) {
    for (const auto& a : elems)
      for (const auto& b : elems)
        for (const auto& c : elems)
          if (!check_triple(a, b, c)) {
            result.passed = false;
            result.detail = "associativity fails";
            return result;
          }
  } else {
    Rng rng(12345);
    std::uniform_int_distribution<std::uint64_t> pick(0, elems.size() - 1);
    for (int trial = 0; trial < 20000; ++trial)
      if (!check_triple(elems[pick(rng)], elems[pick(rng)], elems[pick(rng)])) {
        result.passed = false;
        result.detail = "associativity fails (sampled triple)";
        return result;
      }
  }
  return result;
}

CheckResult check_indexing(const GroupParams& params,
                           const std::vector<GroupElement>& elems) {
  CheckResult result{tag(params, "rank/unrank bijection and order"), true, ""};
  std::uint64_t expected = 1;
  for (std::uint32_t i = 0; i < params.n; ++i) expected *= params.m;
  for (std::uint32_t i = 2; i <= params.n; ++i) expected *= i;
  if (elems.size() != expected) {
    result.passed = false;
    result.detail = "element count != m^n*n!";
    return result;
  }
  std::set<std::string> seen;
  for (std::uint64_t r = 0; r < elems.size(); ++r) {
    if (rank(elems[r]).value != r) {
      result.passed = false;
      result.detail = "rank(unrank(r)) != r at r=" + std::to_string(r);
      return result;
    }
    seen.insert(to_string(elems[r]));
  }
  if (seen.size() != elems.size()) {
    result.passed = false;
    result.detail = "duplicate elements in enumeration";
  }
  return result;
}

CheckResult check_projection(const GroupParams& params,
                             const std::vector<GroupElement>& elems) {
  CheckResult result{tag(params, "projection homomorphism"), true, ""};
  std::uint64_t fiber = 1;
  for (std::uint32_t i = 0; i < params.n; ++i) fiber *= params.m;
  std::vector<std::uint64_t> counts(factorial(params.n), 0);
  for (const auto& g : elems) ++counts[rank(project(g)).value];
  for (std::uint64_t c : counts)
    if (c != fiber) {
      result.passed = false;
      result.detail = "fiber size != m^n";
      return result;
    }
  Rng rng(54321);
  std::uniform_int_distribution<std::uint64_t> pick(0, elems.size() - 1);
  for (int trial = 0; trial < 5000; ++trial) {
    const auto& a = elems[pick(rng)];
    const auto& b = elems[pick(rng)];
    if (!(project(compose(a, b)) == compose(project(a), project(b)))) {
      result.passed = false;
      result.detail = "project(ab) != project(a)project(b)";
      return result;
    }
  }
  return result;
}

CheckResult check_moves(const GroupParams& params) {
  CheckResult result{tag(params, "move-set normalization"), true, ""};
  auto gens = ost_generators(params);
  const std::uint64_t expected =
      std::uint64_t{params.m} * params.n * (params.n + 1) / 2;
  if (gens.entries().size() != expected) {
    result.passed = false;
    result.detail = "move count != m*n*(n+1)/2";
    return result;
  }
  if (gens.exact_total() != Rational(1)) {
    result.passed = false;
    result.detail = "exact masses do not sum to 1";
    return result;
  }
  if (std::abs(gens.float_total() - 1.0) > 1e-12) {
    result.passed = false;
    result.detail = "float masses off by more than 1e-12";
    return result;
  }
  auto law = power(params, gens, 1);
  if (std::abs(law.total_mass() - 1.0) > 1e-12) {
    result.passed = false;
    result.detail = "one-step law does not sum to 1";
    return result;
  }
  if (std::abs(law.at(GroupIndex{0}) - identity_mass(params)) > 1e-13) {
    result.passed = false;
    result.detail = "one-step identity mass != H_n/(n*m)";
    return result;
  }
  return result;
}

}  // namespace

std::vector<CheckResult> run(const std::vector<GroupParams>& groups) {
  std::vector<CheckResult> results;
  for (const GroupParams& params : groups) {
    auto elems = all_elements(params);
    results.push_back(check_axioms(params, elems));
    results.push_back(check_indexing(params, elems));
    results.push_back(check_projection(params, elems));
    results.push_back(check_moves(params));
  }
  return results;
}

}  // namespace ostmix::selftest
