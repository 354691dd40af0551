#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pds/search_state.hpp"

using namespace pds;

namespace {

std::int64_t coeff_sum(const SearchState& s) {
  const auto c = s.coefficients();
  return std::accumulate(c.begin(), c.end(), std::int64_t{0});
}

// Random k-subset of G \ {1}.
std::vector<Element> random_set(const GroupTable& g, std::size_t k, std::mt19937_64& rng) {
  std::vector<Element> pool;
  for (Element x = 0; x < g.order(); ++x)
    if (x != g.identity()) pool.push_back(x);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(k);
  return pool;
}

// Params only need to satisfy the constructor for error bookkeeping tests.
Params loose_params(std::int64_t n, std::int64_t k, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> lam(0, k - 1), mu(0, k);
  return Params(n, k, lam(rng), mu(rng));
}

}  // namespace

TEST_CASE("target polynomial") {
  const GroupTable z5 = cyclic_group(5);
  const Params p(5, 2, 0, 1);
  const std::vector<Element> d = {1, 4};
  const SearchState s(z5, p, d);
  CHECK(s.target(0) == 2);  // identity -> k
  CHECK(s.target(1) == 0);  // member -> lambda
  CHECK(s.target(4) == 0);
  CHECK(s.target(2) == 1);  // non-member -> mu
  CHECK(s.target(3) == 1);
}

TEST_CASE("init_state on Z5") {
  const GroupTable z5 = cyclic_group(5);
  const Params p(5, 2, 0, 1);

  const std::vector<Element> paley = {1, 4};
  REQUIRE(oracle::error(z5, p, paley) == 0);
  CHECK(SearchState(z5, p, paley).error() == 0);

  const std::vector<Element> d = {1, 2};
  REQUIRE(oracle::error(z5, p, d) == 6);
  const SearchState s(z5, p, d);
  CHECK(s.error() == 6);
  const std::vector<std::int32_t> expected = {0, 0, 1, 2, 1};
  CHECK(std::equal(expected.begin(), expected.end(), s.coefficients().begin()));
}

TEST_CASE("init_state preconditions") {
  const GroupTable z5 = cyclic_group(5);
  const Params p(5, 2, 0, 1);
  auto kind = [&](std::vector<Element> d) {
    try {
      SearchState s(z5, p, d);
    } catch (const StateError& e) {
      return e.kind();
    }
    FAIL("expected StateError");
    return StateError::Kind::OutOfRange;
  };
  CHECK(kind({0, 1}) == StateError::Kind::IdentityInSet);
  CHECK(kind({1}) == StateError::Kind::WrongCardinality);
  CHECK(kind({2, 2}) == StateError::Kind::Duplicate);
  CHECK(kind({1, 9}) == StateError::Kind::OutOfRange);
  const std::vector<Element> ok = {1, 2};
  CHECK_THROWS_AS(SearchState(cyclic_group(6), p, ok), StateError);
}

TEST_CASE("swap_delta and apply_swap on Z5") {
  const GroupTable z5 = cyclic_group(5);
  const Params p(5, 2, 0, 1);
  const std::vector<Element> d = {1, 2};
  SearchState s(z5, p, d);
  CHECK(s.swap_delta(2, 4) == -6);
  CHECK(s.error() == 6);  // pure
  CHECK(s.contains(2));

  CHECK(s.apply_swap(2, 4) == -6);
  CHECK(s.error() == 0);
  CHECK(s.sorted_set() == std::vector<Element>{1, 4});
  CHECK(s.slot_of(4) == 1);
  CHECK(s.swap_delta(4, 2) == 6);

  auto kind = [&](Element out, Element in) {
    try {
      (void)s.swap_delta(out, in);
    } catch (const StateError& e) {
      return e.kind();
    }
    FAIL("expected StateError");
    return StateError::Kind::OutOfRange;
  };
  CHECK(kind(2, 3) == StateError::Kind::OutNotMember);
  CHECK(kind(1, 4) == StateError::Kind::InAlreadyMember);
  CHECK(kind(1, 0) == StateError::Kind::InIsIdentity);
  CHECK(kind(1, 7) == StateError::Kind::OutOfRange);
}

TEST_CASE("incremental deltas match full recomputation exhaustively for small groups") {
  std::mt19937_64 rng(11);
  const std::vector<GroupTable> groups = {cyclic_group(7), dihedral_group(4),
                                          direct_product(cyclic_group(2), cyclic_group(4)),
                                          dihedral_group(5), cyclic_group(12)};
  for (const GroupTable& g : groups) {
    const auto n = static_cast<std::int64_t>(g.order());
    for (std::int64_t k = 1; k <= std::min<std::int64_t>(4, n - 2); ++k) {
      const Params p = loose_params(n, k, rng);
      oracle::for_each_subset(g, static_cast<std::size_t>(k), [&](const std::vector<Element>& d) {
        const SearchState s(g, p, d);
        REQUIRE(s.error() == oracle::error(g, p, d));
        for (std::size_t i = 0; i < d.size(); ++i) {
          for (Element in = 0; in < g.order(); ++in) {
            if (in == g.identity() || s.contains(in)) continue;
            auto next = d;
            next[i] = in;
            REQUIRE(s.swap_delta(d[i], in) == oracle::error(g, p, next) - s.error());
          }
        }
      });
    }
  }
}

TEST_CASE("random swap walks keep every invariant") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 40; ++round) {
    const GroupTable g = round % 3 == 0   ? cyclic_group(10 + round)
                         : round % 3 == 1 ? dihedral_group(4 + round / 2)
                                          : direct_product(cyclic_group(2 + round % 4), cyclic_group(3 + round % 5));
    const auto n = static_cast<std::int64_t>(g.order());
    const std::int64_t k = std::uniform_int_distribution<std::int64_t>(1, n - 2)(rng);
    const Params p = loose_params(n, k, rng);
    SearchState s(g, p, random_set(g, static_cast<std::size_t>(k), rng));
    for (int step = 0; step < 50; ++step) {
      const auto roster = s.roster();
      const Element out = roster[std::uniform_int_distribution<std::size_t>(0, roster.size() - 1)(rng)];
      Element in;
      do {
        in = std::uniform_int_distribution<Element>(0, static_cast<Element>(n - 1))(rng);
      } while (in == g.identity() || s.contains(in));
      const std::int64_t before = s.error();
      const std::int64_t delta = s.swap_delta(out, in);
      const std::int64_t reverse_check = s.apply_swap(out, in);
      CHECK(reverse_check == delta);
      CHECK(s.error() == before + delta);
      CHECK(s.swap_delta(in, out) == -delta);
      CHECK(coeff_sum(s) == k * k);
      CHECK_FALSE(s.contains(g.identity()));

      const SearchState fresh(g, p, s.roster());
      CHECK(fresh.error() == s.error());
      CHECK(std::equal(fresh.coefficients().begin(), fresh.coefficients().end(),
                       s.coefficients().begin()));
    }
  }
}

TEST_CASE("error does not depend on roster order") {
  std::mt19937_64 rng(5);
  const GroupTable g = dihedral_group(9);
  const Params p(18, 7, 2, 3);
  auto d = random_set(g, 7, rng);
  const std::int64_t e = SearchState(g, p, d).error();
  for (int i = 0; i < 10; ++i) {
    std::shuffle(d.begin(), d.end(), rng);
    CHECK(SearchState(g, p, d).error() == e);
  }
}
