#include <catch2/catch_amalgamated.hpp>

#include <bit>

#include "hhb/multiset.hpp"

using hhb::Multiset;

TEST_CASE("multisets canonicalize to ascending slot lists") {
  Multiset a({2, 0, 1, 0});
  REQUIRE(a.slots() == std::vector<int>{0, 0, 1, 2});
  REQUIRE(a.size() == 4);
  REQUIRE(a.multiplicity(0) == 2);
  REQUIRE(a.multiplicity(1) == 1);
  REQUIRE(a.multiplicity(5) == 0);
  REQUIRE(a.entries() == std::vector<std::pair<int, int>>{{0, 2}, {1, 1}, {2, 1}});
  REQUIRE(a.support() == std::vector<int>{0, 1, 2});
  REQUIRE(Multiset({1, 1, 0}) == Multiset({0, 1, 1}));
}

TEST_CASE("multiset order is lexicographic on the slot list") {
  // [0,0,1] < [0,1,1] even though the run-length encodings would sort the
  // other way around.
  REQUIRE(Multiset({0, 0, 1}) < Multiset({0, 1, 1}));
  REQUIRE(Multiset({0, 2}) < Multiset({1, 1}));
  REQUIRE(Multiset({0, 1}) < Multiset({0, 2}));
}

TEST_CASE("containment, difference and union behave like multisets") {
  Multiset tau({0, 0, 1, 2});
  REQUIRE(Multiset({0, 1}).contained_in(tau));
  REQUIRE(Multiset({0, 0}).contained_in(tau));
  REQUIRE_FALSE(Multiset({1, 1}).contained_in(tau));
  REQUIRE(tau.minus(Multiset({0, 1})) == Multiset({0, 2}));
  REQUIRE(Multiset({0, 1}).plus(Multiset({0, 2})) == Multiset({0, 0, 1, 2}));
}

TEST_CASE("submultiset counts multiply binomials of multiplicities") {
  // N([1,0], [1,1,0]) = C(2,1) * C(1,1) = 2.
  REQUIRE(hhb::submultiset_count(Multiset({1, 0}), Multiset({1, 1, 0})) == 2);
  // N([1,1], [1,1,0]) = C(2,2) = 1.
  REQUIRE(hhb::submultiset_count(Multiset({1, 1}), Multiset({1, 1, 0})) == 1);
  // N([0,0], [0,0,0]) = C(3,2) = 3.
  REQUIRE(hhb::submultiset_count(Multiset({0, 0}), Multiset({0, 0, 0})) == 3);
  // Not contained: zero.
  REQUIRE(hhb::submultiset_count(Multiset({2}), Multiset({0, 1})) == 0);
  // Empty multiset is contained exactly once.
  REQUIRE(hhb::submultiset_count(Multiset{}, Multiset({0, 1})) == 1);
}

TEST_CASE("submultiset counts agree with direct slot enumeration") {
  // Independent oracle: choose i of the k distinguishable slots directly.
  auto slot_count = [](const Multiset& sigma, const Multiset& tau) {
    const auto& slots = tau.slots();
    int k = tau.size(), i = sigma.size();
    std::uint64_t count = 0;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      if (std::popcount(mask) != i) continue;
      std::vector<int> chosen;
      for (int b = 0; b < k; ++b)
        if (mask >> b & 1) chosen.push_back(slots[b]);
      if (Multiset(chosen) == sigma) ++count;
    }
    return count;
  };
  std::vector<Multiset> taus = {Multiset({0, 0, 0}), Multiset({0, 1, 1}),
                                Multiset({0, 1, 2, 2}), Multiset({3, 3, 3, 1})};
  for (const auto& tau : taus)
    for (int i = 0; i <= tau.size(); ++i)
      hhb::for_each_submultiset(tau, i, [&](const Multiset& sigma, std::uint64_t n) {
        REQUIRE(n == hhb::submultiset_count(sigma, tau));
        REQUIRE(n == slot_count(sigma, tau));
      });
}

TEST_CASE("submultiset enumeration is complete: counts sum to C(k,i)") {
  Multiset tau({0, 0, 1, 2, 2});
  for (int i = 0; i <= tau.size(); ++i) {
    std::uint64_t total = 0;
    hhb::for_each_submultiset(tau, i, [&](const Multiset&, std::uint64_t n) { total += n; });
    REQUIRE(total == hhb::binomial(tau.size(), i));
  }
}

TEST_CASE("binomial and factorial basics") {
  REQUIRE(hhb::binomial(0, 0) == 1);
  REQUIRE(hhb::binomial(5, 2) == 10);
  REQUIRE(hhb::binomial(11, 6) == 462);
  REQUIRE(hhb::binomial(4, 7) == 0);
  REQUIRE(hhb::factorial(0) == 1);
  REQUIRE(hhb::factorial(5) == 120);
}
