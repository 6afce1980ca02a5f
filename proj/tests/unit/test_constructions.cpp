#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "discordant/constructions.hpp"
#include "discordant/errors.hpp"
#include "discordant/numtheory.hpp"

using namespace discordant;

namespace {

double ratio_on_naturals(const SetOracle& a, std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t x = 1; x <= n; ++x) c += a.contains(Element{x});
  return static_cast<double>(c) / static_cast<double>(n);
}

}  // namespace

TEST_CASE("exponent valuation") {
  CHECK(exponent_valuation(2, 12) == Valuation::finite(2));
  CHECK(exponent_valuation(3, 7) == Valuation::finite(0));
  CHECK(exponent_valuation(2, 0).is_infinite());
  CHECK(exponent_valuation(5, -250).equals(3));
  CHECK_THROWS_AS(exponent_valuation(1, 5), ArgumentError);
  for (std::int64_t b : {2, 3, 6, 10})
    for (int m = 0; m <= 5; ++m)
      for (std::int64_t q : {1, 7, 11, -13}) {
        if (q % b == 0) continue;
        std::int64_t v = q;
        for (int i = 0; i < m; ++i) v *= b;
        CHECK(exponent_valuation(b, v).equals(m));
      }
}

TEST_CASE("B-sequences must be pairwise coprime") {
  CHECK_THROWS(BSequence({4, 6}));
  CHECK_NOTHROW(BSequence({4, 9, 25}));
  const BSequence b({2, 3, 5});
  CHECK(b.free_density() == doctest::Approx(4.0 / 15.0));
  CHECK(b.reciprocal_sum() == doctest::Approx(1.0 / 2 + 1.0 / 3 + 1.0 / 5));
}

TEST_CASE("Straus set") {
  const auto p = StrausParams::geometric(8, 2, 40);
  const auto a = straus_set(p);
  CHECK(a.contains(Element{7}));
  CHECK_FALSE(a.contains(Element{8}));
  CHECK(ratio_on_naturals(a, 100'000) >= 0.75 - 1e-2);
  CHECK(straus_density_lower_bound(p) == doctest::Approx(0.75).epsilon(1e-6));
  CHECK_THROWS_AS(straus_set(StrausParams{{2, 3, 4}}), ConstructionError);
}

TEST_CASE("B-free oracles") {
  const BSequence b({2, 3, 5});
  const auto a = bfree_oracle(b);
  CHECK(a.contains(Element{7}));
  CHECK_FALSE(a.contains(Element{10}));
  CHECK(std::abs(ratio_on_naturals(a, 1'000'000) - 4.0 / 15.0) < 1e-3);

  const auto sq = bfree_oracle(BSequence::first_prime_squares(200));
  CHECK(std::abs(*sq.known_density - 6.0 / (std::numbers::pi * std::numbers::pi)) < 1e-3);
  const auto cube_free = bfree_oracle(BSequence::prime_powers(3, 1'000'000));
  CHECK(std::abs(ratio_on_naturals(cube_free, 200'000) - 1.0 / 1.2020569) < 3e-3);
}

TEST_CASE("B-free agrees with trial division") {
  std::mt19937_64 rng(11);
  const auto primes = primes_up_to(60);
  for (int t = 0; t < 5; ++t) {
    std::vector<std::int64_t> terms;
    for (auto p : primes)
      if (rng() % 3 == 0) terms.push_back(p * (rng() % 2 ? p : 1));
    if (terms.empty()) terms.push_back(7);
    std::sort(terms.begin(), terms.end());
    const auto a = bfree_oracle(BSequence(terms));
    for (std::int64_t k = -20'000; k <= 20'000; ++k) {
      bool free = true;
      for (auto b : terms) free = free && (k % b != 0);
      REQUIRE(a.contains(Element{k}) == free);
    }
  }
}

TEST_CASE("B^u-free oracles") {
  const std::vector<int> u1{1};
  const auto a = bufree_oracle(BSequence({2}), u1);
  CHECK_FALSE(a.contains(Element{2}));
  CHECK(a.contains(Element{3}));
  CHECK(a.contains(Element{4}));
  CHECK(a.contains(Element{0}));
  CHECK(std::abs(ratio_on_naturals(a, 1'000'000) - 0.75) < 1e-3);

  const std::vector<int> u12{1, 2};
  const auto b = bufree_oracle(BSequence({2, 3}), u12);
  CHECK(std::abs(ratio_on_naturals(b, 1'000'000) - 0.75 * (1.0 - 2.0 / 27.0)) < 1e-3);
  CHECK_THROWS_AS(bufree_oracle(BSequence({2, 3}), u1), ArgumentError);

  const auto powered = bfree_oracle(BSequence({2, 9}));
  for (std::int64_t k = 1; k <= 100'000; ++k)
    if (powered.contains(Element{k})) REQUIRE(b.contains(Element{k}));
}

TEST_CASE("coprime tuples") {
  const std::vector<BSequence> rows{BSequence({2}), BSequence({2})};
  const auto a = coprime_tuple_oracle(rows);
  CHECK(a.contains(Element{1, 2}));
  CHECK_FALSE(a.contains(Element{2, 4}));
  CHECK(*a.known_density == doctest::Approx(0.75));

  const std::vector<BSequence> rows3{BSequence({2}), BSequence({2}), BSequence({2})};
  const auto c = coprime_tuple_oracle(rows3);
  CHECK(*c.known_density == doctest::Approx(7.0 / 8.0));

  const std::vector<BSequence> ragged{BSequence({2, 3}), BSequence({2})};
  CHECK_THROWS_AS(coprime_tuple_oracle(ragged), ArgumentError);
}

TEST_CASE("Heisenberg B-free") {
  const auto a = heisenberg_bfree_oracle(BSequence({2}));
  CHECK(a.contains(Element{1, 0, 0}));
  CHECK_FALSE(a.contains(Element{2, 2, 2}));
  CHECK(*heisenberg_bfree_oracle(BSequence({2, 3})).known_density ==
        doctest::Approx(7.0 / 8.0 * 26.0 / 27.0));
}

TEST_CASE("CRT and gcd helpers") {
  const auto bt = extended_gcd(240, 46);
  CHECK(bt.g == 2);
  CHECK(240 * bt.x + 46 * bt.y == 2);
  const std::vector<std::int64_t> mod{4, 9, 25};
  const std::vector<std::int64_t> r2{0, 8, 0};
  const auto s = solve_crt(r2, mod);
  CHECK(s.modulus == 900);
  CHECK(s.x % 9 == 8);
  CHECK(pairwise_coprime(mod));
  CHECK_FALSE(pairwise_coprime(std::vector<std::int64_t>{4, 6}));
  CHECK(primes_up_to(30) == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}
