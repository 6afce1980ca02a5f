#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "discordant/constructions.hpp"
#include "discordant/errors.hpp"
#include "discordant/folner.hpp"

using namespace discordant;

TEST_CASE("window sizes follow the interval and box conventions") {
  CHECK(window_size(GroupContext::integers(), 3) == 7);
  CHECK(window_size(GroupContext::naturals(), 5) == 5);
  CHECK(window_size(GroupContext::heisenberg(), 2) == 225);
  CHECK(window_size(GroupContext::lattice(2), 4) == 81);

  const auto w = folner_window(GroupContext::integers(), 3);
  REQUIRE(w.elements.size() == 7);
  CHECK(w.elements.front() == Element{-3});
  CHECK(w.elements.back() == Element{3});

  const auto box = window_box(GroupContext::heisenberg(), 2);
  CHECK(box.contains(Element{2, -2, 4}));
  CHECK_FALSE(box.contains(Element{2, -2, 5}));
}

TEST_CASE("window sizes strictly increase") {
  for (const auto& ctx : {GroupContext::naturals(), GroupContext::integers(), GroupContext::lattice(3),
                          GroupContext::heisenberg()}) {
    std::int64_t prev = 0;
    for (std::int64_t n = 1; n <= 8; ++n) {
      const auto s = window_size(ctx, n);
      CHECK(s > prev);
      prev = s;
    }
  }
}

TEST_CASE("free words have no Folner windows") {
  CHECK_THROWS_AS(folner_window(GroupContext::free_words(2), 3), ConfigurationError);
}

TEST_CASE("Heisenberg product is associative and cancellative") {
  const auto h = GroupContext::heisenberg();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> d(-50, 50);
  for (int t = 0; t < 200; ++t) {
    Element a{d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng)}, c{d(rng), d(rng), d(rng)};
    CHECK(h.op(h.op(a, b), c) == h.op(a, h.op(b, c)));
    Element c2{d(rng), d(rng), d(rng)};
    if (!(b == c2)) CHECK_FALSE(h.op(a, b) == h.op(a, c2));
  }
  CHECK(h.op(Element{1, 0, 0}, Element{0, 1, 0}) == Element{1, 1, 1});
  CHECK(h.op(Element{0, 1, 0}, Element{1, 0, 0}) == Element{1, 1, 0});
}

TEST_CASE("Folner defect") {
  const auto z = GroupContext::integers();
  CHECK(folner_defect(z, Element{1}, 10) == doctest::Approx(2.0 / 21.0));
  CHECK(folner_defect(z, Element{0}, 10) == 0.0);

  const auto h = GroupContext::heisenberg();
  const double d10 = folner_defect(h, Element{1, 0, 0}, 10);
  const double d20 = folner_defect(h, Element{1, 0, 0}, 20);
  const double d30 = folner_defect(h, Element{1, 0, 0}, 30);
  CHECK(d10 == doctest::Approx(0.1449).epsilon(1e-3));
  CHECK(d20 == doctest::Approx(0.0737).epsilon(1e-3));
  CHECK(d30 < 0.05);
  CHECK(d20 < d10);
  CHECK(d30 < d20);

  for (std::int64_t k : {10, 20, 40})
    CHECK(folner_defect(GroupContext::lattice(2), Element{1, 1}, 2 * k) <
          folner_defect(GroupContext::lattice(2), Element{1, 1}, k) + 0.01);
}

TEST_CASE("density of the evens") {
  const auto z = GroupContext::integers();
  const auto evens = residue_class(2, 0);
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 10; n <= 100; n += 10) ns.push_back(n);
  const auto rep = density_report(evens, z, ns);
  for (const auto& [n, r] : rep.ratios) CHECK(std::abs(r - 0.5) <= 1.0 / (2 * n + 1));

  const auto all = density_report(whole_set(), GroupContext::lattice(2), ns);
  for (const auto& [n, r] : all.ratios) CHECK(r == 1.0);
}

TEST_CASE("complement ratios sum to one") {
  const auto z = GroupContext::integers();
  const auto a = residue_class(3, 1);
  for (std::int64_t n : {7, 50, 333}) {
    const auto c = count_in_window(a, z, n) + count_in_window(complement(a), z, n);
    CHECK(c == window_size(z, n));
  }
}

TEST_CASE("window counts agree with closed forms") {
  const auto z = GroupContext::integers();
  for (std::int64_t m : {2, 3, 7, 10}) {
    for (std::int64_t n : {1, 13, 100, 999}) CHECK(count_in_window(residue_class(m), z, n) == 2 * (n / m) + 1);
  }
}

TEST_CASE("shift-additivity for evens and odds") {
  const auto z = GroupContext::integers();
  const auto evens = residue_class(2, 0);
  const auto odds = shift_oracle(evens, z, Element{1});
  for (std::int64_t x = -10; x <= 10; ++x) CHECK(odds.contains(Element{x}) == (x % 2 != 0));
  for (std::int64_t n : {5, 10, 101}) {
    const auto u = count_in_window(set_union(evens, odds), z, n);
    CHECK(u == count_in_window(evens, z, n) + count_in_window(odds, z, n));
  }
}

TEST_CASE("identity shift preserves membership") {
  const auto z = GroupContext::integers();
  const auto q = squarefree_oracle();
  const auto s = shift_oracle(q, z, Element{0});
  for (std::int64_t x = -500; x <= 500; ++x) CHECK(s.contains(Element{x}) == q.contains(Element{x}));
}

TEST_CASE("squarefree density at one million") {
  const auto n = GroupContext::naturals();
  const std::vector<std::int64_t> ns{1'000'000};
  const auto rep = density_report(squarefree_oracle(), n, ns);
  CHECK(rep.ratios[0].second == doctest::Approx(0.607926).epsilon(1e-6));
  const auto shifted = density_report(shift_oracle(squarefree_oracle(), n, Element{1}), n, ns);
  CHECK(std::abs(shifted.ratios[0].second - 0.6079) < 1e-3);
}

TEST_CASE("empty index range is rejected") {
  CHECK_THROWS_AS(density_report(whole_set(), GroupContext::integers(), std::vector<std::int64_t>{}),
                  ArgumentError);
}

TEST_CASE("thread count does not change counts") {
  const auto z2 = GroupContext::lattice(2);
  const auto a = residue_class(3, 0);
  CHECK(count_in_window(a, z2, 60, 1) == count_in_window(a, z2, 60, 4));
}
