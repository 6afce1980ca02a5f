#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "discordant/constructions.hpp"
#include "discordant/errors.hpp"
#include "discordant/folner.hpp"
#include "discordant/symbolic.hpp"

using namespace discordant;

namespace {

const GroupContext kN = GroupContext::naturals();
const GroupContext kZ = GroupContext::integers();

BinaryConfig evens() { return BinaryConfig::of(residue_class(2, 0)); }
BinaryConfig ones() { return BinaryConfig::of(whole_set()); }

BinaryConfig factorial_blocks() {
  return {[](const Element& e) {
            const std::int64_t x = e[0];
            std::int64_t f = 1;
            for (std::int64_t n = 1; n <= 20 && f <= x; ++n) {
              f *= n;
              if (x >= f && x <= f + n) return true;
            }
            return false;
          },
          "factorial-blocks"};
}

std::vector<Element> interval(std::int64_t lo, std::int64_t hi) {
  std::vector<Element> out;
  for (std::int64_t i = lo; i <= hi; ++i) out.push_back(Element{i});
  return out;
}

}  // namespace

TEST_CASE("shifts") {
  const auto odd = shift_config(evens(), kN, Element{1});
  for (std::int64_t x = 0; x < 50; ++x) CHECK(odd.eval(Element{x}) == (x % 2 == 1));
  const auto same = shift_config(evens(), kN, Element{0});
  for (std::int64_t x = 0; x < 50; ++x) CHECK(same.eval(Element{x}) == evens().eval(Element{x}));
}

TEST_CASE("shift composition follows the right action") {
  const auto h = GroupContext::heisenberg();
  const auto alpha = pseudorandom_config();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> d(-40, 40);
  for (int t = 0; t < 200; ++t) {
    const Element g{d(rng), d(rng), d(rng)}, k{d(rng), d(rng), d(rng)}, x{d(rng), d(rng), d(rng)};
    const auto twice = shift_config(shift_config(alpha, h, k), h, g);
    REQUIRE(twice.eval(x) == alpha.eval(h.op(h.op(x, g), k)));
    REQUIRE(twice.eval(x) == alpha.eval(h.op(x, h.op(g, k))));
  }
}

TEST_CASE("cylinder matching") {
  const auto p = CylinderPattern::make({Element{0}}, {Element{1}});
  CHECK(cylinder_match(evens(), kN, p, Element{2}));
  CHECK_FALSE(cylinder_match(evens(), kN, p, Element{3}));
  const auto all1 = CylinderPattern::make(interval(0, 4), {});
  const auto with0 = CylinderPattern::make({Element{0}}, {Element{3}});
  for (std::int64_t g = 0; g < 20; ++g) {
    CHECK(cylinder_match(ones(), kN, all1, Element{g}));
    CHECK_FALSE(cylinder_match(ones(), kN, with0, Element{g}));
  }
  CHECK_THROWS_AS(CylinderPattern::make({Element{0}}, {Element{0}}), ArgumentError);
}

TEST_CASE("scan order") {
  std::vector<Element> seen;
  for_each_scan(kZ, 5, [&](const Element& e) {
    seen.push_back(e);
    return false;
  });
  CHECK(seen == std::vector<Element>{Element{0}, Element{1}, Element{-1}, Element{2}, Element{-2}});
  seen.clear();
  for_each_scan(GroupContext::lattice(2), 9, [&](const Element& e) {
    seen.push_back(e);
    return false;
  });
  CHECK(seen.front() == Element{0, 0});
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(std::max(std::abs(seen[i][0]), std::abs(seen[i][1])) == 1);
}

TEST_CASE("pattern catalog") {
  const auto cat = interval_pattern_catalog(8);
  CHECK(cat.size() == 6561);
  for (const auto& p : cat) CHECK(p.support_size() <= 8);
}

TEST_CASE("disjunctivity scans") {
  const auto cat = interval_pattern_catalog(8);
  const auto dj = disjunctive_generator(kN);
  CHECK(disjunctivity_scan(dj.config, kN, cat, 10'000).all_found());

  const auto two_ones = CylinderPattern::make({Element{0}, Element{1}}, {});
  const std::vector<CylinderPattern> one{two_ones};
  CHECK_FALSE(disjunctivity_scan(evens(), kN, one, 100'000).witnesses[0]);

  const auto small = interval_pattern_catalog(6);
  CHECK(disjunctivity_scan(pseudorandom_config(), kN, small, 1'000'000).all_found());
  CHECK(disjunctivity_scan(dj.config, kN, small, 10'000, 1).witnesses ==
        disjunctivity_scan(dj.config, kN, small, 10'000, 4).witnesses);
}

TEST_CASE("disjunctive placements are found where they were logged") {
  for (const auto& ctx : {kN, kZ, GroupContext::lattice(2)}) {
    const auto dj = disjunctive_generator(ctx, 3);
    for (std::size_t i = 1; i < dj.placements.size(); ++i) {
      const auto& prev = dj.placements[i - 1];
      CHECK(prev.offset + prev.cubes * prev.side <= dj.placements[i].offset);
    }
    for (const auto& blk : dj.placements) {
      const int cells = dj.dim == 1 ? blk.side : blk.side * blk.side;
      for (std::uint64_t w = 0; w < (std::uint64_t{1} << cells); ++w) {
        Element g = ctx.identity();
        g[0] = dj.offset_of(blk.side, w);
        REQUIRE(cylinder_match(dj.config, ctx, dj.pattern_of(blk.side, w), g));
      }
    }
  }
}

TEST_CASE("disjunctive output is thick") {
  const auto dj = disjunctive_generator(kN);
  const auto run = CylinderPattern::make(interval(0, 15), {});
  const std::int64_t g = dj.offset_of(16, 0xFFFF);
  CHECK(cylinder_match(dj.config, kN, run, Element{g}));
}

TEST_CASE("word frequencies") {
  const auto all1 = WordPattern::make({Element{1}, Element{2}}, {true, true});
  const auto f = word_frequency(ones(), kN, all1, 100);
  CHECK(*f.max_fraction == 1.0);
  CHECK(*f.min_fraction == 1.0);
  CHECK(*word_frequency(ones(), kN, WordPattern::from_string("10"), 100).max_fraction == 0.0);

  const auto ten = word_frequency(evens(), kZ, WordPattern::from_string("10"), 50);
  CHECK(ten.phases.size() == 2);
  CHECK(*ten.max_fraction == 1.0);
  CHECK(*ten.min_fraction == 0.0);
}

TEST_CASE("packings are valid") {
  for (const auto& w : {WordPattern::from_string("101"), WordPattern::make({Element{0}, Element{2}}, {true, true})})
    for (std::int64_t phase = 0; phase < 3; ++phase) {
      CHECK(phase_packing(kN, w, 97, phase).valid());
      CHECK(phase_packing(kZ, w, 97, phase).valid());
    }
  PackingFamily bad{{0, 1}, 0, 10, {0, 1}};
  CHECK_FALSE(bad.valid());
  PackingFamily outside{{0, 1}, 0, 10, {10}};
  CHECK_FALSE(outside.valid());
}

TEST_CASE("ENA generator swings") {
  const auto one = WordPattern::from_string("1");
  const auto e = ena_generator(kN, 4, one, 3);
  CHECK(e.windows == std::vector<std::int64_t>{4, 256, 262144});
  CHECK(ena_sparsity_holds(kN, e.windows));
  for (std::size_t i = 0; i < e.windows.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    const double slack = 2.0 / std::pow(4.0, k);
    const auto wf = word_frequency(e.config, kN, one, e.windows[i]);
    if (e.match_mode[i]) {
      CHECK(*wf.max_fraction >= 1.0 - slack);
    } else {
      CHECK(*wf.min_fraction <= slack);
    }
  }
  const std::vector<WordPattern> cat{one};
  const auto stats = ena_statistics(e.config, kN, cat, e.windows);
  CHECK(stats[0].upper >= 1.0 - 2.0 / 16.0);
  CHECK(stats[0].lower <= 2.0 / 64.0);

  const auto s2 = ena_generator(kN, 2, one, 5);
  CHECK(s2.windows == std::vector<std::int64_t>{2, 16, 512, 65536, 33554432});
  const auto swing = ena_statistics(s2.config, kN, cat, s2.windows);
  CHECK(swing[0].upper >= 0.99);
  CHECK(swing[0].lower <= 0.01);
}

TEST_CASE("ENA statistics of periodic sets are flat") {
  const std::vector<WordPattern> cat{WordPattern::from_string("1")};
  const std::vector<std::int64_t> ws{100, 1000, 10000};
  const auto ev = ena_statistics(evens(), kN, cat, ws);
  CHECK(ev[0].upper == doctest::Approx(ev[0].lower));
  const auto all = ena_statistics(ones(), kN, cat, ws);
  CHECK(all[0].upper == 1.0);
  CHECK(all[0].lower == 1.0);
}

TEST_CASE("normal statistics") {
  const std::vector<std::int64_t> k{0, 1, 2}, w{1'000'000};
  const auto pr = normal_statistics(pseudorandom_config(), kN, k, w);
  CHECK(pr.expected == 0.125);
  CHECK(pr.windows.back().max_deviation <= 5e-3);
  CHECK_FALSE(pr.flagged_non_normal);

  const std::vector<std::int64_t> small{1000};
  const auto all = normal_statistics(ones(), kN, k, small);
  for (std::size_t m = 0; m < 8; ++m) CHECK(all.windows[0].frequencies[m] == doctest::Approx(m == 7 ? 1.0 : 0.0).epsilon(0.01));
  CHECK(all.flagged_non_normal);

  const auto e = ena_generator(kN, 2, WordPattern::from_string("1"), 4);
  const std::vector<std::int64_t> one{0};
  CHECK(normal_statistics(e.config, kN, one, e.windows).flagged_non_normal);
}

TEST_CASE("orbit window membership") {
  const auto shape = interval(0, 2);
  const auto self = orbit_window_membership(evens(), evens(), kN, shape, 100);
  REQUIRE(self.g);
  CHECK(*self.g == Element{0});

  const auto q = BinaryConfig::of(squarefree_oracle());
  const auto none = BinaryConfig::of(empty_set());
  const auto least = orbit_window_membership(none, q, kN, shape, 1'000'000);
  REQUIRE(least.g);
  CHECK((*least.g)[0] == 48);
  std::vector<Element> cands;
  for (std::int64_t k = 0; k < 100; ++k) cands.push_back(Element{548 + 900 * k});
  const auto crt = orbit_window_membership(none, q, kN, shape, 1'000'000, std::span<const Element>(cands));
  REQUIRE(crt.g);
  CHECK((*crt.g)[0] == 548);

  const auto pair = interval(0, 1);
  CHECK_FALSE(orbit_window_membership(ones(), evens(), kN, pair, 10'000).g);
}

TEST_CASE("syndetic extraction") {
  const std::vector<std::int64_t> lengths{4, 8, 16};
  const auto ev = syndetic_extraction(evens(), kN, lengths, 4, 100'000);
  REQUIRE(ev.success);
  CHECK(ev.max_gap == 2);
  REQUIRE(ev.window.size() == 16);
  for (std::size_t i = 1; i < ev.window.size(); ++i) CHECK(ev.window[i] != ev.window[i - 1]);

  const auto again = syndetic_extraction(periodic_extension(ev), kN, lengths, 4, 100'000);
  REQUIRE(again.success);
  CHECK(again.window == ev.window);

  const std::vector<std::int64_t> short_lengths{4, 8};
  const auto th = syndetic_extraction(factorial_blocks(), kN, short_lengths, 2, 60'000);
  REQUIRE(th.success);
  for (bool b : th.window) CHECK(b);

  const auto sq = syndetic_extraction(BinaryConfig::of(squarefree_oracle()), kN, lengths, 4, 100'000);
  CHECK_FALSE(sq.success);
  CHECK(sq.outcome == "non-ps-evidence");
}

TEST_CASE("minimal orbit gap report") {
  const auto cat = interval_pattern_catalog(3);
  for (const auto& row : minimal_orbit_gap_report(evens(), kN, cat, 10'000)) {
    if (row.cls == GapClass::Empty) continue;
    CHECK(row.cls == GapClass::BoundedGap);
    CHECK(row.max_gap <= 2);
  }
  const std::vector<CylinderPattern> two_ones{CylinderPattern::make({Element{0}, Element{1}}, {})};
  CHECK(minimal_orbit_gap_report(evens(), kN, two_ones, 1000)[0].cls == GapClass::Empty);

  const auto dj = disjunctive_generator(kN);
  const std::vector<CylinderPattern> run{CylinderPattern::make(interval(0, 7), {})};
  const auto rows = minimal_orbit_gap_report(dj.config, kN, run, 1'000'000);
  CHECK(rows[0].occurrences > 0);
  CHECK(rows[0].cls == GapClass::GrowingGap);
}
