#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "discordant/constructions.hpp"
#include "discordant/detectors.hpp"
#include "discordant/errors.hpp"
#include "discordant/folner.hpp"
#include "json.hpp"

using namespace discordant;

namespace {

const GroupContext kZ = GroupContext::integers();
const GroupContext kN = GroupContext::naturals();

// ⋃ [n!, n! + n]
SetOracle factorial_blocks() {
  return {[](const Element& e) {
            const std::int64_t x = e[0];
            std::int64_t f = 1;
            for (std::int64_t n = 1; n <= 20 && f <= x; ++n) {
              f *= n;
              if (x >= f && x <= f + n) return true;
            }
            return false;
          },
          "factorial-blocks", std::nullopt};
}

std::vector<std::vector<Element>> segments(std::int64_t lo, std::int64_t hi) {
  std::vector<std::vector<Element>> out;
  for (std::int64_t m = lo; m <= hi; ++m) out.push_back(initial_segment(m));
  return out;
}

}  // namespace

TEST_CASE("thickness of simple sets") {
  const auto evens = thickness_profile(residue_class(2), kZ, 1000);
  CHECK(evens.max_shape_index == 1);
  CHECK(evens.stalled());

  const auto all = thickness_profile(whole_set(), kZ, 1000);
  CHECK(all.saturated());
  CHECK(all.max_shape_index == all.max_probeable);

  const auto q = squarefree_oracle();
  CHECK(thickness_profile(q, kN, 1'000'000).max_shape_index == 3);
  const auto qc = complement(q);
  CHECK(thickness_profile_in(qc, 1, 241).max_shape_index == 3);
  const auto reach = thickness_profile_in(qc, 1, 300);
  CHECK(reach.max_shape_index == 4);
  REQUIRE(reach.witness);
  CHECK((*reach.witness)[0] == 242);
}

TEST_CASE("thickness witnesses verify") {
  const auto a = factorial_blocks();
  const auto p = thickness_profile(a, kN, 10'000);
  REQUIRE(p.witness);
  for (std::int64_t i = 0; i < p.max_shape_index; ++i) CHECK(a.contains(Element{(*p.witness)[0] + i}));
  CHECK(p.max_shape_index == 8);

  const auto cube = thickness_profile(coprime_tuple_oracle(std::vector<BSequence>{BSequence({2}), BSequence({2})}),
                                      GroupContext::lattice(2), 10'000);
  CHECK(cube.max_shape_index == 1);
  CHECK_THROWS(thickness_profile(whole_set(), GroupContext::heisenberg(), 100));
}

TEST_CASE("syndeticity checks") {
  const auto h01 = initial_segment(2);
  for (std::int64_t n : {1, 10, 1000}) CHECK(syndeticity_check(residue_class(2), kZ, h01, n).covered());

  const auto fail = syndeticity_check(squarefree_oracle(), kN, initial_segment(4), 300);
  REQUIRE(fail.failure_witness);
  CHECK((*fail.failure_witness)[0] == 242);

  const auto none = syndeticity_check(empty_set(), kN, initial_segment(3), 50);
  REQUIRE(none.failure_witness);
  CHECK((*none.failure_witness)[0] == 1);
}

TEST_CASE("piecewise syndeticity evidence") {
  const auto h = segments(2, 2);
  CHECK(ps_evidence(residue_class(2), kZ, h, 10'000).summary == "ps-evidence");

  const auto sq = ps_evidence(squarefree_oracle(), kN, segments(1, 6), 100'000);
  CHECK(sq.summary == "non-ps-evidence");
  for (const auto& e : sq.entries) CHECK(e.grade == EvidenceGrade::Stalled);

  const auto straus = straus_set(StrausParams::geometric(8, 2, 40));
  const auto st = ps_evidence(straus, kN, segments(5, 5), 1'000'000);
  CHECK(st.entries[0].grade == EvidenceGrade::Stalled);
  CHECK(st.entries[0].profile.max_shape_index == 127);
}

TEST_CASE("enlarging H never shrinks the profile") {
  const auto q = squarefree_oracle();
  const auto ev = ps_evidence(q, kN, segments(1, 6), 50'000);
  for (std::size_t i = 1; i < ev.entries.size(); ++i)
    CHECK(ev.entries[i].profile.max_shape_index >= ev.entries[i - 1].profile.max_shape_index);
}

TEST_CASE("CRT witnesses") {
  const auto q = squarefree_oracle();
  const std::vector<std::int64_t> f3{0, 1, 2}, m3{4, 9, 25};
  const auto w = crt_witness(f3, m3);
  CHECK(w.x == 548);
  CHECK(w.modulus == 900);
  CHECK(w.verify(q));

  const auto w1 = crt_witness(std::vector<std::int64_t>{0}, std::vector<std::int64_t>{4});
  CHECK(w1.x == 0);
  CHECK(w1.modulus == 4);
  const auto w2 = crt_witness(std::vector<std::int64_t>{0, 1}, std::vector<std::int64_t>{4, 9});
  CHECK(w2.x == 8);
  CHECK(w2.modulus == 36);
  CHECK(w2.verify(q));

  CHECK_THROWS_AS(crt_witness(std::vector<std::int64_t>{0, 1}, std::vector<std::int64_t>{4, 6}), ArgumentError);

  const auto j = nlohmann::json::parse(w.to_json());
  CHECK(j["x"] == 548);
  CHECK(j["N"] == 900);
  CHECK(j["shifts"].size() == 3);
  CHECK(j["verifiedRange"][1] == 10);
}

TEST_CASE("CRT witnesses for larger shift sets verify") {
  const auto q = squarefree_oracle();
  const std::vector<std::int64_t> mods{4, 9, 25, 49, 121, 169};
  for (std::size_t k = 1; k <= mods.size(); ++k) {
    std::vector<std::int64_t> f;
    for (std::size_t i = 0; i < k; ++i) f.push_back(static_cast<std::int64_t>(i));
    CHECK(crt_witness(f, mods).verify(q));
  }
}

TEST_CASE("S and T decomposition") {
  const auto ev = st_decompose(residue_class(2), kZ, initial_segment(1), 100);
  CHECK(ev.identity_holds);
  for (std::int64_t x = -20; x <= 20; ++x) CHECK(ev.s.contains(Element{x}));

  const auto sq = st_decompose(squarefree_oracle(), kN, initial_segment(4), 10'000);
  CHECK(sq.identity_holds);
  CHECK(sq.checked == 10'000);

  const auto e = st_decompose(empty_set(), kZ, initial_segment(2), 50);
  CHECK(e.identity_holds);
  for (std::int64_t x = -20; x <= 20; ++x) {
    CHECK_FALSE(e.t.contains(Element{x}));
    CHECK(e.s.contains(Element{x}));
  }
}

TEST_CASE("syndeticity and complement thickness are dual") {
  const auto evens = duality_check(residue_class(2), kZ, segments(1, 3), 500);
  CHECK(evens.all_consistent());
  CHECK(evens.rows[1].syndetic_on_window);

  const auto sq = duality_check(squarefree_oracle(), kN, segments(4, 4), 300);
  CHECK(sq.all_consistent());
  REQUIRE(sq.rows[0].complement_translate);
  CHECK((*sq.rows[0].complement_translate)[0] == 242);

  const auto thick = duality_check(complement(factorial_blocks()), kN, segments(1, 7), 10'000);
  CHECK(thick.all_consistent());
  for (const auto& r : thick.rows) CHECK_FALSE(r.syndetic_on_window);
}

TEST_CASE("partition experiments") {
  const auto parity = [](const Element& e) { return static_cast<int>(((e[0] % 2) + 2) % 2) + 1; };
  const auto h = segments(2, 3);
  const auto z = partition_experiment(whole_set(), kZ, parity, 2, h, 5000);
  REQUIRE(z.classes.size() == 2);
  for (const auto& c : z.classes) CHECK(c.summary == "ps-evidence");

  const auto mod4 = [](const Element& e) { return ((e[0] % 4) + 4) % 4 == 0 ? 1 : 2; };
  const auto ev = partition_experiment(residue_class(2), kZ, mod4, 2, segments(4, 4), 5000);
  for (const auto& c : ev.classes) CHECK(c.summary == "ps-evidence");

  const auto blocks = [](const Element& e) {
    std::int64_t f = 1, n = 1;
    while (f * (n + 1) <= e[0]) f *= ++n;
    return static_cast<int>(n % 2) + 1;
  };
  const auto th = partition_experiment(factorial_blocks(), kN, blocks, 2, segments(1, 1), 60'000);
  const auto& best = th.classes[th.strongest_class];
  CHECK(best.entries[0].grade == EvidenceGrade::Growing);
}
