#include "bridgesurf/boundary.hpp"
#include "bridgesurf/error.hpp"
#include "fixtures.hpp"
#include "torus_gen.hpp"

#include <doctest.h>

using namespace bsurf;

using torus_gen::class_gcd;
using torus_gen::random_split;
using torus_gen::replay;

namespace {
const auto& kBaseWords = torus_gen::base_words();
}  // namespace

TEST_CASE("base torus is the three-edge form with nothing to contract") {
  auto t = base_torus();
  CHECK(t.counts() == std::array<int, 3>{1, 3, 2});
  CHECK(contractible_edges(t).empty());
  for (const auto& w : kBaseWords) CHECK(is_valid_word(t, w));
  CHECK_THROWS_AS(contract_edge(t, 0, kBaseWords[0]), Error);
  auto mb = meridional_bound(t, kBaseWords[0]);
  CHECK(mb.k == 0);
  CHECK(mb.u == 2);
}

TEST_CASE("normalization removes backtracks and is idempotent") {
  auto t = base_torus();
  CurveWord back{{0, 1}, {1, 2}};
  CHECK(is_valid_word(t, back));
  CHECK(normalize_curve(t, back).empty());
  CurveWord w{{0, 1}, {1, 2}, {0, 1}, {1, 0}};
  auto n = normalize_curve(t, w);
  CHECK(n.size() == 2);
  CHECK(normalize_curve(t, n) == n);
  CHECK_THROWS_AS(normalize_curve(t, {{0, 1}, {0, 1}}), Error);
}

TEST_CASE("cusp torus of the figure-eight complement") {
  auto f = load_fixture("m004.json");
  auto t = cusp_torus(f.tri);
  CHECK(t.counts() == std::array<int, 3>{4, 12, 8});
  REQUIRE(f.meridian);
  auto w = cusp_word(f.tri, t, *f.meridian);
  CHECK(w.size() == f.meridian->size());
  auto mb = meridional_bound(t, w);
  CHECK(mb.standard_terminal);
  CHECK(mb.k == 3);
  CHECK(mb.u == BigInt(mb.n) * 64);
  CHECK(mb.coarse == BigInt(mb.input_length) << 24);
  CHECK(mb.u >= mb.input_length);
  CHECK(mb.trace.size() == 3);
}

TEST_CASE("cusp tori of all fixtures contract to the standard form") {
  for (auto name : {"m003.json", "m004.json", "structureless.json"}) {
    auto f = load_fixture(name);
    auto t = cusp_torus(f.tri);
    auto mb = meridional_bound(t, cusp_word(f.tri, t, *f.meridian));
    CHECK(mb.standard_terminal);
    CHECK(mb.u >= mb.n);
    CHECK(mb.u >= mb.input_length);
  }
}

TEST_CASE("a split followed by contracting the new edge restores the counts") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto w = kBaseWords[trial % kBaseWords.size()];
    auto mv = random_split(rng, 1 + trial % 4, w);
    auto counts = mv.torus.counts();
    const int e = mv.torus.edges - 1;
    auto cands = contractible_edges(mv.torus);
    REQUIRE(std::find(cands.begin(), cands.end(), e) != cands.end());
    auto back = contract_edge(mv.torus, e, mv.word);
    CHECK(back.torus.counts() == std::array<int, 3>{counts[0] - 1, counts[1] - 3, counts[2] - 2});
    CHECK(is_valid_word(back.torus, back.word));
    CHECK(normalize_curve(back.torus, back.word) == back.word);
  }
}

TEST_CASE("after one split the new edge is contractible and no loop is") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    auto mv = random_split(rng, 1, kBaseWords[0]);
    auto cands = contractible_edges(mv.torus);
    CHECK(std::find(cands.begin(), cands.end(), mv.torus.edges - 1) != cands.end());
    for (int e : cands)
      for (const auto& tr : mv.torus.triangles)
        for (int k = 0; k < 3; ++k)
          if (tr.edge[k] == e) CHECK(tr.vertex[k] != tr.vertex[(k + 1) % 3]);
  }
}

TEST_CASE("vertex splits at most add one crossing per slot edge crossing") {
  std::mt19937_64 rng(5);
  auto mv = random_split(rng, 3, kBaseWords[3]);
  CHECK(mv.torus.counts() == std::array<int, 3>{4, 12, 8});
  CHECK(is_valid_word(mv.torus, mv.word));
  CHECK(mv.word.size() >= kBaseWords[3].size());
}

TEST_CASE("fifty generated tori: greedy contraction bounds the meridian") {
  std::mt19937_64 rng(2024);
  int deviations = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto w = kBaseWords[trial % kBaseWords.size()];
    auto mv = random_split(rng, 1 + trial % 6, w);
    auto mb = meridional_bound(mv.torus, mv.word);
    if (!mb.standard_terminal) ++deviations;
    CHECK(mb.u >= mb.n);
    CHECK(mb.u >= mb.input_length);
    CHECK(mb.k == int(mb.trace.size()));
    if (mb.standard_terminal) CHECK(class_gcd(base_torus(), w) == class_gcd(replay(mv.torus, mv.word, mb), mb.trace.back().word));
  }
  CHECK(deviations == 0);
}

TEST_CASE("bound rejects words that normalize away") {
  auto t = base_torus();
  CHECK_THROWS_AS(meridional_bound(t, {{0, 1}, {1, 2}}), Error);
}

TEST_CASE("standard position sweep counts signed windings") {
  auto t = base_torus();
  StandardPosition p{{Rational(0)}, {Rational(1), Rational(-2), Rational(3)}};
  CHECK(scan_standard_position(t, p) == 6);
  p.edge_delta[1] = Rational(1, 2);
  CHECK_THROWS_AS(scan_standard_position(t, p), Error);
  p.edge_delta[1] = 0;
  CHECK_THROWS_AS(scan_standard_position(t, p), Error);

  // two vertices at 0 and 1/2; the sweep sees different counts per interval
  std::mt19937_64 rng(1);
  auto mv = random_split(rng, 1, kBaseWords[0]);
  REQUIRE(mv.torus.vertices == 2);
  StandardPosition q;
  q.vertex_coord = {Rational(0), Rational(1, 2)};
  std::vector<std::array<int, 2>> ends(mv.torus.edges, {-1, -1});
  for (const auto& tr : mv.torus.triangles)
    for (int k = 0; k < 3; ++k)
      if (ends[tr.edge[k]][0] < 0) ends[tr.edge[k]] = {tr.vertex[k], tr.vertex[(k + 1) % 3]};
  for (int e = 0; e < mv.torus.edges; ++e) {
    Rational d = q.vertex_coord[ends[e][1]] - q.vertex_coord[ends[e][0]];
    q.edge_delta.push_back(d == 0 ? Rational(1) : d);
  }
  // loops wind once; each (1/2)-edge crosses one of the two intervals
  std::int64_t loops = 0, halves = 0;
  for (auto& d : q.edge_delta) (d == 1 ? loops : halves) += 1;
  auto got = scan_standard_position(mv.torus, q);
  CHECK(got >= loops);
  CHECK(got <= loops + halves);
}
