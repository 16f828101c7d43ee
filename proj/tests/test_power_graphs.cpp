#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"

using namespace tileforge;

namespace {

TileAnalysis analysis(const AbcParams& p, std::size_t levels = 4) { return TileAnalysis::run(p, levels); }

void check_against_brute(const TileAnalysis& an, std::size_t l) {
  auto want = oracle::brute_power(an.neighbors.points, an.system, l);
  const PowerGraph& g = an.g(l);
  std::set<oracle::SetV> got;
  for (const auto& v : g.vertices()) got.insert(v.members());
  CHECK(got == want.vertices);
  std::set<std::tuple<oracle::SetV, std::size_t, oracle::SetV>> got_edges;
  for (const auto& e : g.edges()) got_edges.emplace(g.vertices()[e.src].members(), e.d, g.vertices()[e.dst].members());
  CHECK(got_edges == want.edges);
}

}  // namespace

TEST_CASE("VertexSet canonical form and text") {
  VertexSet a{IntVector{1, 1, 0}, IntVector{-1, 0, 0}};
  VertexSet b{IntVector{-1, 0, 0}, IntVector{1, 1, 0}};
  CHECK(a == b);
  CHECK(a.str() == "-1,0,0;1,1,0");
  CHECK(VertexSet::parse(a.str()) == a);
  CHECK(a.negated() == VertexSet{IntVector{1, 0, 0}, IntVector{-1, -1, 0}});
  CHECK_THROWS_AS((VertexSet{IntVector{1, 0, 0}, IntVector{1, 0, 0}}), InputError);
  CHECK_THROWS_AS((VertexSet{IntVector{0, 0, 0}}), InputError);
  CHECK(a.includes(VertexSet{IntVector{1, 1, 0}}));
}

TEST_CASE("power graphs match the definition on all subsets") {
  for (auto p : {AbcParams(1, 2, 4), AbcParams(2, 3, 5), AbcParams(3, 4, 10)}) {
    auto an = analysis(p);
    for (std::size_t l = 1; l <= 4; ++l) check_against_brute(an, l);
  }
  for (auto p : {AbcParams(1, 1, 2), AbcParams(1, 2, 3), AbcParams(2, 2, 3)}) {
    auto an = analysis(p, 3);
    for (std::size_t l = 1; l <= 3; ++l) check_against_brute(an, l);
  }
}

TEST_CASE("14-neighbor level sizes") {
  for (Int c = 3; c <= 9; ++c)
    for (Int b = 2; b < c; ++b)
      for (Int a = 1; a < b; ++a) {
        const AbcParams p(a, b, c);
        if (!predicts_14(p)) continue;
        auto an = analysis(p);
        CHECK(an.g(2).vertex_count() == 36);
        REQUIRE(an.g(3).vertex_count() == 24);
        for (std::size_t v = 0; v < 24; ++v) CHECK(an.g(3).out_degree(v) == 1);
        CHECK(an.g(4).empty());
        CHECK(has_complement_symmetry(an.g(2)));
        CHECK(has_complement_symmetry(an.g(3)));
      }
}

TEST_CASE("emptiness of the next level without building it") {
  for (Int c = 2; c <= 7; ++c)
    for (Int b = 1; b < c; ++b)
      for (Int a = 1; a <= b; ++a) {
        const AbcParams p(a, b, c);
        auto full = analysis(p, 4);
        auto part = analysis(p, 3);
        CHECK_MESSAGE(part.tower.next_level_nonempty() == !full.g(4).empty(), p.str());
        auto two = analysis(p, 2);
        CHECK(two.tower.next_level_nonempty() == !full.g(3).empty());
      }
}

TEST_CASE("power_graph beyond the last nonempty level is empty") {
  auto an = analysis(AbcParams(1, 2, 4));
  auto g5 = power_graph(an.neighbor_graph, 5);
  CHECK(g5.empty());
  CHECK(g5.level() == 5);
  CHECK_THROWS_AS(power_graph(an.neighbor_graph, 0), InputError);
}

TEST_CASE("intersection_vertex") {
  const AbcParams p(1, 2, 4);
  auto an = analysis(p);
  auto b1 = instantiate({-sym::Q, sym::N - sym::Q}, p);
  CHECK(intersection_vertex(an.tower, b1, IntVector{0, 0, 0}, b1, IntVector{0, 0, 0}) == b1);
  auto b2 = instantiate({-sym::P, sym::N - sym::Q}, p);
  auto hit = intersection_vertex(an.tower, b1, IntVector{0, 0, 0}, b2, IntVector{0, 0, 0});
  REQUIRE(hit);
  CHECK(*hit == instantiate({-sym::P, -sym::Q, sym::N - sym::Q}, p));
  CHECK(an.g(3).contains(*hit));
  CHECK_FALSE(intersection_vertex(an.tower, b1, IntVector{0, 0, 0}, b1, IntVector{5, 5, 5}));
}

TEST_CASE("unique walks in G3") {
  const AbcParams p(1, 2, 4);
  auto an = analysis(p);
  auto start = instantiate({sym::P, sym::Q, sym::N}, p);
  auto w = unique_walk(an.g(3), start);
  REQUIRE_FALSE(w.period.empty());
  CHECK(w.at(0) == 0);
  const PowerGraph& g3 = an.g(3);
  auto e = g3.out_begin(*g3.index_of(start));
  CHECK(g3.vertices()[e->dst] == instantiate({-sym::P, sym::Q - sym::P, sym::N - sym::P}, p));

  for (const auto& v : g3.vertices()) {
    auto u = unique_walk(g3, v);
    CHECK(u.preperiod.size() + u.period.size() <= 24);
  }
}

TEST_CASE("unique_walk refuses branching vertices") {
  auto an = analysis(AbcParams(1, 2, 4));
  const PowerGraph& g2 = an.g(2);
  std::size_t branching = g2.vertex_count();
  for (std::size_t v = 0; v < g2.vertex_count(); ++v)
    if (g2.out_degree(v) >= 3) branching = v;
  REQUIRE(branching < g2.vertex_count());
  CHECK_THROWS_AS(unique_walk(g2, g2.vertices()[branching]), WalkError);
  CHECK_THROWS_AS(unique_walk(g2, VertexSet{IntVector{7, 7, 7}}), InputError);
}

TEST_CASE("DigitWord canonical form is minimal and describes the same sequence") {
  oracle::Gen g(31);
  for (int t = 0; t < 3000; ++t) {
    DigitWord w;
    const auto pre = g.range(0, 4), per = g.range(1, 3), reps = g.range(1, 3);
    for (Int i = 0; i < pre; ++i) w.preperiod.push_back(static_cast<std::size_t>(g.range(0, 1)));
    std::vector<std::size_t> base;
    for (Int i = 0; i < per; ++i) base.push_back(static_cast<std::size_t>(g.range(0, 1)));
    for (Int r = 0; r < reps; ++r) w.period.insert(w.period.end(), base.begin(), base.end());
    auto c = w.canonical();
    for (std::size_t i = 0; i < 60; ++i) REQUIRE(c.at(i) == w.at(i));
    // shortest (preperiod, period) by brute force
    std::size_t best_pre = 99, best_per = 99;
    for (std::size_t pp = 0; pp <= w.preperiod.size() && best_pre == 99; ++pp)
      for (std::size_t q = 1; q <= w.period.size(); ++q) {
        bool ok = true;
        for (std::size_t i = pp; i < 60 && ok; ++i) ok = w.at(i) == w.at(i + q);
        if (ok) {
          best_pre = pp;
          best_per = q;
          break;
        }
      }
    CHECK(c.preperiod.size() == best_pre);
    CHECK(c.period.size() == best_per);
    CHECK(c.canonical() == c);
  }
  CHECK_THROWS_AS(DigitWord{}.canonical(), InputError);
}

TEST_CASE("least rotation against all rotations") {
  oracle::Gen g(32);
  for (int t = 0; t < 3000; ++t) {
    std::vector<std::size_t> w(static_cast<std::size_t>(g.range(1, 9)));
    for (auto& x : w) x = static_cast<std::size_t>(g.range(0, 2));
    CHECK(least_rotation(w) == oracle::brute_least_rotation(w));
  }
  CHECK(least_rotation({}).empty());
}

TEST_CASE("walk points") {
  auto sys = companion_form(AbcParams(1, 2, 4));
  CHECK(walk_point(DigitWord{{}, {0}}, sys) == RationalVector(IntVector{0, 0, 0}));
  auto x = walk_point(DigitWord{{}, {1}}, sys);
  // M x - x = (1,0,0)
  RationalVector mx(3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) mx[r] = mx[r] + Rational(sys.matrix.at(r, c)) * x[c];
  CHECK(mx - x == RationalVector(IntVector{1, 0, 0}));
}

TEST_CASE("the 24 four-fold points") {
  for (auto p : {AbcParams(1, 2, 4), AbcParams(2, 3, 5), AbcParams(3, 4, 10)}) {
    auto an = analysis(p);
    std::set<RationalVector> seen;
    for (const auto& v : an.g(3).vertices()) {
      auto w = unique_walk(an.g(3), v);
      auto x = walk_point(w, an.system);
      seen.insert(x);
      // fixed point of the periodic part, then the preperiod
      auto y = walk_point(DigitWord{{}, w.period}, an.system);
      CHECK(apply_maps(w.period, y, an.system) == y);
      CHECK(apply_maps(w.preperiod, y, an.system) == x);
      auto f = oracle::float_series(an.system, w, 200);
      for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(f[i] - x[i].to_double()) < 1e-9);
      // x lies in T and in T + a for every a in the vertex
      for (const auto& a : v.members()) CHECK(oracle::admits_walk(an.neighbor_graph, a, w));
    }
    CHECK(seen.size() == 24);
  }
}

TEST_CASE("subdivision") {
  const AbcParams p(1, 2, 4);
  auto an = analysis(p);
  auto v = instantiate({sym::Q - sym::P, sym::N - sym::P}, p);
  SubtileRef root{1, {}, v};
  CHECK(subdivide(root, 0, an.g(2)) == std::vector<SubtileRef>{root});
  auto kids = subdivide(root, 1, an.g(2));
  // rows needing A >= 2 drop out for A = 1
  REQUIRE(kids.size() == 1);
  CHECK(kids[0].word == std::vector<std::size_t>{0});
  CHECK(kids[0].vertex == instantiate({-sym::Q, sym::N - sym::Q}, p));

  const AbcParams q(2, 3, 5);
  auto an2 = analysis(q);
  auto kids2 = subdivide(SubtileRef{1, {}, instantiate({sym::Q - sym::P, sym::N - sym::P}, q)}, 1, an2.g(2));
  std::size_t to_mq = 0;
  for (const auto& k : kids2)
    if (k.vertex == instantiate({-sym::Q, sym::N - sym::Q}, q)) {
      ++to_mq;
      CHECK(k.word[0] <= 1);
    }
  CHECK(to_mq == 2);
  CHECK(kids2.size() > 2);

  for (const auto& k : subdivide(root, 3, an.g(2))) {
    CHECK(k.depth == 4);
    CHECK(k.word.size() == 3);
    CHECK(an.g(2).contains(k.vertex));
  }
}
