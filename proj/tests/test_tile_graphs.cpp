#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

using namespace tileforge;

namespace {

std::vector<IntVector> pm(std::initializer_list<IntVector> xs) {
  std::vector<IntVector> out;
  for (const auto& x : xs) {
    out.push_back(x);
    out.push_back(-x);
  }
  return canonical_set(out);
}

std::vector<IntVector> neighbors_of(const AbcParams& p) {
  auto sys = companion_form(p);
  return neighbor_set(contact_set(sys, default_basis(p)), sys).points;
}

}  // namespace

TEST_CASE("build_graph on tiny vertex sets") {
  auto sys = companion_form(AbcParams(1, 2, 4));
  auto g0 = build_graph({IntVector{0, 0, 0}}, sys);
  REQUIRE(g0.edges().size() == 4);
  for (const auto& e : g0.edges()) CHECK(e.d == e.d_prime);

  auto g1 = build_graph({IntVector{0, 0, 0}, IntVector{1, 0, 0}}, sys);
  for (std::size_t d = 0; d < 3; ++d) CHECK(g1.has_edge(IntVector{0, 0, 0}, d, d + 1, IntVector{1, 0, 0}));
  CHECK_FALSE(g1.has_edge(IntVector{0, 0, 0}, 3, 0, IntVector{1, 0, 0}));

  auto empty = build_graph({}, sys);
  CHECK(empty.vertex_count() == 0);
  CHECK(empty.edges().empty());
}

TEST_CASE("build_graph matches a pairwise search") {
  oracle::Gen g(21);
  for (int t = 0; t < 60; ++t) {
    auto sys = companion_form(g.abc(8));
    std::vector<IntVector> pts;
    for (int i = 0; i < 25; ++i) pts.push_back(g.vec(3, -2, 2));
    pts = canonical_set(pts);
    auto gr = build_graph(pts, sys);
    auto want = oracle::brute_edges(pts, sys);
    CHECK(gr.edges().size() == want.size());
    for (const auto& [a, d, dp, b] : want) CHECK(gr.has_edge(a, d, dp, b));
    for (const auto& e : gr.edges())
      CHECK(oracle::mul(sys.matrix, gr.vertices()[e.src]) + sys.digits[e.d_prime] - sys.digits[e.d] == gr.vertices()[e.dst]);
  }
}

TEST_CASE("reduce removes cascading sinks") {
  auto sys = companion_form(AbcParams(1, 2, 4));
  auto loops = reduce(build_graph({IntVector{0, 0, 0}}, sys));
  CHECK(loops.vertex_count() == 1);
  CHECK(loops.edges().size() == 4);

  BoundaryGraph chain(sys, {IntVector{1, 0, 0}, IntVector{2, 0, 0}}, {LabeledEdge{0, 1, 0, 0}});
  CHECK(reduce(chain).vertex_count() == 0);
}

TEST_CASE("Red(R+R) keeps the extra cycle when A = B") {
  const AbcParams p(1, 1, 2);
  auto sys = companion_form(p);
  auto r = contact_set(sys, default_basis(p)).points;
  auto red = reduced_set(minkowski_sum(r, r), sys);
  const IntVector s1{2 * p.A - 1, p.A + 1, 1}, s2{-1, p.A - 1, 1};
  for (const auto& v : {s1, -s1, s2, -s2}) CHECK(std::binary_search(red.begin(), red.end(), v));
  CHECK(red.size() >= 17);
}

TEST_CASE("contact set for (1,2,4)") {
  const AbcParams p(1, 2, 4);
  auto c = contact_set(companion_form(p), default_basis(p));
  auto want = pm({IntVector{1, 0, 0}, IntVector{0, 1, 0}, IntVector{1, 1, 0}, IntVector{1, 0, 1}, IntVector{2, 0, 1},
                  IntVector{1, 1, 1}, IntVector{2, 1, 1}});
  want.push_back(IntVector{0, 0, 0});
  CHECK(c.points == canonical_set(want));
  REQUIRE(c.round_sizes.size() >= 2);
  CHECK(c.round_sizes.back() == c.round_sizes[c.round_sizes.size() - 2]);
}

TEST_CASE("contact sets have 13 points when A = B and 15 when A < B") {
  for (Int c = 2; c <= 9; ++c)
    for (Int b = 1; b < c; ++b)
      for (Int a = 1; a <= b; ++a) {
        const AbcParams p(a, b, c);
        auto cs = contact_set(companion_form(p), default_basis(p));
        CHECK_MESSAGE(cs.points.size() == (a == b ? 13u : 15u), p.str());
        // stabilizes one round after the set stops growing
        CHECK(cs.round_sizes.size() == 4);
      }
}

TEST_CASE("contact set is sink-free and symmetric") {
  oracle::Gen g(22);
  for (int t = 0; t < 40; ++t) {
    auto p = g.abc(12);
    auto sys = companion_form(p);
    auto r = contact_set(sys, default_basis(p)).points;
    CHECK(reduced_set(r, sys) == r);
    std::vector<IntVector> neg;
    for (const auto& v : r) neg.push_back(-v);
    CHECK(canonical_set(neg) == r);
    CHECK(has_negation_symmetry(build_graph(r, sys)));
  }
}

TEST_CASE("neighbor set for (1,2,4)") {
  auto s = neighbors_of(AbcParams(1, 2, 4));
  // P, Q, N, Q-P, N-Q, N-P, N-Q+P with P=(1,0,0), Q=(1,1,0), N=(2,1,1)
  CHECK(s == pm({IntVector{1, 0, 0}, IntVector{1, 1, 0}, IntVector{2, 1, 1}, IntVector{0, 1, 0}, IntVector{1, 0, 1},
                 IntVector{1, 1, 1}, IntVector{2, 0, 1}}));
  CHECK(s.size() == 14);
}

TEST_CASE("neighbor set sizes away from the 14-neighbor family") {
  CHECK(neighbors_of(AbcParams(1, 1, 2)).size() >= 16);
  CHECK(neighbors_of(AbcParams(1, 2, 3)).size() == 24);
}

TEST_CASE("neighbor set equals Red of a box") {
  for (Int c = 2; c <= 6; ++c)
    for (Int b = 1; b < c; ++b)
      for (Int a = 1; a <= b; ++a) {
        const AbcParams p(a, b, c);
        auto sys = companion_form(p);
        auto s = neighbors_of(p);
        Int k = 0;
        for (const auto& v : s)
          for (std::size_t i = 0; i < 3; ++i) k = std::max(k, std::abs(v[i]));
        // Red of any box containing S is S; the larger box guards against S missing far points
        auto box = oracle::box_neighbors(sys, k + 1);
        CHECK_MESSAGE(s == box, p.str());
        CHECK(oracle::box_neighbors(sys, k + 2) == box);
      }
}

TEST_CASE("neighbor set does not depend on the seed basis") {
  oracle::Gen g(23);
  for (int t = 0; t < 40; ++t) {
    auto p = g.abc(10);
    auto sys = companion_form(p);
    auto base = neighbors_of(p);
    // random unimodular change of basis by elementary column moves
    auto basis = default_basis(p);
    for (int k = 0; k < 4; ++k) {
      std::size_t i = static_cast<std::size_t>(g.range(0, 2)), j = static_cast<std::size_t>(g.range(0, 2));
      if (i == j) continue;
      basis[i] = basis[i] + basis[j].scaled(g.range(-1, 1));
      if (g.range(0, 1)) basis[i] = -basis[i];
    }
    auto other = neighbor_set(contact_set(sys, basis), sys).points;
    CHECK_MESSAGE(other == base, p.str());
    std::vector<IntVector> unit{IntVector{1, 0, 0}, IntVector{0, 1, 0}, IntVector{0, 0, 1}};
    CHECK(neighbor_set(contact_set(sys, unit), sys).points == base);
  }
}

TEST_CASE("dependent basis is rejected") {
  auto sys = companion_form(AbcParams(1, 2, 4));
  CHECK_THROWS_AS(contact_set(sys, {IntVector{1, 0, 0}, IntVector{2, 0, 0}, IntVector{0, 0, 1}}), InputError);
}

TEST_CASE("neighbor graph has no sinks and is symmetric") {
  oracle::Gen g(24);
  for (int t = 0; t < 30; ++t) {
    auto p = g.abc(10);
    auto sys = companion_form(p);
    auto s = neighbors_of(p);
    auto gs = build_graph(s, sys);
    for (std::size_t v = 0; v < gs.vertex_count(); ++v) CHECK(gs.out_degree(v) > 0);
    CHECK(has_negation_symmetry(gs));
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK_FALSE(std::binary_search(s.begin(), s.end(), IntVector{0, 0, 0}));
  }
}

TEST_CASE("R+R has 65 points when A < B") {
  for (Int c = 3; c <= 10; ++c)
    for (Int b = 2; b < c; ++b)
      for (Int a = 1; a < b; ++a) {
        const AbcParams p(a, b, c);
        auto r = contact_set(companion_form(p), default_basis(p)).points;
        CHECK_MESSAGE(minkowski_sum(r, r).size() == 65, p.str());
      }
}
