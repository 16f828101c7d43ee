#pragma once

#include <array>
#include <string>
#include <vector>

#include "tileforge/power_graphs.hpp"

namespace tileforge {

bool predicts_14(const AbcParams& p);

/// k + a*A + b*B + c*C
struct Affine {
  Int k = 0, a = 0, b = 0, c = 0;
  constexpr Int at(const AbcParams& p) const { return k + a * p.A + b * p.B + c * p.C; }
  friend constexpr Affine operator+(Affine x, Affine y) { return {x.k + y.k, x.a + y.a, x.b + y.b, x.c + y.c}; }
  friend constexpr Affine operator-(Affine x, Affine y) { return {x.k - y.k, x.a - y.a, x.b - y.b, x.c - y.c}; }
  friend constexpr Affine operator-(Affine x) { return {-x.k, -x.a, -x.b, -x.c}; }
  friend constexpr Affine operator+(Affine x, Int n) { return {x.k + n, x.a, x.b, x.c}; }
  friend constexpr Affine operator-(Affine x, Int n) { return {x.k - n, x.a, x.b, x.c}; }
  friend constexpr Affine operator*(Int n, Affine x) { return {n * x.k, n * x.a, n * x.b, n * x.c}; }
};

namespace affine {
inline constexpr Affine K(Int n) { return {n, 0, 0, 0}; }
inline constexpr Affine A{0, 1, 0, 0};
inline constexpr Affine B{0, 0, 1, 0};
inline constexpr Affine C{0, 0, 0, 1};
}  // namespace affine

struct AffineVec {
  Affine x, y, z;
  IntVector at(const AbcParams& p) const { return IntVector{x.at(p), y.at(p), z.at(p)}; }
  constexpr AffineVec operator-() const { return {-x, -y, -z}; }
};

enum class Guard { none, a_at_least_2, b_at_least_2, a_ne_b };
bool holds(Guard g, const AbcParams& p);

/// p*P + q*Q + n*N with P=(1,0,0), Q=(A,1,0), N=(B,A,1).
struct Sym {
  int p = 0, q = 0, n = 0;
  IntVector at(const AbcParams& prm) const;
  std::string name() const;
  friend constexpr Sym operator+(Sym x, Sym y) { return {x.p + y.p, x.q + y.q, x.n + y.n}; }
  friend constexpr Sym operator-(Sym x, Sym y) { return {x.p - y.p, x.q - y.q, x.n - y.n}; }
  friend constexpr Sym operator-(Sym x) { return {-x.p, -x.q, -x.n}; }
  constexpr bool operator==(const Sym&) const = default;
};

namespace sym {
inline constexpr Sym P{1, 0, 0};
inline constexpr Sym Q{0, 1, 0};
inline constexpr Sym N{0, 0, 1};
}  // namespace sym

/// The seven classes ±P, ±Q, ±N, ±(Q-P), ±(N-Q), ±(N-P), ±(N-Q+P).
const std::array<Sym, 14>& fourteen_symbols();
std::vector<IntVector> fourteen_neighbors(const AbcParams& p);
VertexSet instantiate(const std::vector<Sym>& s, const AbcParams& p);

struct LatticeEdge {
  IntVector src, dst;
  std::size_t d, d_prime;
  auto operator<=>(const LatticeEdge&) const = default;
};

struct SetEdge {
  VertexSet src;
  std::size_t d;
  VertexSet dst;
  auto operator<=>(const SetEdge&) const = default;
};

std::vector<LatticeEdge> lattice_edges(const BoundaryGraph& g);
std::vector<SetEdge> set_edges(const PowerGraph& g);

// Parametric table rows.
struct ContactRow {
  AffineVec src, dst;
  Affine lo, hi, shift;  // labels d|d+shift for d in lo..hi
  Guard guard;
};

struct PairRow {
  std::array<Sym, 2> src, dst;
  Affine lo, hi;
  Guard guard;
};

struct QuadCycleRow {
  std::array<std::array<Sym, 3>, 4> vertices;
  std::array<Affine, 4> labels;  // labels[i] on the edge vertices[i] -> vertices[i+1 mod 4]
};

/// M B_alpha = union over i<=h of (B_x u B_y) + iP, then B_x + (h+1)P, in this order.
struct OrderedEquation {
  Sym alpha, x, y;
  Affine h;
};

const std::vector<ContactRow>& contact_table();
const std::vector<PairRow>& triple_table();
const std::vector<QuadCycleRow>& quadruple_cycles();
const std::vector<OrderedEquation>& ordered_equations();
const std::array<Sym, 14>& face_order();

std::vector<IntVector> expected_contact_set(const AbcParams& p);
std::vector<LatticeEdge> expected_contact_graph(const AbcParams& p);
std::vector<SetEdge> expected_g2(const AbcParams& p);
std::vector<SetEdge> expected_g3(const AbcParams& p);

struct ExpectedStructures {
  std::vector<IntVector> contact;
  std::vector<IntVector> neighbor;  // empty unless predicts_14
  std::vector<LatticeEdge> table1_edges;
  std::vector<SetEdge> table2_edges;
  std::vector<SetEdge> g3_edges;
};

ExpectedStructures expected_structures(const AbcParams& p);

}  // namespace tileforge
