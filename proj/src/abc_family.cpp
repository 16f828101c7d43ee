#include "tileforge/abc_family.hpp"

#include <algorithm>

namespace tileforge {

bool predicts_14(const AbcParams& p) {
  const Int A = p.A, B = p.B, C = p.C;
  if (!(A < B)) return false;
  if (B >= 2 * A - 1) return C >= 2 * (B - A) + 2;
  return C >= A + B - 2;
}

bool holds(Guard g, const AbcParams& p) {
  switch (g) {
    case Guard::none: return true;
    case Guard::a_at_least_2: return p.A >= 2;
    case Guard::b_at_least_2: return p.B >= 2;
    case Guard::a_ne_b: return p.A != p.B;
  }
  return false;
}

IntVector Sym::at(const AbcParams& prm) const {
  return IntVector{p + q * prm.A + n * prm.B, q + n * prm.A, static_cast<Int>(n)};
}

std::string Sym::name() const {
  const std::array<std::pair<int, char>, 3> terms{{{n, 'N'}, {q, 'Q'}, {p, 'P'}}};
  int nonzero = 0;
  int lead = 0;
  for (auto [c, ch] : terms)
    if (c != 0) {
      if (!nonzero) lead = c;
      ++nonzero;
    }
  if (nonzero == 0) return "0";
  if (lead < 0 && nonzero > 1) return "-(" + (-*this).name() + ")";
  std::string s;
  for (auto [c, ch] : terms) {
    if (c == 0) continue;
    if (c < 0) s += '-';
    else if (!s.empty()) s += '+';
    if (c != 1 && c != -1) s += std::to_string(c < 0 ? -c : c);
    s += ch;
  }
  return s;
}

namespace {

using namespace affine;
using sym::N;
using sym::P;
using sym::Q;

constexpr Sym QP = Q - P, NQ = N - Q, NP = N - P, NQP = N - Q + P;

}  // namespace

const std::array<Sym, 14>& fourteen_symbols() {
  static const std::array<Sym, 14> s{P, -P, Q, -Q, N, -N, QP, -QP, NQ, -NQ, NP, -NP, NQP, -NQP};
  return s;
}

std::vector<IntVector> fourteen_neighbors(const AbcParams& p) {
  std::vector<IntVector> out;
  for (const auto& s : fourteen_symbols()) out.push_back(s.at(p));
  return canonical_set(std::move(out));
}

VertexSet instantiate(const std::vector<Sym>& s, const AbcParams& p) {
  std::vector<IntVector> v;
  for (const auto& x : s) v.push_back(x.at(p));
  return VertexSet(std::move(v));
}

std::vector<LatticeEdge> lattice_edges(const BoundaryGraph& g) {
  std::vector<LatticeEdge> out;
  for (const auto& e : g.edges()) out.push_back({g.vertices()[e.src], g.vertices()[e.dst], e.d, e.d_prime});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SetEdge> set_edges(const PowerGraph& g) {
  std::vector<SetEdge> out;
  for (const auto& e : g.edges()) out.push_back({g.vertices()[e.src], e.d, g.vertices()[e.dst]});
  std::sort(out.begin(), out.end());
  return out;
}

// Contact graph G(R); each row also stands for -src ->(d'|d) -dst.
const std::vector<ContactRow>& contact_table() {
  static const AffineVec o{K(0), K(0), K(0)}, p100{K(1), K(0), K(0)}, a10{A, K(1), K(0)},
      a1_10{A - 1, K(1), K(0)}, ba1{B, A, K(1)}, b1_a1{B - 1, A, K(1)}, ba_a1_1{B - A, A - 1, K(1)},
      ba1_a1_1{B - A + 1, A - 1, K(1)};
  static const std::vector<ContactRow> rows{
      {o, o, K(0), C - 1, K(0), Guard::none},
      {o, p100, K(0), C - 2, K(1), Guard::none},
      {p100, a10, K(0), C - A - 1, A, Guard::none},
      {p100, a1_10, K(0), C - A, A - 1, Guard::none},
      {ba1, -p100, K(0), K(0), C - 1, Guard::none},
      {a10, ba1, K(0), C - B - 1, B, Guard::none},
      {a10, b1_a1, K(0), C - B, B - 1, Guard::none},
      {b1_a1, -a10, K(0), A - 1, C - A, Guard::none},
      {b1_a1, -a1_10, K(0), A - 2, C - A + 1, Guard::a_at_least_2},
      {ba_a1_1, -ba1, K(0), B - 1, C - B, Guard::none},
      {ba_a1_1, -b1_a1, K(0), B - 2, C - B + 1, Guard::b_at_least_2},
      {a1_10, ba_a1_1, K(0), C - B + A - 1, B - A, Guard::none},
      {ba1_a1_1, -ba_a1_1, K(0), B - A - 1, C - B + A, Guard::a_ne_b},
      {a1_10, ba1_a1_1, K(0), C - B + A - 2, B - A + 1, Guard::a_ne_b},
      {ba1_a1_1, -ba1_a1_1, K(0), B - A, C - B + A - 1, Guard::a_ne_b},
  };
  return rows;
}

// G_2(S); each row also stands for -src ->(C-1-d) -dst.
const std::vector<PairRow>& triple_table() {
  static const std::vector<PairRow> rows{
      {{QP, NP}, {-Q, NQ}, K(0), A - 1, Guard::none},
      {{QP, NP}, {-QP, NQ}, K(0), A - 2, Guard::a_at_least_2},
      {{QP, NP}, {-QP, NQP}, K(0), A - 2, Guard::a_at_least_2},

      {{-P, QP}, {-Q, NQ}, A, C - B + A - 1, Guard::none},
      {{-P, QP}, {-QP, NQ}, A - 1, C - B + A - 1, Guard::none},
      {{-P, QP}, {-QP, NQP}, A - 1, C - B + A - 2, Guard::none},

      {{-NQP, -P}, {-Q, NQ}, C - B + A, C - 1, Guard::none},
      {{-NQP, -P}, {-QP, NQ}, C - B + A, C - 1, Guard::none},
      {{-NQP, -P}, {-QP, NQP}, C - B + A - 1, C - 1, Guard::none},

      {{P, Q}, {QP, NP}, K(0), C - B, Guard::none},
      {{P, Q}, {QP, N}, K(0), C - B - 1, Guard::none},
      {{P, Q}, {Q, N}, K(0), C - B - 1, Guard::none},

      {{-NQ, P}, {QP, NP}, C - B + 1, C - A, Guard::none},
      {{-NQ, P}, {QP, N}, C - B, C - A, Guard::none},
      {{-NQ, P}, {Q, N}, C - B, C - A - 1, Guard::none},

      {{-NP, -NQ}, {QP, NP}, C - A + 1, C - 1, Guard::a_at_least_2},
      {{-NP, -NQ}, {QP, N}, C - A + 1, C - 1, Guard::a_at_least_2},
      {{-NP, -NQ}, {Q, N}, C - A, C - 1, Guard::none},

      {{NQ, NQP}, {-NQP, -N}, K(0), B - A, Guard::none},
      {{NQ, NQP}, {-NQ, -N}, K(0), B - A - 1, Guard::none},
      {{NQ, NQP}, {-NQ, -NP}, K(0), B - A - 1, Guard::none},

      {{-QP, NQ}, {-NQP, -N}, B - A + 1, B - 1, Guard::a_at_least_2},
      {{-QP, NQ}, {-NQ, -N}, B - A, B - 1, Guard::none},
      {{-QP, NQ}, {-NQ, -NP}, B - A, B - 2, Guard::a_at_least_2},

      {{-QP, -Q}, {-NQP, -N}, B, C - 1, Guard::none},
      {{-QP, -Q}, {-NQ, -N}, B, C - 1, Guard::none},
      {{-QP, -Q}, {-NP, -NQ}, B - 1, C - 1, Guard::none},

      {{-QP, NQP}, {-NQP, -NQ}, B - A, B - A, Guard::none},
      {{-Q, NQ}, {-N, -NP}, B - 1, B - 1, Guard::none},
      {{-N, -NP}, {P, Q}, C - 1, C - 1, Guard::none},
      {{QP, N}, {-P, NQ}, K(0), K(0), Guard::none},
      {{Q, N}, {-P, NP}, K(0), K(0), Guard::none},
      {{-P, NP}, {-Q, -QP}, A - 1, A - 1, Guard::none},
      {{-N, -NQP}, {P, NQP}, C - 1, C - 1, Guard::none},
      {{-N, -NQ}, {P, N}, C - 1, C - 1, Guard::none},
      {{P, N}, {-P, QP}, K(0), K(0), Guard::none},
  };
  return rows;
}

// G_3(S): six directed four-cycles.
const std::vector<QuadCycleRow>& quadruple_cycles() {
  static const std::vector<QuadCycleRow> rows{
      {{{{-QP, NQP, P}, {-NQP, -NQ, QP}, {NQP, N, NQ}, {-NQP, -P, -N}}}, {B - A, C - B + A - 1, K(0), C - 1}},
      {{{{-QP, NQP, NQ}, {-NQP, -NQ, -N}, {NQP, N, P}, {-NQP, -P, QP}}}, {B - A, C - 1, K(0), C - B + A - 1}},
      {{{{-QP, NQ, -Q}, {-N, -NQ, -NP}, {P, N, Q}, {-P, QP, NP}}}, {B - 1, C - 1, K(0), A - 1}},
      {{{{-Q, NQ, -P}, {-N, -NP, -QP}, {P, Q, -NQ}, {QP, NP, N}}}, {B - 1, C - 1, C - B, K(0)}},
      {{{{QP, N, Q}, {-P, NQ, NP}, {-N, -QP, -Q}, {-NQ, P, -NP}}}, {K(0), A - 1, C - 1, C - A}},
      {{{{NQ, N, NP}, {-N, -P, -Q}, {-QP, P, -NP}, {-NQ, QP, Q}}}, {K(0), C - 1, C - A, C - B}},
  };
  return rows;
}

const std::vector<OrderedEquation>& ordered_equations() {
  static const std::vector<OrderedEquation> rows{
      {P, QP, Q, C - A - 1},
      {Q, NP, N, C - B - 1},
      {N, -P, -P, K(-1)},
      {QP, NQ, NQP, C - B + A - 2},
      {NQP, -NQP, -NQ, B - A - 1},
      {NP, -Q, -QP, A - 2},
      {NQ, -N, -NP, B - 2},
  };
  return rows;
}

const std::array<Sym, 14>& face_order() {
  static const std::array<Sym, 14> order{-QP, NQP, NQ, -Q, -N, -NP, P, -P, NP, N, Q, -NQ, -NQP, QP};
  return order;
}

std::vector<IntVector> expected_contact_set(const AbcParams& p) {
  std::vector<IntVector> out{IntVector{0, 0, 0}};
  for (Sym s : {P, QP, Q, NQ, NP, N}) {
    out.push_back(s.at(p));
    out.push_back((-s).at(p));
  }
  if (p.A != p.B) {
    out.push_back(NQP.at(p));
    out.push_back((-NQP).at(p));
  }
  return canonical_set(std::move(out));
}

std::vector<LatticeEdge> expected_contact_graph(const AbcParams& p) {
  std::vector<LatticeEdge> out;
  for (const auto& row : contact_table()) {
    if (!holds(row.guard, p)) continue;
    const IntVector src = row.src.at(p), dst = row.dst.at(p);
    const Int shift = row.shift.at(p);
    for (Int d = row.lo.at(p); d <= row.hi.at(p); ++d) {
      const auto du = static_cast<std::size_t>(d), dp = static_cast<std::size_t>(d + shift);
      out.push_back({src, dst, du, dp});
      out.push_back({-src, -dst, dp, du});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void require_14(const AbcParams& p) {
  if (!predicts_14(p)) throw InputError("tables for G_2 and G_3 assume the 14-neighbor conditions; (" + p.str() + ") fails them");
}

void push_symmetric(std::vector<SetEdge>& out, const VertexSet& a, Int d, const VertexSet& b, const AbcParams& p) {
  out.push_back({a, static_cast<std::size_t>(d), b});
  out.push_back({a.negated(), static_cast<std::size_t>(p.C - 1 - d), b.negated()});
}

std::vector<SetEdge> finish(std::vector<SetEdge> out) {
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<SetEdge> expected_g2(const AbcParams& p) {
  require_14(p);
  std::vector<SetEdge> out;
  for (const auto& row : triple_table()) {
    if (!holds(row.guard, p)) continue;
    const VertexSet src = instantiate({row.src[0], row.src[1]}, p), dst = instantiate({row.dst[0], row.dst[1]}, p);
    for (Int d = row.lo.at(p); d <= row.hi.at(p); ++d) push_symmetric(out, src, d, dst, p);
  }
  return finish(std::move(out));
}

std::vector<SetEdge> expected_g3(const AbcParams& p) {
  require_14(p);
  std::vector<SetEdge> out;
  for (const auto& row : quadruple_cycles())
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& a = row.vertices[i];
      const auto& b = row.vertices[(i + 1) % 4];
      push_symmetric(out, instantiate({a[0], a[1], a[2]}, p), row.labels[i].at(p), instantiate({b[0], b[1], b[2]}, p), p);
    }
  return finish(std::move(out));
}

ExpectedStructures expected_structures(const AbcParams& p) {
  ExpectedStructures e;
  e.contact = expected_contact_set(p);
  e.table1_edges = expected_contact_graph(p);
  if (predicts_14(p)) {
    e.neighbor = fourteen_neighbors(p);
    e.table2_edges = expected_g2(p);
    e.g3_edges = expected_g3(p);
  }
  return e;
}

}  // namespace tileforge
