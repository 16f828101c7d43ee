#include "tileforge/topology_audit.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <functional>
#include <set>

namespace tileforge {

// ------------------------------------------------------------- TileAnalysis

TileAnalysis TileAnalysis::run(const AbcParams& p, std::size_t max_level) {
  return run(p, default_basis(p), max_level);
}

TileAnalysis TileAnalysis::run(const AbcParams& p, const std::vector<IntVector>& basis, std::size_t max_level) {
  TileAnalysis an = run(companion_form(p), basis, max_level);
  an.params = p;
  return an;
}

TileAnalysis TileAnalysis::run(const TileSystem& sys, const std::vector<IntVector>& basis, std::size_t max_level) {
  TileAnalysis an;
  an.system = sys;
  an.contact = contact_set(sys, basis);
  an.neighbors = neighbor_set(an.contact, sys);
  an.neighbor_graph = build_graph(an.neighbors.points, sys);
  an.tower = PowerTower(an.neighbor_graph, max_level);
  return an;
}

std::size_t TileAnalysis::level_size(std::size_t level) const {
  if (level <= tower.top()) return tower.level(level).vertex_count();
  if (tower.top() > 0 && tower.level(tower.top()).empty()) return 0;
  throw std::logic_error("level " + std::to_string(level) + " was not computed");
}

const AbcParams& TileAnalysis::abc() const {
  if (!params) throw InputError("analysis was not built from ABC parameters");
  return *params;
}

// ---------------------------------------------------------------- HataGraph

HataGraph hata_graph(const TileAnalysis& an, std::vector<SubtileRef> nodes) {
  HataGraph h;
  h.nodes = std::move(nodes);
  h.adjacency.resize(h.nodes.size());
  std::unordered_map<IntVector, std::vector<std::size_t>> by_offset;
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    if (i && h.nodes[i].depth != h.nodes[0].depth) throw InputError("Hata graph nodes must share one depth");
    h.offsets.push_back(h.nodes[i].offset(an.system));
    by_offset[h.offsets.back()].push_back(i);
  }
  std::vector<IntVector> shifts = an.neighbors.points;
  shifts.push_back(IntVector(an.system.dim()));
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    for (const auto& s : shifts) {
      auto it = by_offset.find(h.offsets[i] + s);
      if (it == by_offset.end()) continue;
      for (std::size_t j : it->second) {
        if (j <= i) continue;
        if (auto meet = intersection_vertex(an.tower, h.nodes[i].vertex, h.offsets[i], h.nodes[j].vertex, h.offsets[j]))
          h.edges.push_back({i, j, std::move(*meet)});
      }
    }
  }
  std::sort(h.edges.begin(), h.edges.end(), [](const auto& x, const auto& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  for (const auto& e : h.edges) {
    h.adjacency[e.a].push_back(e.b);
    h.adjacency[e.b].push_back(e.a);
  }
  for (auto& adj : h.adjacency) std::sort(adj.begin(), adj.end());
  return h;
}

std::string to_string(ChainKind k) {
  switch (k) {
    case ChainKind::path: return "path";
    case ChainKind::cycle: return "cycle";
    case ChainKind::regular_chain: return "regular_chain";
    case ChainKind::circular_chain: return "circular_chain";
    case ChainKind::connected: return "connected";
    case ChainKind::disconnected: return "disconnected";
    case ChainKind::other: return "other";
  }
  return "other";
}

namespace {

std::string describe(const SubtileRef& r) {
  std::string w;
  for (auto d : r.word) w += std::to_string(d);
  return "[" + w + "]" + r.vertex.str();
}

}  // namespace

ChainReport classify(const HataGraph& h) {
  ChainReport r;
  const std::size_t n = h.nodes.size();
  r.node_count = n;
  r.edge_count = h.edges.size();
  if (n == 0) return r;
  if (n == 1) {
    r.kind = ChainKind::path;
    r.order = h.nodes;
    return r;
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : h.adjacency[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!seen[i]) {
      r.kind = ChainKind::disconnected;
      r.witness = {h.nodes[0], h.nodes[i]};
      r.detail = "node " + describe(h.nodes[i]) + " unreachable";
      return r;
    }

  std::size_t max_deg = 0;
  for (const auto& adj : h.adjacency) max_deg = std::max(max_deg, adj.size());
  const bool path_shape = h.edges.size() == n - 1 && max_deg <= 2;
  const bool cycle_shape = h.edges.size() == n && max_deg == 2 &&
                           std::all_of(h.adjacency.begin(), h.adjacency.end(), [](const auto& a) { return a.size() == 2; });
  if (!path_shape && !cycle_shape) {
    r.kind = ChainKind::connected;
    for (std::size_t i = 0; i < n; ++i)
      if (h.adjacency[i].size() > 2) {
        r.witness = {h.nodes[i], h.nodes[h.adjacency[i][2]]};
        r.detail = describe(h.nodes[i]) + " meets " + std::to_string(h.adjacency[i].size()) + " pieces";
        break;
      }
    if (!r.witness) r.detail = "contains a cycle plus extra edges";
    return r;
  }

  std::size_t start = 0;
  if (path_shape)
    while (h.adjacency[start].size() != 1) ++start;
  std::size_t prev = SIZE_MAX, cur = start;
  for (std::size_t step = 0; step < n; ++step) {
    r.order.push_back(h.nodes[cur]);
    std::size_t next = SIZE_MAX;
    for (std::size_t w : h.adjacency[cur])
      if (w != prev) {
        next = w;
        break;
      }
    prev = cur;
    cur = next;
    if (cur == SIZE_MAX) break;
  }

  const HataGraph::Edge* non_point = nullptr;
  for (const auto& e : h.edges)
    if (e.meet.size() != 3) {
      non_point = &e;
      break;
    }
  if (non_point) {
    r.witness = {h.nodes[non_point->a], h.nodes[non_point->b]};
    r.detail = "intersection " + non_point->meet.str() + " is not a single four-fold point";
  }
  if (path_shape) {
    r.kind = non_point ? ChainKind::path : ChainKind::regular_chain;
  } else {
    r.kind = (!non_point && n >= 4) ? ChainKind::circular_chain : ChainKind::cycle;
    if (!non_point && n < 4) r.detail = "cycle of " + std::to_string(n) + " nodes is too short for a circular chain";
  }
  return r;
}

HataGraph successor_collection(const TileAnalysis& an, const VertexSet& alpha) {
  const PowerGraph& g2 = an.g(2);
  auto i = g2.index_of(alpha);
  if (!i) throw InputError(alpha.str() + " is not a vertex of G_2");
  std::vector<SubtileRef> nodes;
  for (const PowerEdge* e = g2.out_begin(*i); e != g2.out_end(*i); ++e)
    nodes.push_back(SubtileRef{2, {e->d}, g2.vertices()[e->dst]});
  return hata_graph(an, std::move(nodes));
}

ChainReport successor_hata(const TileAnalysis& an, const VertexSet& alpha) {
  return classify(successor_collection(an, alpha));
}

std::vector<SubtileRef> boundary_loop(const TileAnalysis& an, const IntVector& alpha, std::size_t k) {
  if (k == 0) throw InputError("subdivision depth k must be at least 1");
  if (!std::binary_search(an.neighbors.points.begin(), an.neighbors.points.end(), alpha))
    throw InputError(alpha.str() + " is not a neighbor");
  const PowerGraph& g2 = an.g(2);
  std::vector<SubtileRef> out;
  for (const auto& beta : an.neighbors.points) {
    if (beta == alpha) continue;
    VertexSet pair{alpha, beta};
    if (!g2.contains(pair)) continue;
    auto kids = subdivide(SubtileRef{1, {}, pair}, k - 1, g2);
    out.insert(out.end(), kids.begin(), kids.end());
  }
  auto key = [](const SubtileRef& r) { return std::tie(r.word, r.vertex); };
  std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ChainReport boundary_loop_audit(const TileAnalysis& an, const IntVector& alpha, std::size_t k) {
  return classify(hata_graph(an, boundary_loop(an, alpha, k)));
}

FourFoldReport four_fold_placement(const TileAnalysis& an, const VertexSet& alpha) {
  FourFoldReport r;
  r.vertex = alpha;
  const PowerGraph& g2 = an.g(2);
  const PowerGraph& g3 = an.g(3);
  auto i = g2.index_of(alpha);
  if (!i) throw InputError(alpha.str() + " is not a vertex of G_2");
  for (std::size_t v = 0; v < g3.vertex_count(); ++v)
    if (g3.vertices()[v].includes(alpha)) {
      r.supersets.push_back(g3.vertices()[v]);
      if (g3.out_degree(v) == 1) r.first_digits.push_back(g3.out_begin(v)->d);
    }
  r.branching = g2.out_degree(*i) > 1;
  if (r.supersets.size() != 2) {
    r.detail = std::to_string(r.supersets.size()) + " four-fold points instead of 2";
    return r;
  }
  if (r.branching) {
    if (r.first_digits.size() != 2) {
      r.detail = "a containing G_3 vertex does not have exactly one successor";
      return r;
    }
    if (r.first_digits[0] == r.first_digits[1]) {
      r.detail = "both points lie in subtiles with first digit " + std::to_string(r.first_digits[0]);
      return r;
    }
  }
  r.pass = true;
  return r;
}

ComplexCensus census(const TileAnalysis& an) {
  ComplexCensus c;
  c.faces = an.neighbors.points.size();
  c.edges = an.level_size(2);
  c.points = an.level_size(3);
  c.euler = static_cast<long>(c.faces) - static_cast<long>(c.edges) + static_cast<long>(c.points);
  const PowerGraph& g2 = an.g(2);
  for (const auto& a : an.neighbors.points) {
    std::size_t deg = 0;
    for (const auto& b : an.neighbors.points)
      if (a < b && g2.contains(VertexSet{a, b})) ++c.hata_edges;
    for (const auto& v : g2.vertices())
      if (v.contains(a)) ++deg;
    c.degree_sequence.push_back(deg);
  }
  std::sort(c.degree_sequence.begin(), c.degree_sequence.end());
  return c;
}

// --------------------------------------------------------------- Bing audit

namespace {

void check_curve(const TileAnalysis& an, std::size_t k_max, CheckResult& out) {
  for (const auto& alpha : an.neighbors.points)
    for (std::size_t k = 1; k <= k_max; ++k) {
      HataGraph h = hata_graph(an, boundary_loop(an, alpha, k));
      std::vector<std::set<std::vector<IntVector>>> points(h.nodes.size());
      std::map<std::vector<IntVector>, std::set<std::size_t>> holders;
      for (const auto& e : h.edges) {
        if (e.meet.size() != 3) {
          out.fail("L(" + alpha.str() + "," + std::to_string(k) + "): " + describe(h.nodes[e.a]) + " and " +
                   describe(h.nodes[e.b]) + " meet in " + e.meet.str());
          continue;
        }
        std::vector<IntVector> key{h.offsets[e.a]};
        for (const auto& u : e.meet.members()) key.push_back(h.offsets[e.a] + u);
        key = canonical_set(std::move(key));
        points[e.a].insert(key);
        points[e.b].insert(key);
        holders[key].insert(e.a);
        holders[key].insert(e.b);
      }
      for (std::size_t i = 0; i < h.nodes.size(); ++i)
        if (points[i].size() != 2)
          out.fail("L(" + alpha.str() + "," + std::to_string(k) + "): " + describe(h.nodes[i]) + " meets the others in " +
                   std::to_string(points[i].size()) + " points");
      for (const auto& [key, who] : holders)
        if (who.size() > 2)
          out.fail("L(" + alpha.str() + "," + std::to_string(k) + "): a point lies in " + std::to_string(who.size()) +
                   " pieces");
    }
}

void check_ordered_equations(const TileAnalysis& an, CheckResult& out) {
  const AbcParams& p = an.abc();
  const PowerGraph& g1 = an.g(1);
  const IntVector step = sym::P.at(p);
  for (const auto& eq : ordered_equations()) {
    const IntVector alpha = eq.alpha.at(p);
    const Int h = eq.h.at(p);
    std::vector<std::pair<VertexSet, IntVector>> seq;
    for (Int i = 0; i <= h; ++i) {
      seq.emplace_back(VertexSet{eq.x.at(p)}, step.scaled(i));
      seq.emplace_back(VertexSet{eq.y.at(p)}, step.scaled(i));
    }
    seq.emplace_back(VertexSet{eq.x.at(p)}, step.scaled(h + 1));

    const std::string tag = "M B_" + eq.alpha.name();
    auto idx = g1.index_of(VertexSet{alpha});
    if (!idx) {
      out.fail(tag + ": " + alpha.str() + " is not a neighbor");
      continue;
    }
    std::vector<std::pair<VertexSet, IntVector>> children;
    for (const PowerEdge* e = g1.out_begin(*idx); e != g1.out_end(*idx); ++e)
      children.emplace_back(g1.vertices()[e->dst], an.system.digits[e->d]);
    auto a = seq, b = children;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) {
      out.fail(tag + ": ordered pieces differ from the subdivision in G(S) (" + std::to_string(a.size()) + " vs " +
               std::to_string(b.size()) + " pieces)");
      continue;
    }
    for (std::size_t i = 0; i < seq.size(); ++i)
      for (std::size_t j = i + 1; j < seq.size(); ++j) {
        auto meet = intersection_vertex(an.tower, seq[i].first, seq[i].second, seq[j].first, seq[j].second);
        const std::string pair = "pieces " + std::to_string(i) + "," + std::to_string(j);
        if (j == i + 1 && !meet) out.fail(tag + ": consecutive " + pair + " are disjoint");
        else if (j == i + 1 && meet->size() != 2) out.fail(tag + ": consecutive " + pair + " meet in " + meet->str() + ", not an arc");
        else if (j > i + 1 && meet) out.fail(tag + ": non-consecutive " + pair + " meet in " + meet->str());
      }
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> partition_schedule(const TileAnalysis& an) {
  const AbcParams& p = an.abc();
  const auto& order = face_order();
  std::vector<std::vector<std::size_t>> out(15);
  for (std::size_t i = 1; i <= 14; ++i)
    for (std::size_t j = 1; j < i; ++j)
      if (an.g(2).contains(instantiate({order[i - 1], order[j - 1]}, p))) out[i].push_back(j);
  return out;
}

namespace {

void check_partition(const TileAnalysis& an, CheckResult& out) {
  const AbcParams& p = an.abc();
  const auto& order = face_order();
  const auto sched = partition_schedule(an);
  for (std::size_t i = 2; i <= 14; ++i) {
    const auto& js = sched[i];
    const std::string tag = "A_" + std::to_string(i);
    if (js.empty()) {
      out.fail(tag + " contains no arc");
      continue;
    }
    std::vector<std::size_t> comp(js.size());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (std::size_t a = 0; a < js.size(); ++a)
      for (std::size_t b = a + 1; b < js.size(); ++b)
        if (an.g(3).contains(instantiate({order[i - 1], order[js[a] - 1], order[js[b] - 1]}, p))) comp[find(a)] = find(b);
    for (std::size_t a = 1; a < js.size(); ++a)
      if (find(a) != find(0)) {
        out.fail(tag + " is disconnected: O_" + std::to_string(i) + "," + std::to_string(js[0]) + " and O_" +
                 std::to_string(i) + "," + std::to_string(js[a]) + " are not linked");
        break;
      }
  }
}

}  // namespace

BingReport bing_audit(const TileAnalysis& an, std::size_t k_max) {
  BingReport r;
  r.curve.name = "curve_condition";
  r.ordered_equations.name = "ordered_set_equations";
  r.partition_schedule.name = "partition_schedule";
  check_curve(an, k_max, r.curve);
  check_ordered_equations(an, r.ordered_equations);
  check_partition(an, r.partition_schedule);
  return r;
}

// -------------------------------------------------------------- Full audit

bool AuditSummary::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

template <class T>
std::string size_note(const std::vector<T>& got, const std::vector<T>& want) {
  return std::to_string(got.size()) + " computed vs " + std::to_string(want.size()) + " expected";
}

CheckResult check_tables(const TileAnalysis& an) {
  CheckResult c{"tables"};
  const AbcParams& p = an.abc();
  if (an.contact.points != expected_contact_set(p)) c.fail("contact set differs from the closed form");
  const BoundaryGraph gr = build_graph(an.contact.points, an.system);
  auto got = lattice_edges(gr);
  auto want = expected_contact_graph(p);
  if (got != want) c.fail("contact graph: " + size_note(got, want));
  if (predicts_14(p) && an.neighbors.points.size() == 14) {
    auto g2 = set_edges(an.g(2));
    auto w2 = expected_g2(p);
    if (g2 != w2) c.fail("G_2: " + size_note(g2, w2));
    auto g3 = set_edges(an.g(3));
    auto w3 = expected_g3(p);
    if (g3 != w3) c.fail("G_3: " + size_note(g3, w3));
  }
  return c;
}

CheckResult check_walk_points(const TileAnalysis& an) {
  CheckResult c{"walk_points"};
  const PowerGraph& g3 = an.g(3);
  std::vector<RationalVector> pts;
  for (const auto& v : g3.vertices()) {
    DigitWord w;
    try {
      w = unique_walk(g3, v);
    } catch (const WalkError& e) {
      c.fail(e.what());
      continue;
    }
    const RationalVector tail = walk_point(DigitWord{{}, w.period}, an.system);
    if (apply_maps(w.period, tail, an.system) != tail) c.fail(v.str() + ": periodic point is not fixed");
    const RationalVector x = walk_point(w, an.system);
    if (apply_maps(w.preperiod, tail, an.system) != x) c.fail(v.str() + ": preperiod does not fold onto the point");
    pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) c.fail("two four-fold points coincide");
  return c;
}

}  // namespace

AuditSummary audit(const TileAnalysis& an, const AuditOptions& opt) {
  AuditSummary s;
  const AbcParams& p = an.abc();
  const bool fourteen = an.neighbors.points.size() == 14;

  CheckResult iff{"characterization"};
  if (fourteen != predicts_14(p))
    iff.fail(std::to_string(an.neighbors.points.size()) + " neighbors but prediction is " + (predicts_14(p) ? "14" : "not 14"));
  s.checks.push_back(iff);

  CheckResult lemma{"contact_lemmas"};
  if (an.contact.points != expected_contact_set(p)) lemma.fail("contact set differs from the closed form");
  if (p.A < p.B) {
    std::size_t rr = minkowski_sum(an.contact.points, an.contact.points).size();
    if (rr != 65) lemma.fail("|R+R| = " + std::to_string(rr));
  } else if (an.neighbors.points.size() < 16) {
    lemma.fail("A = B but only " + std::to_string(an.neighbors.points.size()) + " neighbors");
  }
  s.checks.push_back(lemma);

  CheckResult symm{"symmetry"};
  if (!has_negation_symmetry(an.neighbor_graph)) symm.fail("G(S) is not symmetric under negation");
  for (std::size_t l = 2; l <= std::min<std::size_t>(3, an.tower.top()); ++l)
    if (!has_complement_symmetry(an.g(l))) symm.fail("G_" + std::to_string(l) + " lacks the complement symmetry");
  s.checks.push_back(symm);

  if (!fourteen || !predicts_14(p)) return s;

  if (opt.tables) s.checks.push_back(check_tables(an));

  CheckResult counts{"power_graph_counts"};
  if (an.level_size(2) != 36) counts.fail("|G_2| = " + std::to_string(an.level_size(2)));
  if (an.level_size(3) != 24) counts.fail("|G_3| = " + std::to_string(an.level_size(3)));
  if (an.level_size(4) != 0) counts.fail("G_4 is not empty");
  for (std::size_t v = 0; v < an.g(3).vertex_count(); ++v)
    if (an.g(3).out_degree(v) != 1) counts.fail(an.g(3).vertices()[v].str() + " has out-degree " + std::to_string(an.g(3).out_degree(v)));
  s.checks.push_back(counts);

  CheckResult cen{"census"};
  ComplexCensus cc = census(an);
  std::vector<std::size_t> want_deg(6, 4);
  want_deg.insert(want_deg.end(), 8, 6);
  if (cc.euler != 2) cen.fail("Euler characteristic " + std::to_string(cc.euler));
  if (cc.degree_sequence != want_deg) cen.fail("degree sequence differs from {4^6, 6^8}");
  if (cc.hata_edges != cc.edges) cen.fail("H(S) edge count differs from |G_2|");
  s.checks.push_back(cen);

  CheckResult ff{"four_fold_placement"};
  for (const auto& v : an.g(2).vertices()) {
    auto r = four_fold_placement(an, v);
    if (!r.pass) ff.fail(v.str() + ": " + r.detail);
  }
  s.checks.push_back(ff);

  s.checks.push_back(check_walk_points(an));

  CheckResult sh{"successor_hata"};
  for (const auto& v : an.g(2).vertices()) {
    auto r = successor_hata(an, v);
    if (!r.is_path()) sh.fail(v.str() + ": " + to_string(r.kind) + " " + r.detail);
  }
  s.checks.push_back(sh);

  CheckResult loops{"boundary_loops"};
  for (const auto& a : an.neighbors.points)
    for (std::size_t k = 1; k <= opt.loop_depth; ++k) {
      auto r = boundary_loop_audit(an, a, k);
      if (r.kind != ChainKind::circular_chain)
        loops.fail("L(" + a.str() + "," + std::to_string(k) + "): " + to_string(r.kind) + " " + r.detail);
    }
  s.checks.push_back(loops);

  BingReport b = bing_audit(an, opt.bing_depth);
  s.checks.push_back(b.curve);
  s.checks.push_back(b.ordered_equations);
  s.checks.push_back(b.partition_schedule);
  return s;
}

}  // namespace tileforge
