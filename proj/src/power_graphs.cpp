#include "tileforge/power_graphs.hpp"

#include <algorithm>
#include <functional>

namespace tileforge {

VertexSet::VertexSet(std::vector<IntVector> members) : m_(std::move(members)) {
  std::sort(m_.begin(), m_.end());
  if (std::adjacent_find(m_.begin(), m_.end()) != m_.end()) throw InputError("vertex set has repeated members");
  for (const auto& v : m_)
    if (v.is_zero()) throw InputError("vertex set may not contain 0");
}

bool VertexSet::contains(const IntVector& v) const { return std::binary_search(m_.begin(), m_.end(), v); }

bool VertexSet::includes(const VertexSet& other) const {
  return std::includes(m_.begin(), m_.end(), other.m_.begin(), other.m_.end());
}

VertexSet VertexSet::negated() const {
  std::vector<IntVector> n;
  n.reserve(m_.size());
  for (const auto& v : m_) n.push_back(-v);
  return VertexSet(std::move(n));
}

std::strong_ordering VertexSet::operator<=>(const VertexSet& o) const {
  return std::lexicographical_compare_three_way(m_.begin(), m_.end(), o.m_.begin(), o.m_.end());
}

std::string VertexSet::str() const {
  std::string s;
  for (std::size_t i = 0; i < m_.size(); ++i) {
    if (i) s += ';';
    s += m_[i].str();
  }
  return s;
}

VertexSet VertexSet::parse(const std::string& text) {
  std::vector<IntVector> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    out.push_back(IntVector::parse(text.substr(start, end - start)));
    start = end + 1;
  }
  return VertexSet(std::move(out));
}

// --------------------------------------------------------------- PowerGraph

PowerGraph::PowerGraph(std::size_t level, TileSystem sys, std::vector<VertexSet> vertices, std::vector<PowerEdge> edges)
    : level_(level), sys_(std::move(sys)) {
  std::vector<std::size_t> order(vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vertices[a] < vertices[b]; });
  std::vector<std::size_t> remap(vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    remap[order[i]] = i;
    vertices_.push_back(std::move(vertices[order[i]]));
    if (vertices_.back().size() != level) throw InputError("vertex size differs from power-graph level");
  }
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw InputError("duplicate power-graph vertex");
  for (auto& e : edges) {
    e.src = remap[e.src];
    e.dst = remap[e.dst];
  }
  std::sort(edges.begin(), edges.end(), [](const PowerEdge& a, const PowerEdge& b) {
    return std::tie(a.src, a.d, a.dst) < std::tie(b.src, b.d, b.dst);
  });
  for (auto& e : edges)
    if (edges_.empty() || std::tie(edges_.back().src, edges_.back().d, edges_.back().dst) != std::tie(e.src, e.d, e.dst))
      edges_.push_back(std::move(e));
  offsets_.assign(vertices_.size() + 1, 0);
  for (const auto& e : edges_) ++offsets_[e.src + 1];
  for (std::size_t i = 0; i < vertices_.size(); ++i) offsets_[i + 1] += offsets_[i];
  for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], i);
}

std::optional<std::size_t> PowerGraph::index_of(const VertexSet& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool PowerGraph::has_edge(const VertexSet& src, std::size_t d, const VertexSet& dst) const {
  auto s = index_of(src), t = index_of(dst);
  if (!s || !t) return false;
  return std::any_of(out_begin(*s), out_end(*s), [&](const PowerEdge& e) { return e.d == d && e.dst == *t; });
}

PowerGraph reduce(const PowerGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> outdeg(n);
  std::vector<std::vector<std::size_t>> preds(n);
  for (const auto& e : g.edges()) {
    ++outdeg[e.src];
    preds[e.dst].push_back(e.src);
  }
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> work;
  for (std::size_t i = 0; i < n; ++i)
    if (outdeg[i] == 0) work.push_back(i);
  while (!work.empty()) {
    std::size_t v = work.back();
    work.pop_back();
    if (!alive[v]) continue;
    alive[v] = false;
    for (std::size_t p : preds[v])
      if (alive[p] && --outdeg[p] == 0) work.push_back(p);
  }
  std::vector<std::size_t> remap(n, SIZE_MAX);
  std::vector<VertexSet> verts;
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) {
      remap[i] = verts.size();
      verts.push_back(g.vertices()[i]);
    }
  std::vector<PowerEdge> edges;
  for (const auto& e : g.edges())
    if (alive[e.src] && alive[e.dst]) edges.push_back({remap[e.src], e.d, remap[e.dst], e.right_labels});
  return PowerGraph(g.level(), g.system(), std::move(verts), std::move(edges));
}

namespace {

using Successors = std::vector<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>>;

// succ[v][d] = list of (dst, d') over edges of G(S) leaving v with left label d.
Successors successor_table(const BoundaryGraph& gs) {
  Successors succ(gs.vertex_count(), std::vector<std::vector<std::pair<std::size_t, std::size_t>>>(gs.system().digits.size()));
  for (const auto& e : gs.edges()) succ[e.src][e.d].emplace_back(e.dst, e.d_prime);
  return succ;
}

PowerGraph first_level(const BoundaryGraph& gs) {
  std::vector<VertexSet> verts;
  for (const auto& v : gs.vertices()) verts.push_back(VertexSet{v});
  std::vector<PowerEdge> edges;
  for (const auto& e : gs.edges()) edges.push_back({e.src, e.d, e.dst, {e.d_prime}});
  return reduce(PowerGraph(1, gs.system(), std::move(verts), std::move(edges)));
}

using Index = std::unordered_map<VertexSet, std::size_t, VertexSetHash>;

// l-sets all of whose (l-1)-subsets are vertices of prev.
std::vector<VertexSet> candidates(const BoundaryGraph& gs, const PowerGraph& prev) {
  std::vector<VertexSet> cands;
  for (const auto& x : prev.vertices()) {
    const IntVector& last = x.members().back();
    auto it = std::upper_bound(gs.vertices().begin(), gs.vertices().end(), last);
    for (; it != gs.vertices().end(); ++it) {
      std::vector<IntVector> ms = x.members();
      ms.push_back(*it);
      bool ok = true;
      for (std::size_t drop = 0; drop + 1 < ms.size() && ok; ++drop) {
        std::vector<IntVector> sub;
        for (std::size_t i = 0; i < ms.size(); ++i)
          if (i != drop) sub.push_back(ms[i]);
        ok = prev.contains(VertexSet(std::move(sub)));
      }
      if (ok) cands.emplace_back(std::move(ms));
    }
  }
  return cands;
}

// Calls f(d, dst, right_labels) for each edge from candidate c into the candidate set.
template <class F>
void for_each_successor(const BoundaryGraph& gs, const Successors& succ, const VertexSet& c, const Index& index, F&& f) {
  const std::size_t level = c.size();
  std::vector<std::size_t> members(level), chosen(level), labels(level);
  for (std::size_t i = 0; i < level; ++i) members[i] = *gs.index_of(c[i]);
  std::vector<IntVector> img(level);
  for (std::size_t d = 0; d < gs.system().digits.size(); ++d) {
    std::function<void(std::size_t)> pick = [&](std::size_t i) {
      if (i == level) {
        for (std::size_t k = 0; k < level; ++k) img[k] = gs.vertices()[chosen[k]];
        if (auto it = index.find(VertexSet(img)); it != index.end()) f(d, it->second, labels);
        return;
      }
      for (auto [dst, dp] : succ[members[i]][d]) {
        if (std::find(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(i), dst) !=
            chosen.begin() + static_cast<std::ptrdiff_t>(i))
          continue;
        chosen[i] = dst;
        labels[i] = dp;
        pick(i + 1);
      }
    };
    pick(0);
  }
}

PowerGraph next_level(const BoundaryGraph& gs, const Successors& succ, const PowerGraph& prev) {
  std::vector<VertexSet> cands = candidates(gs, prev);
  Index index;
  for (std::size_t i = 0; i < cands.size(); ++i) index.emplace(cands[i], i);
  std::vector<PowerEdge> edges;
  for (std::size_t c = 0; c < cands.size(); ++c)
    for_each_successor(gs, succ, cands[c], index, [&](std::size_t d, std::size_t dst, const std::vector<std::size_t>& labels) {
      edges.push_back({c, d, dst, labels});
    });
  return reduce(PowerGraph(prev.level() + 1, gs.system(), std::move(cands), std::move(edges)));
}

}  // namespace

PowerTower::PowerTower(const BoundaryGraph& gs, std::size_t max_level) : base_(gs) {
  if (max_level == 0) return;
  const Successors succ = successor_table(gs);
  levels_.push_back(first_level(gs));
  while (levels_.size() < max_level && !levels_.back().empty()) levels_.push_back(next_level(gs, succ, levels_.back()));
}

bool PowerTower::next_level_nonempty() const {
  if (top() == 0) throw std::logic_error("empty power tower");
  if (levels_.back().empty()) return false;
  const std::vector<VertexSet> cands = candidates(base_, levels_.back());
  Index index;
  for (std::size_t i = 0; i < cands.size(); ++i) index.emplace(cands[i], i);
  const Successors succ = successor_table(base_);
  // Sink removal leaves a vertex iff the candidate graph has a cycle.
  enum : std::uint8_t { white, grey, black };
  std::vector<std::uint8_t> color(cands.size(), white);
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> stack;
  auto successors = [&](std::size_t c) {
    std::vector<std::size_t> out;
    for_each_successor(base_, succ, cands[c], index,
                       [&](std::size_t, std::size_t dst, const std::vector<std::size_t>&) { out.push_back(dst); });
    return out;
  };
  for (std::size_t root = 0; root < cands.size(); ++root) {
    if (color[root] != white) continue;
    color[root] = grey;
    stack.emplace_back(root, successors(root));
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next.empty()) {
        color[v] = black;
        stack.pop_back();
        continue;
      }
      const std::size_t w = next.back();
      next.pop_back();
      if (color[w] == grey) return true;
      if (color[w] == white) {
        color[w] = grey;
        stack.emplace_back(w, successors(w));
      }
    }
  }
  return false;
}

bool PowerTower::is_vertex(const VertexSet& v) const {
  if (v.size() == 0) return false;
  if (v.size() <= top()) return level(v.size()).contains(v);
  if (top() > 0 && levels_.back().empty()) return false;
  throw std::logic_error("power tower not built deep enough for a set of size " + std::to_string(v.size()));
}

PowerGraph power_graph(const BoundaryGraph& gs, std::size_t level) {
  if (level == 0) throw InputError("power-graph level must be at least 1");
  PowerTower tower(gs, level);
  if (tower.top() == level) return tower.level(level);
  return PowerGraph(level, gs.system(), {}, {});
}

bool has_complement_symmetry(const PowerGraph& g) {
  const std::size_t c = g.system().digits.size();
  for (const auto& e : g.edges())
    if (!g.has_edge(g.vertices()[e.src].negated(), c - 1 - e.d, g.vertices()[e.dst].negated())) return false;
  return true;
}

std::optional<VertexSet> intersection_vertex(const PowerTower& tower, const VertexSet& b1, const IntVector& a1,
                                             const VertexSet& b2, const IntVector& a2) {
  const IntVector shift = a2 - a1;
  std::vector<IntVector> u = b1.members();
  for (const auto& v : b2.members()) u.push_back(v + shift);
  u.push_back(shift);
  u = without_zero(canonical_set(std::move(u)));
  VertexSet set(std::move(u));
  if (!tower.is_vertex(set)) return std::nullopt;
  return set;
}

// ---------------------------------------------------------------- DigitWord

DigitWord DigitWord::canonical() const {
  if (period.empty()) throw InputError("digit word needs a nonempty period");
  DigitWord w = *this;
  const std::size_t n = w.period.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool rep = true;
    for (std::size_t i = p; i < n && rep; ++i) rep = w.period[i] == w.period[i - p];
    if (rep) {
      w.period.resize(p);
      break;
    }
  }
  while (!w.preperiod.empty() && w.preperiod.back() == w.period.back()) {
    std::rotate(w.period.rbegin(), w.period.rbegin() + 1, w.period.rend());
    w.preperiod.pop_back();
  }
  return w;
}

std::size_t DigitWord::at(std::size_t i) const {
  if (i < preperiod.size()) return preperiod[i];
  return period[(i - preperiod.size()) % period.size()];
}

std::string DigitWord::str() const {
  std::string s;
  for (auto d : preperiod) s += std::to_string(d) + " ";
  s += "(";
  for (std::size_t i = 0; i < period.size(); ++i) s += (i ? " " : "") + std::to_string(period[i]);
  return s + ")*";
}

std::vector<std::size_t> least_rotation(const std::vector<std::size_t>& w) {
  const std::size_t n = w.size();
  if (n == 0) return w;
  std::vector<std::size_t> s(w);
  s.insert(s.end(), w.begin(), w.end());
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    long i = f[j - k - 1];
    while (i != -1 && s[j] != s[k + static_cast<std::size_t>(i) + 1]) {
      if (s[j] < s[k + static_cast<std::size_t>(i) + 1]) k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (i == -1 && s[j] != s[k]) {
      if (s[j] < s[k]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return {s.begin() + static_cast<std::ptrdiff_t>(k), s.begin() + static_cast<std::ptrdiff_t>(k + n)};
}

DigitWord unique_walk(const PowerGraph& g, const VertexSet& start, std::size_t max_steps) {
  auto cur = g.index_of(start);
  if (!cur) throw InputError("start vertex " + start.str() + " is not in the power graph");
  std::vector<std::size_t> visit(g.vertex_count(), SIZE_MAX);
  std::vector<std::size_t> digits;
  std::size_t v = *cur;
  while (visit[v] == SIZE_MAX) {
    if (digits.size() >= max_steps) throw WalkError("walk exceeded " + std::to_string(max_steps) + " steps");
    if (g.out_degree(v) != 1)
      throw WalkError("vertex " + g.vertices()[v].str() + " has " + std::to_string(g.out_degree(v)) + " successors");
    visit[v] = digits.size();
    digits.push_back(g.out_begin(v)->d);
    v = g.out_begin(v)->dst;
  }
  DigitWord w;
  w.preperiod.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(visit[v]));
  w.period.assign(digits.begin() + static_cast<std::ptrdiff_t>(visit[v]), digits.end());
  return w.canonical();
}

RationalVector apply_maps(const std::vector<std::size_t>& word, const RationalVector& x, const TileSystem& sys) {
  RationalVector cur = x;
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    cur = solve_rational(sys.matrix, cur + RationalVector(sys.digits[*it]));
  return cur;
}

RationalVector walk_point(const DigitWord& w, const TileSystem& sys) {
  if (w.period.empty()) throw InputError("digit word needs a nonempty period");
  const std::size_t m = sys.dim();
  // (M^p - I) y = sum_j M^{p-j} D[e_j]
  IntVector rhs(m);
  for (auto e : w.period) rhs = sys.matrix.apply(rhs) + sys.digits[e];
  IntMatrix k = sys.matrix.pow(static_cast<unsigned>(w.period.size())) - IntMatrix::identity(m);
  if (k.det() == 0) throw InputError("M^p - I is singular");
  RationalVector y = solve_rational(k, RationalVector(rhs));
  return apply_maps(w.preperiod, y, sys);
}

// --------------------------------------------------------------- SubtileRef

IntVector SubtileRef::offset(const TileSystem& sys) const {
  IntVector a(sys.dim());
  for (auto d : word) a = sys.matrix.apply(a) + sys.digits[d];
  return a;
}

std::vector<SubtileRef> subdivide(const SubtileRef& ref, std::size_t steps, const PowerGraph& g) {
  if (!g.contains(ref.vertex)) throw InputError("subtile vertex " + ref.vertex.str() + " is not in the power graph");
  std::vector<SubtileRef> cur{ref};
  for (std::size_t s = 0; s < steps; ++s) {
    std::vector<SubtileRef> next;
    for (const auto& r : cur) {
      std::size_t i = *g.index_of(r.vertex);
      for (const PowerEdge* e = g.out_begin(i); e != g.out_end(i); ++e) {
        SubtileRef child{r.depth + 1, r.word, g.vertices()[e->dst]};
        child.word.push_back(e->d);
        next.push_back(std::move(child));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace tileforge
