#include "tileforge/tile_graphs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace tileforge {

BoundaryGraph::BoundaryGraph(TileSystem sys, std::vector<IntVector> vertices, std::vector<LabeledEdge> edges)
    : sys_(std::move(sys)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  index_.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], i);
  std::sort(edges_.begin(), edges_.end(), [](const LabeledEdge& a, const LabeledEdge& b) {
    return std::tie(a.src, a.dst, a.d, a.d_prime) < std::tie(b.src, b.dst, b.d, b.d_prime);
  });
  offsets_.assign(vertices_.size() + 1, 0);
  for (const auto& e : edges_) ++offsets_[e.src + 1];
  for (std::size_t i = 0; i < vertices_.size(); ++i) offsets_[i + 1] += offsets_[i];
}

std::optional<std::size_t> BoundaryGraph::index_of(const IntVector& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool BoundaryGraph::has_edge(const IntVector& src, std::size_t d, std::size_t d_prime, const IntVector& dst) const {
  auto s = index_of(src), t = index_of(dst);
  if (!s || !t) return false;
  return std::any_of(out_begin(*s), out_end(*s), [&](const LabeledEdge& e) {
    return e.dst == *t && e.d == d && e.d_prime == d_prime;
  });
}

std::vector<IntVector> canonical_set(std::vector<IntVector> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

namespace {

// Digit pairs (d, d') grouped by D[d'] - D[d].
std::vector<std::pair<IntVector, std::vector<std::pair<std::size_t, std::size_t>>>> difference_table(
    const DigitSet& ds) {
  std::map<IntVector, std::vector<std::pair<std::size_t, std::size_t>>> by_diff;
  for (std::size_t d = 0; d < ds.size(); ++d)
    for (std::size_t dp = 0; dp < ds.size(); ++dp) by_diff[ds[dp] - ds[d]].emplace_back(d, dp);
  return {by_diff.begin(), by_diff.end()};
}

}  // namespace

BoundaryGraph build_graph(const std::vector<IntVector>& gamma, const TileSystem& sys) {
  std::vector<IntVector> verts = canonical_set(gamma);
  std::unordered_map<IntVector, std::size_t> index;
  index.reserve(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) index.emplace(verts[i], i);
  const auto diffs = difference_table(sys.digits);
  std::vector<LabeledEdge> edges;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const IntVector image = sys.matrix.apply(verts[i]);
    for (const auto& [t, pairs] : diffs) {
      auto it = index.find(image + t);
      if (it == index.end()) continue;
      for (auto [d, dp] : pairs) edges.push_back({i, it->second, d, dp});
    }
  }
  return BoundaryGraph(sys, std::move(verts), std::move(edges));
}

BoundaryGraph reduce(const BoundaryGraph& g) {
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
  std::vector<IntVector> verts;
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) {
      remap[i] = verts.size();
      verts.push_back(g.vertices()[i]);
    }
  std::vector<LabeledEdge> edges;
  for (const auto& e : g.edges())
    if (alive[e.src] && alive[e.dst]) edges.push_back({remap[e.src], remap[e.dst], e.d, e.d_prime});
  return BoundaryGraph(g.system(), std::move(verts), std::move(edges));
}

std::vector<IntVector> reduced_set(const std::vector<IntVector>& gamma, const TileSystem& sys) {
  return reduce(build_graph(gamma, sys)).vertices();
}

std::vector<IntVector> minkowski_sum(const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
  std::vector<IntVector> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x + y);
  return canonical_set(std::move(out));
}

std::vector<IntVector> without_zero(const std::vector<IntVector>& points) {
  std::vector<IntVector> out;
  for (const auto& p : points)
    if (!p.is_zero()) out.push_back(p);
  return out;
}

bool has_negation_symmetry(const BoundaryGraph& g) {
  for (const auto& e : g.edges()) {
    const IntVector& a = g.vertices()[e.src];
    const IntVector& b = g.vertices()[e.dst];
    if (!g.contains(-a) || !g.contains(-b)) continue;
    if (!g.has_edge(-a, e.d_prime, e.d, -b)) return false;
  }
  return true;
}

std::vector<IntVector> default_basis(const AbcParams& p) {
  return {IntVector{1, 0, 0}, IntVector{p.A, 1, 0}, IntVector{p.B, p.A, 1}};
}

ContactSet contact_set(const TileSystem& sys, const std::vector<IntVector>& basis, std::size_t max_rounds) {
  const std::size_t m = sys.dim();
  if (basis.size() != m) throw InputError("basis must have one vector per dimension");
  std::vector<Int> cols;
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& b : basis) {
      if (b.dim() != m) throw InputError("basis vector of wrong dimension");
      cols.push_back(b[i]);
    }
  if (determinant(m, cols) == 0) throw InputError("basis vectors are linearly dependent");

  std::vector<IntVector> diffs;
  for (const auto& [t, pairs] : difference_table(sys.digits)) diffs.push_back(t);

  ContactSet out;
  out.basis_used = basis;
  std::unordered_set<IntVector> members;
  std::vector<IntVector> frontier{IntVector(m)};
  for (const auto& b : basis) {
    frontier.push_back(b);
    frontier.push_back(-b);
  }
  frontier = canonical_set(frontier);
  members.insert(frontier.begin(), frontier.end());
  out.round_sizes.push_back(members.size());
  for (std::size_t round = 1;; ++round) {
    if (round > max_rounds) throw std::runtime_error("contact-set iteration cap exceeded");
    std::vector<IntVector> next;
    for (const auto& l : frontier)
      for (const auto& t : diffs)
        if (auto k = solve_integer(sys.matrix, l + t); k && members.insert(*k).second) next.push_back(*k);
    out.round_sizes.push_back(members.size());
    if (next.empty()) break;
    frontier = std::move(next);
  }
  out.points = reduced_set({members.begin(), members.end()}, sys);
  return out;
}

NeighborSet neighbor_set(const ContactSet& r, const TileSystem& sys, std::size_t max_rounds) {
  const std::vector<IntVector>& s0 = r.points;
  if (!std::binary_search(s0.begin(), s0.end(), IntVector(sys.dim())))
    throw InputError("contact set must contain 0");
  NeighborSet out;
  std::vector<IntVector> cur = s0;
  out.round_sizes.push_back(cur.size());
  for (std::size_t round = 1;; ++round) {
    if (round > max_rounds) throw std::runtime_error("neighbor-set iteration cap exceeded");
    std::vector<IntVector> next = reduced_set(minkowski_sum(cur, s0), sys);
    if (!std::includes(next.begin(), next.end(), cur.begin(), cur.end()))
      throw std::logic_error("neighbor iteration is not monotone");
    out.round_sizes.push_back(next.size());
    if (next == cur) break;
    cur = std::move(next);
  }
  out.points = without_zero(cur);
  return out;
}

}  // namespace tileforge
