#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tileforge/tile_graphs.hpp"

namespace tileforge {

/// Canonical (sorted) set of distinct nonzero lattice points.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<IntVector> members);
  VertexSet(std::initializer_list<IntVector> members) : VertexSet(std::vector<IntVector>(members)) {}

  std::size_t size() const { return m_.size(); }
  const std::vector<IntVector>& members() const { return m_; }
  const IntVector& operator[](std::size_t i) const { return m_[i]; }
  bool contains(const IntVector& v) const;
  bool includes(const VertexSet& other) const;
  VertexSet negated() const;

  bool operator==(const VertexSet&) const = default;
  std::strong_ordering operator<=>(const VertexSet& o) const;

  std::string str() const;  // "a,b,c;d,e,f"
  static VertexSet parse(const std::string& text);

 private:
  std::vector<IntVector> m_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept {
    std::size_t h = s.size();
    for (const auto& v : s.members()) h = h * 31 + std::hash<IntVector>{}(v);
    return h;
  }
};

/// Edge src ->d dst; right_labels[i] is the d_i used by member i of src.
struct PowerEdge {
  std::size_t src, d, dst;
  std::vector<std::size_t> right_labels;
};

class PowerGraph {
 public:
  PowerGraph() = default;
  PowerGraph(std::size_t level, TileSystem sys, std::vector<VertexSet> vertices, std::vector<PowerEdge> edges);

  std::size_t level() const { return level_; }
  const TileSystem& system() const { return sys_; }
  const std::vector<VertexSet>& vertices() const { return vertices_; }
  const std::vector<PowerEdge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }

  std::optional<std::size_t> index_of(const VertexSet& v) const;
  bool contains(const VertexSet& v) const { return index_of(v).has_value(); }
  bool has_edge(const VertexSet& src, std::size_t d, const VertexSet& dst) const;

  /// Outgoing edges sorted by (d, dst).
  const PowerEdge* out_begin(std::size_t i) const { return edges_.data() + offsets_[i]; }
  const PowerEdge* out_end(std::size_t i) const { return edges_.data() + offsets_[i + 1]; }
  std::size_t out_degree(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }

 private:
  std::size_t level_ = 0;
  TileSystem sys_;
  std::vector<VertexSet> vertices_;
  std::vector<PowerEdge> edges_;
  std::vector<std::size_t> offsets_;
  std::unordered_map<VertexSet, std::size_t, VertexSetHash> index_;
};

/// Sink removal on a power graph.
PowerGraph reduce(const PowerGraph& g);

/// G_l(S) from the reduced neighbor graph G(S).
PowerGraph power_graph(const BoundaryGraph& gs, std::size_t level);

/// G_1(S), ..., G_top(S); stops early once a level is empty.
class PowerTower {
 public:
  PowerTower() = default;
  PowerTower(const BoundaryGraph& gs, std::size_t max_level);

  std::size_t top() const { return levels_.size(); }
  const PowerGraph& level(std::size_t l) const { return levels_.at(l - 1); }
  const BoundaryGraph& base() const { return base_; }

  /// Whether G_{top+1} would be nonempty, decided without building it.
  bool next_level_nonempty() const;
  /// Whether B_v is nonempty, i.e. v is a vertex of G_{|v|}.
  bool is_vertex(const VertexSet& v) const;

 private:
  BoundaryGraph base_;
  std::vector<PowerGraph> levels_;
};

/// Edge (X, d, Y) present iff (-X, |D|-1-d, -Y) present, for collinear digit sets.
bool has_complement_symmetry(const PowerGraph& g);

/// (b1 ∪ (b2 + a2 - a1) ∪ {a2 - a1}) \ {0} if it is a power-graph vertex.
std::optional<VertexSet> intersection_vertex(const PowerTower& tower, const VertexSet& b1, const IntVector& a1,
                                             const VertexSet& b2, const IntVector& a2);

struct DigitWord {
  std::vector<std::size_t> preperiod;
  std::vector<std::size_t> period;

  /// Shortest preperiod and primitive period describing the same sequence.
  DigitWord canonical() const;
  bool operator==(const DigitWord&) const = default;
  std::size_t at(std::size_t i) const;
  std::string str() const;
};

/// Rotation of w that is lexicographically least (Booth).
std::vector<std::size_t> least_rotation(const std::vector<std::size_t>& w);

class WalkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DigitWord unique_walk(const PowerGraph& g, const VertexSet& start, std::size_t max_steps = 100000);

/// x = sum_{j>=1} M^{-j} D[w_j].
RationalVector walk_point(const DigitWord& w, const TileSystem& sys);

/// f_{d_1} o ... o f_{d_k}(x) with f_d(x) = M^{-1}(x + D[d]).
RationalVector apply_maps(const std::vector<std::size_t>& word, const RationalVector& x, const TileSystem& sys);

struct SubtileRef {
  std::size_t depth = 1;
  std::vector<std::size_t> word;  // d_1 ... d_{depth-1}
  VertexSet vertex;

  /// a with f_{d_1...d_{k-1}}(B_v) = M^{-(k-1)}(B_v + a).
  IntVector offset(const TileSystem& sys) const;
  bool operator==(const SubtileRef&) const = default;
};

std::vector<SubtileRef> subdivide(const SubtileRef& ref, std::size_t steps, const PowerGraph& g);

}  // namespace tileforge
