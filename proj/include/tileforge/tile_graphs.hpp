#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "tileforge/lattice_core.hpp"

namespace tileforge {

/// Edge src ->(d|d') dst with M src + D[d'] - D[d] = dst; endpoints are vertex indices.
struct LabeledEdge {
  std::size_t src, dst, d, d_prime;
  auto operator<=>(const LabeledEdge&) const = default;
};

class BoundaryGraph {
 public:
  BoundaryGraph() = default;
  BoundaryGraph(TileSystem sys, std::vector<IntVector> vertices, std::vector<LabeledEdge> edges);

  const TileSystem& system() const { return sys_; }
  const std::vector<IntVector>& vertices() const { return vertices_; }
  const std::vector<LabeledEdge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }

  std::optional<std::size_t> index_of(const IntVector& v) const;
  bool contains(const IntVector& v) const { return index_of(v).has_value(); }

  /// Outgoing edges of vertex i, sorted by (dst, d, d').
  const LabeledEdge* out_begin(std::size_t i) const { return edges_.data() + offsets_[i]; }
  const LabeledEdge* out_end(std::size_t i) const { return edges_.data() + offsets_[i + 1]; }
  std::size_t out_degree(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }

  bool has_edge(const IntVector& src, std::size_t d, std::size_t d_prime, const IntVector& dst) const;

 private:
  TileSystem sys_;
  std::vector<IntVector> vertices_;
  std::vector<LabeledEdge> edges_;
  std::vector<std::size_t> offsets_;
  std::unordered_map<IntVector, std::size_t> index_;
};

std::vector<IntVector> canonical_set(std::vector<IntVector> points);

BoundaryGraph build_graph(const std::vector<IntVector>& gamma, const TileSystem& sys);

/// Induced subgraph on Red(vertices): repeated removal of sinks.
BoundaryGraph reduce(const BoundaryGraph& g);

std::vector<IntVector> reduced_set(const std::vector<IntVector>& gamma, const TileSystem& sys);

std::vector<IntVector> minkowski_sum(const std::vector<IntVector>& a, const std::vector<IntVector>& b);

std::vector<IntVector> without_zero(const std::vector<IntVector>& points);

/// Edge α ->(d|d') α' present iff -α ->(d'|d) -α' present, whenever both ends are in the graph.
bool has_negation_symmetry(const BoundaryGraph& g);

struct ContactSet {
  std::vector<IntVector> points;       // sorted, includes 0
  std::vector<IntVector> basis_used;
  std::vector<std::size_t> round_sizes;  // |R_0|, |R_1|, ... up to the first repeat
};

std::vector<IntVector> default_basis(const AbcParams& p);

ContactSet contact_set(const TileSystem& sys, const std::vector<IntVector>& basis,
                       std::size_t max_rounds = 64);

struct NeighborSet {
  std::vector<IntVector> points;        // sorted, excludes 0
  std::vector<std::size_t> round_sizes;  // |S_0|, |S_1|, ..., |S_q|, |S_{q+1}|
};

NeighborSet neighbor_set(const ContactSet& r, const TileSystem& sys, std::size_t max_rounds = 64);

}  // namespace tileforge
