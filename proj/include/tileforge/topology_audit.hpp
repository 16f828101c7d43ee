#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tileforge/abc_family.hpp"

namespace tileforge {

/// Contact set, neighbor set, G(S) and G_1..G_max_level for one tile.
struct TileAnalysis {
  TileSystem system;
  std::optional<AbcParams> params;
  ContactSet contact;
  NeighborSet neighbors;
  BoundaryGraph neighbor_graph;
  PowerTower tower;

  static TileAnalysis run(const AbcParams& p, std::size_t max_level = 4);
  static TileAnalysis run(const AbcParams& p, const std::vector<IntVector>& basis, std::size_t max_level = 4);
  static TileAnalysis run(const TileSystem& sys, const std::vector<IntVector>& basis, std::size_t max_level = 4);

  const PowerGraph& g(std::size_t level) const { return tower.level(level); }
  std::size_t level_size(std::size_t level) const;
  const AbcParams& abc() const;
};

struct HataGraph {
  struct Edge {
    std::size_t a, b;
    VertexSet meet;  // normalized union relative to node a
  };
  std::vector<SubtileRef> nodes;
  std::vector<IntVector> offsets;
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> adjacency;
};

/// Pieces f_w(B_v) at one common depth; edges by the exact intersection test.
HataGraph hata_graph(const TileAnalysis& an, std::vector<SubtileRef> nodes);

enum class ChainKind { path, cycle, regular_chain, circular_chain, connected, disconnected, other };
std::string to_string(ChainKind k);

struct ChainReport {
  ChainKind kind = ChainKind::other;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::vector<SubtileRef> order;  // chain order when path- or cycle-shaped
  std::optional<std::pair<SubtileRef, SubtileRef>> witness;
  std::string detail;

  bool is_path() const { return kind == ChainKind::path || kind == ChainKind::regular_chain; }
};

ChainReport classify(const HataGraph& h);

/// Children B_{a'} + D[d] for edges a ->d a' of G_2 (the first subdivision scaled by M).
HataGraph successor_collection(const TileAnalysis& an, const VertexSet& alpha);
ChainReport successor_hata(const TileAnalysis& an, const VertexSet& alpha);

/// L_{alpha,k}: union over {alpha,beta} in G_2 of C_k({alpha,beta}).
std::vector<SubtileRef> boundary_loop(const TileAnalysis& an, const IntVector& alpha, std::size_t k);
ChainReport boundary_loop_audit(const TileAnalysis& an, const IntVector& alpha, std::size_t k);

struct FourFoldReport {
  VertexSet vertex;
  std::vector<VertexSet> supersets;
  std::vector<std::size_t> first_digits;
  bool branching = false;
  bool pass = false;
  std::string detail;
};

FourFoldReport four_fold_placement(const TileAnalysis& an, const VertexSet& alpha);

struct ComplexCensus {
  std::size_t faces = 0, edges = 0, points = 0;
  long euler = 0;
  std::vector<std::size_t> degree_sequence;  // ascending
  std::size_t hata_edges = 0;
};

ComplexCensus census(const TileAnalysis& an);

struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}
  std::string name;
  bool pass = true;
  std::vector<std::string> failures;
  void fail(std::string why) {
    pass = false;
    failures.push_back(std::move(why));
  }
};

struct BingReport {
  CheckResult curve;               // nodes of L_{alpha,k} meet neighbors in exactly 2 points, no triple points
  CheckResult ordered_equations;   // adjacent-only intersections in the seven ordered set equations
  CheckResult partition_schedule;  // A_i connected and nondegenerate for the O_1..O_14 order
  bool pass() const { return curve.pass && ordered_equations.pass && partition_schedule.pass; }
};

BingReport bing_audit(const TileAnalysis& an, std::size_t k_max);

/// j < i with {O_i, O_j} in G_2, for i = 1..14 (1-based face indices).
std::vector<std::vector<std::size_t>> partition_schedule(const TileAnalysis& an);

/// Full audit for a 14-neighbor ABC tile.
struct AuditSummary {
  std::vector<CheckResult> checks;
  bool pass() const;
};

struct AuditOptions {
  std::size_t loop_depth = 2;
  std::size_t bing_depth = 2;
  bool tables = true;
};

AuditSummary audit(const TileAnalysis& an, const AuditOptions& opt = {});

}  // namespace tileforge
