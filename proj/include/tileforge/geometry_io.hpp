#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "tileforge/sweep.hpp"

namespace tileforge {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Point cap, TILEFORGE_CAP_POINTS when set, else 10^7.
std::size_t point_cap();

/// Points numerators[i] / denominator, exact until written out.
struct PointCloud {
  std::size_t dim = 3;
  std::vector<Int> numerators;  // dim entries per point
  Int denominator = 1;
  std::vector<std::uint8_t> face;  // empty, or one id per point
  std::size_t depth = 0;
  std::string source;

  std::size_t size() const { return dim == 0 ? 0 : numerators.size() / dim; }
  RationalVector point(std::size_t i) const;
  std::vector<double> coords(std::size_t i) const;
  void append(const PointCloud& other);
};

/// Sum over j >= 1 of ||M^-j||_inf times max ||d||_inf, in floating point.
double attractor_radius(const TileSystem& sys);

/// f_w(0) for all |D|^depth words w.
PointCloud approximate_tile(const TileSystem& sys, std::size_t depth, std::optional<std::size_t> cap = {});

/// f_{d_1...d_depth}(0) for every length-depth walk alpha ->d_1 ... in G(S).
PointCloud approximate_boundary_piece(const BoundaryGraph& gs, const IntVector& alpha, std::size_t depth,
                                      std::optional<std::size_t> cap = {});

/// Number of length-depth walks from alpha, saturating at SIZE_MAX.
std::size_t walk_count(const BoundaryGraph& gs, const IntVector& alpha, std::size_t depth);

struct GraphDocument {
  struct Edge {
    std::string src, dst, label;
    bool operator==(const Edge&) const = default;
  };
  bool directed = true;
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  bool operator==(const GraphDocument&) const = default;
};

GraphDocument graph_document(const BoundaryGraph& g);
GraphDocument graph_document(const PowerGraph& g);
GraphDocument graph_document(const HataGraph& h);

std::string subtile_label(const SubtileRef& r);

/// Rebuilds a boundary graph from its document; edges are checked against the system.
BoundaryGraph boundary_graph_from(const GraphDocument& doc, const TileSystem& sys);

std::string to_dot(const GraphDocument& doc);
GraphDocument parse_dot(const std::string& text);

std::string to_ply(const PointCloud& cloud);
std::string to_csv(const std::vector<SweepRecord>& records);

nlohmann::ordered_json to_json(const GraphDocument& doc);
nlohmann::ordered_json to_json(const SweepRecord& r);
nlohmann::ordered_json to_json(const CheckResult& c);
nlohmann::ordered_json analysis_report(const TileAnalysis& an, const std::optional<AuditSummary>& summary);

struct AuditDocument {
  nlohmann::ordered_json body;
};

using Document = std::variant<GraphDocument, PointCloud, std::vector<SweepRecord>, AuditDocument>;
enum class Format { dot, ply, json, csv };

Format parse_format(const std::string& name);
std::string serialize(const Document& doc, Format fmt);
void export_document(const Document& doc, Format fmt, const std::string& path);

}  // namespace tileforge
