#include "tileforge/geometry_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

namespace tileforge {

namespace {

std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
  return a * b;
}

std::size_t sat_add(std::size_t a, std::size_t b) {
  return b > std::numeric_limits<std::size_t>::max() - a ? std::numeric_limits<std::size_t>::max() : a + b;
}

void check_cap(std::size_t count, std::optional<std::size_t> cap, const std::string& what) {
  const std::size_t limit = cap ? *cap : point_cap();
  if (count > limit)
    throw CapExceeded(what + " needs " +
                      (count == std::numeric_limits<std::size_t>::max() ? std::string("too many") : std::to_string(count)) +
                      " points, cap is " + std::to_string(limit));
}

// x = M^-k w is stored as adj(M^k) w / det(M)^k.
struct Scaler {
  IntMatrix mk;
  explicit Scaler(const IntMatrix& m, std::size_t k) : mk(m.pow(static_cast<unsigned>(k))) {}
  void push(PointCloud& pc, const IntVector& w) const {
    IntVector x = mk.apply_adjugate(w);
    for (std::size_t i = 0; i < x.dim(); ++i) pc.numerators.push_back(x[i]);
  }
};

std::string float_text(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, static_cast<float>(v));
  std::string s(buf, res.ptr);
  return s == "-0" ? "0" : s;
}

std::string quoted(const std::string& s) {
  if (s.find('"') != std::string::npos) throw InputError("DOT labels may not contain quotes: " + s);
  return '"' + s + '"';
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::vector<std::string> point_strings(const std::vector<IntVector>& pts) {
  std::vector<std::string> out;
  for (const auto& p : pts) out.push_back(p.str());
  return out;
}

}  // namespace

std::size_t point_cap() {
  if (const char* env = std::getenv("TILEFORGE_CAP_POINTS")) {
    std::size_t v = 0;
    const char* end = env + std::strlen(env);
    auto res = std::from_chars(env, end, v);
    if (res.ec != std::errc{} || res.ptr != end) throw InputError(std::string("bad TILEFORGE_CAP_POINTS: ") + env);
    return v;
  }
  return 10'000'000;
}

RationalVector PointCloud::point(std::size_t i) const {
  RationalVector r(dim);
  for (std::size_t j = 0; j < dim; ++j) r[j] = Rational(numerators[i * dim + j], denominator);
  return r;
}

std::vector<double> PointCloud::coords(std::size_t i) const {
  std::vector<double> c(dim);
  for (std::size_t j = 0; j < dim; ++j)
    c[j] = static_cast<double>(static_cast<long double>(numerators[i * dim + j]) / denominator);
  return c;
}

void PointCloud::append(const PointCloud& other) {
  if (other.dim != dim || other.denominator != denominator)
    throw InputError("point clouds with different dimension or denominator cannot be merged");
  if (face.empty() != other.face.empty() && size() > 0 && other.size() > 0)
    throw InputError("cannot merge tagged and untagged point clouds");
  numerators.insert(numerators.end(), other.numerators.begin(), other.numerators.end());
  face.insert(face.end(), other.face.begin(), other.face.end());
}

double attractor_radius(const TileSystem& sys) {
  const std::size_t n = sys.dim();
  const IntMatrix& m = sys.matrix;
  std::vector<double> inv(n * n);
  for (std::size_t i = 0; i < n * n; ++i) inv[i] = static_cast<double>(m.adjugate()[i]) / static_cast<double>(m.det());
  double dmax = 0;
  for (const auto& d : sys.digits.digits())
    for (std::size_t i = 0; i < n; ++i) dmax = std::max(dmax, std::abs(static_cast<double>(d[i])));

  std::vector<double> p = inv;
  double total = 0;
  for (int j = 0; j < 100000; ++j) {
    double norm = 0;
    for (std::size_t r = 0; r < n; ++r) {
      double row = 0;
      for (std::size_t c = 0; c < n; ++c) row += std::abs(p[r * n + c]);
      norm = std::max(norm, row);
    }
    total += norm;
    if (norm < 1e-15 * std::max(1.0, total)) break;
    std::vector<double> q(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t c = 0; c < n; ++c) q[r * n + c] += p[r * n + k] * inv[k * n + c];
    p = std::move(q);
  }
  return total * dmax;
}

PointCloud approximate_tile(const TileSystem& sys, std::size_t depth, std::optional<std::size_t> cap) {
  if (depth < 1) throw InputError("depth must be at least 1");
  if (!is_expanding(sys.matrix)) throw InputError("matrix is not expanding");
  std::size_t count = 1;
  for (std::size_t i = 0; i < depth; ++i) count = sat_mul(count, sys.digits.size());
  check_cap(count, cap, "depth " + std::to_string(depth));

  PointCloud pc;
  pc.dim = sys.dim();
  pc.depth = depth;
  pc.source = "tile";
  Int den = 1;
  for (std::size_t i = 0; i < depth; ++i) den = checked_mul(den, sys.matrix.det());
  pc.denominator = den;
  pc.numerators.reserve(count * pc.dim);
  const Scaler sc(sys.matrix, depth);

  std::vector<IntVector> stack(depth + 1, IntVector(sys.dim()));
  std::vector<std::size_t> word(depth, 0);
  // Odometer over d_1 ... d_depth with d_depth fastest; stack[j] is the Horner prefix of length j.
  for (std::size_t j = 0; j < depth; ++j) stack[j + 1] = sys.matrix.apply(stack[j]) + sys.digits[0];
  while (true) {
    sc.push(pc, stack[depth]);
    std::size_t j = depth;
    while (j > 0 && word[j - 1] + 1 == sys.digits.size()) --j;
    if (j == 0) break;
    ++word[j - 1];
    for (std::size_t t = j - 1; t < depth; ++t) {
      if (t >= j) word[t] = 0;
      stack[t + 1] = sys.matrix.apply(stack[t]) + sys.digits[word[t]];
    }
  }
  return pc;
}

std::size_t walk_count(const BoundaryGraph& gs, const IntVector& alpha, std::size_t depth) {
  auto start = gs.index_of(alpha);
  if (!start) throw InputError(alpha.str() + " is not a vertex of the neighbor graph");
  std::vector<std::size_t> ways(gs.vertex_count(), 0);
  ways[*start] = 1;
  for (std::size_t s = 0; s < depth; ++s) {
    std::vector<std::size_t> next(gs.vertex_count(), 0);
    for (const auto& e : gs.edges()) next[e.dst] = sat_add(next[e.dst], ways[e.src]);
    ways = std::move(next);
  }
  std::size_t total = 0;
  for (auto w : ways) total = sat_add(total, w);
  return total;
}

PointCloud approximate_boundary_piece(const BoundaryGraph& gs, const IntVector& alpha, std::size_t depth,
                                      std::optional<std::size_t> cap) {
  if (depth < 1) throw InputError("depth must be at least 1");
  const std::size_t count = walk_count(gs, alpha, depth);
  check_cap(count, cap, "boundary piece " + alpha.str() + " at depth " + std::to_string(depth));

  const TileSystem& sys = gs.system();
  PointCloud pc;
  pc.dim = sys.dim();
  pc.depth = depth;
  pc.source = "boundary " + alpha.str();
  Int den = 1;
  for (std::size_t i = 0; i < depth; ++i) den = checked_mul(den, sys.matrix.det());
  pc.denominator = den;
  pc.numerators.reserve(count * pc.dim);
  const Scaler sc(sys.matrix, depth);

  auto rec = [&](auto&& self, std::size_t v, const IntVector& w, std::size_t left) -> void {
    if (left == 0) {
      sc.push(pc, w);
      return;
    }
    for (const LabeledEdge* e = gs.out_begin(v); e != gs.out_end(v); ++e)
      self(self, e->dst, sys.matrix.apply(w) + sys.digits[e->d], left - 1);
  };
  const std::size_t start = *gs.index_of(alpha);
  rec(rec, start, IntVector(sys.dim()), depth);
  if (gs.vertex_count() <= 256) pc.face.assign(pc.size(), static_cast<std::uint8_t>(start));
  return pc;
}

// ---------------------------------------------------------------- graphs

GraphDocument graph_document(const BoundaryGraph& g) {
  GraphDocument doc;
  doc.vertices = point_strings(g.vertices());
  for (const auto& e : g.edges())
    doc.edges.push_back({g.vertices()[e.src].str(), g.vertices()[e.dst].str(),
                         std::to_string(e.d) + "|" + std::to_string(e.d_prime)});
  return doc;
}

GraphDocument graph_document(const PowerGraph& g) {
  GraphDocument doc;
  for (const auto& v : g.vertices()) doc.vertices.push_back(v.str());
  for (const auto& e : g.edges())
    doc.edges.push_back({g.vertices()[e.src].str(), g.vertices()[e.dst].str(), std::to_string(e.d)});
  return doc;
}

std::string subtile_label(const SubtileRef& r) {
  std::string s;
  for (std::size_t i = 0; i < r.word.size(); ++i) s += (i ? "." : "") + std::to_string(r.word[i]);
  return s + "/" + r.vertex.str();
}

GraphDocument graph_document(const HataGraph& h) {
  GraphDocument doc;
  doc.directed = false;
  for (const auto& n : h.nodes) doc.vertices.push_back(subtile_label(n));
  for (const auto& e : h.edges) doc.edges.push_back({doc.vertices[e.a], doc.vertices[e.b], e.meet.str()});
  return doc;
}

BoundaryGraph boundary_graph_from(const GraphDocument& doc, const TileSystem& sys) {
  if (!doc.directed) throw InputError("boundary graphs are directed");
  std::vector<IntVector> verts;
  for (const auto& v : doc.vertices) verts.push_back(IntVector::parse(v));
  std::vector<IntVector> sorted = canonical_set(verts);
  auto index = [&](const std::string& s) {
    IntVector v = IntVector::parse(s);
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) throw InputError("edge endpoint " + s + " is not a listed vertex");
    return static_cast<std::size_t>(it - sorted.begin());
  };
  std::vector<LabeledEdge> edges;
  for (const auto& e : doc.edges) {
    const auto bar = e.label.find('|');
    if (bar == std::string::npos) throw InputError("edge label '" + e.label + "' is not of the form d|d'");
    LabeledEdge le{index(e.src), index(e.dst), std::stoul(e.label.substr(0, bar)), std::stoul(e.label.substr(bar + 1))};
    if (le.d >= sys.digits.size() || le.d_prime >= sys.digits.size()) throw InputError("digit index out of range in " + e.label);
    if (sys.matrix.apply(sorted[le.src]) + sys.digits[le.d_prime] - sys.digits[le.d] != sorted[le.dst])
      throw InputError("edge " + e.src + " -> " + e.dst + " [" + e.label + "] violates the boundary equation");
    edges.push_back(le);
  }
  return BoundaryGraph(sys, sorted, edges);
}

std::string to_dot(const GraphDocument& doc) {
  std::string out = doc.directed ? "digraph {\n" : "graph {\n";
  const char* arrow = doc.directed ? " -> " : " -- ";
  for (const auto& v : doc.vertices) out += "  " + quoted(v) + ";\n";
  for (const auto& e : doc.edges)
    out += "  " + quoted(e.src) + arrow + quoted(e.dst) + " [label=" + quoted(e.label) + "];\n";
  out += "}\n";
  return out;
}

GraphDocument parse_dot(const std::string& text) {
  static const std::regex vertex_re(R"re(^\s*"([^"]*)"\s*;\s*$)re");
  static const std::regex edge_re(R"re(^\s*"([^"]*)"\s*(->|--)\s*"([^"]*)"\s*\[label="([^"]*)"\]\s*;\s*$)re");
  GraphDocument doc;
  std::istringstream in(text);
  std::string line;
  bool opened = false, closed = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::smatch m;
    if (!opened) {
      if (line.rfind("digraph {", 0) == 0) doc.directed = true;
      else if (line.rfind("graph {", 0) == 0) doc.directed = false;
      else throw InputError("line " + std::to_string(lineno) + ": expected 'digraph {' or 'graph {'");
      opened = true;
    } else if (closed) {
      throw InputError("line " + std::to_string(lineno) + ": text after closing brace");
    } else if (line.find_first_not_of(" \t") == line.find('}') && line.find('}') != std::string::npos) {
      closed = true;
    } else if (std::regex_match(line, m, edge_re)) {
      if ((m[2] == "->") != doc.directed) throw InputError("line " + std::to_string(lineno) + ": wrong edge operator");
      doc.edges.push_back({m[1], m[3], m[4]});
    } else if (std::regex_match(line, m, vertex_re)) {
      doc.vertices.push_back(m[1]);
    } else {
      throw InputError("line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
    }
  }
  if (!closed) throw InputError("missing closing brace");
  return doc;
}

// ---------------------------------------------------------------- PLY, CSV, JSON

std::string to_ply(const PointCloud& cloud) {
  if (cloud.dim != 3) throw InputError("PLY export needs 3-dimensional points");
  const bool tagged = !cloud.face.empty();
  if (tagged && cloud.face.size() != cloud.size()) throw InputError("face ids do not match point count");
  std::string out = "ply\nformat ascii 1.0\n";
  out += "comment " + cloud.source + " depth " + std::to_string(cloud.depth) + "\n";
  out += "element vertex " + std::to_string(cloud.size()) + "\n";
  out += "property float x\nproperty float y\nproperty float z\n";
  if (tagged) out += "property uchar face\n";
  out += "end_header\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto c = cloud.coords(i);
    out += float_text(c[0]) + ' ' + float_text(c[1]) + ' ' + float_text(c[2]);
    if (tagged) out += ' ' + std::to_string(cloud.face[i]);
    out += '\n';
  }
  return out;
}

std::string to_csv(const std::vector<SweepRecord>& records) {
  std::string out = "A,B,C,neighbor_count,predicted_14,agrees,contact_size,g2,g3,g4_empty,euler,audit_pass\n";
  for (const auto& r : records) {
    out += std::to_string(r.A) + ',' + std::to_string(r.B) + ',' + std::to_string(r.C) + ',' +
           std::to_string(r.neighbor_count) + ',' + bool_text(r.predicted_14) + ',' + bool_text(r.agrees) + ',' +
           std::to_string(r.contact_size) + ',' + std::to_string(r.g2) + ',' + std::to_string(r.g3) + ',' +
           bool_text(r.g4_empty) + ',' + std::to_string(r.euler) + ',' + bool_text(r.audit_pass) + '\n';
  }
  return out;
}

nlohmann::ordered_json to_json(const GraphDocument& doc) {
  nlohmann::ordered_json j;
  j["directed"] = doc.directed;
  j["vertices"] = doc.vertices;
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : doc.edges) j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"label", e.label}});
  return j;
}

nlohmann::ordered_json to_json(const SweepRecord& r) {
  return {{"A", r.A},
          {"B", r.B},
          {"C", r.C},
          {"neighbor_count", r.neighbor_count},
          {"predicted_14", r.predicted_14},
          {"agrees", r.agrees},
          {"contact_size", r.contact_size},
          {"g2", r.g2},
          {"g3", r.g3},
          {"g4_empty", r.g4_empty},
          {"euler", r.euler},
          {"audit_pass", r.audit_pass},
          {"message", r.message}};
}

nlohmann::ordered_json to_json(const CheckResult& c) {
  return {{"name", c.name}, {"pass", c.pass}, {"failures", c.failures}};
}

nlohmann::ordered_json analysis_report(const TileAnalysis& an, const std::optional<AuditSummary>& summary) {
  nlohmann::ordered_json j;
  if (an.params) j["abc"] = {an.params->A, an.params->B, an.params->C};
  std::vector<std::vector<Int>> rows;
  for (std::size_t r = 0; r < an.system.dim(); ++r) {
    rows.emplace_back();
    for (std::size_t c = 0; c < an.system.dim(); ++c) rows.back().push_back(an.system.matrix.at(r, c));
  }
  j["matrix"] = rows;
  std::vector<std::vector<Int>> digits;
  for (const auto& d : an.system.digits.digits()) digits.push_back(d.coords());
  j["digits"] = digits;
  j["basis"] = point_strings(an.contact.basis_used);
  j["contact_size"] = an.contact.points.size();
  j["contact_set"] = point_strings(an.contact.points);
  j["contact_rounds"] = an.contact.round_sizes;
  j["neighbor_count"] = an.neighbors.points.size();
  j["neighbor_set"] = point_strings(an.neighbors.points);
  j["neighbor_rounds"] = an.neighbors.round_sizes;
  if (an.params) j["predicted_14"] = predicts_14(*an.params);
  nlohmann::ordered_json levels = nlohmann::ordered_json::object();
  for (std::size_t l = 1; l <= an.tower.top(); ++l) levels["g" + std::to_string(l)] = an.level_size(l);
  j["power_graph_sizes"] = levels;
  if (an.neighbors.points.size() == 14 && an.tower.top() >= 3) {
    ComplexCensus c = census(an);
    j["census"] = {{"faces", c.faces},           {"edges", c.edges},
                   {"points", c.points},         {"euler", c.euler},
                   {"hata_edges", c.hata_edges}, {"degree_sequence", c.degree_sequence}};
  }
  if (summary) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : summary->checks) checks.push_back(to_json(c));
    j["audit"] = {{"pass", summary->pass()}, {"checks", checks}};
  }
  return j;
}

// ---------------------------------------------------------------- export

Format parse_format(const std::string& name) {
  if (name == "dot") return Format::dot;
  if (name == "ply") return Format::ply;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw InputError("unknown format '" + name + "'");
}

std::string serialize(const Document& doc, Format fmt) {
  auto incompatible = [] { return InputError("document type cannot be written in this format"); };
  if (auto g = std::get_if<GraphDocument>(&doc)) {
    if (fmt == Format::dot) return to_dot(*g);
    if (fmt == Format::json) return to_json(*g).dump(2) + "\n";
    throw incompatible();
  }
  if (auto c = std::get_if<PointCloud>(&doc)) {
    if (fmt == Format::ply) return to_ply(*c);
    throw incompatible();
  }
  if (auto r = std::get_if<std::vector<SweepRecord>>(&doc)) {
    if (fmt == Format::csv) return to_csv(*r);
    if (fmt == Format::json) {
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& rec : *r) j.push_back(to_json(rec));
      return j.dump(2) + "\n";
    }
    throw incompatible();
  }
  const auto& a = std::get<AuditDocument>(doc);
  if (fmt == Format::json) return a.body.dump(2) + "\n";
  throw incompatible();
}

void export_document(const Document& doc, Format fmt, const std::string& path) {
  const std::string text = serialize(doc, fmt);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace tileforge
