#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "tileforge/geometry_io.hpp"

using namespace tileforge;

namespace {

struct TileInput {
  std::string abc, matrix, digits, basis;
};

void add_tile_options(CLI::App* cmd, TileInput& in) {
  auto* abc = cmd->add_option("--abc", in.abc, "A,B,C for the companion matrix of x^3+Ax^2+Bx+C");
  auto* m = cmd->add_option("--matrix", in.matrix, "integer matrix as JSON rows, inline or a file path");
  auto* d = cmd->add_option("--digits", in.digits, "digit vectors as JSON, inline or a file path");
  cmd->add_option("--basis", in.basis, "lattice basis for the contact set seed, e.g. 1,0,0;1,1,0;2,1,1");
  abc->excludes(m)->excludes(d);
  m->needs(d);
  d->needs(m);
}

nlohmann::json read_json_arg(const std::string& arg) {
  std::string text = arg;
  if (arg.find('[') == std::string::npos) {
    std::ifstream f(arg);
    if (!f) throw InputError("cannot read " + arg);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("bad JSON in " + arg + ": " + e.what());
  }
}

std::vector<Int> int_list(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be a JSON array");
  std::vector<Int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError(what + " entries must be integers");
    out.push_back(x.get<Int>());
  }
  return out;
}

struct Resolved {
  TileSystem sys;
  std::optional<AbcParams> params;
  std::vector<IntVector> basis;
};

Resolved resolve(const TileInput& in) {
  Resolved r;
  if (!in.abc.empty()) {
    r.params = AbcParams::parse(in.abc);
    r.sys = companion_form(*r.params);
    r.basis = default_basis(*r.params);
  } else if (!in.matrix.empty()) {
    const auto mj = read_json_arg(in.matrix);
    if (!mj.is_array() || mj.empty()) throw InputError("--matrix must be a non-empty array of rows");
    std::vector<Int> flat;
    for (const auto& row : mj) {
      auto v = int_list(row, "matrix row");
      if (v.size() != mj.size()) throw InputError("--matrix must be square");
      flat.insert(flat.end(), v.begin(), v.end());
    }
    IntMatrix m(mj.size(), flat);
    std::vector<IntVector> digits;
    for (const auto& d : read_json_arg(in.digits)) {
      auto v = int_list(d, "digit");
      if (v.size() != m.dim()) throw InputError("digit dimension does not match the matrix");
      digits.emplace_back(v);
    }
    DigitSet ds(digits);
    if (!is_expanding(m)) throw InputError("matrix is not expanding");
    if (!is_complete_residue_system(m, ds)) throw InputError("digits are not a complete residue system mod M");
    r.sys = TileSystem{m, ds};
    for (std::size_t i = 0; i < m.dim(); ++i) {
      IntVector e(m.dim());
      e[i] = 1;
      r.basis.push_back(e);
    }
  } else {
    throw InputError("give --abc or --matrix with --digits");
  }
  if (!in.basis.empty()) r.basis = VertexSet::parse(in.basis).members();
  return r;
}

TileAnalysis run_analysis(const Resolved& r) {
  TileAnalysis an = TileAnalysis::run(r.sys, r.basis, 4);
  an.params = r.params;
  return an;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw std::runtime_error("write to " + path + " failed");
}

// Summary lines go to stderr when a document is written to stdout.
std::ostream& status(std::initializer_list<std::string> paths) {
  for (const auto& p : paths)
    if (p == "-") return std::cerr;
  return std::cout;
}

int run_analyze(const TileInput& in, const std::string& json_path, const std::string& dot_path,
                const std::string& graph, std::size_t k) {
  const Resolved r = resolve(in);
  const TileAnalysis an = run_analysis(r);
  std::optional<AuditSummary> summary;
  if (an.params) {
    AuditOptions opt;
    opt.loop_depth = k;
    opt.bing_depth = k;
    summary = audit(an, opt);
  }
  std::ostream& out = status({json_path, dot_path});
  out << (an.params ? an.params->str() : std::string("explicit system")) << ": " << an.neighbors.points.size()
      << " neighbors, contact set " << an.contact.points.size();
  for (std::size_t l = 2; l <= an.tower.top(); ++l) out << ", |G" << l << "| " << an.level_size(l);
  if (summary) out << ", audit " << (summary->pass() ? "pass" : "FAIL");
  out << "\n";
  if (summary)
    for (const auto& c : summary->checks)
      for (const auto& f : c.failures) std::cerr << c.name << ": " << f << "\n";

  if (!json_path.empty()) write_text(json_path, serialize(AuditDocument{analysis_report(an, summary)}, Format::json));
  if (!dot_path.empty()) {
    GraphDocument doc;
    if (graph == "contact") {
      doc = graph_document(build_graph(without_zero(an.contact.points), an.system));
    } else if (graph == "neighbor") {
      doc = graph_document(an.neighbor_graph);
    } else if (graph.size() == 2 && graph[0] == 'g' && graph[1] >= '1' && graph[1] <= '4') {
      const std::size_t l = static_cast<std::size_t>(graph[1] - '0');
      if (l > an.tower.top()) throw InputError("G" + graph.substr(1) + " was not computed");
      doc = graph_document(an.g(l));
    } else {
      throw InputError("unknown graph '" + graph + "'");
    }
    write_text(dot_path, to_dot(doc));
  }
  return 0;
}

int run_sweep(Int max, unsigned jobs, const std::string& csv_path, const std::string& json_path, std::size_t k) {
  SweepOptions opt;
  opt.a_max = opt.b_max = opt.c_max = max;
  opt.jobs = jobs;
  opt.audit.loop_depth = k;
  opt.audit.bing_depth = k;
  const auto records = sweep(opt);
  std::size_t disagreements = 0, failures = 0;
  for (const auto& r : records) {
    if (!r.agrees) ++disagreements;
    if (!r.audit_pass) ++failures;
    if (!r.agrees || !r.audit_pass) std::cerr << r.A << "," << r.B << "," << r.C << ": " << r.message << "\n";
  }
  if (!csv_path.empty()) write_text(csv_path, to_csv(records));
  if (!json_path.empty()) write_text(json_path, serialize(records, Format::json));
  std::ostream& out = status({csv_path, json_path});
  out << records.size() << " triples checked, " << disagreements << " disagreements";
  if (failures) out << ", " << failures << " audit failures";
  out << "\n";
  return disagreements == 0 && failures == 0 ? 0 : 1;
}

int run_render(const TileInput& in, std::optional<std::size_t> depth, const std::string& ply_path, bool boundary) {
  const Resolved r = resolve(in);
  PointCloud cloud;
  if (boundary) {
    const std::size_t k = depth.value_or(6);
    const TileAnalysis an = run_analysis(r);
    const BoundaryGraph& gs = an.neighbor_graph;
    if (gs.vertex_count() > 256) throw InputError("too many faces for uchar face ids");
    std::size_t total = 0;
    for (const auto& a : gs.vertices()) total += walk_count(gs, a, k);
    if (total > point_cap())
      throw CapExceeded("boundary at depth " + std::to_string(k) + " needs " + std::to_string(total) +
                        " points, cap is " + std::to_string(point_cap()));
    for (std::size_t i = 0; i < gs.vertex_count(); ++i) {
      PointCloud piece = approximate_boundary_piece(gs, gs.vertices()[i], k);
      if (i == 0) {
        cloud = piece;
        cloud.source = "boundary";
      } else {
        cloud.append(piece);
      }
    }
  } else {
    cloud = approximate_tile(r.sys, depth.value_or(8));
  }
  write_text(ply_path, to_ply(cloud));
  std::ostream& out = status({ply_path});
  out << "wrote " << cloud.size() << " points";
  if (boundary) out << " on " << static_cast<unsigned>(cloud.face.empty() ? 0 : cloud.face.back() + 1) << " boundary pieces";
  out << " to " << ply_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neighbor structure and boundary topology of self-affine tiles"};
  app.require_subcommand(1);

  TileInput analyze_in;
  std::string json_path, dot_path, graph = "contact";
  std::size_t k = 2;
  auto* analyze = app.add_subcommand("analyze", "contact set, neighbor set, power graphs and audit for one tile");
  add_tile_options(analyze, analyze_in);
  analyze->add_option("--json", json_path, "write the JSON report here ('-' for stdout)");
  analyze->add_option("--dot", dot_path, "write a graph as DOT here ('-' for stdout)");
  analyze->add_option("--graph", graph, "graph for --dot: contact, neighbor, g1..g4")->capture_default_str();
  analyze->add_option("--k", k, "depth for boundary loop and chain audits")->capture_default_str()->check(CLI::Range(1, 8));

  Int max = 10;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string csv_path, sweep_json;
  std::size_t sweep_k = 2;
  auto* sw = app.add_subcommand("sweep", "check every 1 <= A <= B < C <= max");
  sw->add_option("--max", max, "bound on A, B and C")->capture_default_str()->check(CLI::Range(Int{2}, Int{1000}));
  sw->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 1024u));
  sw->add_option("--csv", csv_path, "write records as CSV here ('-' for stdout)");
  sw->add_option("--json", sweep_json, "write records as JSON here ('-' for stdout)");
  sw->add_option("--k", sweep_k, "depth for boundary loop and chain audits")->capture_default_str()->check(CLI::Range(1, 8));

  TileInput render_in;
  std::optional<std::size_t> depth;
  std::string ply_path;
  bool boundary = false;
  auto* render = app.add_subcommand("render", "point clouds of the tile or its boundary pieces as PLY");
  add_tile_options(render, render_in);
  render->add_option("--depth", depth, "word length (default 8 for the tile, 6 for the boundary)")->check(CLI::Range(1, 1000));
  render->add_option("--ply", ply_path, "output PLY path ('-' for stdout)")->required();
  render->add_flag("--boundary", boundary, "one face-tagged cloud per neighbor instead of the tile");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return run_analyze(analyze_in, json_path, dot_path, graph, k);
    if (*sw) return run_sweep(max, jobs, csv_path, sweep_json, sweep_k);
    if (*render) return run_render(render_in, depth, ply_path, boundary);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
