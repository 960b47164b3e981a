#include "braidscape/cli.hpp"

#include "braidscape/arcs.hpp"
#include "braidscape/cells.hpp"
#include "braidscape/clouds.hpp"
#include "braidscape/cohomology.hpp"
#include "braidscape/errors.hpp"
#include "braidscape/planner.hpp"
#include "braidscape/tc.hpp"
#include "braidscape/tree.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace braidscape::cli {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_doc(const json& doc, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << doc.dump(2) << "\n";
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ParseError("cannot write file: " + out_path);
  f << doc.dump(2) << "\n";
}

json envelope(const RunReport& rep) {
  return json{{"command", rep.command}, {"input_hash", rep.input_hash},
              {"caps", json{{"max_cells", rep.max_cells}}}};
}

json cell_json(const OrderedTree& ot, const Cell& c) {
  json arr = json::array();
  for (int m : c.members) arr.push_back(element_label(ot, m));
  return arr;
}

json diagram_json(const OrderedTree& ot, const CloudDiagram& d) {
  json edges = json::array();
  for (int e : d.edges) edges.push_back(element_label(ot, ot.V() + e));
  json clouds = json::array();
  for (const auto& [anchor, value] : d.clouds) {
    clouds.push_back(json{{"anchor", element_label(ot, anchor)}, {"value", value}});
  }
  return json{{"edges", edges}, {"clouds", clouds}};
}

json arc_json(const OrderedTree& ot, const OrientedArc& a) {
  json path = json::array();
  for (int v : a.path) path.push_back(ot.id_of(v));
  return json{{"path", path}, {"start_inside", a.start_inside}, {"end_inside", a.end_inside}};
}

OrientedArc arc_from_json(const OrderedTree& ot, const json& j) {
  OrientedArc a;
  for (const auto& id : j.at("path")) {
    auto v = ot.vertex_by_id(id.get<std::string>());
    if (!v) throw ParseError("unknown vertex in arc: " + id.get<std::string>());
    a.path.push_back(*v);
  }
  a.start_inside = j.at("start_inside").get<bool>();
  a.end_inside = j.at("end_inside").get<bool>();
  return a;
}

json vertices_json(const OrderedTree& ot, const std::vector<int>& vs) {
  json arr = json::array();
  for (int v : vs) arr.push_back(ot.id_of(v));
  return arr;
}

std::vector<int> vertices_from_json(const OrderedTree& ot, const json& j) {
  std::vector<int> out;
  for (const auto& id : j) {
    auto v = ot.vertex_by_id(id.get<std::string>());
    if (!v) throw ParseError("unknown vertex id: " + id.get<std::string>());
    out.push_back(*v);
  }
  return out;
}

const char* arc_tag_name(ArcCaseTag t) {
  switch (t) {
    case ArcCaseTag::Statement1: return "statement1";
    case ArcCaseTag::Case2a: return "case2a";
    case ArcCaseTag::Case2bEven: return "case2b_even";
    case ArcCaseTag::Case2bOdd: return "case2b_odd";
  }
  return "?";
}

ArcCaseTag arc_tag_from(const std::string& s) {
  if (s == "statement1") return ArcCaseTag::Statement1;
  if (s == "case2a") return ArcCaseTag::Case2a;
  if (s == "case2b_even") return ArcCaseTag::Case2bEven;
  if (s == "case2b_odd") return ArcCaseTag::Case2bOdd;
  throw ParseError("unknown arc certificate tag: " + s);
}

json arc_certificate_json(const OrderedTree& ot, const ArcCertificate& c) {
  json arcs = json::array();
  for (const auto& a : c.arcs) arcs.push_back(arc_json(ot, a));
  json doc{{"tag", arc_tag_name(c.tag)}, {"n", c.n},           {"q", c.q},
           {"epsilon", c.epsilon},       {"k", c.k},           {"r_prime", c.r_prime},
           {"s_prime", c.s_prime},       {"arcs", arcs}};
  if (c.arc0) doc["arc0"] = arc_json(ot, *c.arc0);
  doc["V_targets"] = vertices_json(ot, c.V_targets);
  doc["W_targets"] = vertices_json(ot, c.W_targets);
  doc["Wp_targets"] = vertices_json(ot, c.Wp_targets);
  doc["over3"] = vertices_json(ot, c.over3);
  doc["deg3"] = vertices_json(ot, c.deg3);
  return doc;
}

ArcCertificate arc_certificate_from_json(const OrderedTree& ot, const json& j) {
  ArcCertificate c;
  c.tag = arc_tag_from(j.at("tag").get<std::string>());
  c.n = j.at("n").get<int>();
  c.q = j.at("q").get<int>();
  c.epsilon = j.at("epsilon").get<int>();
  c.k = j.at("k").get<int>();
  c.r_prime = j.at("r_prime").get<int>();
  c.s_prime = j.at("s_prime").get<int>();
  for (const auto& a : j.at("arcs")) c.arcs.push_back(arc_from_json(ot, a));
  if (j.contains("arc0")) c.arc0 = arc_from_json(ot, j.at("arc0"));
  c.V_targets = vertices_from_json(ot, j.at("V_targets"));
  c.W_targets = vertices_from_json(ot, j.at("W_targets"));
  c.Wp_targets = vertices_from_json(ot, j.at("Wp_targets"));
  c.over3 = vertices_from_json(ot, j.at("over3"));
  c.deg3 = vertices_from_json(ot, j.at("deg3"));
  return c;
}

Cell cell_from_json(const OrderedTree& ot, const json& arr) {
  Cell c;
  for (const auto& item : arr) {
    std::string s = item.get<std::string>();
    if (s.rfind("v:", 0) == 0) {
      auto v = ot.vertex_by_id(s.substr(2));
      if (!v) throw ParseError("unknown vertex: " + s);
      c.members.push_back(*v);
    } else if (s.rfind("e:", 0) == 0) {
      auto dash = s.find('-', 2);
      if (dash == std::string::npos) throw ParseError("bad edge label: " + s);
      auto u = ot.vertex_by_id(s.substr(2, dash - 2));
      auto w = ot.vertex_by_id(s.substr(dash + 1));
      if (!u || !w) throw ParseError("unknown edge: " + s);
      int e = ot.edge_between(*u, *w);
      if (e < 0) throw ParseError("not an edge: " + s);
      c.members.push_back(ot.V() + e);
    } else {
      throw ParseError("bad element label: " + s);
    }
  }
  std::sort(c.members.begin(), c.members.end());
  return c;
}

json tc_document(const OrderedTree& ot, const TcResult& res, bool full) {
  const TcCertificate& c = res.cert;
  json doc;
  doc["n"] = res.n;
  doc["outcome"] = c.determined ? "determined" : "not_applicable";
  if (c.determined) {
    doc["case"] = tc_case_name(c.tc_case);
    doc["tc"] = c.value;
  } else {
    doc["reason"] = na_reason_name(c.reason);
  }
  doc["top_dim"] = c.top_dim;
  doc["lower_bound"] = c.lower_bound;
  doc["upper_bound"] = c.upper_bound;
  doc["applies_to"] = json{{"unordered", c.applies_unordered}, {"ordered", c.applies_ordered}};
  if (!c.ordered_note.empty()) doc["ordered_note"] = c.ordered_note;
  if (!c.diagnostics.empty()) doc["diagnostics"] = c.diagnostics;
  if (full) {
    doc["subdivided_tree"] = json::parse(tree_to_json(res.subdivided));
    if (c.arc_cert) doc["arc_certificate"] = arc_certificate_json(ot, *c.arc_cert);
    if (c.phi) doc["phi"] = cell_json(ot, *c.phi);
    if (c.psi) doc["psi"] = cell_json(ot, *c.psi);
    json pf = json::array(), qf = json::array();
    for (const auto& d : c.phi_factors) pf.push_back(diagram_json(ot, d));
    for (const auto& d : c.psi_factors) qf.push_back(diagram_json(ot, d));
    doc["phi_factors"] = pf;
    doc["psi_factors"] = qf;
  }
  return doc;
}

json path_json(const OrderedTree& ot, const PlannedPath& p) {
  json frames = json::array();
  for (const auto& f : p.frames) {
    json pts = json::array();
    for (const auto& pt : f.points) pts.push_back(point_to_string(ot, pt));
    frames.push_back(json{{"time", numerator(f.time).str() + "/" + denominator(f.time).str()},
                          {"points", pts}});
  }
  return json{{"ordered", p.ordered}, {"stratum_l", p.stratum_sum}, {"frames", frames}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"topological-complexity certificates and motion planning for points on trees"};
  app.require_subcommand(1);

  std::string tree_path, out_path, cert_path, from_cfg, to_cfg, dims_csv, frames_out;
  int n = 1, k = 0, max_dim = -1;
  bool full_json = false, ordered = false, count_only = false;
  std::uint64_t max_cells = default_cell_cap();

  auto add_common = [&](CLI::App* cmd, bool needs_n) {
    cmd->add_option("--tree", tree_path, "tree JSON file")->required();
    if (needs_n) cmd->add_option("--n", n, "number of points")->required();
    cmd->add_option("--out", out_path, "write the JSON document here instead of stdout");
    cmd->add_option("--max-cells", max_cells, "enumeration guard override");
  };

  auto* c_stats = app.add_subcommand("stats", "essential-vertex counts and connectivity");
  add_common(c_stats, true);
  auto* c_sub = app.add_subcommand("subdivide", "minimal sufficient subdivision for n");
  add_common(c_sub, true);
  auto* c_cells = app.add_subcommand("cells", "enumerate configuration-space cells");
  add_common(c_cells, true);
  c_cells->add_option("--dims", dims_csv, "comma-separated dimensions (default: all)");
  c_cells->add_flag("--count-only", count_only, "emit per-dimension counts only");
  auto* c_crit = app.add_subcommand("critical", "critical k-cells and their class diagrams");
  add_common(c_crit, true);
  c_crit->add_option("--k", k, "dimension")->required();
  auto* c_hom = app.add_subcommand("homology", "Betti numbers via boundary-map ranks");
  add_common(c_hom, true);
  c_hom->add_option("--max-dim", max_dim, "largest homology degree (default n)");
  auto* c_tc = app.add_subcommand("tc", "decide the topological complexity");
  add_common(c_tc, true);
  c_tc->add_flag("--json", full_json, "full certificate document with witnesses");
  auto* c_arcs = app.add_subcommand("arcs", "minimal allowable arc collection");
  add_common(c_arcs, false);
  auto* c_plan = app.add_subcommand("plan", "plan a motion between two configurations");
  add_common(c_plan, true);
  c_plan->add_option("--from", from_cfg, "start configuration literal")->required();
  c_plan->add_option("--to", to_cfg, "goal configuration literal")->required();
  c_plan->add_flag("--ordered", ordered, "plan in the ordered configuration space");
  c_plan->add_option("--frames-out", frames_out, "write keyframes JSON to this file");
  auto* c_verify = app.add_subcommand("verify", "re-verify a tc certificate document");
  c_verify->add_option("--cert", cert_path, "certificate JSON from `tc --json`")->required();
  c_verify->add_option("--out", out_path, "write the JSON document here instead of stdout");

  std::vector<std::string> argv = args;
  std::vector<const char*> cargv{"braidscape"};
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  RunReport rep;
  for (const auto& a : args) rep.command += (rep.command.empty() ? "" : " ") + a;
  rep.max_cells = max_cells;
  const auto started = std::chrono::steady_clock::now();
  auto log_timing = [&]() {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - started)
                        .count();
    err << "timing_ms: " << ms << "\n";
  };

  try {
    json doc;
    int code = 0;

    if (c_verify->parsed()) {
      const std::string bytes = slurp(cert_path);
      rep.input_hash = fnv1a(bytes);
      json cj = json::parse(bytes);
      Tree sub = parse_tree(cj.at("subdivided_tree").dump());
      OrderedTree ot(sub);
      TcCertificate cert;
      cert.determined = cj.at("outcome").get<std::string>() == "determined";
      cert.value = cert.determined ? cj.at("tc").get<int>() : 0;
      cert.top_dim = cj.at("top_dim").get<int>();
      cert.lower_bound = cj.at("lower_bound").get<int>();
      cert.upper_bound = cj.at("upper_bound").get<int>();
      if (cj.contains("phi")) cert.phi = cell_from_json(ot, cj.at("phi"));
      if (cj.contains("psi")) cert.psi = cell_from_json(ot, cj.at("psi"));
      if (cj.contains("arc_certificate"))
        cert.arc_cert = arc_certificate_from_json(ot, cj.at("arc_certificate"));
      VerifyReport vrep = verify_certificate(ot, cj.at("n").get<int>(), cert, max_cells);
      doc = envelope(rep);
      doc["result"] = json{{"ok", vrep.ok}, {"checks", vrep.checks}};
      write_doc(doc, out_path, out);
      log_timing();
      return vrep.ok ? 0 : 1;
    }

    const std::string bytes = slurp(tree_path);
    rep.input_hash = fnv1a(bytes);
    Tree tree = parse_tree(bytes);
    doc = envelope(rep);

    if (c_stats->parsed()) {
      OrderedTree ot(tree);
      TreeStats st = tree_stats(ot);
      ConnectivityReport conn = connectivity(ot, n);
      json ess = json::array();
      for (int v : st.essentials) ess.push_back(ot.id_of(v));
      doc["result"] = json{{"vertices", ot.V()},
                           {"edges", ot.E()},
                           {"m", st.m},
                           {"r", st.r},
                           {"s", st.s},
                           {"essential", ess},
                           {"n", n},
                           {"unordered_connected", conn.unordered_connected},
                           {"ordered_connected", conn.ordered_connected}};
      if (!conn.note.empty()) doc["result"]["note"] = conn.note;
    } else if (c_sub->parsed()) {
      // emitted bare so the output is itself a loadable tree file
      Tree sub = subdivide_for(tree, n);
      write_doc(json::parse(tree_to_json(sub)), out_path, out);
      log_timing();
      return 0;
    } else if (c_cells->parsed()) {
      OrderedTree ot(tree);
      std::set<int> dims;
      if (dims_csv.empty()) {
        for (int d = 0; d <= n; ++d) dims.insert(d);
      } else {
        std::stringstream ss(dims_csv);
        std::string item;
        while (std::getline(ss, item, ',')) dims.insert(std::stoi(item));
      }
      std::map<int, long long> counts;
      json cells = json::array();
      enumerate_cells(ot, n, dims,
                      [&](const Cell& c) {
                        ++counts[cell_dim(ot, c)];
                        if (!count_only) cells.push_back(cell_json(ot, c));
                      },
                      max_cells);
      json jc = json::object();
      for (const auto& [d, cnt] : counts) jc[std::to_string(d)] = cnt;
      doc["result"] = json{{"counts", jc}};
      if (!count_only) doc["result"]["cells"] = cells;
    } else if (c_crit->parsed()) {
      OrderedTree ot(tree);
      auto crit = critical_cells(ot, n, k, max_cells);
      json cells = json::array(), diagrams = json::array();
      for (const Cell& c : crit) {
        cells.push_back(cell_json(ot, c));
        diagrams.push_back(diagram_json(ot, cloud_diagram(ot, c)));
      }
      doc["result"] =
          json{{"k", k}, {"count", crit.size()}, {"cells", cells}, {"diagrams", diagrams}};
    } else if (c_hom->parsed()) {
      OrderedTree ot(tree);
      const int md = max_dim < 0 ? n : max_dim;
      auto betti = homology_oracle(ot, n, md, max_cells);
      doc["result"] = json{{"betti", betti}, {"max_dim", md}};
    } else if (c_tc->parsed()) {
      TcOptions opts;
      opts.cell_cap = max_cells;
      TcResult res = decide_tc(tree, n, opts);
      OrderedTree ot(res.subdivided);
      doc["result"] = tc_document(ot, res, full_json);
      code = res.cert.determined ? 0 : 2;
    } else if (c_arcs->parsed()) {
      OrderedTree ot(tree);
      MinAllowableResult mk = min_allowable_k(ot);
      json arcs = json::array();
      for (const auto& a : mk.arcs) arcs.push_back(arc_json(ot, a));
      doc["result"] = json{{"k", mk.k}, {"arcs", arcs}};
    } else if (c_plan->parsed()) {
      OrderedTree ot(tree);
      if (!sufficiently_subdivided(tree, n))
        throw ParseError("tree is not sufficiently subdivided for n; run `subdivide` first");
      Configuration from = parse_configuration(ot, from_cfg, ordered);
      Configuration to = parse_configuration(ot, to_cfg, ordered);
      if (from.n() != n || to.n() != n)
        throw ParseError("configuration point count does not match --n");
      PlannedPath path =
          ordered ? plan_ordered(ot, from, to) : plan_unordered(ot, from, to);
      PathValidation v = validate_path(ot, path);
      if (!v.ok) throw std::logic_error("planned path failed validation: " + v.violation);
      json pj = path_json(ot, path);
      if (!frames_out.empty()) {
        write_doc(pj, frames_out, out);
        doc["result"] = json{{"frames_written", frames_out},
                             {"frames", path.frames.size()},
                             {"stratum_l", path.stratum_sum},
                             {"valid", true}};
      } else {
        doc["result"] = pj;
      }
    }

    write_doc(doc, out_path, out);
    log_timing();
    return code;
  } catch (const CapExceeded& e) {
    err << "error (cap_exceeded): " << e.what() << "\n";
    return 1;
  } catch (const SearchBoundExceeded& e) {
    err << "error (search_bound_exceeded): " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "error (parse): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace braidscape::cli
