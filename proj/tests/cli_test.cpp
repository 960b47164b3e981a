#include <doctest.h>

#include "braidscape/cli.hpp"
#include "braidscape/tree.hpp"
#include "support.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace braidscape;
using namespace braidscape::testing;
using nlohmann::json;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = "braidscape_test_" + std::to_string(counter++) + ".json";
    std::ofstream f(path);
    f << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

struct RunOut {
  int code;
  std::string out;
  std::string err;
};

RunOut run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: stats reports the interval warning") {
  TempFile tree(tree_to_json(path_tree(2)));
  RunOut r = run_cli({"stats", "--tree", tree.path, "--n", "3"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["result"]["m"] == 0);
  CHECK(doc["result"]["ordered_connected"] == false);
  CHECK(doc["result"]["note"].get<std::string>().find("interval") != std::string::npos);
}

TEST_CASE("cli: tc exit codes and values") {
  TempFile y(tree_to_json(y_tree()));
  {
    RunOut r = run_cli({"tc", "--tree", y.path, "--n", "3"});
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["result"]["tc"] == 3);
    CHECK(doc["result"]["outcome"] == "determined");
  }
  {
    RunOut r = run_cli({"tc", "--tree", y.path, "--n", "2"});
    CHECK(r.code == 2);
    json doc = json::parse(r.out);
    CHECK(doc["result"]["reason"] == "below_statement1_threshold");
  }
  {
    RunOut r = run_cli({"tc", "--tree", "no_such_file.json", "--n", "2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("error") != std::string::npos);
  }
}

TEST_CASE("cli: homology on the subdivided Y") {
  TempFile y2(tree_to_json(subdivide_for(y_tree(), 2)));
  RunOut r = run_cli({"homology", "--tree", y2.path, "--n", "2", "--max-dim", "1"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["result"]["betti"] == json::array({1, 1}));
}

TEST_CASE("cli: outputs are byte-identical across runs") {
  TempFile h(tree_to_json(h_tree()));
  for (auto args : std::vector<std::vector<std::string>>{
           {"tc", "--tree", h.path, "--n", "2", "--json"},
           {"critical", "--tree", h.path, "--n", "2", "--k", "1"},
           {"cells", "--tree", h.path, "--n", "2"},
           {"arcs", "--tree", h.path}}) {
    RunOut a = run_cli(args);
    RunOut b = run_cli(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("cli: tc --json round-trips through verify") {
  TempFile h(tree_to_json(h_tree()));
  RunOut r = run_cli({"tc", "--tree", h.path, "--n", "2", "--json"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  TempFile cert(doc["result"].dump());
  RunOut v = run_cli({"verify", "--cert", cert.path});
  CHECK(v.code == 0);
  json vdoc = json::parse(v.out);
  CHECK(vdoc["result"]["ok"] == true);

  // tampering with a witness cell must fail verification
  json bad = doc["result"];
  bad["psi"] = bad["phi"];
  TempFile badcert(bad.dump());
  RunOut vb = run_cli({"verify", "--cert", badcert.path});
  CHECK(vb.code == 1);
}

TEST_CASE("cli: plan validates and reports the stratum index") {
  TempFile y2(tree_to_json(subdivide_for(y_tree(), 2)));
  RunOut r = run_cli({"plan", "--tree", y2.path, "--n", "2", "--from", "v:x,v:y", "--to",
                      "v:y,v:x", "--ordered"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["result"]["frames"].size() > 2);
  // unordered swap of the same pair is a closed loop up to sorting
  RunOut u = run_cli({"plan", "--tree", y2.path, "--n", "2", "--from", "v:x,v:y", "--to",
                      "v:y,v:x"});
  CHECK(u.code == 0);
}

TEST_CASE("cli: subdivide emits a loadable tree") {
  TempFile y(tree_to_json(y_tree()));
  RunOut r = run_cli({"subdivide", "--tree", y.path, "--n", "4"});
  REQUIRE(r.code == 0);
  Tree sub = parse_tree(r.out);
  CHECK(sub.vertex_count() == 10);
}

TEST_CASE("cli: cap override propagates") {
  TempFile h(tree_to_json(subdivide_for(h_tree(), 3)));
  RunOut r = run_cli({"cells", "--tree", h.path, "--n", "3", "--max-cells", "5"});
  CHECK(r.code == 1);
  CHECK(r.err.find("cap_exceeded") != std::string::npos);
}
