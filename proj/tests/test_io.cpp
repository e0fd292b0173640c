#include "commands.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace monalg;
using namespace monalg::cli;

namespace {

std::string read_file(const std::string &name) {
  std::ifstream in(std::string(MONALG_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F> ValidationError validation_error(F f) {
  try {
    f();
  } catch (const ValidationError &e) {
    return e;
  }
  ADD_FAILURE() << "no validation error";
  return ValidationError("none", "");
}

template <class F> ParseError parse_error(F f) {
  try {
    f();
  } catch (const ParseError &e) {
    return e;
  }
  ADD_FAILURE() << "no parse error";
  return ParseError("none", 0, 0);
}

} // namespace

TEST(ParseInput, Examples) {
  auto c3 = parse_input("matrix 3 3 / 1 1 0 / 0 1 1 / 1 0 1");
  EXPECT_EQ(c3.kind, InputKind::matrix);
  EXPECT_EQ(c3.incidence().column_list(),
            (std::vector<IntVector>{{1, 0, 1}, {1, 1, 0}, {0, 1, 1}}));
  EXPECT_EQ(c3.clutter(), cycle_graph(3).as_clutter());

  auto c5 = parse_input("graph 5 / 1 2 / 2 3 / 3 4 / 4 5 / 5 1");
  EXPECT_EQ(c5.kind, InputKind::graph);
  EXPECT_EQ(c5.graph().edges(), cycle_graph(5).edges());
  EXPECT_FALSE(c5.graph().bipartite());

  auto tri = parse_input("clutter 3 / 1 2 / 2 3 / 1 3");
  EXPECT_EQ(tri.kind, InputKind::clutter);
  EXPECT_EQ(tri.clutter(), cycle_graph(3).as_clutter());
}

TEST(ParseInput, NewlinesCommentsAndSlashesMix) {
  auto a = parse_input("# C4\ngraph 4\n1 2 / 2 3\n3 4 # last two\n4 1\n");
  auto b = parse_input("graph 4 / 1 2 / 2 3 / 3 4 / 4 1");
  EXPECT_EQ(a, b);
}

TEST(ParseInput, DataFiles) {
  auto p = parse_input(read_file("pentagon.txt"));
  EXPECT_EQ(p.incidence().rows(), 5u);
  auto ex = parse_input(read_file("example10.txt"));
  ASSERT_EQ(ex.kind, InputKind::clutter);
  EXPECT_EQ(ex.edges.size(), 10u);
  for (const auto &e : ex.edges) EXPECT_EQ(e.size(), 7u);
}

TEST(ParseInput, ParseErrorsCarryPosition) {
  auto e = parse_error([] { parse_input("matrix 2 2\n1 0\n0 x\n"); });
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 3);

  e = parse_error([] { parse_input("matrix 2 3 / 1 0 1 / 0 1"); });
  EXPECT_EQ(e.line(), 1);
  EXPECT_NE(std::string(e.what()).find("row 2 has 2 entries"), std::string::npos);

  e = parse_error([] { parse_input("  polytope 3"); });
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.column(), 3);

  e = parse_error([] { parse_input("graph\n"); });
  EXPECT_EQ(e.line(), 1);

  e = parse_error([] { parse_input("matrix 1 1 / 1 / 1"); });
  EXPECT_NE(std::string(e.what()).find("more than 1 rows"), std::string::npos);

  e = parse_error([] { parse_input("matrix 3 1 / 1 / 1"); });
  EXPECT_NE(std::string(e.what()).find("expected 3 rows"), std::string::npos);

  EXPECT_THROW(parse_input(""), ParseError);
  EXPECT_THROW(parse_input("# only a comment\n"), ParseError);
  EXPECT_THROW(parse_input("graph 3 4 / 1 2"), ParseError);
  EXPECT_THROW(parse_input("matrix 1 1 / 99999999999999999999999"), ParseError);
}

TEST(ParseInput, ValidationErrorsNameTheRule) {
  struct Case {
    const char *text, *rule;
  };
  const Case cases[] = {
      {"matrix 2 2 / 1 0 / 0 0", "zero-row"},
      {"matrix 2 2 / 1 0 / 1 0", "zero-column"},
      {"matrix 2 2 / 1 -1 / 0 1", "negative-entry"},
      {"matrix 0 0", "empty-matrix"},
      {"clutter 3 / 1 2 / 1 2 3", "edge-containment"},
      {"clutter 3 / 1 2 / 2 1", "repeated-edge"},
      {"clutter 3 / 1 1 2", "repeated-vertex"},
      {"clutter 3 / 1 4", "vertex-range"},
      {"graph 3 / 1 1", "self-loop"},
      {"graph 3 / 1 2 3", "edge-size"},
      {"graph 3 / 0 1", "vertex-range"},
      {"graph 3", "no-edges"},
      {"graph 0 / 1 2", "vertex-count"},
  };
  for (const auto &c : cases) {
    auto e = validation_error([&] { parse_input(c.text); });
    EXPECT_EQ(e.rule(), c.rule) << c.text;
    EXPECT_NE(std::string(e.what()).find(c.rule), std::string::npos);
  }
  auto e = validation_error([] { parse_input("matrix 3 2\n1 1\n0 0\n1 0\n"); });
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 1);
}

TEST(ParseInput, IsolatedVerticesAreAllowed) {
  auto g = parse_input("graph 4 / 1 2 / 2 3");
  EXPECT_TRUE(g.graph().has_isolated_vertex());
  EXPECT_THROW(check_el_vegetariano(g.graph()), DomainError);
  auto dual = alexander_dual(g.clutter());
  EXPECT_EQ(dual.edges(), (std::vector<VertexSet>{{0, 2}, {1}}));
}

TEST(ParseInput, KindConversions) {
  auto m = parse_input("matrix 3 3 / 1 1 0 / 0 1 1 / 1 0 1");
  EXPECT_EQ(m.graph().as_clutter(), cycle_graph(3).as_clutter());
  auto wide = parse_input("matrix 2 1 / 2 / 1");
  EXPECT_THROW(wide.clutter(), DomainError);
  auto c = parse_input("clutter 3 / 1 2 3");
  EXPECT_THROW(c.graph(), DomainError);
}

TEST(JsonInput, MatchesTextForm) {
  auto a = parse_json_input(R"({"kind": "matrix", "rows": [[1, 1, 0], [0, 1, 1], [1, 0, 1]]})");
  EXPECT_EQ(a, parse_input("matrix 3 3 / 1 1 0 / 0 1 1 / 1 0 1"));
  auto g = parse_json_input(R"({"kind": "graph", "vertices": 4, "edges": [[1,2],[2,3],[3,4],[4,1]]})");
  EXPECT_EQ(g, parse_input("graph 4 / 1 2 / 2 3 / 3 4 / 4 1"));
  auto c = parse_json_input(R"({"kind": "clutter", "vertices": 3, "edges": [[1,2,3]]})");
  EXPECT_EQ(c, parse_input("clutter 3 / 1 2 3"));
}

TEST(JsonInput, Errors) {
  auto e = parse_error([] { parse_json_input("{\n  \"kind\": \"graph\",\n  \"vertices\": ]\n}"); });
  EXPECT_EQ(e.line(), 3);
  EXPECT_THROW(parse_json_input(R"({"rows": []})"), ParseError);
  EXPECT_THROW(parse_json_input(R"({"kind": "cone"})"), ParseError);
  EXPECT_THROW(parse_json_input(R"({"kind": "matrix", "rows": [[1, 0], [1]]})"), ParseError);
  EXPECT_THROW(parse_json_input(R"({"kind": "matrix", "rows": [[1, "a"]]})"), ParseError);
  EXPECT_THROW(parse_json_input(R"({"kind": "graph", "vertices": 3})"), ParseError);
  auto v = validation_error([] { parse_json_input(R"({"kind": "matrix", "rows": [[1, 0], [0, 0]]})"); });
  EXPECT_EQ(v.rule(), "zero-row");
  v = validation_error([] { parse_json_input(R"({"kind": "clutter", "vertices": 3, "edges": [[1], [1, 2]]})"); });
  EXPECT_EQ(v.rule(), "edge-containment");
}

// Random documents of each kind survive text and JSON round trips unchanged.
TEST(RoundTrip, TextAndJsonAreLossless) {
  std::mt19937 rng(7);
  for (int t = 0; t < 300; ++t) {
    InputDocument d;
    const int n = 1 + int(rng() % 6);
    if (t % 3 == 0) {
      d.kind = InputKind::matrix;
      d.vertices = n;
      auto a = fixture::random_matrix(rng, n, 1 + int(rng() % 5), 4);
      for (std::size_t i = 0; i < a.rows(); ++i) d.rows.push_back(a.row(i));
    } else if (t % 3 == 1) {
      if (n < 2) continue;
      d.kind = InputKind::graph;
      d.vertices = n;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (rng() % 2) d.edges.push_back(rng() % 2 ? VertexSet{u, v} : VertexSet{v, u});
      if (d.edges.empty()) continue;
      std::shuffle(d.edges.begin(), d.edges.end(), rng);
    } else {
      d.kind = InputKind::clutter;
      d.vertices = n;
      const int k = 1 + int(rng() % n); // k-uniform, hence a clutter
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (int r = 0; r < 4; ++r) {
        std::shuffle(perm.begin(), perm.end(), rng);
        VertexSet e(perm.begin(), perm.begin() + k);
        VertexSet s = e;
        std::sort(s.begin(), s.end());
        bool dup = false;
        for (auto f : d.edges) {
          std::sort(f.begin(), f.end());
          dup = dup || f == s;
        }
        if (!dup) d.edges.push_back(e);
      }
    }
    auto text = to_text(d);
    EXPECT_EQ(parse_input(text), d) << text;
    EXPECT_EQ(parse_json_input(to_json_input(d).dump()), d) << text;
    EXPECT_EQ(input_digest(parse_input(text)), input_digest(d));
  }
}

TEST(Digest, StableAndSensitive) {
  auto a = parse_input("graph 3 / 1 2 / 2 3");
  auto b = parse_input("# same graph\ngraph 3\n1 2\n2 3\n");
  auto c = parse_input("graph 3 / 2 3 / 1 2");
  EXPECT_EQ(input_digest(a), input_digest(b));
  EXPECT_NE(input_digest(a), input_digest(c)); // edge order is part of the document
  EXPECT_EQ(input_digest(a).rfind("sha256:", 0), 0u);
  EXPECT_EQ(input_digest(a).size(), 7u + 64u);
  // sha256 of the canonical text "graph 3\n1 2\n2 3\n"
  EXPECT_EQ(input_digest(a), "sha256:7c29dee6badfd7136f080bd09b92f8e6d33d9c5f5a1d37caa83455b7c6f7d6c7");
}

TEST(Commands, ExitCodesFollowTheContract) {
  CommandFlags f;
  auto ok = run_command_on_text("ainvariant", read_file("pentagon.txt"), false, f);
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_EQ(ok.report["result"]["a_invariant"], -3);
  EXPECT_EQ(ok.report["status"], "ok");
  EXPECT_TRUE(ok.report["error"].is_null());

  auto parse = run_command_on_text("normality", std::string("matrix 1 1 / z"), false, f);
  EXPECT_EQ(parse.exit_code, 1);
  EXPECT_EQ(parse.report["error"]["type"], "parse");
  EXPECT_EQ(parse.report["error"]["line"], 1);
  EXPECT_EQ(parse.report["error"]["column"], 14);

  auto domain = run_command_on_text("ci-check", std::string("graph 3 / 1 2 / 2 3 / 3 1"), false, f);
  EXPECT_EQ(domain.exit_code, 1);
  EXPECT_EQ(domain.report["status"], "domain-error");

  CommandFlags tight;
  tight.scan_cap = 5;
  auto cap = run_command_on_text("canmod", read_file("pentagon.txt"), false, tight);
  EXPECT_EQ(cap.exit_code, 2);
  EXPECT_EQ(cap.report["error"]["cap"], "omega-scan-cap");
  EXPECT_EQ(cap.report["caps"]["omega_scan_cap"], 5);

  auto none = run_command("irp", std::nullopt, f);
  EXPECT_EQ(none.exit_code, 1);

  auto unknown = run_command("frobnicate", std::nullopt, f);
  EXPECT_EQ(unknown.exit_code, 1);
}

TEST(Commands, InputRoleIsEnforced) {
  CommandFlags f;
  f.input_role = "graph";
  auto r = run_command_on_text("ci-check", read_file("example10.txt"), false, f);
  EXPECT_EQ(r.exit_code, 1);
  f.input_role = "clutter";
  r = run_command_on_text("duality", std::string("matrix 2 1 / 2 / 1"), false, f);
  EXPECT_EQ(r.exit_code, 1);
  r = run_command_on_text("alexander-dual", std::string("matrix 2 2 / 1 0 / 0 1"), false, f);
  EXPECT_EQ(r.exit_code, 0);
}

TEST(Commands, ReportShape) {
  CommandFlags f;
  f.oracle = true;
  f.box = 3;
  f.systems = {"eq1"};
  auto r = run_command_on_text("irp", read_file("c3.txt"), false, f);
  ASSERT_EQ(r.exit_code, 0);
  const auto &rep = r.report;
  for (const char *k : {"schema", "command", "status", "exit_code", "input", "result", "error", "caps", "timings"})
    EXPECT_TRUE(rep.contains(k)) << k;
  EXPECT_EQ(rep["schema"], kReportSchema);
  EXPECT_EQ(rep["caps"]["oracle_box"], 3);
  EXPECT_GE(rep["timings"]["total_ms"].get<double>(), 0.0);
  EXPECT_EQ(rep["input"]["digest"], input_digest(parse_input(read_file("c3.txt"))));
  const auto &v = rep["result"]["systems"][0];
  EXPECT_EQ(v["verdict"], false);
  EXPECT_EQ(v["oracle_route"], false);
  EXPECT_EQ(v["counterexample"]["a"], nlohmann::json({1, 1, 1}));
  EXPECT_EQ(v["counterexample"]["lp_value"], "3/2");
  EXPECT_TRUE(v["counterexample"]["ip_value"].is_null());
  EXPECT_EQ(v["torsion_route"]["torsion"], nlohmann::json({2}));
}

TEST(Commands, DualityOnTheUniformClutter) {
  auto r = run_command_on_text("duality", read_file("example10.txt"), false, CommandFlags{});
  ASSERT_EQ(r.exit_code, 0) << r.diagnostic;
  EXPECT_EQ(r.report["result"]["rees_normal_a"], true);
  EXPECT_EQ(r.report["result"]["rees_normal_dual"], false);
  EXPECT_FALSE(r.report["result"]["rees_witness_dual"].is_null());
}

TEST(Commands, SweepsRunClean) {
  CommandFlags f;
  f.max_vertices = 4;
  for (const char *e : {"bipartite-eq1", "duality", "gorenstein"}) {
    f.experiment = e;
    auto r = run_command("sweep", std::nullopt, f);
    ASSERT_EQ(r.exit_code, 0) << e << ": " << r.diagnostic;
    EXPECT_GT(r.report["result"]["instances"].get<int>(), 0);
    EXPECT_EQ(r.report["result"]["instances"], r.report["result"]["agreements"]) << e;
  }
  f.experiment = "nonsense";
  EXPECT_EQ(run_command("sweep", std::nullopt, f).exit_code, 1);
}

TEST(Commands, EveryCommandProducesAReport) {
  const std::string c4 = "graph 4 / 1 2 / 2 3 / 3 4 / 4 1";
  for (const auto &name : command_names()) {
    CommandFlags f;
    f.max_vertices = 3;
    auto r = command_needs_input(name) ? run_command_on_text(name, c4, false, f)
                                       : run_command(name, std::nullopt, f);
    EXPECT_EQ(r.exit_code, 0) << name << ": " << r.diagnostic;
    EXPECT_EQ(r.report["command"], name);
    EXPECT_TRUE(r.report["result"].is_object()) << name;
  }
}
