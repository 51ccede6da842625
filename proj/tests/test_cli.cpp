#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "hhb/io.hpp"

using hhb::Multiset;

namespace {

struct CliResult {
  int code = -1;
  std::string out;  // stdout and stderr combined
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + HHB_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  char buf[4096];
  while (true) {
    std::size_t got = fread(buf, 1, sizeof buf, pipe);
    if (got == 0) break;
    r.out.append(buf, got);
  }
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_triangle_file() {
  auto X = hhb::WeightedHypergraph::build(
      3, {"0", "1"}, {{Multiset({0, 1, 1}), 0.9}, {Multiset({0, 0, 0}), 0.1}});
  std::string path = "cli_triangle.json";
  hhb::write_file(path, hhb::serialize_hypergraph(X));
  return path;
}

std::string write_positive_graph_file() {
  auto X = hhb::WeightedHypergraph::build(2, {"0", "1"},
                                          {{Multiset({0, 0}), 0.4},
                                           {Multiset({1, 1}), 0.4},
                                           {Multiset({0, 1}), 0.2}});
  std::string path = "cli_positive.json";
  hhb::write_file(path, hhb::serialize_hypergraph(X));
  return path;
}

}  // namespace

TEST_CASE("usage handling") {
  REQUIRE(run_cli("--help").code == 0);
  REQUIRE(run_cli("").code == 1);          // a subcommand is required
  REQUIRE(run_cli("bogus").code == 1);     // unknown subcommand
  REQUIRE(run_cli("bound").code == 1);     // missing file argument
}

TEST_CASE("info summarizes structure and normalization") {
  auto path = write_triangle_file();
  auto r = run_cli("info " + path);
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("k=3") != std::string::npos);
  REQUIRE(r.out.find("|V|=2") != std::string::npos);
  REQUIRE(r.out.find("|X^(2)|=3") != std::string::npos);
  REQUIRE(run_cli("info no_such_file.json").code == 2);

  hhb::KPartiteSpec spec;
  spec.parts = {{"a", "b"}, {"x", "y"}};
  spec.faces[{0, 0}] = 0.5;
  spec.faces[{1, 1}] = 0.5;
  hhb::write_file("cli_kpartite.json", hhb::serialize_kpartite(spec));
  auto rk = run_cli("info --kpartite cli_kpartite.json");
  REQUIRE(rk.code == 0);
  REQUIRE(rk.out.find("|V1|=2") != std::string::npos);
  REQUIRE(rk.out.find("faces=2") != std::string::npos);
}

TEST_CASE("bound: human and machine output") {
  auto path = write_triangle_file();
  auto r = run_cli("bound " + path);
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("lambda_0 = -0.250000000") != std::string::npos);
  REQUIRE(r.out.find("lambda_1 = -1.000000000") != std::string::npos);
  REQUIRE(r.out.find("bound = 0.600000000") != std::string::npos);
  REQUIRE(r.out.find("tensor-stable") != std::string::npos);

  auto j = run_cli("bound --json " + path);
  REQUIRE(j.code == 0);
  auto parsed = nlohmann::json::parse(j.out);
  REQUIRE(parsed["lambdas"].size() == 2);
  REQUIRE(std::abs(parsed["bound"].get<double>() - 0.6) < 1e-9);
  REQUIRE(parsed["tensor_stable"].get<bool>());
  REQUIRE(parsed["witnesses"][1] == nlohmann::json::array({1}));
}

TEST_CASE("bound: tensor shortcut and flag exclusivity") {
  auto path = write_positive_graph_file();
  auto r = run_cli("bound --tensor 3 " + path);
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("lambda_0 = 0.216000000") != std::string::npos);
  REQUIRE(run_cli("bound --tensor 0 " + path).code == 2);

  // Symmetry and tensor modes cannot combine.
  hhb::write_file("cli_id.sym.json",
                  hhb::serialize_symmetry(hhb::SymmetrySpec{{{0, 1}}}));
  REQUIRE(run_cli("bound --tensor 2 --symmetry cli_id.sym.json " + path).code == 1);
}

TEST_CASE("bound: symmetry restriction and its failure modes") {
  std::vector<std::pair<Multiset, double>> faces;
  for (int v = 0; v < 4; ++v) faces.emplace_back(Multiset({v, (v + 1) % 4}), 0.25);
  auto C4 = hhb::WeightedHypergraph::build(2, {"0", "1", "2", "3"}, faces);
  hhb::write_file("cli_c4.json", hhb::serialize_hypergraph(C4));
  hhb::write_file("cli_rot.sym.json",
                  hhb::serialize_symmetry(hhb::SymmetrySpec{{{1, 2, 3, 0}}}));
  auto r = run_cli("bound --symmetry cli_rot.sym.json cli_c4.json");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("invariant restriction") != std::string::npos);
  REQUIRE(r.out.find("conditional") != std::string::npos);

  hhb::write_file("cli_bad.sym.json",
                  hhb::serialize_symmetry(hhb::SymmetrySpec{{{1, 0, 2, 3}}}));
  REQUIRE(run_cli("bound --symmetry cli_bad.sym.json cli_c4.json").code == 4);
}

TEST_CASE("eigs prints per-level minima") {
  auto path = write_triangle_file();
  auto all = run_cli("eigs " + path);
  REQUIRE(all.code == 0);
  REQUIRE(all.out.find("lambda_0") != std::string::npos);
  REQUIRE(all.out.find("lambda_1") != std::string::npos);
  auto one = run_cli("eigs --level 1 " + path);
  REQUIRE(one.code == 0);
  REQUIRE(one.out.find("lambda_0") == std::string::npos);
  REQUIRE(one.out.find("lambda_1 = -1.000000000  witness [1]") != std::string::npos);
  REQUIRE(run_cli("eigs --level 5 " + path).code == 2);
}

TEST_CASE("alpha reports the exact independence number") {
  auto path = write_triangle_file();
  auto r = run_cli("alpha " + path);
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("alpha = 0.600000000") != std::string::npos);
  REQUIRE(r.out.find("witness = {1}") != std::string::npos);
  REQUIRE(run_cli("alpha --cap 1 " + path).code == 3);
}

TEST_CASE("tensor writes a loadable power") {
  auto X = hhb::WeightedHypergraph::build(2, {"a", "b"}, {{Multiset({0, 1}), 1.0}});
  hhb::write_file("cli_edge.json", hhb::serialize_hypergraph(X));
  auto r = run_cli("tensor cli_edge.json -n 2 -o cli_edge_sq.json");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("wrote cli_edge_sq.json") != std::string::npos);
  auto P = hhb::parse_hypergraph(hhb::read_file("cli_edge_sq.json"));
  REQUIRE(P.vertex_count() == 4);
  REQUIRE(P.faces().size() == 2);
  REQUIRE(P.weight(Multiset({0, 3})) == 0.5);
  // A tiny face cap trips the resource guard.
  REQUIRE(run_cli("tensor cli_edge.json -n 2 -o cli_x.json --max-faces 1").code == 3);
}

TEST_CASE("optimize is deterministic under a fixed seed") {
  std::string support = R"({
    "k": 3,
    "vertices": ["0", "1"],
    "faces": [{"m": [0, 0, 0]}, {"m": [0, 1, 1]}],
    "nu": [0.4, 0.6]
  })";
  hhb::write_file("cli_support.json", support);
  auto a = run_cli("optimize --json --restarts 4 --iters 200 cli_support.json");
  auto b = run_cli("optimize --json --restarts 4 --iters 200 cli_support.json");
  REQUIRE(a.code == 0);
  REQUIRE(a.out == b.out);
  auto parsed = nlohmann::json::parse(a.out);
  REQUIRE(std::abs(parsed["bound"].get<double>() - 0.6) < 1e-9);
  REQUIRE(parsed["residual_marginal"].get<double>() <= 1e-8);

  auto human = run_cli("optimize --restarts 2 --iters 100 cli_support.json");
  REQUIRE(human.code == 0);
  REQUIRE(human.out.find("bound = 0.600000000") != std::string::npos);
}

TEST_CASE("catalog checks pass and write companion files") {
  auto ekr = run_cli("catalog ekr --p 0.3");
  REQUIRE(ekr.code == 0);
  REQUIRE(ekr.out.find("PASS") != std::string::npos);
  REQUIRE(ekr.out.find("FAIL") == std::string::npos);

  auto mantel = run_cli("catalog mantel --m 2 -o cli_mantel.json");
  REQUIRE(mantel.code == 0);
  REQUIRE(mantel.out.find("wrote cli_mantel.json") != std::string::npos);
  REQUIRE(mantel.out.find("wrote cli_mantel.kpartite.json") != std::string::npos);
  REQUIRE(mantel.out.find("wrote cli_mantel.sym.json") != std::string::npos);
  REQUIRE(mantel.out.find("symmetric bound 0.500000000") != std::string::npos);
  REQUIRE(mantel.out.find("FAIL") == std::string::npos);
  // The side files load back through their own parsers.
  REQUIRE_NOTHROW(hhb::parse_hypergraph(hhb::read_file("cli_mantel.json")));
  REQUIRE_NOTHROW(hhb::parse_kpartite(hhb::read_file("cli_mantel.kpartite.json")));
  REQUIRE_NOTHROW(hhb::parse_symmetry(hhb::read_file("cli_mantel.sym.json")));

  auto linsys = run_cli("catalog linsys --q 3 --rows 1,1,1 --rhs 0");
  REQUIRE(linsys.code == 0);
  REQUIRE(linsys.out.find("no closed-form reference") != std::string::npos);

  REQUIRE(run_cli("catalog ekr").code == 2);          // missing --p
  REQUIRE(run_cli("catalog unknown --p 0.5").code == 2);
  REQUIRE(run_cli("catalog ekr --p 0.9").code == 2);  // out of range
}
