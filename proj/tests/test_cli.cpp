#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "fixtures.hpp"
#include "rnaudit/cli.hpp"

using namespace rnaudit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

// Three genres on a directed 6-cycle with one chord.
struct Dataset {
  fixtures::TempDir dir;
  std::string nodes;
  std::string edges;

  Dataset()
      : nodes(dir.write("n.jsonl",
                        "{\"id\":\"a\",\"title\":\"A\",\"genres\":[\"x\"]}\n"
                        "{\"id\":\"b\",\"title\":\"B\",\"genres\":[\"x\"]}\n"
                        "{\"id\":\"c\",\"title\":\"C\",\"genres\":[\"y\"]}\n"
                        "{\"id\":\"d\",\"title\":\"D\",\"genres\":[\"y\",\"z\"]}\n"
                        "{\"id\":\"e\",\"title\":\"E\",\"genres\":[\"z\"]}\n"
                        "{\"id\":\"f\",\"title\":\"F\",\"genres\":[\"x\"]}\n")
                  .string()),
        edges(dir.write("e.csv",
                        "src,dst,rank\n"
                        "a,b,1\nb,c,1\nc,d,1\nd,e,1\ne,f,1\nf,a,1\na,d,2\nb,a,2\n")
                  .string()) {}

  std::vector<std::string> with(std::vector<std::string> head) const {
    head.insert(head.end(), {"--nodes", nodes, "--edges", edges});
    return head;
  }
};

}  // namespace

TEST_CASE("stats") {
  Dataset ds;
  auto r = cli(ds.with({"stats", "--name", "toy"}));
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("dataset,nodes,edges,avg_degree,reciprocating_edges,reciprocating_pct\n"
                    "toy,6,8,1.333333,2,25.000000\n\n{",
                    0) == 0);
  CHECK(r.out.find("\"accepted\": 8") != std::string::npos);

  auto report = ds.dir.file("report.json").string();
  auto r2 = cli(ds.with({"stats", "--report", report}));
  CHECK(r2.code == kExitOk);
  CHECK(count_lines(r2.out) == 2);
  CHECK(fixtures::slurp(report).find("\"accepted\": 6") != std::string::npos);
}

TEST_CASE("input errors exit with 2") {
  Dataset ds;
  CHECK(cli({"stats", "--nodes", ds.dir.file("nope").string(), "--edges", ds.edges}).code == kExitInput);
  CHECK(cli({}).code == kExitInput);
  CHECK(cli({"bogus"}).code == kExitInput);
  CHECK(cli(ds.with({"walk", "--tp-grid", "0.1", "--n-grid", "10"})).code == kExitInput);
  CHECK(cli(ds.with({"walk", "--tp-grid", "1.5"})).code == kExitInput);
  CHECK(cli(ds.with({"assort", "--bin-by", "colour"})).code == kExitInput);
  CHECK(cli(ds.with({"assort", "--matrix", ds.dir.file("m.csv").string()})).code == kExitInput);
  auto bad = cli(ds.with({"segregate", "--starts", "a,zz"}));
  CHECK(bad.code == kExitInput);
  CHECK(bad.err.find("zz") != std::string::npos);
  auto broken = ds.dir.write("bad.csv", "src,dst,rank\na,b,0\n").string();
  CHECK(cli({"diversity", "--nodes", ds.nodes, "--edges", broken}).code == kExitInput);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("diversity") {
  Dataset ds;
  auto per_node = ds.dir.file("per_node.csv").string();
  auto r = cli(ds.with({"diversity", "--per-node", per_node}));
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("measure,value\nintra_list,", 0) == 0);
  CHECK(count_lines(r.out) == 5);
  auto table = fixtures::slurp(per_node);
  CHECK(count_lines(table) == 7);
  CHECK(table.rfind("id,intra_list,novelty,unexpectedness,source_list\n", 0) == 0);
  // c has one recommendation, so its intra-list cell is empty.
  CHECK(table.find("\nc,,") != std::string::npos);
  std::istringstream lines(table);
  std::string line;
  while (std::getline(lines, line)) CHECK(std::count(line.begin(), line.end(), ',') == 4);
}

TEST_CASE("diversity prints n/a when nothing is defined") {
  fixtures::TempDir dir;
  auto nodes = dir.write("n.jsonl", "{\"id\":\"a\",\"genres\":[\"x\"]}\n{\"id\":\"b\",\"genres\":[\"y\"]}\n");
  auto edges = dir.write("e.csv", "src,dst,rank\na,b,1\n");
  auto r = cli({"diversity", "--nodes", nodes.string(), "--edges", edges.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("intra_list,n/a\n") != std::string::npos);
  CHECK(r.out.find("source_list,1.000000\n") != std::string::npos);
}

TEST_CASE("assort") {
  Dataset ds;
  auto r = cli(ds.with({"assort"}));
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("scheme,assortativity\ngenre,", 0) == 0);
  CHECK(count_lines(r.out) == 4);

  auto matrix = ds.dir.file("m.csv").string();
  auto m = cli(ds.with({"assort", "--bin-by", "indegree", "--matrix", matrix, "--row-normalized"}));
  CHECK(m.code == kExitOk);
  auto text = fixtures::slurp(matrix);
  CHECK(text.rfind("bin,bottom,middle,top\nbottom,", 0) == 0);
  CHECK(count_lines(text) == 4);

  fixtures::TempDir dir;
  auto nodes = dir.write("n.jsonl", "{\"id\":\"a\",\"genres\":[\"x\"]}\n{\"id\":\"b\",\"genres\":[\"x\"]}\n");
  auto edges = dir.write("e.csv", "src,dst,rank\na,b,1\n");
  auto d = cli({"assort", "--bin-by", "genre", "--nodes", nodes.string(), "--edges", edges.string()});
  CHECK(d.code == kExitDegenerate);
  CHECK(d.out == "scheme,assortativity\ngenre,n/a\n");
}

TEST_CASE("walk") {
  Dataset ds;
  auto r = cli(ds.with({"walk", "--steps", "50", "--seed", "7"}));
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("policy,steps,mean_entropy,stddev,num_walks\n0.0*,50,", 0) == 0);
  CHECK(count_lines(r.out) == 13);
  CHECK(cli(ds.with({"walk", "--steps", "50", "--seed", "7"})).out == r.out);

  auto n = cli(ds.with({"walk", "--n-grid", "10,20,40", "--tp", "0.2"}));
  CHECK(n.code == kExitOk);
  CHECK(count_lines(n.out) == 4);

  auto trace = ds.dir.file("trace.csv").string();
  auto t = cli(ds.with({"walk", "--tp-grid", "0.0", "--steps", "5", "--trace", trace, "--start", "a"}));
  CHECK(t.code == kExitOk);
  auto text = fixtures::slurp(trace);
  CHECK(text.rfind("a,start\n", 0) == 0);
  CHECK(count_lines(text) == 6);
}

TEST_CASE("segregate") {
  Dataset ds;
  auto r = cli(ds.with({"segregate", "--starts", "top-indegree:3", "--steps", "30", "--members", "2"}));
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("tp,mean_evenness,mean_concentration,num_groups\n0.0,", 0) == 0);
  CHECK(count_lines(r.out) == 12);
  CHECK(r.err.find("selected starts: ") != std::string::npos);
  CHECK(cli(ds.with({"-q", "segregate", "--starts", "top-indegree:3", "--steps", "30"})).err.empty());

  auto groups = ds.dir.file("groups.csv").string();
  auto g = cli(ds.with({"segregate", "--starts", "a,c", "--tps", "0.0,0.5", "--steps", "20", "--per-group", groups}));
  CHECK(g.code == kExitOk);
  CHECK(count_lines(g.out) == 3);
  CHECK(count_lines(fixtures::slurp(groups)) == 5);
}

TEST_CASE("synth") {
  fixtures::TempDir dir;
  auto n = dir.file("n.jsonl").string();
  auto e = dir.file("e.csv").string();
  auto r = cli({"synth", "--num-nodes", "50", "--out-degree", "4", "--out-nodes", n, "--out-edges", e});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("nodes,edges,fallback_slots,max_in_degree\n50,200,", 0) == 0);
  auto s = cli({"stats", "--nodes", n, "--edges", e, "--name", "s"});
  CHECK(s.out.rfind("dataset,nodes,edges,avg_degree,reciprocating_edges,reciprocating_pct\ns,50,200,4.000000,", 0) == 0);

  auto bad = cli({"synth", "--num-nodes", "4", "--out-degree", "4", "--out-nodes", n, "--out-edges", e});
  CHECK(bad.code == kExitInfeasible);
  CHECK(bad.err.find("InfeasibleConfig") != std::string::npos);
  CHECK(cli({"synth", "--genre-probs", "0.5,0.6,0,0", "--out-nodes", n, "--out-edges", e}).code == kExitInput);
}

TEST_CASE("results do not depend on RN_AUDIT_THREADS") {
  Dataset ds;
  auto run = [&](const char* threads) {
    ::setenv("RN_AUDIT_THREADS", threads, 1);
    auto w = cli(ds.with({"walk", "--steps", "40"}));
    auto s = cli(ds.with({"-q", "segregate", "--starts", "a,b,c", "--steps", "40"}));
    return w.out + s.out;
  };
  const auto one = run("1");
  const auto many = run("8");
  ::unsetenv("RN_AUDIT_THREADS");
  CHECK(one == many);
}
