#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "rnaudit/error.hpp"
#include "rnaudit/ingest.hpp"

using namespace rnaudit;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const AuditError& e) {
    return e.code();
  }
  FAIL("expected an AuditError");
  return Errc::kIo;
}

}  // namespace

TEST_CASE("parse_nodes reads genre sets") {
  ValidationReport report;
  std::istringstream in(R"({"id":"tt1","title":"Titanic","genres":["drama","romance"]})" "\n");
  auto items = parse_nodes(in, report);
  REQUIRE(items.size() == 1);
  CHECK(items[0].id == "tt1");
  CHECK(items[0].title == "Titanic");
  CHECK(items[0].genres.size() == 2);
}

TEST_CASE("parse_nodes normalises genre labels") {
  ValidationReport report;
  std::istringstream in(R"({"id":"a","genres":[" Sci-Fi ","sci-fi","Drama"]})" "\n");
  auto items = parse_nodes(in, report);
  REQUIRE(items.size() == 1);
  CHECK(items[0].genres == std::vector<std::string>{"drama", "sci-fi"});
}

TEST_CASE("parse_nodes drops empty genre lists") {
  ValidationReport report;
  std::istringstream in(
      "{\"id\":\"a\",\"title\":\"A\",\"genres\":[]}\n"
      "\n"
      "{\"id\":\"b\",\"title\":\"B\",\"genres\":[\"x\"]}\n");
  auto items = parse_nodes(in, report);
  CHECK(items.size() == 1);
  CHECK(report.missing_genre.count == 1);
  CHECK(report.missing_genre.lines == std::vector<std::size_t>{1});
  CHECK(report.node_blank_lines == 1);
  CHECK(report.nodes_parsed == report.nodes_accepted + report.nodes_dropped());
}

TEST_CASE("parse_nodes on an empty stream") {
  ValidationReport report;
  std::istringstream in("");
  CHECK(parse_nodes(in, report).empty());
  CHECK(report.nodes_parsed == 0);
  CHECK(report.missing_genre.count == 0);
}

TEST_CASE("parse_nodes rejects malformed lines") {
  for (const char* bad : {"not json", "[1,2]", R"({"title":"x","genres":["a"]})",
                          R"({"id":"a","genres":"drama"})", R"({"id":"a","genres":[1]})",
                          R"({"id":"","genres":["a"]})"}) {
    ValidationReport report;
    std::istringstream in(std::string("{\"id\":\"ok\",\"genres\":[\"a\"]}\n") + bad + "\n");
    try {
      parse_nodes(in, report);
      FAIL("accepted: " << bad);
    } catch (const AuditError& e) {
      CHECK(e.code() == Errc::kMalformedLine);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}

TEST_CASE("parse_edges") {
  SUBCASE("single row") {
    ValidationReport report;
    std::istringstream in("src,dst,rank\ntt1,tt2,1\n");
    auto edges = parse_edges(in, report);
    REQUIRE(edges.size() == 1);
    CHECK(edges[0].src == "tt1");
    CHECK(edges[0].dst == "tt2");
    CHECK(edges[0].rank == 1);
    CHECK_FALSE(edges[0].weight.has_value());
  }
  SUBCASE("CRLF line endings") {
    ValidationReport report;
    std::istringstream in("src,dst,rank\r\ntt1,tt2,3\r\n");
    auto edges = parse_edges(in, report);
    REQUIRE(edges.size() == 1);
    CHECK(edges[0].rank == 3);
  }
  SUBCASE("header only") {
    ValidationReport report;
    std::istringstream in("src,dst,rank\n");
    CHECK(parse_edges(in, report).empty());
    CHECK(report.edge_header_lines == 1);
  }
  SUBCASE("errors") {
    ValidationReport report;
    std::istringstream zero("src,dst,rank\ntt1,tt2,0\n");
    CHECK(code_of([&] { parse_edges(zero, report); }) == Errc::kNonPositiveRank);
    std::istringstream negative("src,dst,rank\ntt1,tt2,-2\n");
    CHECK(code_of([&] { parse_edges(negative, report); }) == Errc::kNonPositiveRank);
    std::istringstream fields("src,dst,rank\ntt1,tt2\n");
    CHECK(code_of([&] { parse_edges(fields, report); }) == Errc::kMalformedRow);
    std::istringstream extra("src,dst,rank\ntt1,tt2,1,4\n");
    CHECK(code_of([&] { parse_edges(extra, report); }) == Errc::kMalformedRow);
    std::istringstream text("src,dst,rank\ntt1,tt2,first\n");
    CHECK(code_of([&] { parse_edges(text, report); }) == Errc::kMalformedRow);
    std::istringstream header("from,to,rank\ntt1,tt2,1\n");
    CHECK(code_of([&] { parse_edges(header, report); }) == Errc::kMalformedRow);
  }
}

namespace {

const char* kNodes =
    "{\"id\":\"a\",\"title\":\"A\",\"genres\":[\"x\"]}\n"
    "{\"id\":\"b\",\"title\":\"B\",\"genres\":[\"y\"]}\n"
    "{\"id\":\"c\",\"title\":\"C\",\"genres\":[\"x\",\"y\"]}\n";

}  // namespace

TEST_CASE("load_dataset on clean files") {
  fixtures::TempDir dir;
  DatasetManifest m{dir.write("n.jsonl", kNodes), dir.write("e.csv", "src,dst,rank\na,b,1\nb,c,1\nc,a,1\n"), "t"};
  auto data = load_dataset(m);
  CHECK(data.network.node_count() == 3);
  CHECK(data.network.edge_count() == 3);
  CHECK(data.report.edges_dropped() == 0);
  CHECK(data.report.nodes_dropped() == 0);
}

TEST_CASE("load_dataset drops and counts bad edges") {
  fixtures::TempDir dir;
  DatasetManifest m{dir.write("n.jsonl", kNodes),
                    dir.write("e.csv",
                              "src,dst,rank\n"
                              "a,b,4\n"
                              "a,zz,2\n"
                              "\n"
                              "a,b,1\n"
                              "b,b,1\n"
                              "c,a,1\n"),
                    "t"};
  auto data = load_dataset(m);
  const auto& r = data.report;
  CHECK(r.unknown_endpoint.count == 1);
  CHECK(r.unknown_endpoint.lines == std::vector<std::size_t>{3});
  CHECK(r.duplicate_edge.count == 1);
  CHECK(r.duplicate_edge.lines == std::vector<std::size_t>{2});
  CHECK(r.self_loop.count == 1);
  CHECK(data.network.edge_count() == 2);
  auto a = data.network.index_of("a");
  CHECK(data.network.out_edges(a)[0].rank == 1);

  // Conservation: every line is accepted, dropped, blank or header.
  CHECK(r.edge_lines == r.edges_accepted + r.edges_dropped() + r.edge_blank_lines + r.edge_header_lines);
  CHECK(r.node_lines == r.nodes_accepted + r.nodes_dropped() + r.node_blank_lines);
  CHECK(r.edges_parsed == r.edges_accepted + r.edges_dropped());
}

TEST_CASE("load_dataset treats edges to dropped nodes as unknown endpoints") {
  fixtures::TempDir dir;
  DatasetManifest m{dir.write("n.jsonl", std::string(kNodes) + "{\"id\":\"d\",\"genres\":[]}\n"),
                    dir.write("e.csv", "src,dst,rank\na,d,1\n"), "t"};
  auto data = load_dataset(m);
  CHECK(data.report.missing_genre.count == 1);
  CHECK(data.report.unknown_endpoint.count == 1);
  CHECK(data.network.edge_count() == 0);
}

TEST_CASE("load_dataset is idempotent") {
  fixtures::TempDir dir;
  DatasetManifest m{dir.write("n.jsonl", kNodes), dir.write("e.csv", "src,dst,rank\na,b,1\na,c,2\nc,a,1\n"), "t"};
  auto first = load_dataset(m);
  auto second = load_dataset(m);
  CHECK(first.network == second.network);
  std::ostringstream r1, r2;
  write_report(r1, first.report, "t");
  write_report(r2, second.report, "t");
  CHECK(r1.str() == r2.str());
}

TEST_CASE("load_dataset reports missing files") {
  fixtures::TempDir dir;
  DatasetManifest m{dir.file("missing.jsonl"), dir.write("e.csv", "src,dst,rank\n"), "t"};
  try {
    load_dataset(m);
    FAIL("expected kIo");
  } catch (const AuditError& e) {
    CHECK(e.code() == Errc::kIo);
    CHECK(std::string(e.what()).find("missing.jsonl") != std::string::npos);
  }
}

TEST_CASE("DropCounter keeps the smallest line numbers") {
  DropCounter d;
  for (std::size_t line = 30; line > 0; --line) d.add(line);
  CHECK(d.count == 30);
  CHECK(d.lines.size() == DropCounter::kMaxLines);
  CHECK(d.lines.front() == 1);
  CHECK(d.lines.back() == DropCounter::kMaxLines);
}

TEST_CASE("write_nodes and write_edges round-trip through the parsers") {
  std::vector<ItemRecord> items{{"a", "Title, with \"quotes\"", {"drama", "romance"}}, {"b", "", {"x"}}};
  std::vector<RecEdge> edges{{"a", "b", 1, std::nullopt}};
  std::stringstream ns, es;
  write_nodes(ns, items);
  write_edges(es, edges);
  ValidationReport report;
  CHECK(parse_nodes(ns, report) == items);
  CHECK(parse_edges(es, report) == edges);
}
