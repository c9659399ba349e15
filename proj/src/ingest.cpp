#include "rnaudit/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "rnaudit/error.hpp"

namespace rnaudit {

namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

void strip_bom(std::string& line) {
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AuditError(Errc::kIo, "cannot open '" + path.string() + "'");
  return in;
}

struct LinedEdges {
  std::vector<RecEdge> edges;
  std::vector<std::size_t> lines;
};

[[noreturn]] void malformed_row(std::size_t line, const std::string& why) {
  throw AuditError(Errc::kMalformedRow, "edges line " + std::to_string(line) + ": " + why);
}

LinedEdges parse_edges_with_lines(std::istream& in, ValidationReport& report) {
  LinedEdges out;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    ++report.edge_lines;
    if (lineno == 1) strip_bom(line);
    std::string_view row = trim(line);
    if (row.empty()) {
      ++report.edge_blank_lines;
      continue;
    }
    if (!header_seen) {
      if (row != "src,dst,rank") malformed_row(lineno, "expected header 'src,dst,rank'");
      header_seen = true;
      ++report.edge_header_lines;
      continue;
    }
    std::string_view fields[3];
    std::size_t count = 0;
    std::size_t pos = 0;
    for (;;) {
      std::size_t comma = row.find(',', pos);
      if (count == 3) malformed_row(lineno, "expected 3 fields");
      fields[count++] = trim(row.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (count != 3) malformed_row(lineno, "expected 3 fields");
    if (fields[0].empty() || fields[1].empty()) malformed_row(lineno, "empty item id");
    long long rank = 0;
    auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), rank);
    if (ec != std::errc() || ptr != fields[2].data() + fields[2].size()) {
      malformed_row(lineno, "rank '" + std::string(fields[2]) + "' is not an integer");
    }
    if (rank <= 0) {
      throw AuditError(Errc::kNonPositiveRank,
                       "edges line " + std::to_string(lineno) + ": rank must be >= 1");
    }
    if (rank > UINT32_MAX) malformed_row(lineno, "rank out of range");
    ++report.edges_parsed;
    out.edges.push_back({std::string(fields[0]), std::string(fields[1]),
                         static_cast<std::uint32_t>(rank), std::nullopt});
    out.lines.push_back(lineno);
  }
  return out;
}

}  // namespace

void DropCounter::add(std::size_t line) {
  ++count;
  auto it = std::lower_bound(lines.begin(), lines.end(), line);
  if (it == lines.end() && lines.size() >= kMaxLines) return;
  lines.insert(it, line);
  if (lines.size() > kMaxLines) lines.pop_back();
}

std::string normalize_genre(std::string_view label) {
  std::string out(trim(label));
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
  });
  return out;
}

std::vector<ItemRecord> parse_nodes(std::istream& in, ValidationReport& report) {
  std::vector<ItemRecord> items;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    ++report.node_lines;
    if (lineno == 1) strip_bom(line);
    if (trim(line).empty()) {
      ++report.node_blank_lines;
      continue;
    }
    const auto fail = [&](const std::string& why) {
      throw AuditError(Errc::kMalformedLine, "nodes line " + std::to_string(lineno) + ": " + why);
    };
    Json record = Json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) fail("not a JSON object");
    ItemRecord item;
    auto id = record.find("id");
    if (id == record.end() || !id->is_string() || id->get_ref<const std::string&>().empty()) {
      fail("missing or empty string field 'id'");
    }
    item.id = id->get<std::string>();
    if (auto title = record.find("title"); title != record.end()) {
      if (!title->is_string()) fail("field 'title' must be a string");
      item.title = title->get<std::string>();
    }
    auto genres = record.find("genres");
    if (genres == record.end() || !genres->is_array()) fail("missing array field 'genres'");
    for (const auto& g : *genres) {
      if (!g.is_string()) fail("genre labels must be strings");
      std::string label = normalize_genre(g.get_ref<const std::string&>());
      if (!label.empty()) item.genres.push_back(std::move(label));
    }
    std::sort(item.genres.begin(), item.genres.end());
    item.genres.erase(std::unique(item.genres.begin(), item.genres.end()), item.genres.end());
    ++report.nodes_parsed;
    if (item.genres.empty()) {
      report.missing_genre.add(lineno);
      continue;
    }
    ++report.nodes_accepted;
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<ItemRecord> parse_nodes(const std::filesystem::path& path, ValidationReport& report) {
  auto in = open_input(path);
  return parse_nodes(in, report);
}

std::vector<RecEdge> parse_edges(std::istream& in, ValidationReport& report) {
  return parse_edges_with_lines(in, report).edges;
}

std::vector<RecEdge> parse_edges(const std::filesystem::path& path, ValidationReport& report) {
  auto in = open_input(path);
  return parse_edges(in, report);
}

LoadedDataset load_dataset(const DatasetManifest& manifest) {
  for (const auto& p : {manifest.nodes_path, manifest.edges_path}) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(p, ec)) {
      throw AuditError(Errc::kIo, "no such file '" + p.string() + "'");
    }
  }
  ValidationReport node_report;
  ValidationReport edge_report;
  auto nodes_future = std::async(std::launch::async, [&] {
    auto in = open_input(manifest.nodes_path);
    return parse_nodes(in, node_report);
  });
  LinedEdges parsed;
  {
    auto in = open_input(manifest.edges_path);
    try {
      parsed = parse_edges_with_lines(in, edge_report);
    } catch (...) {
      nodes_future.wait();
      throw;
    }
  }
  std::vector<ItemRecord> items = nodes_future.get();

  ValidationReport report = edge_report;
  report.node_lines = node_report.node_lines;
  report.node_blank_lines = node_report.node_blank_lines;
  report.nodes_parsed = node_report.nodes_parsed;
  report.nodes_accepted = node_report.nodes_accepted;
  report.missing_genre = node_report.missing_genre;

  std::unordered_set<std::string_view> known;
  known.reserve(items.size());
  for (const auto& item : items) known.insert(item.id);

  // First pass: self-loops and unknown endpoints; remember the best rank per pair.
  std::unordered_map<std::string, std::size_t> best;  // "src\0dst" -> edge index
  best.reserve(parsed.edges.size());
  std::vector<char> keep(parsed.edges.size(), 0);
  for (std::size_t i = 0; i < parsed.edges.size(); ++i) {
    const auto& e = parsed.edges[i];
    if (e.src == e.dst) {
      report.self_loop.add(parsed.lines[i]);
      continue;
    }
    if (!known.contains(e.src) || !known.contains(e.dst)) {
      report.unknown_endpoint.add(parsed.lines[i]);
      continue;
    }
    std::string key = e.src;
    key.push_back('\0');
    key += e.dst;
    auto [it, inserted] = best.try_emplace(std::move(key), i);
    if (inserted) {
      keep[i] = 1;
      continue;
    }
    std::size_t& held = it->second;
    if (e.rank < parsed.edges[held].rank) {
      keep[held] = 0;
      report.duplicate_edge.add(parsed.lines[held]);
      keep[i] = 1;
      held = i;
    } else {
      report.duplicate_edge.add(parsed.lines[i]);
    }
  }
  std::vector<RecEdge> accepted;
  accepted.reserve(best.size());
  for (std::size_t i = 0; i < parsed.edges.size(); ++i) {
    if (keep[i]) accepted.push_back(std::move(parsed.edges[i]));
  }
  report.edges_accepted = accepted.size();

  LoadedDataset out{RecommendationNetwork::build(std::move(items), std::move(accepted)), report};
  return out;
}

void write_report(std::ostream& out, const ValidationReport& r, const std::string& name) {
  const auto drops = [](const DropCounter& d) {
    return Json{{"count", d.count}, {"first_lines", d.lines}};
  };
  Json j;
  j["dataset"] = name;
  j["nodes"] = {{"lines", r.node_lines},
                {"blank_lines", r.node_blank_lines},
                {"parsed", r.nodes_parsed},
                {"accepted", r.nodes_accepted},
                {"dropped", {{"missing_genre", drops(r.missing_genre)}}}};
  j["edges"] = {{"lines", r.edge_lines},
                {"blank_lines", r.edge_blank_lines},
                {"header_lines", r.edge_header_lines},
                {"parsed", r.edges_parsed},
                {"accepted", r.edges_accepted},
                {"dropped",
                 {{"self_loop", drops(r.self_loop)},
                  {"duplicate_edge", drops(r.duplicate_edge)},
                  {"unknown_endpoint", drops(r.unknown_endpoint)}}}};
  out << j.dump(2) << '\n';
}

void write_nodes(std::ostream& out, const std::vector<ItemRecord>& items) {
  for (const auto& item : items) {
    Json j{{"id", item.id}, {"title", item.title}, {"genres", item.genres}};
    out << j.dump() << '\n';
  }
}

void write_edges(std::ostream& out, const std::vector<RecEdge>& edges) {
  out << "src,dst,rank\n";
  for (const auto& e : edges) out << e.src << ',' << e.dst << ',' << e.rank << '\n';
}

}  // namespace rnaudit
