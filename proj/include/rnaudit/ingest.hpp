#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rnaudit/graph.hpp"

namespace rnaudit {

// On-disk dump format (version 1).
//
// Nodes file: UTF-8, one JSON object per line:
//   {"id": "tt0120338", "title": "Titanic", "genres": ["drama", "romance"]}
// "title" may be omitted. Genre labels are trimmed and lower-cased; a record
// whose genre list ends up empty is dropped and counted.
//
// Edges file: UTF-8 comma-separated text with header "src,dst,rank", LF or
// CRLF line endings. Blank lines are skipped in both files.

struct DatasetManifest {
  std::filesystem::path nodes_path;
  std::filesystem::path edges_path;
  std::string name = "dataset";
};

/// Dropped records of one kind: total count and the first few line numbers.
struct DropCounter {
  static constexpr std::size_t kMaxLines = 10;

  std::size_t count = 0;
  std::vector<std::size_t> lines;  // ascending, at most kMaxLines

  void add(std::size_t line);
};

struct ValidationReport {
  std::size_t node_lines = 0;
  std::size_t node_blank_lines = 0;
  std::size_t nodes_parsed = 0;
  std::size_t nodes_accepted = 0;

  std::size_t edge_lines = 0;
  std::size_t edge_blank_lines = 0;
  std::size_t edge_header_lines = 0;
  std::size_t edges_parsed = 0;
  std::size_t edges_accepted = 0;

  DropCounter missing_genre;
  DropCounter self_loop;
  DropCounter duplicate_edge;
  DropCounter unknown_endpoint;

  std::size_t nodes_dropped() const { return missing_genre.count; }
  std::size_t edges_dropped() const {
    return self_loop.count + duplicate_edge.count + unknown_endpoint.count;
  }
};

/// Throws kMalformedLine (line number in the message). Records with no
/// usable genre are dropped into report.missing_genre.
std::vector<ItemRecord> parse_nodes(std::istream& in, ValidationReport& report);
std::vector<ItemRecord> parse_nodes(const std::filesystem::path& path, ValidationReport& report);

/// Throws kMalformedRow or kNonPositiveRank. An empty stream and a header-only
/// stream both yield no edges.
std::vector<RecEdge> parse_edges(std::istream& in, ValidationReport& report);
std::vector<RecEdge> parse_edges(const std::filesystem::path& path, ValidationReport& report);

struct LoadedDataset {
  RecommendationNetwork network;
  ValidationReport report;
};

/// Parses both files and builds the network. Self-loops, edges with an
/// endpoint missing from the node file and duplicate (src, dst) pairs are
/// dropped and counted; duplicates keep their lowest rank. Missing files
/// throw kIo.
LoadedDataset load_dataset(const DatasetManifest& manifest);

void write_report(std::ostream& out, const ValidationReport& report, const std::string& name);

/// Writers for the same format.
void write_nodes(std::ostream& out, const std::vector<ItemRecord>& items);
void write_edges(std::ostream& out, const std::vector<RecEdge>& edges);

/// Trim + ASCII lower-case.
std::string normalize_genre(std::string_view label);

}  // namespace rnaudit
