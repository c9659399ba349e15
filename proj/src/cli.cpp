#include "rnaudit/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rnaudit/diversity.hpp"
#include "rnaudit/error.hpp"
#include "rnaudit/format.hpp"
#include "rnaudit/ingest.hpp"
#include "rnaudit/parallel.hpp"
#include "rnaudit/segregation.hpp"
#include "rnaudit/structure.hpp"
#include "rnaudit/synth.hpp"
#include "rnaudit/walker.hpp"

namespace rnaudit {

namespace {

struct DatasetFlags {
  std::string nodes;
  std::string edges;
  std::string name = "dataset";
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--nodes", nodes, "Nodes file (one JSON record per line)")->required();
    cmd->add_option("--edges", edges, "Edges file (src,dst,rank)")->required();
    cmd->add_option("--name", name, "Dataset label used in reports");
    cmd->add_option("--out", out, "Write the main table here instead of stdout");
  }

  DatasetManifest manifest() const { return {nodes, edges, name}; }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw AuditError(Errc::kInvalidArgument, "'" + s + "' is not a number");
  }
  return v;
}

std::uint32_t parse_count(const std::string& s) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-' || v == 0 || v > UINT32_MAX) {
    throw AuditError(Errc::kInvalidArgument, "'" + s + "' is not a positive integer");
  }
  return static_cast<std::uint32_t>(v);
}

std::vector<double> parse_tp_list(const std::string& text) {
  if (text == "default") return default_tp_grid();
  std::vector<double> tps;
  for (const auto& t : split_list(text)) tps.push_back(SurferPolicy::stochastic(parse_double(t)).teleport);
  if (tps.empty()) throw AuditError(Errc::kInvalidArgument, "empty t_p list");
  return tps;
}

std::vector<SurferPolicy> parse_policy_grid(const std::string& text) {
  if (text == "default") return default_policy_grid();
  std::vector<SurferPolicy> grid;
  for (const auto& t : split_list(text)) {
    grid.push_back(t == "0.0*" ? SurferPolicy::top_one()
                               : SurferPolicy::stochastic(parse_double(t)));
  }
  if (grid.empty()) throw AuditError(Errc::kInvalidArgument, "empty t_p grid");
  return grid;
}

/// Runs `emit` against stdout, or against a file when `path` is set.
void emit_to(const std::string& path, std::ostream& out,
             const std::function<void(std::ostream&)>& emit) {
  if (path.empty()) {
    emit(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw AuditError(Errc::kIo, "cannot write '" + path + "'");
  emit(file);
  file.close();
  if (!file) throw AuditError(Errc::kIo, "failed writing '" + path + "'");
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kDegenerateBinning: return kExitDegenerate;
    case Errc::kInfeasibleConfig: return kExitInfeasible;
    default: return kExitInput;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Audit recommendation networks for diversity and information segregation",
               "rn-audit"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress progress messages on stderr");
  const unsigned threads = threads_from_env();
  std::function<int()> action;

  auto log = [&](const std::string& msg) {
    if (!quiet) err << msg << '\n';
  };

  // stats
  DatasetFlags stats_ds;
  std::string stats_report;
  auto* stats = app.add_subcommand("stats", "Node/edge counts, average degree, reciprocity");
  stats_ds.attach(stats);
  stats->add_option("--report", stats_report, "Write the validation report here");
  stats->callback([&] {
    action = [&] {
      auto data = load_dataset(stats_ds.manifest());
      const auto s = degree_stats(data.network);
      emit_to(stats_ds.out, out, [&](std::ostream& o) {
        o << "dataset,nodes,edges,avg_degree,reciprocating_edges,reciprocating_pct\n"
          << stats_ds.name << ',' << s.nodes << ',' << s.edges << ',' << fixed6(s.avg_degree) << ','
          << s.reciprocating_edges << ',' << fixed6(s.reciprocating_pct) << '\n';
        if (stats_report.empty()) {
          o << '\n';
          write_report(o, data.report, stats_ds.name);
        }
      });
      if (!stats_report.empty()) {
        emit_to(stats_report, out,
                [&](std::ostream& o) { write_report(o, data.report, stats_ds.name); });
      }
      return kExitOk;
    };
  });

  // diversity
  DatasetFlags div_ds;
  std::string per_node;
  auto* div = app.add_subcommand("diversity", "Network averages of the four static diversity measures");
  div_ds.attach(div);
  div->add_option("--per-node", per_node, "Write per-node values here");
  div->callback([&] {
    action = [&] {
      auto data = load_dataset(div_ds.manifest());
      const auto& rn = data.network;
      auto report = diversity_report(rn, threads);
      emit_to(div_ds.out, out, [&](std::ostream& o) {
        o << "measure,value\n"
          << "intra_list," << fixed6_or_na(report.intra_list) << '\n'
          << "long_tail_novelty," << fixed6_or_na(report.long_tail_novelty) << '\n'
          << "avg_unexpectedness," << fixed6_or_na(report.avg_unexpectedness) << '\n'
          << "source_list," << fixed6_or_na(report.source_list) << '\n';
      });
      if (!per_node.empty()) {
        const auto cell = [](const std::optional<double>& x) { return x ? fixed6(*x) : std::string(); };
        emit_to(per_node, out, [&](std::ostream& o) {
          o << "id,intra_list,novelty,unexpectedness,source_list\n";
          for (NodeIndex v = 0; v < rn.node_count(); ++v) {
            o << rn.item(v).id << ',' << cell(report.per_node_intra_list[v]) << ','
              << fixed6(report.per_node_novelty[v]) << ','
              << cell(report.per_node_unexpectedness[v]) << ','
              << cell(report.per_node_source_list[v]) << '\n';
          }
        });
      }
      return kExitOk;
    };
  });

  // assort
  DatasetFlags as_ds;
  std::string bin_by = "genre,indegree,pagerank";
  std::string matrix_path;
  bool row_norm = false;
  PageRankOptions pr_opts;
  auto* as = app.add_subcommand("assort", "Assortativity per binning scheme and contingency export");
  as_ds.attach(as);
  as->add_option("--bin-by", bin_by, "Comma list of genre, indegree, pagerank");
  as->add_option("--matrix", matrix_path, "Write the contingency matrix (single scheme only)");
  as->add_flag("--row-normalized", row_norm, "Normalise matrix rows by out-going edge mass");
  as->add_option("--damping", pr_opts.damping, "PageRank damping")->capture_default_str();
  as->add_option("--tol", pr_opts.tol, "PageRank L1 tolerance")->capture_default_str();
  as->add_option("--max-iter", pr_opts.max_iter, "PageRank iteration cap")->capture_default_str();
  as->callback([&] {
    action = [&] {
      std::vector<BinScheme> schemes;
      for (const auto& name : split_list(bin_by)) {
        auto s = parse_bin_scheme(name);
        if (!s) throw AuditError(Errc::kInvalidArgument, "unknown binning scheme '" + name + "'");
        schemes.push_back(*s);
      }
      if (schemes.empty()) throw AuditError(Errc::kInvalidArgument, "no binning scheme given");
      if (!matrix_path.empty() && schemes.size() != 1) {
        throw AuditError(Errc::kInvalidArgument, "--matrix needs exactly one --bin-by scheme");
      }
      auto data = load_dataset(as_ds.manifest());
      PageRankOptions opts = pr_opts;
      opts.threads = threads;
      std::vector<std::pair<BinScheme, std::optional<double>>> rows;
      std::string degenerate;
      for (BinScheme scheme : schemes) {
        const auto binning = popularity_binning(data.network, scheme, opts);
        const auto cm = contingency(data.network, binning);
        if (!matrix_path.empty()) {
          emit_to(matrix_path, out, [&](std::ostream& o) { write_contingency(o, cm, row_norm); });
        }
        try {
          rows.emplace_back(scheme, assortativity(cm));
        } catch (const AuditError& e) {
          if (e.code() != Errc::kDegenerateBinning) throw;
          rows.emplace_back(scheme, std::nullopt);
          degenerate += std::string(bin_scheme_name(scheme)) + ": " + e.what() + "\n";
        }
      }
      emit_to(as_ds.out, out, [&](std::ostream& o) {
        o << "scheme,assortativity\n";
        for (const auto& [scheme, r] : rows) o << bin_scheme_name(scheme) << ',' << fixed6_or_na(r) << '\n';
      });
      if (!degenerate.empty()) {
        err << degenerate;
        return kExitDegenerate;
      }
      return kExitOk;
    };
  });

  // walk
  DatasetFlags walk_ds;
  std::string tp_grid;
  std::string n_grid;
  double walk_tp = 0.0;
  std::uint32_t walk_steps = 400;
  std::uint64_t walk_seed = kDefaultSeed;
  std::string trace_path;
  std::string trace_start;
  auto* walk = app.add_subcommand("walk", "Mean observed-distribution entropy of random surfers");
  walk_ds.attach(walk);
  auto* tp_opt = walk->add_option("--tp-grid", tp_grid, "'default' or comma list of t_p (0.0* = top-one surfer)");
  auto* n_opt = walk->add_option("--n-grid", n_grid, "Comma list of walk lengths (uses --tp)");
  tp_opt->excludes(n_opt);
  walk->add_option("--tp", walk_tp, "Teleport probability for --n-grid and --trace")->capture_default_str();
  walk->add_option("--steps", walk_steps, "Walk length N for --tp-grid and --trace")->capture_default_str();
  walk->add_option("--seed", walk_seed, "Master seed")->capture_default_str();
  walk->add_option("--trace", trace_path, "Dump a single walk from --start here");
  walk->add_option("--start", trace_start, "Start item of the --trace walk");
  walk->callback([&] {
    action = [&] {
      if (walk_steps == 0) throw AuditError(Errc::kInvalidArgument, "--steps must be >= 1");
      if (!trace_path.empty() && trace_start.empty()) {
        throw AuditError(Errc::kInvalidArgument, "--trace needs --start");
      }
      auto data = load_dataset(walk_ds.manifest());
      const auto& rn = data.network;
      const auto binning = assign_bins(rn, BinScheme::kGenre);
      SweepOptions opts;
      opts.threads = threads;
      std::vector<SweepPoint> points;
      if (!n_grid.empty()) {
        std::vector<std::uint32_t> lengths;
        for (const auto& n : split_list(n_grid)) lengths.push_back(parse_count(n));
        points = walk_length_sweep(rn, binning, walk_tp, lengths, walk_seed, opts);
      } else {
        auto grid = parse_policy_grid(tp_grid.empty() ? "default" : tp_grid);
        points = entropy_sweep(rn, binning, grid, walk_steps, walk_seed, opts);
      }
      emit_to(walk_ds.out, out, [&](std::ostream& o) { write_sweep(o, points); });
      if (!trace_path.empty()) {
        WalkConfig cfg{trace_start, SurferPolicy::stochastic(walk_tp), walk_steps, walk_seed};
        const auto trace = simulate_walk(rn, cfg);
        emit_to(trace_path, out, [&](std::ostream& o) { write_trace(o, rn, trace); });
      }
      return kExitOk;
    };
  });

  // segregate
  DatasetFlags seg_ds;
  std::string seg_starts = "top-indegree:10";
  std::string seg_tps = "default";
  SegregationConfig seg_cfg;
  seg_cfg.seed = kDefaultSeed;
  std::string per_group;
  auto* seg = app.add_subcommand("segregate", "Evenness and concentration of simulated user groups");
  seg_ds.attach(seg);
  seg->add_option("--starts", seg_starts, "Comma list of start ids or top-indegree:K")->capture_default_str();
  seg->add_option("--tps", seg_tps, "'default' (0.0..1.0) or comma list of t_p")->capture_default_str();
  seg->add_option("--members", seg_cfg.members, "Walkers per group")->capture_default_str();
  seg->add_option("--steps", seg_cfg.steps, "Walk length N")->capture_default_str();
  seg->add_option("--seed", seg_cfg.seed, "Master seed")->capture_default_str();
  seg->add_option("--per-group", per_group, "Write the unaveraged per-group table here");
  seg->callback([&] {
    action = [&] {
      if (seg_cfg.members == 0 || seg_cfg.steps == 0) {
        throw AuditError(Errc::kInvalidArgument, "--members and --steps must be >= 1");
      }
      auto data = load_dataset(seg_ds.manifest());
      const auto& rn = data.network;
      const std::string recipe = "top-indegree:";
      if (seg_starts.rfind(recipe, 0) == 0) {
        seg_cfg.starts = top_indegree_starts(rn, parse_count(seg_starts.substr(recipe.size())));
        std::string joined;
        for (const auto& s : seg_cfg.starts) joined += (joined.empty() ? "" : ",") + s;
        log("selected starts: " + joined);
      } else {
        seg_cfg.starts = split_list(seg_starts);
        for (const auto& s : seg_cfg.starts) {
          if (!rn.find(s)) throw AuditError(Errc::kUnknownItem, "unknown start id '" + s + "'");
        }
      }
      if (seg_cfg.starts.empty()) throw AuditError(Errc::kInvalidArgument, "no start items");
      seg_cfg.tps = parse_tp_list(seg_tps);
      seg_cfg.threads = threads;
      const auto report = run_segregation_experiment(rn, seg_cfg);
      emit_to(seg_ds.out, out, [&](std::ostream& o) { write_segregation_summary(o, report); });
      if (!per_group.empty()) {
        emit_to(per_group, out, [&](std::ostream& o) { write_segregation_groups(o, report); });
      }
      return kExitOk;
    };
  });

  // synth
  SynthConfig syn;
  std::string genres = "action,comedy,drama,horror";
  std::string genre_probs;
  std::string out_nodes;
  std::string out_edges;
  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic recommendation network");
  synth->add_option("--num-nodes", syn.num_nodes, "Number of items")->capture_default_str();
  synth->add_option("--genres", genres, "Comma list of genre labels")->capture_default_str();
  synth->add_option("--genre-probs", genre_probs, "Comma list of genre probabilities (default uniform)");
  synth->add_option("--multi-genre-prob", syn.multi_genre_prob, "Chance of a second genre")->capture_default_str();
  synth->add_option("--out-degree", syn.out_degree, "Recommendations per item")->capture_default_str();
  synth->add_option("--p-same", syn.p_same, "Per-slot chance of a genre-sharing target")->capture_default_str();
  synth->add_option("--skew", syn.popularity_skew, "Preferential-attachment exponent")->capture_default_str();
  synth->add_option("--seed", syn.seed, "Seed")->capture_default_str();
  synth->add_option("--out-nodes", out_nodes, "Nodes file to write")->required();
  synth->add_option("--out-edges", out_edges, "Edges file to write")->required();
  synth->callback([&] {
    action = [&] {
      syn.genre_labels = split_list(genres);
      if (genre_probs.empty()) {
        syn.genre_probs.assign(syn.genre_labels.size(),
                               syn.genre_labels.empty() ? 0.0 : 1.0 / static_cast<double>(syn.genre_labels.size()));
      } else {
        syn.genre_probs.clear();
        for (const auto& p : split_list(genre_probs)) syn.genre_probs.push_back(parse_double(p));
      }
      const auto data = generate(syn);
      write_dataset(data, out_nodes, out_edges);
      out << "nodes,edges,fallback_slots,max_in_degree\n"
          << data.items.size() << ',' << data.edges.size() << ',' << data.stats.fallback_slots
          << ',' << data.stats.max_in_degree << '\n';
      return kExitOk;
    };
  });

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    return action();
  } catch (const AuditError& e) {
    err << "error: " << errc_name(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace rnaudit
