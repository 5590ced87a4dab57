#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iterator>
#include <regex>

namespace vcflow::cli {

AnyAnalysis make_analysis(const std::string& name, std::uint32_t sets, std::uint32_t assoc) {
  if (name == "rd") return ReachingDefs{};
  if (name == "cp") return ConstProp{};
  if (name == "cache") {
    try {
      return LruMustCache(sets, assoc);
    } catch (const AnalysisDefinitionError& e) {
      throw UsageError(e.what());
    }
  }
  throw UsageError("unknown analysis '" + name + "' (expected rd, cp or cache)");
}

AnyAnalysis analysis_for_fingerprint(const std::string& fingerprint) {
  if (fingerprint == ReachingDefs{}.fingerprint()) return ReachingDefs{};
  if (fingerprint == ConstProp{}.fingerprint()) return ConstProp{};
  static const std::regex cache(R"(cache/decreasing/sets=(\d+)/assoc=(\d+)/v1)");
  std::smatch m;
  if (std::regex_match(fingerprint, m, cache)) {
    auto sets = std::stoul(m[1].str());
    auto assoc = std::stoul(m[2].str());
    LruMustCache a(static_cast<std::uint32_t>(sets), static_cast<std::uint32_t>(assoc));
    if (a.fingerprint() == fingerprint) return a;
  }
  throw UsageError("store was written by an unknown analysis '" + fingerprint + "'");
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw UsageError("cannot read " + p.string());
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot write " + p.string());
  f << text;
  if (!f.flush()) throw UsageError("short write to " + p.string());
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
  return std::visit([&](const auto& a) { return analyze_with(a, o, out); },
                    make_analysis(o.analysis, o.sets, o.assoc));
}

int cmd_diff(const DiffOptions& o, std::ostream& out) {
  const auto old_g = parse_graph(read_file(o.old_cfg));
  const auto new_g = parse_graph(read_file(o.new_cfg));
  const auto batch = diff_graphs(old_g, new_g);
  write_file(o.out, render_changes(batch));
  out << "diff: " << batch.size() << " atomic changes\n";
  return kOk;
}

int cmd_incremental(const IncrementalOptions& o, std::ostream& out) {
  const auto g_new = parse_graph(read_file(o.cfg));
  const auto batch = parse_changes(read_file(o.changes), g_new);
  auto store = FactStore::open_file(o.store);
  return std::visit(
      [&](const auto& a) { return incremental_with(a, o, g_new, batch, store, out); },
      analysis_for_fingerprint(store.meta().fingerprint));
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  return std::visit([&](const auto& a) { return verify_with(a, o, out); },
                    make_analysis(o.analysis, o.sets, o.assoc));
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const NonConvergence& e) {
    err << "error: non-convergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vertex-centric dataflow analysis engine", "vcflow"};
  app.require_subcommand(1);

  const std::vector<std::string> analyses{"rd", "cp", "cache"};

  AnalyzeOptions ao;
  std::string algo = "opt";
  auto* analyze = app.add_subcommand("analyze", "Whole-program analysis into a fact store");
  analyze->add_option("--cfg", ao.cfg, "CFG file")->required();
  analyze->add_option("--analysis", ao.analysis)->required()->check(CLI::IsMember(analyses));
  analyze->add_option("--algo", algo)->check(CLI::IsMember({"classic", "opt"}));
  analyze->add_option("--workers", ao.workers)->check(CLI::PositiveNumber);
  analyze->add_option("--store", ao.store, "Fact store to (re)write")->required();
  analyze->add_option("--report", ao.report, "JSON run report");
  analyze->add_option("--sets", ao.sets)->check(CLI::PositiveNumber);
  analyze->add_option("--assoc", ao.assoc)->check(CLI::PositiveNumber);

  DiffOptions dopt;
  auto* diff = app.add_subcommand("diff", "Atomic changes between two CFG versions");
  diff->add_option("--old", dopt.old_cfg)->required();
  diff->add_option("--new", dopt.new_cfg)->required();
  diff->add_option("--out", dopt.out)->required();

  IncrementalOptions io;
  std::string mode = "opt";
  auto* incr = app.add_subcommand("incremental", "Update a fact store after CFG changes");
  incr->add_option("--cfg", io.cfg, "Updated CFG file")->required();
  incr->add_option("--changes", io.changes)->required();
  incr->add_option("--store", io.store)->required();
  incr->add_option("--mode", mode)->check(CLI::IsMember({"naive", "opt"}));
  incr->add_option("--workers", io.workers)->check(CLI::PositiveNumber);
  incr->add_option("--report", io.report, "JSON impact report");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Cross-check all four solvers");
  verify->add_option("--cfg", vo.cfg)->required();
  verify->add_option("--analysis", vo.analysis)->required()->check(CLI::IsMember(analyses));
  verify->add_option("--workers", vo.workers)->check(CLI::PositiveNumber);
  verify->add_option("--seed", vo.seed, "Chaotic iteration seed");
  verify->add_option("--sets", vo.sets)->check(CLI::PositiveNumber);
  verify->add_option("--assoc", vo.assoc)->check(CLI::PositiveNumber);
  verify->add_flag("--inject-fault", vo.inject_fault)->group("");  // hidden, tests only

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  return guarded(
      [&]() -> int {
        if (*analyze) {
          ao.algorithm = algo == "classic" ? Algorithm::Classic : Algorithm::Optimized;
          return cmd_analyze(ao, out);
        }
        if (*diff) return cmd_diff(dopt, out);
        if (*incr) {
          io.mode = mode == "naive" ? IncrementalMode::Naive : IncrementalMode::Optimized;
          return cmd_incremental(io, out);
        }
        return cmd_verify(vo, out);
      },
      err);
}

}  // namespace vcflow::cli
