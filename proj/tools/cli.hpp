#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <variant>

#include "report.hpp"
#include "vcflow/analyses/const_prop.hpp"
#include "vcflow/analyses/lru_cache.hpp"
#include "vcflow/analyses/reaching_defs.hpp"
#include "vcflow/changes.hpp"
#include "vcflow/engine.hpp"
#include "vcflow/fact_store.hpp"
#include "vcflow/incremental.hpp"
#include "vcflow/sequential.hpp"
#include "vcflow/store_codec.hpp"

namespace vcflow::cli {

enum ExitCode : int { kOk = 0, kDivergence = 1, kUsage = 2, kNonConvergence = 3 };

/// Bad flag value or unreadable/unwritable file.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct AnalyzeOptions {
  std::filesystem::path cfg;
  std::string analysis = "rd";
  Algorithm algorithm = Algorithm::Optimized;
  std::size_t workers = 1;
  std::filesystem::path store;
  std::optional<std::filesystem::path> report;
  std::uint32_t sets = 4;
  std::uint32_t assoc = 2;
};

struct DiffOptions {
  std::filesystem::path old_cfg;
  std::filesystem::path new_cfg;
  std::filesystem::path out;
};

struct IncrementalOptions {
  std::filesystem::path cfg;
  std::filesystem::path changes;
  std::filesystem::path store;
  IncrementalMode mode = IncrementalMode::Optimized;
  std::size_t workers = 1;
  std::optional<std::filesystem::path> report;
};

struct VerifyOptions {
  std::filesystem::path cfg;
  std::string analysis = "rd";
  std::size_t workers = 4;
  std::uint64_t seed = 1;
  std::uint32_t sets = 4;
  std::uint32_t assoc = 2;
  bool inject_fault = false;
};

using AnyAnalysis = std::variant<ReachingDefs, ConstProp, LruMustCache>;

/// "rd", "cp" or "cache".  Throws UsageError.
AnyAnalysis make_analysis(const std::string& name, std::uint32_t sets, std::uint32_t assoc);
/// Rebuilds the analysis that wrote a store.  Throws UsageError.
AnyAnalysis analysis_for_fingerprint(const std::string& fingerprint);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& text);

template <DataflowAnalysis A>
int analyze_with(const A& a, const AnalyzeOptions& o, std::ostream& out) {
  const auto g = parse_graph(read_file(o.cfg));
  EngineConfig cfg;
  cfg.workers = o.workers;
  cfg.algorithm = o.algorithm;
  const auto r = run_engine(g, a, cfg);
  auto store = FactStore::create_file(o.store, store_meta(a));
  save_result(store, a, g, r);
  RunHeader h{"analyze", a.name(), a.fingerprint(), std::string(to_string(o.algorithm)), o.workers};
  if (o.report) write_file(*o.report, analyze_report(h, g, r.reached.size(), r.stats));
  out << "analyze: " << a.name() << " " << to_string(o.algorithm) << ", " << g.size()
      << " vertices, " << r.stats.supersteps << " supersteps, " << r.stats.messages_sent
      << " messages\n";
  return kOk;
}

template <DataflowAnalysis A>
int incremental_with(const A& a, const IncrementalOptions& o, const SuperGraph& g_new,
                     const ChangeBatch& batch, FactStore& store, std::ostream& out) {
  EngineConfig cfg;
  cfg.workers = o.workers;
  auto run = run_incremental(g_new, batch, store, a, cfg, o.mode);
  std::size_t boundary = 0;
  for (const auto& kv : run.impact.boundary_preds) boundary += kv.second.size();
  std::optional<RunStats> stats;
  if (run.ran) stats = run.result.stats;
  RunHeader h{"incremental", a.name(), a.fingerprint(), std::string(to_string(o.mode)), o.workers};
  if (o.report)
    write_file(*o.report, incremental_report(h, g_new, batch, run.impact, boundary, stats));
  out << "incremental: " << to_string(o.mode) << ", " << batch.size() << " changes, "
      << run.impact.affected.size() << " affected";
  if (stats) out << ", " << stats->supersteps << " supersteps, " << stats->fact_updates << " updates";
  out << "\n";
  return kOk;
}

template <DataflowAnalysis A>
int verify_with(const A& a, const VerifyOptions& o, std::ostream& out) {
  const auto g = parse_graph(read_file(o.cfg));
  EngineConfig cfg;
  cfg.workers = o.workers;
  cfg.drop_last_predecessor = o.inject_fault;
  const auto reference = run_sequential(g, a);
  if (auto bad = check_fixed_point(g, a, reference)) {
    out << "sequential result is not a fixed point: " << *bad << "\n";
    return kDivergence;
  }
  struct Candidate {
    const char* name;
    AnalysisResult<typename A::Fact> result;
  };
  const Candidate candidates[] = {
      {"classic", run_classic(g, a, cfg)},
      {"opt", run_optimized(g, a, cfg)},
      {"chaotic", run_chaotic(g, a, o.seed)},
  };
  for (const auto& c : candidates)
    if (auto d = first_divergence(a, c.result, reference)) {
      out << "divergence: " << c.name << " vs sequential at vertex " << to_string(d->vertex) << " "
          << d->slot << ": " << d->left << " != " << d->right << "\n";
      return kDivergence;
    }
  out << "verify: " << a.name() << " classic, opt, sequential and chaotic agree on " << g.size()
      << " vertices\n";
  return kOk;
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out);
int cmd_diff(const DiffOptions& o, std::ostream& out);
int cmd_incremental(const IncrementalOptions& o, std::ostream& out);
int cmd_verify(const VerifyOptions& o, std::ostream& out);

/// Runs `body`, mapping library errors to exit codes and printing them to
/// `err`: NonConvergence -> 3, any other error -> 2.
int guarded(const std::function<int()>& body, std::ostream& err);

/// Full command line, e.g. {"vcflow", "analyze", "--cfg", ...}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vcflow::cli
