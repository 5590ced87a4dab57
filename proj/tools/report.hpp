#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "vcflow/changes.hpp"
#include "vcflow/engine.hpp"
#include "vcflow/incremental.hpp"

namespace vcflow::cli {

/// Identifies the run being reported.
struct RunHeader {
  std::string command;
  std::string analysis;
  std::string fingerprint;
  std::string algorithm;
  std::size_t workers = 1;
};

/// Whole-program run report (JSON, deterministic, no timing fields).
std::string analyze_report(const RunHeader& h, const SuperGraph& g, std::size_t reached,
                           const RunStats& stats);

/// Incremental run report: impact counts, sub-CFG share of the updated graph,
/// and the engine statistics of the sub-CFG run (absent when nothing ran).
std::string incremental_report(const RunHeader& h, const SuperGraph& g_new,
                               const ChangeBatch& batch, const ImpactResult& impact,
                               std::size_t boundary_messages,
                               const std::optional<RunStats>& stats);

}  // namespace vcflow::cli
