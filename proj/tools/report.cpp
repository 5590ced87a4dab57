#include "report.hpp"

#include <json.hpp>
#include <map>

namespace vcflow::cli {

namespace {

using nlohmann::ordered_json;

ordered_json stats_json(const RunStats& s) {
  ordered_json j;
  j["supersteps"] = s.supersteps;
  j["messages_sent"] = s.messages_sent;
  j["facts_gathered"] = s.facts_gathered;
  j["evaluations"] = s.evaluations;
  j["fact_updates"] = s.fact_updates;
  j["active_per_superstep"] = s.active_per_superstep;
  return j;
}

ordered_json header_json(const RunHeader& h) {
  ordered_json j;
  j["command"] = h.command;
  j["analysis"] = h.analysis;
  j["fingerprint"] = h.fingerprint;
  j["algorithm"] = h.algorithm;
  j["workers"] = h.workers;
  return j;
}

double percent(std::size_t part, std::size_t whole) {
  if (whole == 0) return 0.0;
  // Two decimals keep the report stable and readable.
  return static_cast<double>(static_cast<long long>(10000.0 * part / whole + 0.5)) / 100.0;
}

std::vector<std::uint64_t> ids(const std::set<VertexId>& s) {
  std::vector<std::uint64_t> out;
  for (auto v : s) out.push_back(value_of(v));
  return out;
}

}  // namespace

std::string analyze_report(const RunHeader& h, const SuperGraph& g, std::size_t reached,
                           const RunStats& stats) {
  auto j = header_json(h);
  j["vertices"] = g.size();
  j["edges"] = g.edge_count();
  j["reached"] = reached;
  const auto s = stats_json(stats);
  for (const auto& [k, v] : s.items()) j[k] = v;
  return j.dump(2) + "\n";
}

std::string incremental_report(const RunHeader& h, const SuperGraph& g_new,
                               const ChangeBatch& batch, const ImpactResult& impact,
                               std::size_t boundary_messages,
                               const std::optional<RunStats>& stats) {
  auto j = header_json(h);
  j["changes"] = batch.size();
  std::map<std::string, std::size_t> kinds;
  for (const auto& c : batch) ++kinds[std::string(to_string(c.kind))];
  j["changes_by_kind"] = kinds;
  j["vertices"] = g_new.size();
  j["edges"] = g_new.edge_count();
  j["affected"] = impact.affected.size();
  j["affected_add"] = impact.by_kind.add.size();
  j["affected_delete"] = impact.by_kind.del.size();
  j["affected_change"] = impact.by_kind.change.size();
  j["reused"] = impact.reuse.size();
  j["deleted"] = impact.deleted.size();
  j["entry_drift"] = ids(impact.entry_drift);
  j["sub_cfg_vertices"] = impact.sub.size();
  j["sub_cfg_edges"] = impact.sub.edge_count();
  j["sub_cfg_vertex_pct"] = percent(impact.sub.size(), g_new.size());
  j["sub_cfg_edge_pct"] = percent(impact.sub.edge_count(), g_new.edge_count());
  ordered_json boundary = ordered_json::object();
  for (const auto& [k, preds] : impact.boundary_preds) boundary[to_string(k)] = ids(preds);
  j["boundary_preds"] = boundary;
  j["boundary_messages"] = boundary_messages;
  j["ran"] = stats.has_value();
  j["run"] = stats ? stats_json(*stats) : ordered_json(nullptr);
  return j.dump(2) + "\n";
}

}  // namespace vcflow::cli
