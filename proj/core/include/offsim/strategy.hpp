#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <offsim/profiler.hpp>
#include <offsim/rng.hpp>
#include <offsim/types.hpp>

namespace offsim {

enum class StrategyKind { Local, Server, TMin, EMin, Hybrid, Balanced, LocalFirst };

// Applies when the deadline-feasible set is empty.
enum class FallbackPolicy { UseTMin, Cancel };

struct Strategy {
  StrategyKind kind = StrategyKind::TMin;
  std::optional<HostId> server;              // required for Server
  StrategyKind inner = StrategyKind::TMin;   // LocalFirst delegate
  FallbackPolicy fallback = FallbackPolicy::UseTMin;
};

struct Decision {
  std::optional<HostId> executor;         // empty = cancelled
  std::optional<CostEstimate> estimate;   // for the chosen executor
  std::vector<HostId> feasible;           // ascending host id
};

// Pure given the view; rng is consumed by Balanced only. Ties break toward
// the lowest host id.
Decision decide(const Strategy& strategy, const JobSpec& spec,
                const DecisionView& view, Rng& rng, bool corrected_tc = false);

// "local" | "server" | "tmin" | "emin" | "hybrid" | "balanced"
// | "lf:tmin" | "lf:hybrid" | "lf:balanced"
std::optional<Strategy> parse_strategy(std::string_view text);
std::string to_string(const Strategy& s);

}  // namespace offsim
