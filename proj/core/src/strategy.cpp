#include <offsim/strategy.hpp>

#include <cassert>
#include <vector>

namespace offsim {

namespace {

struct Candidate {
  HostId host;
  CostEstimate est;
};

// Candidates come in ascending host id; strict < keeps the lowest id on ties.
const Candidate* argmin_time(const std::vector<Candidate>& cands) {
  const Candidate* best = nullptr;
  for (const Candidate& c : cands)
    if (!best || c.est.total_time() < best->est.total_time()) best = &c;
  return best;
}

const Candidate* argmin_energy(const std::vector<Candidate>& cands) {
  const Candidate* best = nullptr;
  for (const Candidate& c : cands)
    if (!best || c.est.total_energy() < best->est.total_energy()) best = &c;
  return best;
}

const Candidate* find(const std::vector<Candidate>& cands, HostId h) {
  for (const Candidate& c : cands)
    if (c.host == h) return &c;
  return nullptr;
}

Decision pick(const Candidate& c, std::vector<HostId> feasible) {
  return Decision{c.host, c.est, std::move(feasible)};
}

}  // namespace

Decision decide(const Strategy& strategy, const JobSpec& spec,
                const DecisionView& view, Rng& rng, bool corrected_tc) {
  std::vector<Candidate> cands;
  cands.reserve(view.snapshots.size());
  for (HostId h = 0; h < view.snapshots.size(); ++h) {
    if (h < view.executor_role.size() && view.executor_role[h])
      cands.push_back({h, full_estimate(spec, view, h, corrected_tc)});
  }
  assert(!cands.empty() && "no executor-capable host in view");

  std::vector<HostId> feasible;
  std::vector<Candidate> feasible_cands;
  for (const Candidate& c : cands) {
    if (c.est.total_time() <= spec.deadline) {
      feasible.push_back(c.host);
      feasible_cands.push_back(c);
    }
  }

  auto fall_back = [&]() -> Decision {
    if (strategy.fallback == FallbackPolicy::UseTMin)
      return pick(*argmin_time(cands), feasible);
    return Decision{std::nullopt, std::nullopt, feasible};
  };

  switch (strategy.kind) {
    case StrategyKind::Local: {
      const Candidate* c = find(cands, view.origin);
      assert(c && "local strategy needs an executor-capable origin");
      return pick(*c, std::move(feasible));
    }
    case StrategyKind::Server: {
      assert(strategy.server && "server strategy without a server host");
      const Candidate* c = find(cands, *strategy.server);
      assert(c && "server host is not executor-capable");
      return pick(*c, std::move(feasible));
    }
    case StrategyKind::TMin:
      return pick(*argmin_time(cands), std::move(feasible));
    case StrategyKind::EMin:
      return pick(*argmin_energy(cands), std::move(feasible));
    case StrategyKind::Hybrid: {
      if (feasible_cands.empty()) return fall_back();
      return pick(*argmin_energy(feasible_cands), std::move(feasible));
    }
    case StrategyKind::Balanced: {
      if (feasible_cands.empty()) return fall_back();
      const Candidate& c = feasible_cands[uniform_index(rng, feasible_cands.size())];
      return pick(c, std::move(feasible));
    }
    case StrategyKind::LocalFirst: {
      const Candidate* own = find(cands, view.origin);
      assert(own && "lf strategy needs an executor-capable origin");
      if (own->est.total_time() <= spec.deadline)
        return pick(*own, std::move(feasible));
      Strategy inner;
      inner.kind = strategy.inner;
      inner.fallback = strategy.fallback;
      return decide(inner, spec, view, rng, corrected_tc);
    }
  }
  assert(false && "unreachable");
  return Decision{};
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  Strategy s;
  if (text == "local") s.kind = StrategyKind::Local;
  else if (text == "server") s.kind = StrategyKind::Server;
  else if (text == "tmin") s.kind = StrategyKind::TMin;
  else if (text == "emin") s.kind = StrategyKind::EMin;
  else if (text == "hybrid") s.kind = StrategyKind::Hybrid;
  else if (text == "balanced") s.kind = StrategyKind::Balanced;
  else if (text == "lf:tmin") { s.kind = StrategyKind::LocalFirst; s.inner = StrategyKind::TMin; }
  else if (text == "lf:hybrid") { s.kind = StrategyKind::LocalFirst; s.inner = StrategyKind::Hybrid; }
  else if (text == "lf:balanced") { s.kind = StrategyKind::LocalFirst; s.inner = StrategyKind::Balanced; }
  else return std::nullopt;
  return s;
}

std::string to_string(const Strategy& s) {
  switch (s.kind) {
    case StrategyKind::Local: return "local";
    case StrategyKind::Server: return "server";
    case StrategyKind::TMin: return "tmin";
    case StrategyKind::EMin: return "emin";
    case StrategyKind::Hybrid: return "hybrid";
    case StrategyKind::Balanced: return "balanced";
    case StrategyKind::LocalFirst:
      switch (s.inner) {
        case StrategyKind::Hybrid: return "lf:hybrid";
        case StrategyKind::Balanced: return "lf:balanced";
        default: return "lf:tmin";
      }
  }
  return "?";
}

}  // namespace offsim
