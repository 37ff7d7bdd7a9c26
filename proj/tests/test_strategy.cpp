#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "offsim/strategy.hpp"

using namespace offsim;

namespace {

// Five hosts, identical radios (pu 2.0, pd 1.5) and identical 100/100 Mbit
// paths, so selection is driven by compute speed, queue and compute power.
//
//        te    pc   queue   T(d=9 view)        E
//   h0   5.0  2.0   0       5.0 (origin)      10.0
//   h1   4.0  2.0   1       8.17632768         8.61714688
//   h2   2.0  4.1   0       2.17632768         8.81714688
//   h3  14.0  0.4   0      14.17632768         6.21714688
//   h4   6.0  1.0   0       6.17632768         6.61714688
struct Fleet {
  JobSpec job;
  DecisionView view;

  explicit Fleet(double deadline = 9.0) {
    job.id = 7;
    job.origin = 0;
    job.release = 0.0;
    job.deadline = deadline;
    job.input_bytes = 2.2e6;
    job.output_bytes = 4096.0;

    view.now = 0.0;
    view.origin = 0;
    double te[] = {5.0, 4.0, 2.0, 14.0, 6.0};
    double pc[] = {2.0, 2.0, 4.1, 0.4, 1.0};
    std::uint32_t q[] = {0, 1, 0, 0, 0};
    for (HostId h = 0; h < 5; ++h) {
      view.snapshots.push_back(
          {h, q[h], te[h], pc[h], 2.0, 1.5, 0.0, std::nullopt});
      view.links.push_back({8.0 / 100e6, 8.0 / 100e6});
      view.executor_role.push_back(true);
    }
  }
};

Strategy make(StrategyKind kind) {
  Strategy s;
  s.kind = kind;
  return s;
}

// Selection rules restated from scratch so the production code is checked
// against an independent derivation, not against itself.
struct OracleCost {
  double t_in = 0.0, t_compute = 0.0, t_out = 0.0;
  double e_in = 0.0, e_compute = 0.0, e_out = 0.0;
  double time() const { return t_in + t_compute + t_out; }
  double energy() const { return e_in + e_compute + e_out; }
};

OracleCost oracle_cost(const JobSpec& job, const DecisionView& v, HostId h,
                       bool corrected) {
  const HostSnapshot& c = v.snapshots[h];
  const HostSnapshot& o = v.snapshots[v.origin];
  OracleCost r;
  r.t_compute = (c.queue_length + 1.0) * c.te_avg;
  if (corrected && c.running_elapsed.has_value()) {
    double elapsed = *c.running_elapsed + (v.now - c.snapshot_time);
    if (elapsed < 0.0) elapsed = 0.0;
    if (elapsed > c.te_avg) elapsed = c.te_avg;
    r.t_compute -= elapsed;
  }
  r.e_compute = c.te_avg * c.pc_avg;
  if (h != v.origin) {
    r.t_in = v.links[h].ul_time_per_byte * job.input_bytes;
    r.t_out = v.links[h].dl_time_per_byte * job.output_bytes;
    r.e_in = r.t_in * (o.pu_avg + c.pd_avg);
    r.e_out = r.t_out * (o.pd_avg + c.pu_avg);
  }
  return r;
}

struct OracleDecision {
  std::optional<HostId> executor;
  std::vector<HostId> feasible;
};

OracleDecision oracle_decide(const Strategy& s, const JobSpec& job,
                             const DecisionView& v, Rng& rng, bool corrected) {
  std::vector<HostId> hosts;
  std::vector<OracleCost> costs;
  for (HostId h = 0; h < v.snapshots.size(); ++h) {
    if (v.executor_role[h]) {
      hosts.push_back(h);
      costs.push_back(oracle_cost(job, v, h, corrected));
    }
  }
  OracleDecision d;
  std::vector<std::size_t> feas_idx;
  for (std::size_t i = 0; i < hosts.size(); ++i) {
    if (costs[i].time() <= job.deadline) {
      d.feasible.push_back(hosts[i]);
      feas_idx.push_back(i);
    }
  }
  auto best_by = [&](auto key, const std::vector<std::size_t>* subset) {
    std::size_t best = subset ? (*subset)[0] : 0;
    auto idx_of = [&](std::size_t k) { return subset ? (*subset)[k] : k; };
    std::size_t n = subset ? subset->size() : hosts.size();
    for (std::size_t k = 1; k < n; ++k)
      if (key(costs[idx_of(k)]) < key(costs[best])) best = idx_of(k);
    return hosts[best];
  };
  auto by_time = [](const OracleCost& c) { return c.time(); };
  auto by_energy = [](const OracleCost& c) { return c.energy(); };
  auto fall_back = [&]() {
    if (s.fallback == FallbackPolicy::UseTMin)
      d.executor = best_by(by_time, nullptr);
  };
  switch (s.kind) {
    case StrategyKind::Local:
      d.executor = v.origin;
      break;
    case StrategyKind::Server:
      d.executor = *s.server;
      break;
    case StrategyKind::TMin:
      d.executor = best_by(by_time, nullptr);
      break;
    case StrategyKind::EMin:
      d.executor = best_by(by_energy, nullptr);
      break;
    case StrategyKind::Hybrid:
      if (feas_idx.empty()) fall_back();
      else d.executor = best_by(by_energy, &feas_idx);
      break;
    case StrategyKind::Balanced:
      if (feas_idx.empty()) fall_back();
      else d.executor = hosts[feas_idx[uniform_index(rng, feas_idx.size())]];
      break;
    case StrategyKind::LocalFirst: {
      std::size_t oi = 0;
      while (hosts[oi] != v.origin) ++oi;
      if (costs[oi].time() <= job.deadline) {
        d.executor = v.origin;
      } else {
        Strategy inner;
        inner.kind = s.inner;
        inner.fallback = s.fallback;
        OracleDecision rec = oracle_decide(inner, job, v, rng, corrected);
        d.executor = rec.executor;
      }
      break;
    }
  }
  return d;
}

}  // namespace

TEST_CASE("fleet fixture selections") {
  Fleet f;
  Rng rng(1);

  SUBCASE("local runs at the origin") {
    Decision d = decide(make(StrategyKind::Local), f.job, f.view, rng);
    CHECK(d.executor.value() == 0);
    CHECK(d.estimate->total_time() == doctest::Approx(5.0));
    CHECK(d.estimate->total_energy() == doctest::Approx(10.0));
  }
  SUBCASE("server pins the configured host even when slow") {
    Strategy s = make(StrategyKind::Server);
    s.server = 3;
    Decision d = decide(s, f.job, f.view, rng);
    CHECK(d.executor.value() == 3);
    CHECK(d.estimate->total_time() == doctest::Approx(14.17632768));
  }
  SUBCASE("tmin takes the fastest host") {
    Decision d = decide(make(StrategyKind::TMin), f.job, f.view, rng);
    CHECK(d.executor.value() == 2);
    CHECK(d.estimate->total_time() == doctest::Approx(2.17632768).epsilon(1e-12));
  }
  SUBCASE("emin takes the cheapest host even past the deadline") {
    Decision d = decide(make(StrategyKind::EMin), f.job, f.view, rng);
    CHECK(d.executor.value() == 3);
    CHECK(d.estimate->total_energy() == doctest::Approx(6.21714688).epsilon(1e-12));
    CHECK(d.estimate->total_time() > f.job.deadline);
  }
  SUBCASE("hybrid takes the cheapest host that can still make it") {
    Decision d = decide(make(StrategyKind::Hybrid), f.job, f.view, rng);
    CHECK(d.executor.value() == 4);
    CHECK(d.estimate->total_energy() == doctest::Approx(6.61714688).epsilon(1e-12));
    CHECK(d.feasible == std::vector<HostId>{0, 1, 2, 4});
  }
  SUBCASE("lf stays home while the origin is feasible") {
    Strategy s = make(StrategyKind::LocalFirst);
    s.inner = StrategyKind::TMin;
    Decision d = decide(s, f.job, f.view, rng);
    CHECK(d.executor.value() == 0);
  }
}

TEST_CASE("tight deadline narrows and then empties the feasible set") {
  Fleet f(4.0);
  Rng rng(1);
  Decision d = decide(make(StrategyKind::Hybrid), f.job, f.view, rng);
  CHECK(d.feasible == std::vector<HostId>{2});
  CHECK(d.executor.value() == 2);

  Strategy lf = make(StrategyKind::LocalFirst);
  lf.inner = StrategyKind::TMin;
  Decision dlf = decide(lf, f.job, f.view, rng);
  CHECK(dlf.executor.value() == 2);  // origin needs 5.0 s, falls through

  Fleet g(2.0);
  SUBCASE("fallback reroutes to the fastest host") {
    Decision fb = decide(make(StrategyKind::Hybrid), g.job, g.view, rng);
    CHECK(fb.executor.value() == 2);
    CHECK(fb.feasible.empty());
  }
  SUBCASE("cancel policy gives the job up") {
    Strategy s = make(StrategyKind::Hybrid);
    s.fallback = FallbackPolicy::Cancel;
    Decision fb = decide(s, g.job, g.view, rng);
    CHECK_FALSE(fb.executor.has_value());
    CHECK_FALSE(fb.estimate.has_value());
    CHECK(fb.feasible.empty());
  }
}

TEST_CASE("an unbounded deadline turns hybrid into emin") {
  Fleet f(1e9);
  Rng r1(1), r2(1);
  Decision h = decide(make(StrategyKind::Hybrid), f.job, f.view, r1);
  Decision e = decide(make(StrategyKind::EMin), f.job, f.view, r2);
  CHECK(h.executor.value() == e.executor.value());
  CHECK(h.executor.value() == 3);
}

TEST_CASE("ties break toward the lowest host id") {
  // origin plus two clones; the clones beat the origin on both axes
  JobSpec job;
  job.origin = 0;
  job.deadline = 9.0;
  job.input_bytes = 1e5;
  job.output_bytes = 1e3;
  DecisionView v;
  v.origin = 0;
  v.snapshots = {
      {0, 0, 9.0, 5.0, 2.0, 1.5, 0.0, std::nullopt},
      {1, 0, 2.0, 1.0, 2.0, 1.5, 0.0, std::nullopt},
      {2, 0, 2.0, 1.0, 2.0, 1.5, 0.0, std::nullopt},
  };
  v.links = {{}, {8.0 / 100e6, 8.0 / 100e6}, {8.0 / 100e6, 8.0 / 100e6}};
  v.executor_role = {true, true, true};
  Rng rng(1);
  CHECK(decide(make(StrategyKind::TMin), job, v, rng).executor.value() == 1);
  CHECK(decide(make(StrategyKind::EMin), job, v, rng).executor.value() == 1);
  CHECK(decide(make(StrategyKind::Hybrid), job, v, rng).executor.value() == 1);
}

TEST_CASE("only balanced draws from the rng") {
  Fleet f;
  for (StrategyKind k : {StrategyKind::Local, StrategyKind::TMin,
                         StrategyKind::EMin, StrategyKind::Hybrid}) {
    Rng rng(42);
    Rng untouched(42);
    decide(make(k), f.job, f.view, rng);
    CHECK(rng() == untouched());
  }
  Rng rng(42);
  Rng untouched(42);
  decide(make(StrategyKind::Balanced), f.job, f.view, rng);
  CHECK(rng() != untouched());
}

TEST_CASE("balanced spreads over the feasible set") {
  Fleet f;
  Rng rng(99);
  std::vector<int> hits(5, 0);
  const int kDraws = 4000;
  for (int i = 0; i < kDraws; ++i) {
    Decision d = decide(make(StrategyKind::Balanced), f.job, f.view, rng);
    ++hits[*d.executor];
  }
  CHECK(hits[3] == 0);  // infeasible
  for (HostId h : {0, 1, 2, 4}) {
    double share = static_cast<double>(hits[h]) / kDraws;
    CHECK(share > 0.2);
    CHECK(share < 0.3);
  }
}

TEST_CASE("decisions are pure in the view") {
  Fleet f;
  Rng r1(5), r2(5);
  Decision a = decide(make(StrategyKind::Hybrid), f.job, f.view, r1);
  Decision b = decide(make(StrategyKind::Hybrid), f.job, f.view, r2);
  CHECK(a.executor == b.executor);
  CHECK(a.feasible == b.feasible);
}

TEST_CASE("strategy names round trip") {
  const char* names[] = {"local",    "server",      "tmin",
                         "emin",     "hybrid",      "balanced",
                         "lf:tmin",  "lf:hybrid",   "lf:balanced"};
  for (const char* n : names) {
    auto s = parse_strategy(n);
    REQUIRE(s.has_value());
    CHECK(to_string(*s) == n);
  }
  CHECK_FALSE(parse_strategy("fastest").has_value());
  CHECK_FALSE(parse_strategy("lf:").has_value());
  CHECK_FALSE(parse_strategy("").has_value());
}

TEST_CASE("random fleets agree with an independent selection oracle") {
  Rng gen(20240817);
  int checked = 0;
  for (int iter = 0; iter < 400; ++iter) {
    std::size_t n = 2 + uniform_index(gen, 5);
    DecisionView v;
    v.now = uniform01(gen) * 100.0;
    v.origin = static_cast<HostId>(uniform_index(gen, n));
    bool any_exec = false;
    for (HostId h = 0; h < n; ++h) {
      double te = 0.5 + 14.5 * uniform01(gen);
      HostSnapshot s{h,
                     static_cast<std::uint32_t>(uniform_index(gen, 6)),
                     te,
                     0.3 + 5.7 * uniform01(gen),
                     0.5 + 2.5 * uniform01(gen),
                     0.5 + 2.5 * uniform01(gen),
                     v.now - 2.0 * uniform01(gen),
                     std::nullopt};
      if (uniform01(gen) < 0.5) s.running_elapsed = te * uniform01(gen);
      v.snapshots.push_back(s);
      v.links.push_back({1e-8 + 2.9e-7 * uniform01(gen),
                         1e-8 + 2.9e-7 * uniform01(gen)});
      bool exec = uniform01(gen) < 0.8;
      any_exec |= exec;
      v.executor_role.push_back(exec);
    }
    if (!any_exec) v.executor_role[n - 1] = true;

    JobSpec job;
    job.id = static_cast<JobId>(iter);
    job.origin = v.origin;
    job.deadline = 2.0 + 18.0 * uniform01(gen);
    job.input_bytes = 1e4 + 5e6 * uniform01(gen);
    job.output_bytes = 256 + 1e5 * uniform01(gen);

    StrategyKind kinds[] = {StrategyKind::Local,    StrategyKind::Server,
                            StrategyKind::TMin,     StrategyKind::EMin,
                            StrategyKind::Hybrid,   StrategyKind::Balanced,
                            StrategyKind::LocalFirst};
    Strategy s;
    s.kind = kinds[uniform_index(gen, 7)];
    s.fallback = uniform01(gen) < 0.5 ? FallbackPolicy::UseTMin
                                      : FallbackPolicy::Cancel;
    if (s.kind == StrategyKind::LocalFirst) {
      StrategyKind inners[] = {StrategyKind::TMin, StrategyKind::Hybrid,
                               StrategyKind::Balanced};
      s.inner = inners[uniform_index(gen, 3)];
    }
    if (s.kind == StrategyKind::Local || s.kind == StrategyKind::LocalFirst)
      v.executor_role[v.origin] = true;
    if (s.kind == StrategyKind::Server) {
      std::vector<HostId> execs;
      for (HostId h = 0; h < n; ++h)
        if (v.executor_role[h]) execs.push_back(h);
      s.server = execs[uniform_index(gen, execs.size())];
    }
    bool corrected = uniform01(gen) < 0.5;

    std::uint64_t draw_seed = gen();
    Rng sys_rng(draw_seed);
    Rng oracle_rng(draw_seed);
    Decision got = decide(s, job, v, sys_rng, corrected);
    OracleDecision want = oracle_decide(s, job, v, oracle_rng, corrected);

    REQUIRE(got.executor == want.executor);
    REQUIRE(got.feasible == want.feasible);
    if (got.executor) {
      OracleCost oc = oracle_cost(job, v, *got.executor, corrected);
      REQUIRE(got.estimate->total_time() ==
              doctest::Approx(oc.time()).epsilon(1e-12));
      REQUIRE(got.estimate->total_energy() ==
              doctest::Approx(oc.energy()).epsilon(1e-12));
    }
    ++checked;
  }
  CHECK(checked == 400);
}
