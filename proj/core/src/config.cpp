#include <offsim/config.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include <offsim/profiles.hpp>

namespace offsim {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& issues) {
  std::ostringstream os;
  os << "invalid scenario:";
  for (const std::string& s : issues) os << "\n  - " << s;
  return os.str();
}

std::optional<Role> parse_role(const std::string& s) {
  if (s == "generator") return Role::Generator;
  if (s == "worker") return Role::Worker;
  if (s == "both") return Role::Both;
  return std::nullopt;
}

DeviceProfile inline_profile(const json& j, const std::string& host_label,
                             std::vector<std::string>& errors) {
  DeviceProfile p;
  p.name = host_label;
  auto num = [&](const char* key, double& out, bool required = true) {
    if (j.contains(key)) {
      if (j.at(key).is_number()) out = j.at(key).get<double>();
      else errors.push_back(host_label + ": " + key + " must be a number");
    } else if (required) {
      errors.push_back(host_label + ": missing profile field " + key);
    }
  };
  num("exec_time_mean", p.exec_time_mean);
  p.exec_time_jitter = 0.1;
  num("exec_time_jitter", p.exec_time_jitter, false);
  num("p_idle", p.p_idle);
  num("p_compute", p.p_compute);
  num("p_upload", p.p_upload);
  num("p_download", p.p_download);
  double up = 0.0, down = 0.0;
  num("uplink_mbps", up);
  num("downlink_mbps", down);
  p.uplink_bps = up * 1e6;
  p.downlink_bps = down * 1e6;
  if (j.contains("wall_powered")) p.wall_powered = j.at("wall_powered").get<bool>();
  return p;
}

const std::set<std::string> kKnownKeys = {
    "name",        "hosts",      "strategy",   "server_host",
    "fallback",    "lambda",     "deadline",   "duration",
    "repetitions", "seed",       "dissemination_period",
    "contention",  "corrected_tc", "window",   "input_bytes",
    "output_bytes", "jitter",
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> iss)
    : std::runtime_error(join(iss)), issues(std::move(iss)) {}

bool is_single_generator_topology(const Scenario& s) {
  std::size_t generators = 0, workers = 0;
  for (const HostSetup& h : s.hosts) {
    if (h.role == Role::Generator) ++generators;
    else if (h.role == Role::Worker) ++workers;
    else return false;  // a dual-role host makes it a peer-to-peer setup
  }
  return generators == 1 && workers == s.hosts.size() - 1;
}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  if (s.hosts.empty()) errors.push_back("at least one host is required");

  std::size_t executors = 0, generators = 0;
  std::set<std::string> names;
  for (const HostSetup& h : s.hosts) {
    if (can_execute(h.role)) ++executors;
    if (can_generate(h.role)) ++generators;
    if (!names.insert(h.name).second)
      errors.push_back("duplicate host name: " + h.name);
    const DeviceProfile& p = h.profile;
    if (p.exec_time_mean <= 0) errors.push_back(h.name + ": exec_time_mean must be > 0");
    if (p.exec_time_jitter < 0 || p.exec_time_jitter >= 1)
      errors.push_back(h.name + ": exec_time_jitter must be in [0, 1)");
    if (p.p_idle < 0 || p.p_compute < 0 || p.p_upload < 0 || p.p_download < 0)
      errors.push_back(h.name + ": power draws must be >= 0");
    if (p.uplink_bps <= 0 || p.downlink_bps <= 0)
      errors.push_back(h.name + ": link rates must be > 0");
  }
  if (!s.hosts.empty() && executors == 0)
    errors.push_back("no executor-capable host (role worker or both)");
  if (!s.hosts.empty() && generators == 0)
    errors.push_back("no generator-capable host (role generator or both)");

  bool needs_executing_origins = s.strategy.kind == StrategyKind::Local ||
                                 s.strategy.kind == StrategyKind::LocalFirst;
  if (needs_executing_origins) {
    for (const HostSetup& h : s.hosts) {
      if (h.role == Role::Generator) {
        errors.push_back("strategy '" + to_string(s.strategy) +
                         "' runs jobs at their origin, but host '" + h.name +
                         "' generates without executing");
        break;
      }
    }
  }
  if (s.strategy.kind == StrategyKind::Server) {
    if (!s.strategy.server) {
      errors.push_back("strategy 'server' requires server_host");
    } else if (*s.strategy.server >= s.hosts.size()) {
      errors.push_back("server_host index out of range");
    } else if (!can_execute(s.hosts[*s.strategy.server].role)) {
      errors.push_back("server_host '" + s.hosts[*s.strategy.server].name +
                       "' cannot execute jobs");
    }
  }

  if (s.lambda_mean <= 0) errors.push_back("lambda must be > 0");
  if (s.deadline <= 0) errors.push_back("deadline must be > 0");
  if (s.duration <= 0) errors.push_back("duration must be > 0");
  if (s.repetitions < 1) errors.push_back("repetitions must be >= 1");
  if (s.ma_window < 1) errors.push_back("window must be >= 1");
  if (s.dissemination_period < 0) errors.push_back("dissemination_period must be >= 0");
  if (s.input_bytes <= 0) errors.push_back("input_bytes must be > 0");
  if (s.output_bytes < 0) errors.push_back("output_bytes must be >= 0");

  if (!errors.empty()) throw ConfigError(std::move(errors));

  if (s.deadline > s.lambda_mean)
    warnings.push_back("deadline exceeds the mean inter-arrival gap; jobs can overlap their successors");
  return warnings;
}

LoadedScenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw ConfigError({std::string("json parse error: ") + e.what()});
  }
  if (!j.is_object()) throw ConfigError({"top level must be an object"});

  std::vector<std::string> errors;
  LoadedScenario out;
  Scenario& s = out.scenario;

  for (const auto& [key, val] : j.items())
    if (!kKnownKeys.count(key)) out.warnings.push_back("unknown key ignored: " + key);

  try {
    if (j.contains("name")) s.name = j.at("name").get<std::string>();

    std::set<std::string> used_names;
    if (j.contains("hosts") && j.at("hosts").is_array()) {
      HostId idx = 0;
      for (const json& hj : j.at("hosts")) {
        HostSetup h;
        std::string label = "host[" + std::to_string(idx) + "]";
        if (!hj.is_object() || !hj.contains("profile")) {
          errors.push_back(label + ": needs a profile (builtin name or object)");
          ++idx;
          continue;
        }
        const json& pj = hj.at("profile");
        if (pj.is_string()) {
          auto p = find_profile(pj.get<std::string>());
          if (!p) {
            errors.push_back(label + ": unknown profile '" + pj.get<std::string>() + "'");
            ++idx;
            continue;
          }
          h.profile = *p;
        } else if (pj.is_object()) {
          h.profile = inline_profile(pj, label, errors);
          h.profile.default_role = Role::Both;
        } else {
          errors.push_back(label + ": profile must be a name or an object");
          ++idx;
          continue;
        }
        h.role = h.profile.default_role;
        if (hj.contains("role")) {
          auto r = parse_role(hj.at("role").get<std::string>());
          if (!r) errors.push_back(label + ": bad role '" + hj.at("role").get<std::string>() + "'");
          else h.role = *r;
        }
        std::string base = hj.contains("name") ? hj.at("name").get<std::string>()
                                               : h.profile.name;
        std::string name = base;
        for (int k = 2; used_names.count(name); ++k)
          name = base + "_" + std::to_string(k);
        used_names.insert(name);
        h.name = name;
        s.hosts.push_back(std::move(h));
        ++idx;
      }
    } else {
      errors.push_back("hosts array is required");
    }

    std::string strategy_text = j.value("strategy", std::string("tmin"));
    auto strat = parse_strategy(strategy_text);
    if (!strat) {
      errors.push_back("unknown strategy '" + strategy_text + "'");
    } else {
      s.strategy = *strat;
    }
    if (j.contains("fallback")) {
      std::string f = j.at("fallback").get<std::string>();
      if (f == "tmin") s.strategy.fallback = FallbackPolicy::UseTMin;
      else if (f == "cancel") s.strategy.fallback = FallbackPolicy::Cancel;
      else errors.push_back("fallback must be 'tmin' or 'cancel'");
    }
    if (j.contains("server_host")) {
      std::string want = j.at("server_host").get<std::string>();
      bool found = false;
      for (HostId h = 0; h < s.hosts.size(); ++h) {
        if (s.hosts[h].name == want) {
          s.strategy.server = h;
          found = true;
          break;
        }
      }
      if (!found) errors.push_back("server_host '" + want + "' does not name a host");
    }

    s.lambda_mean = j.value("lambda", s.lambda_mean);
    s.deadline = j.value("deadline", s.deadline);
    s.duration = j.value("duration", s.duration);
    s.repetitions = j.value("repetitions", s.repetitions);
    s.seed = j.value("seed", s.seed);
    s.dissemination_period = j.value("dissemination_period", s.dissemination_period);
    s.corrected_tc = j.value("corrected_tc", s.corrected_tc);
    s.ma_window = j.value("window", s.ma_window);
    s.input_bytes = j.value("input_bytes", s.input_bytes);
    s.output_bytes = j.value("output_bytes", s.output_bytes);

    if (j.contains("contention")) {
      std::string c = j.at("contention").get<std::string>();
      if (c == "fixed") s.contention = ContentionMode::FixedRate;
      else if (c == "fair") s.contention = ContentionMode::FairShare;
      else errors.push_back("contention must be 'fixed' or 'fair'");
    }
    if (j.contains("jitter")) {
      double jit = j.at("jitter").get<double>();
      for (HostSetup& h : s.hosts) h.profile.exec_time_jitter = jit;
    }
  } catch (const json::exception& e) {
    errors.push_back(std::string("malformed value: ") + e.what());
  }

  if (!errors.empty()) throw ConfigError(std::move(errors));

  auto warnings = validate_scenario(s);
  out.warnings.insert(out.warnings.end(), warnings.begin(), warnings.end());
  return out;
}

LoadedScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file: " + path});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace offsim
