#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <offsim/types.hpp>

namespace offsim {

enum class Regime : std::size_t { Idle = 0, Compute = 1, Upload = 2, Download = 3 };
inline constexpr std::size_t kRegimeCount = 4;

const char* to_string(Regime r);

// Per-host energy account. At every instant a host sits in exactly one regime
// (compute wins over upload over download); the regime intervals tile
// [0, horizon] with no gaps, which keeps the books auditable.
class EnergyLedger {
 public:
  explicit EnergyLedger(std::vector<DeviceProfile> profiles);

  void set_computing(HostId h, bool on, double now);
  void upload_begin(HostId h, double now);
  void upload_end(HostId h, double now);
  void download_begin(HostId h, double now);
  void download_end(HostId h, double now);

  // Closes every open interval at `horizon`. Call once, after the last event.
  void finalize(double horizon);

  double joules(HostId h) const;
  double joules(HostId h, Regime r) const;
  double seconds(HostId h, Regime r) const;
  double total_joules() const;
  double compute_joules() const;
  double horizon() const { return horizon_; }
  bool finalized() const { return finalized_; }
  std::size_t host_count() const { return profiles_.size(); }

  Regime regime(HostId h) const;
  double regime_power(HostId h) const;  // instantaneous draw, W

  bool computing(HostId h) const { return states_[h].computing; }
  bool uploading(HostId h) const { return states_[h].uploads > 0; }
  bool downloading(HostId h) const { return states_[h].downloads > 0; }

 private:
  struct State {
    bool computing = false;
    int uploads = 0;
    int downloads = 0;
    double last_t = 0.0;
    std::array<double, kRegimeCount> joules{};
    std::array<double, kRegimeCount> seconds{};
  };

  void accrue(HostId h, double now);
  double power_of(HostId h, Regime r) const;

  std::vector<DeviceProfile> profiles_;
  std::vector<State> states_;
  double horizon_ = 0.0;
  bool finalized_ = false;
};

}  // namespace offsim
