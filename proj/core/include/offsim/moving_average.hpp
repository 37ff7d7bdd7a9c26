#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace offsim {

// Plain windowed mean. Empty until the first push; callers that need a value
// before any observation seed it explicitly.
class MovingAverage {
 public:
  explicit MovingAverage(std::size_t window) : window_(window ? window : 1) {}

  void push(double v) {
    if (buf_.size() < window_) {
      buf_.push_back(v);
    } else {
      buf_[next_] = v;
      next_ = (next_ + 1) % window_;
    }
  }

  std::optional<double> value() const {
    if (buf_.empty()) return std::nullopt;
    double sum = 0.0;
    for (double v : buf_) sum += v;
    return sum / static_cast<double>(buf_.size());
  }

  std::size_t count() const { return buf_.size(); }
  std::size_t window() const { return window_; }

 private:
  std::size_t window_;
  std::size_t next_ = 0;
  std::vector<double> buf_;
};

}  // namespace offsim
