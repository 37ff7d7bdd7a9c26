#pragma once

#include <deque>
#include <optional>

#include <offsim/types.hpp>

namespace offsim {

// Non-preemptive FIFO executor: at most one running job, strict arrival order.
class Worker {
 public:
  // Returns the job if it started immediately (queue was empty).
  std::optional<JobId> enqueue(JobId job, double now);

  struct Completion {
    JobId finished;
    std::optional<JobId> started;  // next job, started at the same instant
  };
  // Precondition: busy(). Finishes the running job and promotes the head.
  Completion complete_current(double now);

  std::size_t size() const { return pending_.size() + (running_ ? 1 : 0); }
  bool busy() const { return running_.has_value(); }
  std::optional<JobId> running() const { return running_; }
  double running_since() const { return running_since_; }

 private:
  std::deque<JobId> pending_;
  std::optional<JobId> running_;
  double running_since_ = 0.0;
};

}  // namespace offsim
