#include <offsim/worker.hpp>

#include <cassert>

namespace offsim {

std::optional<JobId> Worker::enqueue(JobId job, double now) {
  if (!running_) {
    assert(pending_.empty());
    running_ = job;
    running_since_ = now;
    return job;
  }
  pending_.push_back(job);
  return std::nullopt;
}

Worker::Completion Worker::complete_current(double now) {
  assert(running_ && "complete_current on an idle worker");
  Completion c{*running_, std::nullopt};
  running_.reset();
  if (!pending_.empty()) {
    running_ = pending_.front();
    pending_.pop_front();
    running_since_ = now;
    c.started = running_;
  }
  return c;
}

}  // namespace offsim
