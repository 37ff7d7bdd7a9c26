#include "doctest.h"

#include "offsim/worker.hpp"

using namespace offsim;

TEST_CASE("idle worker starts a job immediately") {
  Worker w;
  auto started = w.enqueue(1, 0.0);
  REQUIRE(started.has_value());
  CHECK(*started == 1);
  CHECK(w.busy());
  CHECK(w.size() == 1);
  CHECK(w.running().value() == 1);
  CHECK(w.running_since() == doctest::Approx(0.0));
}

TEST_CASE("busy worker queues and keeps arrival order") {
  Worker w;
  w.enqueue(1, 0.0);
  CHECK_FALSE(w.enqueue(2, 0.5).has_value());
  CHECK_FALSE(w.enqueue(3, 0.7).has_value());
  CHECK(w.size() == 3);

  auto c1 = w.complete_current(2.0);
  CHECK(c1.finished == 1);
  REQUIRE(c1.started.has_value());
  CHECK(*c1.started == 2);
  CHECK(w.running_since() == doctest::Approx(2.0));

  auto c2 = w.complete_current(4.0);
  CHECK(c2.finished == 2);
  CHECK(c2.started.value() == 3);

  auto c3 = w.complete_current(6.0);
  CHECK(c3.finished == 3);
  CHECK_FALSE(c3.started.has_value());
  CHECK_FALSE(w.busy());
  CHECK(w.size() == 0);
}

TEST_CASE("worker can run again after draining") {
  Worker w;
  w.enqueue(5, 1.0);
  w.complete_current(3.0);
  auto started = w.enqueue(6, 10.0);
  CHECK(started.value() == 6);
  CHECK(w.running_since() == doctest::Approx(10.0));
}
