#include "doctest.h"

#include "offsim/moving_average.hpp"

using offsim::MovingAverage;

TEST_CASE("empty average has no value") {
  MovingAverage ma(5);
  CHECK_FALSE(ma.value().has_value());
  CHECK(ma.count() == 0);
}

TEST_CASE("mean of fewer samples than the window") {
  MovingAverage ma(10);
  ma.push(2.0);
  ma.push(4.0);
  CHECK(ma.value().value() == doctest::Approx(3.0));
  CHECK(ma.count() == 2);
}

TEST_CASE("oldest sample falls out first") {
  MovingAverage ma(3);
  ma.push(1.0);
  ma.push(2.0);
  ma.push(3.0);
  CHECK(ma.value().value() == doctest::Approx(2.0));
  ma.push(10.0);  // evicts 1.0
  CHECK(ma.value().value() == doctest::Approx(5.0));
  ma.push(10.0);  // evicts 2.0
  CHECK(ma.value().value() == doctest::Approx(23.0 / 3.0));
  CHECK(ma.count() == 3);
}

TEST_CASE("window of one tracks the last sample") {
  MovingAverage ma(1);
  ma.push(7.0);
  CHECK(ma.value().value() == doctest::Approx(7.0));
  ma.push(9.0);
  CHECK(ma.value().value() == doctest::Approx(9.0));
}

TEST_CASE("long stream matches a direct tail mean") {
  MovingAverage ma(10);
  std::vector<double> xs;
  for (int i = 0; i < 57; ++i) {
    double v = 0.5 * i + (i % 7);
    xs.push_back(v);
    ma.push(v);
  }
  double sum = 0.0;
  for (int i = 47; i < 57; ++i) sum += xs[i];
  CHECK(ma.value().value() == doctest::Approx(sum / 10.0).epsilon(1e-12));
}
