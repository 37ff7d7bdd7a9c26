#pragma once

#include <cstdint>
#include <vector>

#include <offsim/types.hpp>

namespace offsim {

// Poisson arrivals per generator: exponential gaps with mean `lambda_mean`,
// releases strictly inside [0, duration). Streams are seeded per generator
// host, so the merged sequence does not depend on anything but (seed, hosts).
// Ids are assigned in global release order (ties broken by origin id).
std::vector<JobSpec> generate_workload(const std::vector<HostId>& generators,
                                       double lambda_mean, double deadline,
                                       double duration, double input_bytes,
                                       double output_bytes, std::uint64_t seed);

}  // namespace offsim
