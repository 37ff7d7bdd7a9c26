#include <offsim/workload.hpp>

#include <algorithm>

#include <offsim/rng.hpp>

namespace offsim {

std::vector<JobSpec> generate_workload(const std::vector<HostId>& generators,
                                       double lambda_mean, double deadline,
                                       double duration, double input_bytes,
                                       double output_bytes, std::uint64_t seed) {
  std::vector<JobSpec> jobs;
  for (HostId g : generators) {
    Rng rng(derive_seed(seed, 0x776c6f6164ull /* "wload" */, g));
    double t = 0.0;
    for (;;) {
      t += exp_sample(rng, lambda_mean);
      if (t >= duration) break;
      JobSpec j;
      j.origin = g;
      j.release = t;
      j.deadline = deadline;
      j.input_bytes = input_bytes;
      j.output_bytes = output_bytes;
      jobs.push_back(j);
    }
  }
  std::sort(jobs.begin(), jobs.end(), [](const JobSpec& a, const JobSpec& b) {
    if (a.release != b.release) return a.release < b.release;
    return a.origin < b.origin;
  });
  for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i].id = static_cast<JobId>(i);
  return jobs;
}

}  // namespace offsim
