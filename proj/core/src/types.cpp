#include <offsim/types.hpp>

#include <cassert>

namespace offsim {

const char* to_string(Role r) {
  switch (r) {
    case Role::Generator: return "generator";
    case Role::Worker: return "worker";
    case Role::Both: return "both";
  }
  return "?";
}

bool deadline_met(const JobRecord& rec) {
  assert(rec.outcome == JobOutcome::Completed && rec.completion);
  return deadline_met(rec.spec, *rec.completion);
}

}  // namespace offsim
