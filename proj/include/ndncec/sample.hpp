#pragma once

#include "ndncec/name.hpp"
#include "ndncec/time.hpp"

namespace ndncec {

// One interest/data exchange as observed by a consumer, timestamps on the
// consumer's local clock.
struct RttSample {
  Name name;
  SimTime issued_at = 0;
  SimTime satisfied_at = 0;
  Duration rtt = 0;
  bool timed_out = false;
};

} // namespace ndncec
