#pragma once

#include "ndncec/time.hpp"

#include <cmath>

namespace ndncec {

// Per-node clock: local = true * drift + offset. Protocol steps are
// scheduled against local clocks, so offset/drift stress the protocols'
// synchronization assumptions.
struct ClockModel {
  Duration offset = 0;
  double drift = 1.0;

  SimTime local_time(SimTime true_time) const {
    if (drift == 1.0)
      return true_time + offset;
    return static_cast<SimTime>(std::llround(static_cast<double>(true_time) * drift)) + offset;
  }

  SimTime true_time(SimTime local) const {
    if (drift == 1.0)
      return local - offset;
    return static_cast<SimTime>(std::llround(static_cast<double>(local - offset) / drift));
  }
};

} // namespace ndncec
