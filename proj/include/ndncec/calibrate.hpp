#pragma once

#include "ndncec/name.hpp"
#include "ndncec/network.hpp"
#include "ndncec/time.hpp"

#include <string>
#include <vector>

namespace ndncec {

struct CalibrationOptions {
  SimTime start = 0;          // 0 = now
  int repeats = 3;            // first request = miss, the rest = hits
  Duration group_spacing = 0; // 0 = derive from topology
  Duration repeat_gap = 0;    // 0 = derive from topology
  Duration timeout = 0;       // 0 = derive from topology
};

struct ThresholdEstimate {
  Duration t_thresh = 0;
  Duration rtt_hit_mean = 0;
  Duration rtt_miss_mean = 0;
  double overlap_fraction = 0; // mean of the two misclassified tails at t_thresh
  bool overlap_warning = false; // means within one pooled sigma
  SimTime finished_at = 0;      // engine time when the last probe resolved
  std::vector<Duration> hit_rtts;
  std::vector<Duration> miss_rtts;
  std::size_t probe_timeouts = 0;
};

// Requests every probe name `repeats` times from `receiver`: the first
// request is recorded as a cache miss, closely spaced follow-ups as hits.
// Returns the midpoint of the empty gap between the largest hit and the
// smallest miss, or the mean midpoint when the distributions overlap.
// Drives the engine until all probes resolve.
ThresholdEstimate estimate_threshold(Network& net, const std::string& receiver,
                                     const std::vector<Name>& probe_names,
                                     const CalibrationOptions& opts = {});

// PIT-protocol threshold: a collapsed interest returns roughly pair_offset
// earlier than a full miss, so the cut sits half an offset below the miss.
Duration sbtp_threshold(const ThresholdEstimate& est, Duration pair_offset);

} // namespace ndncec
