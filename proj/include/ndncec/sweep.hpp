#pragma once

#include "ndncec/config.hpp"
#include "ndncec/trial.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ndncec {

struct SweepPoint {
  Duration t = 0;
  Duration t_thresh = 0; // 0 = calibrated per trial
  int trials = 0;
  int bits_per_trial = 0;

  // Aggregates over all trials at this point.
  long correct = 0;
  long write_errors = 0;
  long read_errors = 0;
  long erasures = 0;
  double read_error_rate = 0;
  double binary_error_rate = 0;
  double error_rate_all = 0;
  double err_ci_lo = 0, err_ci_hi = 0; // 95% normal CI on binary error
  double erasure_rate = 0;
  double overlap_fraction = 0;
  Duration mean_thresh_used = 0;
  std::uint64_t sender_bytes = 0;
  std::uint64_t receiver_bytes = 0;
  double sender_bitrate_bps = 0;   // bits per sim-second, schedule form
  double receiver_bitrate_bps = 0;
  Duration sim_duration = 0;
};

struct SweepResult {
  ExperimentSpec spec;
  std::vector<SweepPoint> points;
  // Per-request-index RTT log from the first trial of each t value (the
  // Fig.-4 style view: burst heating shows up as RTT growth with index).
  struct RttRow {
    int trial = 0;
    Duration t = 0;
    int index = 0;
    Name name;
    SimTime issued = 0;
    Duration rtt = 0;
    bool timed_out = false;
    int decoded = 0; // -1 erasure
    int truth = 0;
  };
  std::vector<RttRow> rtt_rows;
};

// Cartesian sweep over (t, t_thresh); trials use seeds derived from the
// master so points are order-independent and reproducible.
SweepResult sweep(const ExperimentSpec& spec);

// Closed-form effective bitrates: sender n/(rows*t_send), receiver
// n/(probes*t_recv).
double sender_bitrate(Technique tech, int n, int m, Duration t_send);
double receiver_bitrate(Technique tech, int n, int m, Duration t_recv);

} // namespace ndncec
