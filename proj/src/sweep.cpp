#include "ndncec/sweep.hpp"

#include <algorithm>
#include <cmath>

namespace ndncec {

namespace {

int rows_for(Technique tech, int n, int m) {
  int mm = (tech == Technique::MATRIX || tech == Technique::CPC) ? m : 1;
  return (n + mm - 1) / mm;
}

int probes_for(Technique tech, int n, int m) {
  int rows = rows_for(tech, n, m);
  switch (tech) {
    case Technique::TDP: return rows * 2;
    case Technique::MATRIX: return rows * (1 << m);
    default: return rows;
  }
}

} // namespace

double sender_bitrate(Technique tech, int n, int m, Duration t_send) {
  double span_sec = to_sec(static_cast<Duration>(rows_for(tech, n, m)) * t_send);
  return span_sec > 0 ? n / span_sec : 0;
}

double receiver_bitrate(Technique tech, int n, int m, Duration t_recv) {
  double span_sec = to_sec(static_cast<Duration>(probes_for(tech, n, m)) * t_recv);
  return span_sec > 0 ? n / span_sec : 0;
}

SweepResult sweep(const ExperimentSpec& spec) {
  spec.validate();
  SweepResult result;
  result.spec = spec;

  std::vector<Duration> ts = spec.sweep_t;
  if (ts.empty())
    ts.push_back(spec.protocol.t_send);
  std::vector<Duration> threshs = spec.sweep_thresh;
  if (threshs.empty())
    threshs.push_back(spec.protocol.t_thresh); // 0 = calibrate per trial

  int point_index = 0;
  for (Duration t : ts) {
    for (Duration thresh : threshs) {
      ExperimentSpec point_spec = spec;
      point_spec.protocol.t_send = t;
      point_spec.protocol.t_recv = t;
      point_spec.protocol.t_thresh = thresh;

      SweepPoint point;
      point.t = t;
      point.t_thresh = thresh;
      point.trials = spec.trials;
      point.bits_per_trial = spec.message_bits;

      long double binary_err_sum = 0;
      long double overlap_sum = 0;
      long double thresh_sum = 0;
      long total_bits = 0;
      for (int trial = 0; trial < spec.trials; ++trial) {
        TrialReport rep = run_trial(point_spec, derive_trial_seed(spec, point_index, trial));
        point.correct += rep.correct;
        point.write_errors += rep.write_errors;
        point.read_errors += rep.read_errors;
        point.erasures += rep.erasures;
        point.sender_bytes += rep.sender_bytes;
        point.receiver_bytes += rep.receiver_bytes;
        binary_err_sum += rep.binary_error_rate() * rep.n();
        overlap_sum += rep.overlap_fraction;
        thresh_sum += static_cast<long double>(rep.t_thresh_used);
        total_bits += rep.n();
        point.sim_duration = std::max(point.sim_duration, rep.sim_duration);

        if (trial == 0 && thresh == threshs.front()) {
          for (const auto& pr : rep.probes) {
            SweepResult::RttRow row;
            row.trial = trial;
            row.t = t;
            row.index = pr.probe_index;
            row.name = pr.sample.name;
            row.issued = pr.sample.issued_at;
            row.rtt = pr.sample.rtt;
            row.timed_out = pr.sample.timed_out;
            int bit = pr.row * point_spec.effective_m();
            if (bit < rep.n()) {
              Symbol d = rep.decoded[static_cast<std::size_t>(bit)];
              row.decoded = d == Symbol::Erasure ? -1 : static_cast<int>(d);
              row.truth = rep.sent.bits[static_cast<std::size_t>(bit)];
            }
            result.rtt_rows.push_back(std::move(row));
          }
        }
      }

      if (total_bits > 0) {
        point.read_error_rate = static_cast<double>(point.read_errors) / total_bits;
        point.erasure_rate = static_cast<double>(point.erasures) / total_bits;
        point.error_rate_all =
            static_cast<double>(point.write_errors + point.read_errors + point.erasures) /
            total_bits;
        point.binary_error_rate = static_cast<double>(binary_err_sum / total_bits);
        double p = point.binary_error_rate;
        double se = std::sqrt(std::max(p * (1 - p), 0.0) / total_bits);
        point.err_ci_lo = std::max(0.0, p - 1.96 * se);
        point.err_ci_hi = std::min(1.0, p + 1.96 * se);
      }
      if (spec.trials > 0) {
        point.overlap_fraction = static_cast<double>(overlap_sum / spec.trials);
        point.mean_thresh_used =
            static_cast<Duration>(std::llround(static_cast<double>(thresh_sum / spec.trials)));
      }
      point.sender_bitrate_bps =
          sender_bitrate(spec.technique, spec.message_bits, spec.effective_m(), t);
      point.receiver_bitrate_bps =
          receiver_bitrate(spec.technique, spec.message_bits, spec.effective_m(), t);
      result.points.push_back(std::move(point));
      ++point_index;
    }
  }
  return result;
}

} // namespace ndncec
