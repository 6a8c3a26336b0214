#include "ndncec/calibrate.hpp"

#include "ndncec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ndncec {

namespace {

double mean_of(const std::vector<Duration>& v) {
  if (v.empty())
    return 0;
  long double sum = 0;
  for (Duration d : v)
    sum += static_cast<long double>(d);
  return static_cast<double>(sum / v.size());
}

double stddev_of(const std::vector<Duration>& v, double mean) {
  if (v.size() < 2)
    return 0;
  long double sum = 0;
  for (Duration d : v) {
    long double x = static_cast<long double>(d) - mean;
    sum += x * x;
  }
  return static_cast<double>(std::sqrt(sum / (v.size() - 1)));
}

} // namespace

ThresholdEstimate estimate_threshold(Network& net, const std::string& receiver,
                                     const std::vector<Name>& probe_names,
                                     const CalibrationOptions& opts) {
  if (probe_names.empty())
    throw ConfigError("calibration needs at least one probe name");
  if (opts.repeats < 2)
    throw ConfigError("calibration needs repeats >= 2");

  Duration miss_rtt = net.analytic_rtt_miss(receiver);
  Duration group_spacing =
      opts.group_spacing > 0 ? opts.group_spacing : (miss_rtt * 12) / 10 + kMillisecond;
  Duration repeat_gap =
      opts.repeat_gap > 0 ? opts.repeat_gap : (miss_rtt * 12) / 10 + kMillisecond;
  Duration timeout = opts.timeout > 0 ? opts.timeout
                                      : std::max<Duration>(10 * kMillisecond, 4 * miss_rtt);
  SimTime start = opts.start > 0 ? opts.start : net.local_now(receiver);

  ThresholdEstimate est;
  est.miss_rtts.reserve(probe_names.size());
  est.hit_rtts.reserve(probe_names.size() * (opts.repeats - 1));

  for (std::size_t i = 0; i < probe_names.size(); ++i) {
    for (int rep = 0; rep < opts.repeats; ++rep) {
      SimTime at = start + static_cast<Duration>(i) * group_spacing +
                   static_cast<Duration>(rep) * repeat_gap;
      bool is_first = rep == 0;
      const Name& name = probe_names[i];
      net.schedule_local(receiver, at, [&net, &est, receiver, name, is_first, timeout] {
        IssueOptions io;
        io.timeout = timeout;
        net.express(receiver, name, io, [&est, is_first](const RttSample& s, const DataPacket*) {
          if (s.timed_out) {
            est.probe_timeouts += 1;
            return;
          }
          if (is_first)
            est.miss_rtts.push_back(s.rtt);
          else
            est.hit_rtts.push_back(s.rtt);
        });
      });
    }
  }

  SimTime end_local = start +
                      static_cast<Duration>(probe_names.size()) * group_spacing +
                      static_cast<Duration>(opts.repeats) * repeat_gap + timeout;
  net.engine().run_until(net.to_true_time(receiver, end_local) + kMillisecond);
  est.finished_at = net.engine().now();

  if (est.miss_rtts.empty() || est.hit_rtts.empty())
    throw ConstraintError("calibration produced no usable hit/miss samples");

  double hit_mean = mean_of(est.hit_rtts);
  double miss_mean = mean_of(est.miss_rtts);
  est.rtt_hit_mean = static_cast<Duration>(std::llround(hit_mean));
  est.rtt_miss_mean = static_cast<Duration>(std::llround(miss_mean));

  Duration max_hit = *std::max_element(est.hit_rtts.begin(), est.hit_rtts.end());
  Duration min_miss = *std::min_element(est.miss_rtts.begin(), est.miss_rtts.end());
  if (max_hit < min_miss) {
    est.t_thresh = (max_hit + min_miss) / 2;
  } else {
    est.t_thresh = static_cast<Duration>(std::llround((hit_mean + miss_mean) / 2.0));
  }

  std::size_t hit_tail = 0, miss_tail = 0;
  for (Duration d : est.hit_rtts)
    if (d >= est.t_thresh)
      ++hit_tail;
  for (Duration d : est.miss_rtts)
    if (d < est.t_thresh)
      ++miss_tail;
  est.overlap_fraction = 0.5 * (static_cast<double>(hit_tail) / est.hit_rtts.size() +
                                static_cast<double>(miss_tail) / est.miss_rtts.size());

  double sigma = std::max(stddev_of(est.hit_rtts, hit_mean), stddev_of(est.miss_rtts, miss_mean));
  est.overlap_warning = sigma > 0 && (miss_mean - hit_mean) < sigma;
  return est;
}

Duration sbtp_threshold(const ThresholdEstimate& est, Duration pair_offset) {
  return est.rtt_miss_mean - pair_offset / 2;
}

} // namespace ndncec
