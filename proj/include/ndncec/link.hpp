#pragma once

#include "ndncec/errors.hpp"
#include "ndncec/rng.hpp"
#include "ndncec/time.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace ndncec {

enum class JitterKind : std::uint8_t { None, Uniform, Normal, Lognormal };

struct JitterSpec {
  JitterKind kind = JitterKind::None;
  // Uniform: half_width; Normal: sigma (truncated at zero total delay);
  // Lognormal: mu/sigma of the underlying normal, in ln(nanoseconds).
  double half_width_ns = 0;
  double sigma_ns = 0;
  double mu_log = 0;
  double sigma_log = 0;

  static JitterSpec none() { return {}; }
  static JitterSpec uniform(double half_width_ns) {
    JitterSpec j;
    j.kind = JitterKind::Uniform;
    j.half_width_ns = half_width_ns;
    return j;
  }
  static JitterSpec normal(double sigma_ns) {
    JitterSpec j;
    j.kind = JitterKind::Normal;
    j.sigma_ns = sigma_ns;
    return j;
  }
  static JitterSpec lognormal(double mu_log, double sigma_log) {
    JitterSpec j;
    j.kind = JitterKind::Lognormal;
    j.mu_log = mu_log;
    j.sigma_log = sigma_log;
    return j;
  }

  // Rough spread scale, used for calibration warnings and preset checks.
  double sigma_estimate_ns() const {
    switch (kind) {
      case JitterKind::None: return 0;
      case JitterKind::Uniform: return half_width_ns / std::sqrt(3.0);
      case JitterKind::Normal: return sigma_ns;
      case JitterKind::Lognormal: {
        double v = (std::exp(sigma_log * sigma_log) - 1.0) *
                   std::exp(2.0 * mu_log + sigma_log * sigma_log);
        return std::sqrt(v);
      }
    }
    return 0;
  }
};

// One-way delay + loss model for a link. Delays below zero after jitter are
// clamped to zero (truncation, not resampling — slightly biases the mean).
struct LinkModel {
  Duration base_delay = 0;
  JitterSpec jitter;
  double loss_prob = 0.0;

  void validate() const {
    if (base_delay < 0)
      throw ConfigError("link base_delay must be >= 0");
    if (loss_prob < 0.0 || loss_prob > 1.0)
      throw ConfigError("link loss_prob must be in [0,1]");
  }

  // Consumes exactly one draw-pair position in the stream (normal/lognormal
  // take two raw draws but a fixed two).
  Duration sample_delay(RngStream& rng) const {
    double extra = 0;
    switch (jitter.kind) {
      case JitterKind::None:
        // Keep the stream in lockstep with jittered configs.
        rng.uniform01();
        break;
      case JitterKind::Uniform:
        extra = rng.uniform(-jitter.half_width_ns, jitter.half_width_ns);
        break;
      case JitterKind::Normal:
        extra = rng.normal(0.0, jitter.sigma_ns);
        break;
      case JitterKind::Lognormal:
        extra = rng.lognormal(jitter.mu_log, jitter.sigma_log);
        break;
    }
    double total = static_cast<double>(base_delay) + extra;
    if (total < 0)
      total = 0;
    return static_cast<Duration>(std::llround(total));
  }
};

} // namespace ndncec
