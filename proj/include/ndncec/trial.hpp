#pragma once

#include "ndncec/calibrate.hpp"
#include "ndncec/config.hpp"
#include "ndncec/protocol.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ndncec {

// Per-trial outcome: every bit lands in exactly one bucket, so
// correct + write_errors + read_errors + erasures == n.
struct TrialReport {
  Message sent;
  std::vector<Symbol> decoded;

  int correct = 0;
  int write_errors = 0;
  int read_errors = 0;
  int erasures = 0;

  int words_total = 0;
  int words_correct = 0;
  int word_write_errors = 0;
  int word_read_errors = 0;
  int word_erasures = 0;
  // Slow-read suspicion count (decoded word != sent word for rows the
  // sender wrote), cross-checkable against the ground-truth write check.
  int probe_write_suspects = 0;

  std::uint64_t sender_bytes = 0;
  std::uint64_t receiver_bytes = 0;
  std::uint64_t sender_interests = 0;
  std::uint64_t receiver_interests = 0;

  Duration sim_duration = 0; // t0 .. read end (receiver clock)
  Duration t_thresh_used = 0;
  double overlap_fraction = 0;
  bool overlap_warning = false;

  std::vector<ProbeRecord> probes;
  std::vector<std::optional<std::uint32_t>> word_decoded;
  std::vector<std::uint32_t> word_sent;
  std::vector<bool> word_written_ok;

  int n() const { return sent.size(); }
  double read_error_rate() const;
  double erasure_rate() const;
  double error_rate_all() const; // (write+read+erasure)/n
  // Erasures resolved to the trial's majority decoded symbol (ties -> 0).
  double binary_error_rate() const;
};

// Builds a fresh network from the spec, derives the codebook, calibrates
// the threshold (unless the spec pins one), runs send then read phases
// under the technique's timing constraints, and classifies every bit
// against ground-truth router state. When trace_out is given, the full
// router trace is handed back for streaming.
TrialReport run_trial(const ExperimentSpec& spec, std::uint64_t trial_seed,
                      TraceLog* trace_out = nullptr);

// Seed for trial `index` at sweep point `point` under the spec's master.
std::uint64_t derive_trial_seed(const ExperimentSpec& spec, int point, int trial);

} // namespace ndncec
