#pragma once

#include "ndncec/protocol.hpp"
#include "ndncec/topology.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ndncec {

// Everything one experiment needs: topology, technique, protocol
// parameters, sweep axes, trial counts, seeding.
struct ExperimentSpec {
  std::string preset = "lan";
  TopologySpec topology = TopologySpec::lan();
  Technique technique = Technique::SBTC;
  int message_bits = 1000;
  int m = 1; // bits per symbol (MATRIX/CPC)
  // Sweep default: 10 trials x 1000 bits = 10,000 covert bits per point.
  int trials = 10;
  std::uint64_t seed = 1;
  ProtocolParams protocol;

  std::vector<Duration> sweep_t;        // empty: just protocol.t_send
  std::vector<Duration> sweep_thresh;   // empty: calibrated threshold
  int calibration_probes = 200;
  int calibration_repeats = 3;
  bool keep_trace = false;

  // Test hooks (not part of the config file schema).
  std::optional<std::string> fixed_message; // overrides the random message
  struct ForcedDrop {
    std::string a, b;
    std::uint64_t transmit_index;
  };
  std::vector<ForcedDrop> forced_drops; // applied to the protocol class

  int effective_m() const;
  CodebookMode codebook_mode() const {
    return technique == Technique::CPC ? CodebookMode::CommonPrefix : CodebookMode::Plain;
  }
  void validate() const;

  // Loads the nested key-value (JSON) config document; unknown keys are
  // rejected so typos fail loudly.
  static ExperimentSpec from_json_file(const std::string& path);
  static ExperimentSpec from_json_text(const std::string& text);
};

} // namespace ndncec
