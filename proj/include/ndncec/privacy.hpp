#pragma once

#include "ndncec/config.hpp"
#include "ndncec/protocol.hpp"

#include <string>

namespace ndncec {

struct PrivacyGameResult {
  bool indistinguishable = false;      // post-expiry states identical
  bool pre_expiry_differs = false;     // sanity inversion: states differ mid-game
  std::string state_a0;                // post-expiry dumps (a = 0 / a = 1)
  std::string state_a1;
};

// Retroactive-privacy game: runs the full protocol for M0 and for M1 with
// identical seeds and background traffic, waits past expiry, and compares
// the complete adversary-visible network state of both runs. Also compares
// the states right after the send phase (they must differ when M0 != M1).
PrivacyGameResult privacy_game(const ExperimentSpec& spec, const Message& m0,
                               const Message& m1);

} // namespace ndncec
