#pragma once

#include "ndncec/errors.hpp"
#include "ndncec/name.hpp"
#include "ndncec/time.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace ndncec {

// Average wire sizes; overridable per experiment.
constexpr int kDefaultInterestBytes = 41;
constexpr int kDefaultDataBytes = 377;

struct Interest {
  Name name;
  std::optional<int> scope; // 1 or 2; scope 2 = forwarded for up to one hop
  std::uint64_t nonce = 0;
  int wire_size_bytes = kDefaultInterestBytes;

  Interest() = default;
  Interest(Name n, std::uint64_t nonce_, std::optional<int> scope_ = std::nullopt,
           int wire = kDefaultInterestBytes)
      : name(std::move(n)), scope(scope_), nonce(nonce_), wire_size_bytes(wire) {
    if (scope && (*scope < 1 || *scope > 2))
      throw ConfigError("interest scope must be 1 or 2");
    if (wire_size_bytes < 1)
      throw ConfigError("interest wire size must be >= 1 byte");
  }
};

struct DataPacket {
  Name name; // full (leaf) name
  std::string payload;
  Duration freshness = 0; // > 0; staleness countdown once cached
  int wire_size_bytes = kDefaultDataBytes;

  DataPacket() = default;
  DataPacket(Name n, std::string payload_, Duration freshness_,
             int wire = kDefaultDataBytes)
      : name(std::move(n)), payload(std::move(payload_)), freshness(freshness_),
        wire_size_bytes(wire) {
    if (freshness <= 0)
      throw ConfigError("data freshness must be > 0");
    if (wire_size_bytes < 1)
      throw ConfigError("data wire size must be >= 1 byte");
  }
};

inline bool matches(const Interest& i, const DataPacket& d) {
  return i.name.is_prefix_of(d.name);
}

} // namespace ndncec
