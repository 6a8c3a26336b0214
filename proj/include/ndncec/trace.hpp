#pragma once

#include "ndncec/name.hpp"
#include "ndncec/time.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ndncec {

enum class PacketKind : std::uint8_t { Interest, Data };

enum class OutcomeKind : std::uint8_t {
  PitMissForwarded,
  PitHitCollapsed,
  PitHitDuplicateDropped,
  CacheHit,
  ScopeDropped,
  DataSatisfied,  // data consumed matching PIT entries
  DataUnsolicited // data with no PIT match, discarded
};

const char* to_string(OutcomeKind k);

// One record per router decision; the harness CSV and several trace-driven
// tests (reverse-path, PIT-collapse ground truth) read these.
struct TraceRecord {
  SimTime time = 0;
  std::string node;
  PacketKind packet = PacketKind::Interest;
  Name name;
  OutcomeKind outcome = OutcomeKind::PitMissForwarded;
  int arrival_face = -1;
  std::vector<int> emitted_faces;
  bool cached = false;   // data only: inserted into the Content Store
  bool no_route = false; // interest only: PIT miss with no FIB route
};

class TraceLog {
public:
  void append(TraceRecord rec) {
    if (enabled_) records_.push_back(std::move(rec));
  }
  const std::vector<TraceRecord>& records() const { return records_; }
  void clear() { records_.clear(); }
  void set_enabled(bool on) { enabled_ = on; }
  bool enabled() const { return enabled_; }

  // Newline-delimited JSON, one record per line.
  void write_ndjson(std::ostream& os) const;
  // Same records as CSV rows.
  void write_csv(std::ostream& os) const;

private:
  std::vector<TraceRecord> records_;
  bool enabled_ = true;
};

} // namespace ndncec
