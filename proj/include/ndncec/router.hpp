#pragma once

#include "ndncec/name.hpp"
#include "ndncec/packet.hpp"
#include "ndncec/time.hpp"
#include "ndncec/trace.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ndncec {

using FaceId = int;

enum class ReplacementPolicy : std::uint8_t { LRU, LFU, NONE };

struct RouterConfig {
  std::size_t cache_capacity = 4096; // 0 models a router with no cache
  ReplacementPolicy replacement_policy = ReplacementPolicy::LRU;
  Duration pit_lifetime = 4 * kSecond;
  bool serve_stale = false;
  bool cache_on_first_pass = true;    // false: meta-cache, cache on 2nd pass
  Duration cache_hit_extra_delay = 0; // cache privacy defense
  Duration proc_delay = 0;            // per-packet service time (FIFO)
  Duration seen_once_ttl = 4 * kSecond;

  void validate() const;
};

struct PitEntry {
  Name name;
  std::set<FaceId> arrival_faces;
  SimTime created_at = 0;
  SimTime expires_at = 0;

  bool live(SimTime now) const { return expires_at > now; }
};

struct ContentStoreEntry {
  DataPacket data;
  SimTime inserted_at = 0;
  SimTime stale_at = 0; // inserted_at + data.freshness
  SimTime last_access = 0;
  std::uint64_t access_count = 0;
  std::uint64_t recency_seq = 0; // LRU bookkeeping, bumped on every touch

  bool fresh(SimTime now) const { return now < stale_at; }
};

struct ForwardOutcome {
  OutcomeKind kind = OutcomeKind::PitMissForwarded;
  // Packets to put on the wire: interests forwarded downstream or cached
  // data returned on the arrival face. PIT hits emit nothing.
  std::vector<std::pair<DataPacket, FaceId>> data_out;
  std::vector<std::pair<Interest, FaceId>> interests_out;
  bool no_route = false;
};

// An interest's hop budget: scope s allows s-1 router-to-router forwards
// beyond the first hop. hops_taken counts links already traversed.
bool scope_allows_forwarding(const Interest& i, int hops_taken);

// NDN router state machine: PIT + Content Store + FIB. Single-context; all
// mutations come through the owning simulation's event loop.
class Router {
public:
  Router(std::string id, RouterConfig config, TraceLog* trace = nullptr);

  const std::string& id() const { return id_; }
  const RouterConfig& config() const { return config_; }

  void add_route(const Name& prefix, FaceId face);
  void add_default_route(FaceId face) { default_route_ = face; }

  ForwardOutcome handle_interest(const Interest& interest, FaceId arrival_face, SimTime now,
                                 int hops_taken = 1);

  // Returns (data, face) emissions toward the matched PIT entries' arrival
  // faces. Unsolicited data is discarded and counted, never cached.
  std::vector<std::pair<DataPacket, FaceId>> handle_data(const DataPacket& data,
                                                         FaceId arrival_face, SimTime now);

  struct ExpiryCounts {
    std::size_t pit_expired = 0;
    std::size_t cache_stale_removed = 0;
  };
  ExpiryCounts expire(SimTime now);

  // Introspection (simulator privilege; used by ground-truth error
  // classification, invariant tests, and the privacy game).
  bool cache_has_fresh(const Name& name, SimTime now) const;
  std::optional<Name> cache_match(const Name& prefix, SimTime now) const;
  std::size_t cache_size() const { return store_.size(); }
  bool pit_has_live(const Name& name, SimTime now) const;
  std::size_t pit_size() const { return pit_.size(); }
  bool any_reference(const Name& name) const; // PIT, CS, or seen-once set
  std::uint64_t unsolicited_count() const { return unsolicited_; }

  // Deterministic dump of adversary-visible state: FIB, live PIT entries,
  // Content Store (with recency ranks), meta-cache seen-once set.
  void dump_state(std::ostream& os, SimTime now) const;

private:
  std::optional<FaceId> fib_lookup(const Name& name) const;
  const ContentStoreEntry* cs_lookup(const Name& prefix, SimTime now) const;
  void cs_touch(ContentStoreEntry& entry, SimTime now);
  void cs_insert(const DataPacket& data, SimTime now);
  void cs_evict_one();
  void record_interest(const Interest& i, FaceId face, SimTime now, const ForwardOutcome& out);

  std::string id_;
  RouterConfig config_;
  TraceLog* trace_;

  std::vector<std::pair<Name, FaceId>> fib_; // longest-prefix match wins
  std::optional<FaceId> default_route_;
  std::map<Name, PitEntry> pit_;
  std::map<Name, ContentStoreEntry> store_;      // ordered: prefix ranges contiguous
  std::map<std::uint64_t, Name> recency_;        // recency_seq -> name (LRU index)
  std::map<Name, SimTime> seen_once_;            // meta-cache first-pass names
  std::uint64_t next_recency_ = 1;
  std::uint64_t unsolicited_ = 0;
};

} // namespace ndncec
