#pragma once

#include "ndncec/engine.hpp"
#include "ndncec/packet.hpp"
#include "ndncec/producer.hpp"
#include "ndncec/rng.hpp"
#include "ndncec/router.hpp"
#include "ndncec/sample.hpp"
#include "ndncec/topology.hpp"
#include "ndncec/trace.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ndncec {

enum class TrafficClass : std::uint8_t { Protocol = 0, Background = 1 };
constexpr int kTrafficClasses = 2;

struct LinkStats {
  std::uint64_t transmits = 0;
  std::uint64_t losses = 0;
  std::uint64_t deliveries = 0;
  std::uint64_t loss_draws = 0;
  std::uint64_t delay_draws = 0;
};

struct IssueOptions {
  std::optional<int> scope;
  Duration timeout = kSecond;
  TrafficClass cls = TrafficClass::Protocol;
};

// Callback when a pending interest completes; data is null on timeout.
using CompletionFn = std::function<void(const RttSample&, const DataPacket*)>;

// A built Figure-1 topology plus its event engine: routers, a producer,
// consumer endpoints with local clocks, per-(link, class) RNG streams, and
// optional Poisson background traffic. One instance per simulation run.
class Network {
public:
  Network(TopologySpec spec, std::uint64_t master_seed);

  Engine& engine() { return engine_; }
  TraceLog& trace() { return trace_; }
  const TopologySpec& spec() const { return spec_; }
  const RngHub& rng() const { return hub_; }

  Router& rt() { return *nodes_.at("Rt").router; }
  Router* find_router(const std::string& id);
  Producer& producer() { return producer_; }

  // --- consumer operations ---------------------------------------------
  std::uint64_t express(const std::string& consumer, const Name& name,
                        const IssueOptions& opts, CompletionFn on_complete);
  SimTime local_now(const std::string& node) const;
  SimTime to_true_time(const std::string& node, SimTime local) const;
  // Schedules against the node's local clock (skew shifts real fire time).
  void schedule_local(const std::string& node, SimTime local_time, Engine::Action action);

  struct ConsumerCounters {
    std::uint64_t interests_sent = 0;
    std::uint64_t data_received = 0;
    std::uint64_t bytes_sent = 0;
    std::uint64_t bytes_received = 0;
    std::uint64_t timeouts = 0;
  };
  const ConsumerCounters& counters(const std::string& consumer) const;
  std::size_t pending_count(const std::string& consumer) const;

  // --- control -----------------------------------------------------------
  void start_background(SimTime until);
  void start_periodic_expiry(Duration interval, SimTime until);
  void expire_all();

  // Test hook: drop the index-th transmit (0-based, per link per class).
  void force_drop(const std::string& x, const std::string& y, TrafficClass cls,
                  std::uint64_t transmit_index);

  LinkStats link_stats(const std::string& x, const std::string& y, TrafficClass cls) const;
  int face_between(const std::string& node, const std::string& peer) const {
    return face_toward(node, peer);
  }

  // --- analytics (base delays + service times; no jitter) ----------------
  Duration analytic_path_one_way(const std::string& consumer) const; // consumer..Rt links
  Duration analytic_rtt_hit(const std::string& consumer) const;
  Duration analytic_rtt_miss(const std::string& consumer) const;
  // Interest leaves `consumer` at T: cached at Rt at T + this.
  Duration analytic_write_to_cached(const std::string& consumer) const;
  // Interest leaves `consumer` at T: handled by Rt at T + this.
  Duration analytic_probe_to_rt(const std::string& consumer) const;

  // Adversary-visible network state (all routers), deterministic order.
  void dump_state(std::ostream& os) const;
  bool any_reference(const Name& name) const;

private:
  struct Flight {
    PacketKind kind;
    Interest interest;
    DataPacket data;
    TrafficClass cls = TrafficClass::Protocol;
    int hops = 0;
  };
  struct Face {
    std::string peer;
    LinkKey link;
  };
  struct NodeRec {
    enum class Kind { Router, Producer, Consumer } kind = Kind::Consumer;
    std::unique_ptr<Router> router;
    std::vector<Face> faces;
    SimTime busy_until = 0;
    ClockModel clock;
  };
  struct PerClass {
    RngStream stream;
    LinkStats stats;
    std::set<std::uint64_t> forced_drops;
  };
  struct LinkRec {
    LinkModel model;
    PerClass cls[kTrafficClasses];
  };
  struct Pending {
    std::uint64_t id;
    Name name;
    SimTime issued_local;
    CompletionFn on_complete;
  };
  struct ConsumerRec {
    ConsumerCounters counters;
    std::vector<Pending> pending; // FIFO matching
  };

  void build();
  void add_link_faces(const std::string& a, const std::string& b);
  int face_toward(const std::string& node, const std::string& peer) const;
  void transmit(const std::string& from, int face_index, Flight flight);
  void deliver(const std::string& node, int arrival_face, Flight flight);
  void handle_at_router(const std::string& node, int arrival_face, Flight flight);
  void handle_at_producer(int arrival_face, Flight flight);
  void handle_at_consumer(const std::string& node, Flight flight);
  void schedule_background_interest(SimTime until);

  TopologySpec spec_;
  RngHub hub_;
  Engine engine_;
  TraceLog trace_;
  Producer producer_;
  std::map<std::string, NodeRec> nodes_;
  std::map<LinkKey, LinkRec> links_;
  std::map<std::string, ConsumerRec> consumers_;
  RngStream bg_stream_;
  Name bg_namespace_;
  std::uint64_t next_request_id_ = 1;
};

} // namespace ndncec
