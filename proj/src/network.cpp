#include "ndncec/network.hpp"

#include "ndncec/errors.hpp"

#include <algorithm>
#include <ostream>

namespace ndncec {

namespace {
constexpr Duration kDefaultBgTimeout = 2 * kSecond;
}

Network::Network(TopologySpec spec, std::uint64_t master_seed)
    : spec_(std::move(spec)), hub_(master_seed) {
  // Convenience links: extra receivers and the background consumer reuse
  // the Rcv-Rt model unless the spec names them explicitly.
  if (spec_.links.count(LinkKey("Rcv", "Rt"))) {
    const LinkModel& rcv_model = spec_.link("Rcv", "Rt");
    for (int i = 2; i <= spec_.extra_receivers + 1; ++i) {
      LinkKey key("Rcv" + std::to_string(i), "Rt");
      if (!spec_.links.count(key))
        spec_.links[key] = rcv_model;
    }
    if (spec_.background.enabled && !spec_.links.count(LinkKey("Bg", "Rt")))
      spec_.links[LinkKey("Bg", "Rt")] = rcv_model;
  }
  if (spec_.background.enabled)
    spec_.links.try_emplace(LinkKey("Bg", "Rt"), LinkModel{kMillisecond, JitterSpec::none(), 0});
  spec_.validate();
  if (spec_.background.enabled)
    spec_.link("Bg", "Rt");
  build();
}

void Network::build() {
  producer_ = Producer("Pr");

  for (const auto& id : spec_.node_order()) {
    NodeRec rec;
    if (id == "Pr") {
      rec.kind = NodeRec::Kind::Producer;
    } else if (id == "Rt" || id.find("SndR") == 0 || id.find("RcvR") == 0) {
      rec.kind = NodeRec::Kind::Router;
      rec.router = std::make_unique<Router>(id, spec_.router, &trace_);
    } else {
      rec.kind = NodeRec::Kind::Consumer;
      if (id == "Snd")
        rec.clock = spec_.snd_clock;
      else if (id != "Bg")
        rec.clock = spec_.rcv_clock; // Rcv and extra receivers
      consumers_[id] = ConsumerRec{};
    }
    nodes_[id] = std::move(rec);
  }

  for (const auto& [key, model] : spec_.links) {
    if (!nodes_.count(key.a) || !nodes_.count(key.b))
      continue; // links for disabled optional nodes
    LinkRec rec;
    rec.model = model;
    rec.cls[0].stream = hub_.stream("link/" + key.str() + "/protocol");
    rec.cls[1].stream = hub_.stream("link/" + key.str() + "/background/" +
                                    spec_.background.seed_tag);
    links_[key] = std::move(rec);
    add_link_faces(key.a, key.b);
  }

  // Single-path forwarding: every router's default route points toward Pr.
  for (auto& [id, rec] : nodes_) {
    if (rec.kind != NodeRec::Kind::Router)
      continue;
    std::string next;
    if (id == "Rt") {
      next = "Pr";
    } else if (id.find("SndR") == 0) {
      int idx = std::stoi(id.substr(4));
      next = (idx == spec_.hops_snd) ? "Rt" : "SndR" + std::to_string(idx + 1);
    } else {
      int idx = std::stoi(id.substr(4));
      next = (idx == spec_.hops_rcv) ? "Rt" : "RcvR" + std::to_string(idx + 1);
    }
    rec.router->add_default_route(face_toward(id, next));
  }

  if (spec_.background.enabled) {
    bg_stream_ = hub_.stream("background/" + spec_.background.seed_tag);
    bg_namespace_ = Name(std::vector<std::string>{"popular"});
    for (int i = 0; i < spec_.background.namespace_size; ++i)
      producer_.publish(bg_namespace_.append("p" + std::to_string(i)), spec_.data_freshness,
                        spec_.data_bytes);
  }
}

void Network::add_link_faces(const std::string& a, const std::string& b) {
  nodes_.at(a).faces.push_back(Face{b, LinkKey(a, b)});
  nodes_.at(b).faces.push_back(Face{a, LinkKey(a, b)});
}

int Network::face_toward(const std::string& node, const std::string& peer) const {
  const auto& faces = nodes_.at(node).faces;
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].peer == peer)
      return static_cast<int>(i);
  throw ConfigError("node " + node + " has no face toward " + peer);
}

Router* Network::find_router(const std::string& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end() || it->second.kind != NodeRec::Kind::Router)
    return nullptr;
  return it->second.router.get();
}

SimTime Network::local_now(const std::string& node) const {
  return nodes_.at(node).clock.local_time(engine_.now());
}

SimTime Network::to_true_time(const std::string& node, SimTime local) const {
  return nodes_.at(node).clock.true_time(local);
}

void Network::schedule_local(const std::string& node, SimTime local_time,
                             Engine::Action action) {
  engine_.schedule(to_true_time(node, local_time), std::move(action));
}

std::uint64_t Network::express(const std::string& consumer, const Name& name,
                               const IssueOptions& opts, CompletionFn on_complete) {
  auto& rec = consumers_.at(consumer);
  std::uint64_t id = next_request_id_++;

  Interest interest(name, id, opts.scope, spec_.interest_bytes);
  rec.counters.interests_sent += 1;
  rec.counters.bytes_sent += static_cast<std::uint64_t>(interest.wire_size_bytes);
  rec.pending.push_back(Pending{id, name, local_now(consumer), std::move(on_complete)});

  Flight flight;
  flight.kind = PacketKind::Interest;
  flight.interest = interest;
  flight.cls = opts.cls;
  flight.hops = 0;
  transmit(consumer, 0, std::move(flight));

  engine_.schedule_in(opts.timeout, [this, consumer, id] {
    auto& c = consumers_.at(consumer);
    auto it = std::find_if(c.pending.begin(), c.pending.end(),
                           [&](const Pending& p) { return p.id == id; });
    if (it == c.pending.end())
      return;
    Pending p = std::move(*it);
    c.pending.erase(it);
    c.counters.timeouts += 1;
    RttSample sample;
    sample.name = p.name;
    sample.issued_at = p.issued_local;
    sample.satisfied_at = 0;
    sample.rtt = 0;
    sample.timed_out = true;
    if (p.on_complete)
      p.on_complete(sample, nullptr);
  });
  return id;
}

const Network::ConsumerCounters& Network::counters(const std::string& consumer) const {
  return consumers_.at(consumer).counters;
}

std::size_t Network::pending_count(const std::string& consumer) const {
  return consumers_.at(consumer).pending.size();
}

void Network::transmit(const std::string& from, int face_index, Flight flight) {
  const Face& face = nodes_.at(from).faces.at(static_cast<std::size_t>(face_index));
  LinkRec& link = links_.at(face.link);
  PerClass& cls = link.cls[static_cast<int>(flight.cls)];

  std::uint64_t ordinal = cls.stats.transmits++;
  // Loss and delay draws always both happen, so a lost packet never shifts
  // later delay samples.
  bool lost = cls.stream.bernoulli(link.model.loss_prob);
  cls.stats.loss_draws += 1;
  Duration delay = link.model.sample_delay(cls.stream);
  cls.stats.delay_draws += 1;
  if (cls.forced_drops.count(ordinal))
    lost = true;
  if (lost) {
    cls.stats.losses += 1;
    return;
  }
  cls.stats.deliveries += 1;

  std::string to = face.peer;
  flight.hops += 1;
  engine_.schedule_in(delay, [this, to, from, flight = std::move(flight)]() mutable {
    deliver(to, face_toward(to, from), std::move(flight));
  });
}

void Network::deliver(const std::string& node, int arrival_face, Flight flight) {
  NodeRec& rec = nodes_.at(node);
  switch (rec.kind) {
    case NodeRec::Kind::Router: {
      // Single-server FIFO: models per-packet router processing cost.
      SimTime start = std::max(engine_.now(), rec.busy_until);
      SimTime done = start + rec.router->config().proc_delay;
      rec.busy_until = done;
      if (done == engine_.now()) {
        handle_at_router(node, arrival_face, std::move(flight));
      } else {
        engine_.schedule(done, [this, node, arrival_face, flight = std::move(flight)]() mutable {
          handle_at_router(node, arrival_face, std::move(flight));
        });
      }
      break;
    }
    case NodeRec::Kind::Producer:
      handle_at_producer(arrival_face, std::move(flight));
      break;
    case NodeRec::Kind::Consumer:
      handle_at_consumer(node, std::move(flight));
      break;
  }
}

void Network::handle_at_router(const std::string& node, int arrival_face, Flight flight) {
  NodeRec& rec = nodes_.at(node);
  Router& router = *rec.router;
  if (flight.kind == PacketKind::Interest) {
    ForwardOutcome out =
        router.handle_interest(flight.interest, arrival_face, engine_.now(), flight.hops);
    for (auto& [interest, face] : out.interests_out) {
      Flight next = flight;
      next.interest = interest;
      transmit(node, face, std::move(next));
    }
    Duration extra = router.config().cache_hit_extra_delay;
    for (auto& [data, face] : out.data_out) {
      Flight next;
      next.kind = PacketKind::Data;
      next.data = data;
      next.cls = flight.cls;
      next.hops = flight.hops;
      if (out.kind == OutcomeKind::CacheHit && extra > 0) {
        int f = face;
        engine_.schedule_in(extra, [this, node, f, next = std::move(next)]() mutable {
          transmit(node, f, std::move(next));
        });
      } else {
        transmit(node, face, std::move(next));
      }
    }
  } else {
    auto emissions = router.handle_data(flight.data, arrival_face, engine_.now());
    for (auto& [data, face] : emissions) {
      Flight next = flight;
      next.data = data;
      transmit(node, face, std::move(next));
    }
  }
}

void Network::handle_at_producer(int arrival_face, Flight flight) {
  if (flight.kind != PacketKind::Interest)
    return;
  auto data = producer_.respond(flight.interest);
  if (!data)
    return; // no match, no error packet
  Flight reply;
  reply.kind = PacketKind::Data;
  reply.data = std::move(*data);
  reply.cls = flight.cls;
  reply.hops = 0;
  transmit("Pr", arrival_face, std::move(reply));
}

void Network::handle_at_consumer(const std::string& node, Flight flight) {
  auto& rec = consumers_.at(node);
  if (flight.kind != PacketKind::Data)
    return; // consumers do not serve interests
  rec.counters.data_received += 1;
  rec.counters.bytes_received += static_cast<std::uint64_t>(flight.data.wire_size_bytes);

  // FIFO: earliest matching pending interest wins.
  auto it = std::find_if(rec.pending.begin(), rec.pending.end(), [&](const Pending& p) {
    return p.name.is_prefix_of(flight.data.name);
  });
  if (it == rec.pending.end())
    return; // late or unsolicited data
  Pending p = std::move(*it);
  rec.pending.erase(it);

  RttSample sample;
  sample.name = p.name;
  sample.issued_at = p.issued_local;
  sample.satisfied_at = local_now(node);
  sample.rtt = sample.satisfied_at - p.issued_local;
  sample.timed_out = false;
  if (p.on_complete)
    p.on_complete(sample, &flight.data);
}

void Network::schedule_background_interest(SimTime until) {
  double gap_ns = bg_stream_.exponential(spec_.background.rate_per_sec / 1e9);
  SimTime at = engine_.now() + static_cast<Duration>(std::llround(gap_ns));
  if (at > until)
    return;
  engine_.schedule(at, [this, until] {
    std::uint64_t pick = bg_stream_.uniform_index(
        static_cast<std::uint64_t>(spec_.background.namespace_size));
    Name name = bg_namespace_.append("p" + std::to_string(pick));
    IssueOptions opts;
    opts.cls = TrafficClass::Background;
    opts.timeout = kDefaultBgTimeout;
    express("Bg", name, opts, nullptr);
    schedule_background_interest(until);
  });
}

void Network::start_background(SimTime until) {
  if (!spec_.background.enabled)
    return;
  schedule_background_interest(until);
}

void Network::start_periodic_expiry(Duration interval, SimTime until) {
  if (interval <= 0)
    throw ConfigError("expiry interval must be > 0");
  SimTime at = engine_.now() + interval;
  if (at > until)
    return;
  engine_.schedule(at, [this, interval, until] {
    expire_all();
    start_periodic_expiry(interval, until);
  });
}

void Network::expire_all() {
  for (auto& [id, rec] : nodes_)
    if (rec.kind == NodeRec::Kind::Router)
      rec.router->expire(engine_.now());
}

void Network::force_drop(const std::string& x, const std::string& y, TrafficClass cls,
                         std::uint64_t transmit_index) {
  links_.at(LinkKey(x, y)).cls[static_cast<int>(cls)].forced_drops.insert(transmit_index);
}

LinkStats Network::link_stats(const std::string& x, const std::string& y,
                              TrafficClass cls) const {
  return links_.at(LinkKey(x, y)).cls[static_cast<int>(cls)].stats;
}

Duration Network::analytic_path_one_way(const std::string& consumer) const {
  auto path = spec_.chain(consumer);
  Duration sum = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    sum += spec_.link(path[i], path[i + 1]).base_delay;
  return sum;
}

Duration Network::analytic_rtt_hit(const std::string& consumer) const {
  auto path = spec_.chain(consumer);
  Duration proc = spec_.router.proc_delay;
  // Interest is serviced at each router up to Rt; the returning data is
  // serviced at every intermediate router (not at Rt, which emits it).
  Duration routers_on_path = static_cast<Duration>(path.size() - 2); // intermediates
  return 2 * analytic_path_one_way(consumer) + (2 * routers_on_path + 1) * proc +
         spec_.router.cache_hit_extra_delay;
}

Duration Network::analytic_rtt_miss(const std::string& consumer) const {
  auto path = spec_.chain(consumer);
  Duration proc = spec_.router.proc_delay;
  Duration routers_on_path = static_cast<Duration>(path.size() - 2);
  // As the hit case plus the Rt-Pr round trip and Rt's handling of the
  // returning data.
  return 2 * (analytic_path_one_way(consumer) + spec_.link("Rt", "Pr").base_delay) +
         (2 * routers_on_path + 2) * proc;
}

Duration Network::analytic_write_to_cached(const std::string& consumer) const {
  auto path = spec_.chain(consumer);
  Duration proc = spec_.router.proc_delay;
  Duration routers_on_path = static_cast<Duration>(path.size() - 2);
  // Interest to Pr, data back to Rt, plus Rt's servicing of that data.
  return analytic_path_one_way(consumer) + (routers_on_path + 1) * proc +
         2 * spec_.link("Rt", "Pr").base_delay + proc;
}

Duration Network::analytic_probe_to_rt(const std::string& consumer) const {
  auto path = spec_.chain(consumer);
  Duration proc = spec_.router.proc_delay;
  Duration routers_on_path = static_cast<Duration>(path.size() - 2);
  return analytic_path_one_way(consumer) + (routers_on_path + 1) * proc;
}

void Network::dump_state(std::ostream& os) const {
  for (const auto& [id, rec] : nodes_)
    if (rec.kind == NodeRec::Kind::Router)
      rec.router->dump_state(os, engine_.now());
}

bool Network::any_reference(const Name& name) const {
  for (const auto& [id, rec] : nodes_)
    if (rec.kind == NodeRec::Kind::Router && rec.router->any_reference(name))
      return true;
  return false;
}

} // namespace ndncec
