#include "ndncec/router.hpp"

#include "ndncec/errors.hpp"

#include <algorithm>
#include <ostream>

namespace ndncec {

void RouterConfig::validate() const {
  if (pit_lifetime <= 0)
    throw ConfigError("pit_lifetime must be > 0");
  if (cache_hit_extra_delay < 0 || proc_delay < 0)
    throw ConfigError("router delays must be >= 0");
}

bool scope_allows_forwarding(const Interest& i, int hops_taken) {
  if (!i.scope)
    return true;
  return hops_taken < *i.scope - 1;
}

Router::Router(std::string id, RouterConfig config, TraceLog* trace)
    : id_(std::move(id)), config_(config), trace_(trace) {
  config_.validate();
}

void Router::add_route(const Name& prefix, FaceId face) {
  fib_.emplace_back(prefix, face);
}

std::optional<FaceId> Router::fib_lookup(const Name& name) const {
  const std::pair<Name, FaceId>* best = nullptr;
  for (const auto& entry : fib_) {
    if (entry.first.is_prefix_of(name) &&
        (!best || entry.first.size() > best->first.size()))
      best = &entry;
  }
  if (!best)
    return default_route_;
  return best->second;
}

const ContentStoreEntry* Router::cs_lookup(const Name& prefix, SimTime now) const {
  // Entries sharing the prefix form a contiguous range starting at
  // lower_bound(prefix); the first usable one is the lexicographic least.
  for (auto it = store_.lower_bound(prefix); it != store_.end(); ++it) {
    if (!prefix.is_prefix_of(it->first))
      break;
    if (it->second.fresh(now) || config_.serve_stale)
      return &it->second;
  }
  return nullptr;
}

void Router::cs_touch(ContentStoreEntry& entry, SimTime now) {
  entry.access_count += 1;
  entry.last_access = now;
  // A served entry is refreshed: reads defer expiration.
  entry.inserted_at = now;
  entry.stale_at = now + entry.data.freshness;
  recency_.erase(entry.recency_seq);
  entry.recency_seq = next_recency_++;
  recency_.emplace(entry.recency_seq, entry.data.name);
}

void Router::cs_evict_one() {
  if (store_.empty())
    return;
  Name victim;
  if (config_.replacement_policy == ReplacementPolicy::LRU) {
    victim = recency_.begin()->second;
  } else { // LFU; ties broken toward least recently used
    auto best = store_.begin();
    for (auto it = store_.begin(); it != store_.end(); ++it) {
      if (it->second.access_count < best->second.access_count ||
          (it->second.access_count == best->second.access_count &&
           it->second.recency_seq < best->second.recency_seq))
        best = it;
    }
    victim = best->first;
  }
  auto it = store_.find(victim);
  recency_.erase(it->second.recency_seq);
  store_.erase(it);
}

void Router::cs_insert(const DataPacket& data, SimTime now) {
  if (config_.cache_capacity == 0)
    return;
  auto it = store_.find(data.name);
  if (it != store_.end()) {
    // Re-forwarded content refreshes the existing entry.
    it->second.data = data;
    it->second.inserted_at = now;
    it->second.stale_at = now + data.freshness;
    recency_.erase(it->second.recency_seq);
    it->second.recency_seq = next_recency_++;
    recency_.emplace(it->second.recency_seq, data.name);
    return;
  }
  if (!config_.cache_on_first_pass) {
    auto seen = seen_once_.find(data.name);
    if (seen == seen_once_.end()) {
      seen_once_.emplace(data.name, now);
      return;
    }
    seen_once_.erase(seen);
  }
  if (store_.size() >= config_.cache_capacity) {
    if (config_.replacement_policy == ReplacementPolicy::NONE)
      return;
    cs_evict_one();
  }
  ContentStoreEntry entry;
  entry.data = data;
  entry.inserted_at = now;
  entry.stale_at = now + data.freshness;
  entry.last_access = now;
  entry.access_count = 0;
  entry.recency_seq = next_recency_++;
  recency_.emplace(entry.recency_seq, data.name);
  store_.emplace(data.name, std::move(entry));
}

void Router::record_interest(const Interest& i, FaceId face, SimTime now,
                             const ForwardOutcome& out) {
  if (!trace_ || !trace_->enabled())
    return;
  TraceRecord rec;
  rec.time = now;
  rec.node = id_;
  rec.packet = PacketKind::Interest;
  rec.name = i.name;
  rec.outcome = out.kind;
  rec.arrival_face = face;
  for (const auto& [d, f] : out.data_out) rec.emitted_faces.push_back(f);
  for (const auto& [fi, f] : out.interests_out) rec.emitted_faces.push_back(f);
  rec.no_route = out.no_route;
  trace_->append(std::move(rec));
}

ForwardOutcome Router::handle_interest(const Interest& interest, FaceId arrival_face,
                                       SimTime now, int hops_taken) {
  ForwardOutcome out;

  if (const ContentStoreEntry* hit = cs_lookup(interest.name, now)) {
    // Served from cache: no PIT state is created or consulted.
    auto& entry = *const_cast<ContentStoreEntry*>(hit);
    DataPacket data = entry.data;
    cs_touch(entry, now);
    out.kind = OutcomeKind::CacheHit;
    out.data_out.emplace_back(std::move(data), arrival_face);
    record_interest(interest, arrival_face, now, out);
    return out;
  }

  auto pit_it = pit_.find(interest.name);
  if (pit_it != pit_.end() && pit_it->second.live(now)) {
    PitEntry& entry = pit_it->second;
    if (entry.arrival_faces.count(arrival_face)) {
      // Same name, same face: discarded, expiry not refreshed.
      out.kind = OutcomeKind::PitHitDuplicateDropped;
    } else {
      entry.arrival_faces.insert(arrival_face);
      out.kind = OutcomeKind::PitHitCollapsed;
    }
    record_interest(interest, arrival_face, now, out);
    return out;
  }

  if (!scope_allows_forwarding(interest, hops_taken)) {
    out.kind = OutcomeKind::ScopeDropped;
    record_interest(interest, arrival_face, now, out);
    return out;
  }

  PitEntry entry;
  entry.name = interest.name;
  entry.arrival_faces.insert(arrival_face);
  entry.created_at = now;
  entry.expires_at = now + config_.pit_lifetime;
  pit_[interest.name] = std::move(entry);

  out.kind = OutcomeKind::PitMissForwarded;
  if (auto next = fib_lookup(interest.name)) {
    out.interests_out.emplace_back(interest, *next);
  } else {
    // No route: the interest dies here; no error packet exists in NDN.
    out.no_route = true;
  }
  record_interest(interest, arrival_face, now, out);
  return out;
}

std::vector<std::pair<DataPacket, FaceId>> Router::handle_data(const DataPacket& data,
                                                               FaceId arrival_face,
                                                               SimTime now) {
  // A data packet satisfies every live PIT entry whose interest name is a
  // prefix of the data name; those are exactly the stored prefixes of it.
  std::set<FaceId> faces;
  bool matched = false;
  const auto& comps = data.name.components();
  for (std::size_t k = 1; k <= comps.size(); ++k) {
    Name prefix(std::vector<std::string>(comps.begin(), comps.begin() + k));
    auto it = pit_.find(prefix);
    if (it == pit_.end())
      continue;
    if (it->second.live(now)) {
      matched = true;
      faces.insert(it->second.arrival_faces.begin(), it->second.arrival_faces.end());
    }
    pit_.erase(it);
  }

  std::vector<std::pair<DataPacket, FaceId>> emissions;
  TraceRecord rec;
  rec.time = now;
  rec.node = id_;
  rec.packet = PacketKind::Data;
  rec.name = data.name;
  rec.arrival_face = arrival_face;

  if (!matched) {
    ++unsolicited_;
    rec.outcome = OutcomeKind::DataUnsolicited;
    if (trace_) trace_->append(std::move(rec));
    return emissions;
  }

  cs_insert(data, now);
  rec.cached = store_.count(data.name) > 0;
  rec.outcome = OutcomeKind::DataSatisfied;
  for (FaceId f : faces) {
    emissions.emplace_back(data, f);
    rec.emitted_faces.push_back(f);
  }
  if (trace_) trace_->append(std::move(rec));
  return emissions;
}

Router::ExpiryCounts Router::expire(SimTime now) {
  ExpiryCounts counts;
  for (auto it = pit_.begin(); it != pit_.end();) {
    if (it->second.expires_at <= now) {
      it = pit_.erase(it);
      ++counts.pit_expired;
    } else {
      ++it;
    }
  }
  if (!config_.serve_stale) {
    for (auto it = store_.begin(); it != store_.end();) {
      if (!it->second.fresh(now)) {
        recency_.erase(it->second.recency_seq);
        it = store_.erase(it);
        ++counts.cache_stale_removed;
      } else {
        ++it;
      }
    }
  }
  for (auto it = seen_once_.begin(); it != seen_once_.end();) {
    if (now - it->second >= config_.seen_once_ttl)
      it = seen_once_.erase(it);
    else
      ++it;
  }
  return counts;
}

bool Router::cache_has_fresh(const Name& name, SimTime now) const {
  auto it = store_.find(name);
  return it != store_.end() && it->second.fresh(now);
}

std::optional<Name> Router::cache_match(const Name& prefix, SimTime now) const {
  if (const ContentStoreEntry* e = cs_lookup(prefix, now))
    return e->data.name;
  return std::nullopt;
}

bool Router::pit_has_live(const Name& name, SimTime now) const {
  auto it = pit_.find(name);
  return it != pit_.end() && it->second.live(now);
}

bool Router::any_reference(const Name& name) const {
  return pit_.count(name) > 0 || store_.count(name) > 0 || seen_once_.count(name) > 0;
}

void Router::dump_state(std::ostream& os, SimTime now) const {
  os << "router " << id_ << "\n";
  os << " fib\n";
  for (const auto& [prefix, face] : fib_)
    os << "  " << prefix.render() << " -> " << face << "\n";
  if (default_route_)
    os << "  /* -> " << *default_route_ << "\n";
  os << " pit\n";
  for (const auto& [name, entry] : pit_) {
    if (!entry.live(now))
      continue;
    os << "  " << name.render() << " faces=";
    for (FaceId f : entry.arrival_faces) os << f << ",";
    os << " created=" << entry.created_at << " expires=" << entry.expires_at << "\n";
  }
  // Recency is reported as rank among survivors; absolute sequence numbers
  // would leak total forwarded volume, which is not adversary-visible state.
  std::map<std::uint64_t, int> rank;
  int r = 0;
  for (const auto& [seq, name] : recency_)
    rank[seq] = r++;
  os << " cs\n";
  for (const auto& [name, entry] : store_) {
    os << "  " << name.render() << " inserted=" << entry.inserted_at
       << " stale=" << entry.stale_at << " last_access=" << entry.last_access
       << " count=" << entry.access_count << " recency_rank=" << rank[entry.recency_seq]
       << "\n";
  }
  os << " seen_once\n";
  for (const auto& [name, t] : seen_once_)
    os << "  " << name.render() << " first_seen=" << t << "\n";
}

} // namespace ndncec
