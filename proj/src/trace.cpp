#include "ndncec/trace.hpp"

#include <json.hpp>

#include <ostream>

namespace ndncec {

const char* to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::PitMissForwarded: return "PIT_MISS_FORWARDED";
    case OutcomeKind::PitHitCollapsed: return "PIT_HIT_COLLAPSED";
    case OutcomeKind::PitHitDuplicateDropped: return "PIT_HIT_DUPLICATE_DROPPED";
    case OutcomeKind::CacheHit: return "CACHE_HIT";
    case OutcomeKind::ScopeDropped: return "SCOPE_DROPPED";
    case OutcomeKind::DataSatisfied: return "DATA_SATISFIED";
    case OutcomeKind::DataUnsolicited: return "DATA_UNSOLICITED";
  }
  return "?";
}

void TraceLog::write_csv(std::ostream& os) const {
  os << "time_ns,node,packet,name,outcome,arrival_face,emitted_faces,cached,no_route\n";
  for (const auto& r : records_) {
    os << r.time << ',' << r.node << ','
       << (r.packet == PacketKind::Interest ? "interest" : "data") << ','
       << r.name.render() << ',' << to_string(r.outcome) << ',' << r.arrival_face << ',';
    for (std::size_t i = 0; i < r.emitted_faces.size(); ++i)
      os << (i ? ";" : "") << r.emitted_faces[i];
    os << ',' << (r.cached ? 1 : 0) << ',' << (r.no_route ? 1 : 0) << '\n';
  }
}

void TraceLog::write_ndjson(std::ostream& os) const {
  for (const auto& r : records_) {
    nlohmann::json j{{"time", r.time},
                     {"node", r.node},
                     {"packet", r.packet == PacketKind::Interest ? "interest" : "data"},
                     {"name", r.name.render()},
                     {"outcome", to_string(r.outcome)},
                     {"face", r.arrival_face},
                     {"emitted", r.emitted_faces}};
    if (r.packet == PacketKind::Data) j["cached"] = r.cached;
    if (r.no_route) j["no_route"] = true;
    os << j.dump() << "\n";
  }
}

} // namespace ndncec
