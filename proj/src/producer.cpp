#include "ndncec/producer.hpp"

namespace ndncec {

void Producer::publish(const Name& name, Duration freshness, int wire_size_bytes,
                       std::string payload) {
  if (payload.empty())
    payload = "data:" + name.render();
  catalog_[name] = Entry{freshness, wire_size_bytes, std::move(payload)};
}

std::optional<DataPacket> Producer::respond(const Interest& interest) const {
  for (auto it = catalog_.lower_bound(interest.name); it != catalog_.end(); ++it) {
    if (!interest.name.is_prefix_of(it->first))
      break;
    return DataPacket(it->first, it->second.payload, it->second.freshness,
                      it->second.wire_size_bytes);
  }
  return std::nullopt; // no match, no error packet
}

} // namespace ndncec
