#pragma once

#include "ndncec/name.hpp"
#include "ndncec/packet.hpp"
#include "ndncec/time.hpp"

#include <map>
#include <optional>
#include <string>

namespace ndncec {

// Content producer: a static catalog of full names. Unaware of any covert
// intent; it just answers interests.
class Producer {
public:
  Producer() = default;
  explicit Producer(std::string id) : id_(std::move(id)) {}

  const std::string& id() const { return id_; }

  void publish(const Name& name, Duration freshness, int wire_size_bytes = kDefaultDataBytes,
               std::string payload = {});
  bool hosts(const Name& name) const { return catalog_.count(name) > 0; }
  std::size_t catalog_size() const { return catalog_.size(); }

  // Returns the catalog entry the interest matches. With several matches the
  // lexicographically least name wins: a deterministic stand-in for the
  // "arbitrary matching data packet" a real producer may return.
  std::optional<DataPacket> respond(const Interest& interest) const;

private:
  struct Entry {
    Duration freshness;
    int wire_size_bytes;
    std::string payload;
  };
  std::string id_ = "Pr";
  std::map<Name, Entry> catalog_;
};

} // namespace ndncec
