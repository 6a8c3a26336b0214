#pragma once

#include "ndncec/clock.hpp"
#include "ndncec/link.hpp"
#include "ndncec/router.hpp"
#include "ndncec/time.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ndncec {

// Unordered node pair, normalized so ("Snd","Rt") == ("Rt","Snd").
struct LinkKey {
  std::string a, b;
  LinkKey() = default;
  LinkKey(std::string x, std::string y) {
    if (x <= y) {
      a = std::move(x);
      b = std::move(y);
    } else {
      a = std::move(y);
      b = std::move(x);
    }
  }
  auto operator<=>(const LinkKey&) const = default;
  std::string str() const { return a + "|" + b; }
};

struct BackgroundSpec {
  bool enabled = false;
  double rate_per_sec = 50.0;
  int namespace_size = 500;
  std::string seed_tag; // re-seeds only the background streams
};

// Figure-1 shaped topology: Snd and Rcv reach a producer Pr through a
// router Rt, optionally via chains of intermediate routers. Extra
// receivers attach to Rt like Rcv does.
struct TopologySpec {
  std::string preset_name = "custom";
  std::map<LinkKey, LinkModel> links;
  int hops_snd = 0; // intermediate routers SndR1.. between Snd and Rt
  int hops_rcv = 0; // intermediate routers RcvR1.. between Rcv and Rt
  int extra_receivers = 0;
  RouterConfig router;
  ClockModel snd_clock;
  ClockModel rcv_clock;
  BackgroundSpec background;

  Duration data_freshness = 30 * kSecond;
  int interest_bytes = kDefaultInterestBytes;
  int data_bytes = kDefaultDataBytes;

  static TopologySpec lan();
  static TopologySpec testbed_like();
  static TopologySpec preset(const std::string& name);

  // All nodes in deterministic order: consumers, intermediates, Rt, Pr.
  std::vector<std::string> node_order() const;
  std::vector<std::string> consumer_ids() const; // Snd, Rcv, Rcv2..; no Bg
  std::vector<std::string> chain(const std::string& consumer) const; // consumer..Rt

  const LinkModel& link(const std::string& x, const std::string& y) const;
  void set_link(const std::string& x, const std::string& y, LinkModel m);

  void validate() const;
};

} // namespace ndncec
