#include "ndncec/topology.hpp"

#include "ndncec/errors.hpp"

namespace ndncec {

TopologySpec TopologySpec::lan() {
  // Everything in one broadcast domain: sub-millisecond symmetric delays
  // with tight jitter, so hit/miss RTT distributions are fully disjoint
  // (gap ~1 ms vs RTT sigma ~20 us).
  TopologySpec spec;
  spec.preset_name = "lan";
  LinkModel edge{200 * kMicrosecond, JitterSpec::normal(10.0 * kMicrosecond), 0.0};
  LinkModel backhaul{500 * kMicrosecond, JitterSpec::normal(10.0 * kMicrosecond), 0.0};
  spec.set_link("Snd", "Rt", edge);
  spec.set_link("Rcv", "Rt", edge);
  spec.set_link("Rt", "Pr", backhaul);
  spec.router.proc_delay = 0;
  return spec;
}

TopologySpec TopologySpec::testbed_like() {
  // Wide-area shape: long consumer links with jitter comparable to the
  // Rt-Pr gap, so hit/miss distributions partially overlap (~4% of mass
  // misclassified at the midpoint threshold).
  TopologySpec spec;
  spec.preset_name = "testbed-like";
  LinkModel edge{40 * kMillisecond, JitterSpec::normal(3.2 * kMillisecond), 0.0};
  LinkModel backhaul{8 * kMillisecond, JitterSpec::normal(0.5 * kMillisecond), 0.0};
  spec.set_link("Snd", "Rt", edge);
  spec.set_link("Rcv", "Rt", edge);
  spec.set_link("Rt", "Pr", backhaul);
  spec.router.proc_delay = 30 * kMicrosecond;
  return spec;
}

TopologySpec TopologySpec::preset(const std::string& name) {
  if (name == "lan")
    return lan();
  if (name == "testbed-like")
    return testbed_like();
  throw ConfigError("unknown topology preset: " + name);
}

std::vector<std::string> TopologySpec::node_order() const {
  std::vector<std::string> nodes;
  for (const auto& c : consumer_ids())
    nodes.push_back(c);
  if (background.enabled)
    nodes.push_back("Bg");
  for (int i = 1; i <= hops_snd; ++i)
    nodes.push_back("SndR" + std::to_string(i));
  for (int i = 1; i <= hops_rcv; ++i)
    nodes.push_back("RcvR" + std::to_string(i));
  nodes.push_back("Rt");
  nodes.push_back("Pr");
  return nodes;
}

std::vector<std::string> TopologySpec::consumer_ids() const {
  std::vector<std::string> out{"Snd", "Rcv"};
  for (int i = 2; i <= extra_receivers + 1; ++i)
    out.push_back("Rcv" + std::to_string(i));
  return out;
}

std::vector<std::string> TopologySpec::chain(const std::string& consumer) const {
  std::vector<std::string> path{consumer};
  if (consumer == "Snd") {
    for (int i = 1; i <= hops_snd; ++i)
      path.push_back("SndR" + std::to_string(i));
  } else if (consumer == "Rcv") {
    for (int i = 1; i <= hops_rcv; ++i)
      path.push_back("RcvR" + std::to_string(i));
  }
  path.push_back("Rt");
  return path;
}

const LinkModel& TopologySpec::link(const std::string& x, const std::string& y) const {
  auto it = links.find(LinkKey(x, y));
  if (it == links.end())
    throw ConfigError("topology is missing link " + LinkKey(x, y).str());
  return it->second;
}

void TopologySpec::set_link(const std::string& x, const std::string& y, LinkModel m) {
  m.validate();
  links[LinkKey(x, y)] = m;
}

void TopologySpec::validate() const {
  router.validate();
  for (const auto& [key, model] : links)
    model.validate();
  if (hops_snd < 0 || hops_rcv < 0 || extra_receivers < 0)
    throw ConfigError("hop and receiver counts must be >= 0");
  // Pr must hang off Rt, and every consumer chain must be fully linked.
  link("Rt", "Pr");
  for (const auto& consumer : consumer_ids()) {
    std::vector<std::string> path;
    if (consumer == "Snd" || consumer == "Rcv") {
      path = chain(consumer);
    } else {
      path = {consumer, "Rt"}; // extra receivers attach to Rt directly
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      link(path[i], path[i + 1]);
  }
  if (background.enabled) {
    if (background.rate_per_sec <= 0 || background.namespace_size <= 0)
      throw ConfigError("background traffic needs positive rate and namespace size");
  }
}

} // namespace ndncec
