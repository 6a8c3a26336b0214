#include "ndncec/calibrate.hpp"
#include "ndncec/errors.hpp"
#include "ndncec/network.hpp"
#include "ndncec/topology.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ndncec;

namespace {

std::vector<Name> publish_probes(Network& net, int count) {
  std::vector<Name> probes;
  Name base(std::vector<std::string>{"cal"});
  for (int i = 0; i < count; ++i) {
    probes.push_back(base.append("p" + std::to_string(i)));
    net.producer().publish(probes.back(), net.spec().data_freshness);
  }
  return probes;
}

} // namespace

TEST_CASE("lan preset: hit/miss gap exceeds 5x jitter sigma over 10k probe pairs") {
  TopologySpec spec = TopologySpec::lan();
  Network net(spec, 2024);
  net.trace().set_enabled(false);
  auto probes = publish_probes(net, 10'000);

  CalibrationOptions cal;
  cal.repeats = 2; // one miss + one hit per name: 10,000 probe pairs
  ThresholdEstimate est = estimate_threshold(net, "Rcv", probes, cal);

  REQUIRE(est.hit_rtts.size() == 10'000);
  REQUIRE(est.miss_rtts.size() == 10'000);
  Duration gap = est.rtt_miss_mean - est.rtt_hit_mean;
  double sigma = spec.link("Rcv", "Rt").jitter.sigma_estimate_ns();
  CHECK(gap > static_cast<Duration>(5.0 * sigma));
  // Fig. 3a shape: the distributions do not touch at all.
  Duration max_hit = *std::max_element(est.hit_rtts.begin(), est.hit_rtts.end());
  Duration min_miss = *std::min_element(est.miss_rtts.begin(), est.miss_rtts.end());
  CHECK(max_hit < min_miss);
  CHECK(est.overlap_fraction == 0.0);
}

TEST_CASE("testbed-like preset: distributions overlap a little") {
  TopologySpec spec = TopologySpec::testbed_like();
  Network net(spec, 2024);
  net.trace().set_enabled(false);
  auto probes = publish_probes(net, 2'000);
  CalibrationOptions cal;
  cal.repeats = 2;
  ThresholdEstimate est = estimate_threshold(net, "Rcv", probes, cal);
  CHECK(est.overlap_fraction > 0.0);
  CHECK(est.overlap_fraction < 0.15);
}

TEST_CASE("missing required links are configuration errors") {
  TopologySpec spec = TopologySpec::lan();
  spec.links.erase(LinkKey("Rt", "Pr"));
  CHECK_THROWS_AS(spec.validate(), ConfigError);

  TopologySpec spec2 = TopologySpec::lan();
  spec2.links.erase(LinkKey("Snd", "Rt"));
  CHECK_THROWS_AS(spec2.validate(), ConfigError);

  CHECK_THROWS_AS(TopologySpec::preset("wan"), ConfigError);
}

TEST_CASE("extra hops grow the RTT by exactly the added link delays") {
  TopologySpec flat = TopologySpec::lan();
  for (auto& [k, m] : flat.links)
    m.jitter = JitterSpec::none();

  TopologySpec chained = flat;
  chained.hops_rcv = 2;
  LinkModel hop{150 * kMicrosecond, JitterSpec::none(), 0.0};
  LinkModel edge = chained.link("Rcv", "Rt");
  chained.links.erase(LinkKey("Rcv", "Rt"));
  chained.set_link("Rcv", "RcvR1", edge);
  chained.set_link("RcvR1", "RcvR2", hop);
  chained.set_link("RcvR2", "Rt", hop);

  Network base(flat, 5), grown(chained, 5);
  base.producer().publish(Name::parse("/p/x"), kSecond);
  grown.producer().publish(Name::parse("/p/x"), kSecond);

  RttSample s_base, s_grown;
  IssueOptions opts;
  base.express("Rcv", Name::parse("/p/x"), opts,
               [&](const RttSample& s, const DataPacket*) { s_base = s; });
  grown.express("Rcv", Name::parse("/p/x"), opts,
                [&](const RttSample& s, const DataPacket*) { s_grown = s; });
  base.engine().run_until(kSecond);
  grown.engine().run_until(kSecond);

  REQUIRE_FALSE(s_base.timed_out);
  REQUIRE_FALSE(s_grown.timed_out);
  // Two extra 150 us links, each crossed twice.
  CHECK(s_grown.rtt - s_base.rtt == 2 * 2 * 150 * kMicrosecond);
  CHECK(s_grown.rtt == grown.analytic_rtt_miss("Rcv"));
}

TEST_CASE("reverse path: data returns along the interest's route") {
  TopologySpec spec = TopologySpec::lan();
  for (auto& [k, m] : spec.links)
    m.jitter = JitterSpec::none();
  spec.hops_rcv = 2;
  LinkModel edge = spec.link("Rcv", "Rt");
  spec.links.erase(LinkKey("Rcv", "Rt"));
  spec.set_link("Rcv", "RcvR1", edge);
  spec.set_link("RcvR1", "RcvR2", edge);
  spec.set_link("RcvR2", "Rt", edge);

  Network net(spec, 6);
  net.producer().publish(Name::parse("/p/x"), kSecond);
  RttSample sample;
  IssueOptions opts;
  net.express("Rcv", Name::parse("/p/x"), opts,
              [&](const RttSample& s, const DataPacket*) { sample = s; });
  net.engine().run_until(kSecond);
  REQUIRE_FALSE(sample.timed_out);

  // The interest crosses RcvR1, RcvR2, Rt in order; the data revisits them
  // reversed. Trace order is event order, so just project per node.
  std::vector<std::string> interest_path, data_path;
  for (const auto& rec : net.trace().records()) {
    if (rec.packet == PacketKind::Interest)
      interest_path.push_back(rec.node);
    else if (rec.outcome == OutcomeKind::DataSatisfied)
      data_path.push_back(rec.node);
  }
  CHECK(interest_path == std::vector<std::string>{"RcvR1", "RcvR2", "Rt"});
  std::reverse(data_path.begin(), data_path.end());
  CHECK(data_path == interest_path);
}

TEST_CASE("identical seeds give identical delay sequences, different seeds differ") {
  TopologySpec spec = TopologySpec::lan();
  auto collect = [&](std::uint64_t seed) {
    Network net(spec, seed);
    net.trace().set_enabled(false);
    net.producer().publish(Name::parse("/p/x"), 10 * kSecond);
    std::vector<Duration> rtts;
    for (int i = 0; i < 64; ++i) {
      net.engine().schedule(static_cast<SimTime>(i) * 10 * kMillisecond, [&net, &rtts] {
        IssueOptions opts;
        net.express("Rcv", Name::parse("/p/x"), opts,
                    [&rtts](const RttSample& s, const DataPacket*) { rtts.push_back(s.rtt); });
      });
    }
    net.engine().run_all();
    return rtts;
  };
  auto a = collect(42), b = collect(42), c = collect(43);
  CHECK(a == b);
  CHECK(a != c);
}
