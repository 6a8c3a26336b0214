#include "ndncec/clock.hpp"
#include "ndncec/link.hpp"
#include "ndncec/network.hpp"
#include "ndncec/rng.hpp"
#include "ndncec/topology.hpp"

#include <doctest.h>

using namespace ndncec;

namespace {

TopologySpec bare_lan() {
  TopologySpec spec = TopologySpec::lan();
  for (auto& [k, m] : spec.links)
    m.jitter = JitterSpec::none();
  return spec;
}

void fetch_once(Network& net, const std::string& consumer, const Name& name,
                RttSample& out) {
  IssueOptions opts;
  net.express(consumer, name, opts, [&out](const RttSample& s, const DataPacket*) { out = s; });
}

} // namespace

TEST_CASE("no loss, no jitter: delivery at exactly the base delay sum") {
  TopologySpec spec = bare_lan();
  Network net(spec, 1);
  net.producer().publish(Name::parse("/p/x"), kSecond);
  RttSample sample;
  fetch_once(net, "Rcv", Name::parse("/p/x"), sample);
  net.engine().run_until(5 * kSecond);
  CHECK_FALSE(sample.timed_out);
  // 2 * (200us + 500us) with zero proc delay on the lan preset.
  CHECK(sample.rtt == net.analytic_rtt_miss("Rcv"));
  CHECK(sample.rtt == 1400 * kMicrosecond);
}

TEST_CASE("loss_prob=1 never delivers") {
  TopologySpec spec = bare_lan();
  auto m = spec.link("Rcv", "Rt");
  m.loss_prob = 1.0;
  spec.set_link("Rcv", "Rt", m);
  Network net(spec, 1);
  net.producer().publish(Name::parse("/p/x"), kSecond);
  RttSample sample;
  fetch_once(net, "Rcv", Name::parse("/p/x"), sample);
  net.engine().run_until(5 * kSecond);
  CHECK(sample.timed_out);
  auto stats = net.link_stats("Rcv", "Rt", TrafficClass::Protocol);
  CHECK(stats.transmits == 1);
  CHECK(stats.losses == 1);
  CHECK(stats.deliveries == 0);
}

TEST_CASE("loss fraction tracks loss_prob over 100k transmits") {
  // Binomial oracle: 0.05 +- 0.005 is ~7 sigma at 100k draws.
  LinkModel model{100 * kMicrosecond, JitterSpec::none(), 0.05};
  RngStream rng(42);
  int lost = 0;
  const int kShots = 100'000;
  for (int i = 0; i < kShots; ++i) {
    if (rng.bernoulli(model.loss_prob))
      ++lost;
    model.sample_delay(rng);
  }
  double frac = static_cast<double>(lost) / kShots;
  CHECK(frac > 0.045);
  CHECK(frac < 0.055);
}

TEST_CASE("every transmit consumes one loss draw and one delay draw, even when lost") {
  TopologySpec spec = bare_lan();
  auto m = spec.link("Rcv", "Rt");
  m.loss_prob = 0.5;
  spec.set_link("Rcv", "Rt", m);
  Network net(spec, 3);
  net.producer().publish(Name::parse("/p/x"), kSecond);
  for (int i = 0; i < 50; ++i) {
    IssueOptions opts;
    opts.timeout = 10 * kMillisecond;
    net.engine().schedule(static_cast<SimTime>(i) * 20 * kMillisecond, [&net, opts] {
      net.express("Rcv", Name::parse("/p/x"), opts, nullptr);
    });
  }
  net.engine().run_all();
  auto stats = net.link_stats("Rcv", "Rt", TrafficClass::Protocol);
  CHECK(stats.transmits == stats.loss_draws);
  CHECK(stats.transmits == stats.delay_draws);
  CHECK(stats.transmits == stats.losses + stats.deliveries);
  CHECK(stats.losses > 0); // p=0.5: both outcomes occur
  CHECK(stats.deliveries > 0);
}

TEST_CASE("jittered delays are truncated at zero, never negative") {
  LinkModel model{5 * kMicrosecond, JitterSpec::normal(50.0 * kMicrosecond), 0.0};
  RngStream rng(5);
  for (int i = 0; i < 20'000; ++i) {
    rng.uniform01(); // position like a loss draw would
    CHECK(model.sample_delay(rng) >= 0);
  }
}

TEST_CASE("local clocks apply offset and drift") {
  ClockModel ident;
  CHECK(ident.local_time(12345) == 12345);

  ClockModel shifted{200 * kMicrosecond, 1.0};
  CHECK(shifted.local_time(kSecond) == kSecond + 200 * kMicrosecond);
  CHECK(shifted.true_time(shifted.local_time(777)) == 777);

  ClockModel drifty{0, 1.001};
  CHECK(drifty.local_time(1'000'000) == 1'001'000);
}

TEST_CASE("forced drops take out exactly the chosen transmit") {
  TopologySpec spec = bare_lan();
  Network net(spec, 9);
  net.producer().publish(Name::parse("/p/x"), kSecond);
  net.force_drop("Rcv", "Rt", TrafficClass::Protocol, 0); // first interest

  RttSample first, second;
  IssueOptions opts;
  opts.timeout = 20 * kMillisecond;
  net.express("Rcv", Name::parse("/p/x"), opts,
              [&first](const RttSample& s, const DataPacket*) { first = s; });
  net.engine().schedule(100 * kMillisecond, [&] {
    net.express("Rcv", Name::parse("/p/x"), opts,
                [&second](const RttSample& s, const DataPacket*) { second = s; });
  });
  net.engine().run_all();
  CHECK(first.timed_out);
  CHECK_FALSE(second.timed_out);
}
