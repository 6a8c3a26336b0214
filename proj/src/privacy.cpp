#include "ndncec/privacy.hpp"

#include "ndncec/errors.hpp"
#include "ndncec/network.hpp"

#include <sstream>

namespace ndncec {

namespace {

struct GameRun {
  std::string mid_state;  // right before the read phase
  std::string post_state; // after expiry
};

GameRun run_one(ExperimentSpec spec, const Message& m) {
  // The game observes router state only, so decode quality is irrelevant;
  // an analytic threshold avoids a calibration phase. proc_delay is zeroed
  // because a shared service queue couples background timestamps to the
  // protocol's packet volume, which is exactly what must not leak.
  spec.topology.router.proc_delay = 0;
  if (!spec.topology.background.enabled)
    spec.topology.background.enabled = true;
  spec.message_bits = m.size();
  spec.validate();

  Network net(spec.topology, spec.seed);
  net.trace().set_enabled(false);

  Name covert_ns =
      Name(std::vector<std::string>{"covert"}).append(to_string(spec.technique));
  Codebook codebook =
      Codebook::derive(net.rng().derive_seed("codebook"), spec.message_bits,
                       spec.effective_m(), covert_ns, spec.codebook_mode());
  codebook.publish_all(net.producer(), spec.topology.data_freshness,
                       spec.topology.data_bytes);

  ProtocolParams params = spec.protocol;
  params.technique = spec.technique;
  if (params.t_thresh == 0)
    params.t_thresh = (net.analytic_rtt_hit("Rcv") + net.analytic_rtt_miss("Rcv")) / 2;

  CovertSession session(net, codebook, params);
  session.schedule_send(m);
  session.schedule_receive("Rcv");

  GameRun out;
  SimTime mid_local = session.default_read_start_local() - kMillisecond;
  net.schedule_local("Rcv", mid_local, [&] {
    std::ostringstream ss;
    net.dump_state(ss);
    out.mid_state = ss.str();
  });

  SimTime read_end_true = net.to_true_time("Rcv", session.read_end_local("Rcv"));
  SimTime horizon = read_end_true + session.effective_timeout() +
                    spec.topology.data_freshness + spec.topology.router.pit_lifetime +
                    kSecond;
  net.start_periodic_expiry(250 * kMillisecond, horizon);
  net.start_background(horizon);
  net.engine().run_until(horizon);
  net.expire_all();

  for (const auto& name : codebook.all_names())
    if (net.any_reference(name))
      throw ConstraintError("privacy comparison reached before message expiry: " +
                            name.render() + " still referenced");

  std::ostringstream ss;
  net.dump_state(ss);
  out.post_state = ss.str();
  return out;
}

} // namespace

PrivacyGameResult privacy_game(const ExperimentSpec& spec, const Message& m0,
                               const Message& m1) {
  if (m0.size() != m1.size())
    throw ConfigError("privacy game needs same-length messages");

  GameRun a0 = run_one(spec, m0);
  GameRun a1 = run_one(spec, m1);

  PrivacyGameResult result;
  result.state_a0 = a0.post_state;
  result.state_a1 = a1.post_state;
  result.indistinguishable = a0.post_state == a1.post_state;
  result.pre_expiry_differs = a0.mid_state != a1.mid_state;
  return result;
}

} // namespace ndncec
