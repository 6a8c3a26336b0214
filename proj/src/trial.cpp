#include "ndncec/trial.hpp"

#include "ndncec/errors.hpp"

#include <algorithm>

namespace ndncec {

namespace {

// Calibration probe names live in their own unpopular namespace.
std::vector<Name> make_probe_names(int count) {
  std::vector<Name> names;
  names.reserve(static_cast<std::size_t>(count));
  Name base(std::vector<std::string>{"cal"});
  for (int i = 0; i < count; ++i)
    names.push_back(base.append("p" + std::to_string(i)));
  return names;
}

} // namespace

double TrialReport::read_error_rate() const {
  return n() ? static_cast<double>(read_errors) / n() : 0.0;
}

double TrialReport::erasure_rate() const {
  return n() ? static_cast<double>(erasures) / n() : 0.0;
}

double TrialReport::error_rate_all() const {
  return n() ? static_cast<double>(write_errors + read_errors + erasures) / n() : 0.0;
}

double TrialReport::binary_error_rate() const {
  if (!n())
    return 0.0;
  int ones = 0, zeros = 0;
  for (Symbol s : decoded) {
    if (s == Symbol::One) ++ones;
    if (s == Symbol::Zero) ++zeros;
  }
  std::uint8_t majority = ones > zeros ? 1 : 0;
  int wrong = 0;
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    std::uint8_t bit = decoded[i] == Symbol::Erasure
                           ? majority
                           : (decoded[i] == Symbol::One ? 1 : 0);
    if (bit != sent.bits[i])
      ++wrong;
  }
  return static_cast<double>(wrong) / n();
}

std::uint64_t derive_trial_seed(const ExperimentSpec& spec, int point, int trial) {
  return mix_seed(mix_seed(spec.seed, 0x706f696e74ull + static_cast<std::uint64_t>(point)),
                  0x747269616cull + static_cast<std::uint64_t>(trial));
}

TrialReport run_trial(const ExperimentSpec& spec, std::uint64_t trial_seed,
                      TraceLog* trace_out) {
  spec.validate();

  Network net(spec.topology, trial_seed);
  net.trace().set_enabled(true);
  for (const auto& drop : spec.forced_drops)
    net.force_drop(drop.a, drop.b, TrafficClass::Protocol, drop.transmit_index);

  // Content: calibration probes plus the covert codebook, all unpopular.
  auto probe_names = make_probe_names(spec.calibration_probes);
  for (const auto& p : probe_names)
    net.producer().publish(p, spec.topology.data_freshness, spec.topology.data_bytes);

  Name covert_ns =
      Name(std::vector<std::string>{"covert"}).append(to_string(spec.technique));
  Codebook codebook =
      Codebook::derive(net.rng().derive_seed("codebook"), spec.message_bits,
                       spec.effective_m(), covert_ns, spec.codebook_mode());
  codebook.publish_all(net.producer(), spec.topology.data_freshness, spec.topology.data_bytes);

  // Calibration phase (always run: it feeds the overlap metric even when
  // the sweep pins the threshold).
  CalibrationOptions cal;
  cal.start = net.local_now("Rcv") + kMillisecond;
  cal.repeats = spec.calibration_repeats;
  ThresholdEstimate est = estimate_threshold(net, "Rcv", probe_names, cal);

  ProtocolParams params = spec.protocol;
  params.technique = spec.technique;
  if (params.t_thresh == 0) {
    params.t_thresh = params.technique == Technique::SBTP
                          ? sbtp_threshold(est, params.pair_offset)
                          : est.t_thresh;
  }

  // Protocol start: leave room for calibration stragglers to drain, on
  // whichever local clock runs latest.
  SimTime earliest_t0 =
      std::max(net.local_now("Snd"), net.local_now("Rcv")) + 10 * kMillisecond;
  if (params.t0 < earliest_t0)
    params.t0 = earliest_t0;

  CovertSession session(net, codebook, params);

  Message message;
  if (spec.fixed_message) {
    message = Message::from_string(*spec.fixed_message);
    if (message.size() != spec.message_bits)
      throw ConfigError("fixed message length does not match message_bits");
  } else {
    RngStream msg_rng(net.rng().derive_seed("message"));
    message = Message::random(msg_rng, spec.message_bits);
  }
  session.schedule_send(message);
  session.schedule_receive("Rcv");

  // Timing-constraint check: the last read has to land before the first
  // written packet can go stale.
  SimTime last_read_local = session.read_end_local("Rcv");
  if (params.technique != Technique::SBTP) {
    SimTime first_cached = params.t0 + net.analytic_write_to_cached("Snd");
    SimTime stale_deadline = first_cached + spec.topology.data_freshness;
    SimTime last_probe_at_rt = last_read_local + net.analytic_probe_to_rt("Rcv");
    if (last_probe_at_rt >= stale_deadline)
      throw ConstraintError(
          "read phase ends after cached content expires: last probe at " +
          std::to_string(last_probe_at_rt) + " ns, staleness deadline " +
          std::to_string(stale_deadline) + " ns; raise freshness or lower t_recv");
  }

  // Snapshot consumer counters at t0 so calibration traffic stays out of
  // the protocol byte accounting.
  Network::ConsumerCounters snd_before, rcv_before;
  net.schedule_local("Snd", params.t0 - 1, [&] {
    snd_before = net.counters("Snd");
    rcv_before = net.counters("Rcv");
  });

  // Ground-truth write check, inspected just before the read phase. The
  // PIT technique is checked from the trace instead (entries are gone by
  // read time by design).
  std::vector<bool> written_ok(static_cast<std::size_t>(session.rows()), true);
  if (params.technique != Technique::SBTP) {
    SimTime checkpoint = session.default_read_start_local() - 1;
    net.schedule_local("Rcv", checkpoint, [&] {
      for (int row = 0; row < session.rows(); ++row) {
        auto name = session.written_name(row);
        if (name)
          written_ok[static_cast<std::size_t>(row)] =
              net.rt().cache_has_fresh(*name, net.engine().now());
      }
    });
  }

  SimTime horizon = net.to_true_time("Rcv", last_read_local) + session.effective_timeout() +
                    spec.topology.router.pit_lifetime + 500 * kMillisecond;
  net.start_periodic_expiry(250 * kMillisecond, horizon);
  net.start_background(horizon);
  net.engine().run_until(horizon);

  if (params.technique == Technique::SBTP) {
    // Written iff Snd's interest created a PIT entry at Rt.
    auto snd_chain = spec.topology.chain("Snd");
    const std::string& last_hop = snd_chain[snd_chain.size() - 2];
    int snd_face = net.face_between("Rt", last_hop);
    for (int row = 0; row < session.rows(); ++row) {
      auto name = session.written_name(row);
      if (!name)
        continue;
      bool seen = false;
      for (const auto& rec : net.trace().records()) {
        if (rec.node == "Rt" && rec.packet == PacketKind::Interest && rec.name == *name &&
            rec.arrival_face == snd_face &&
            rec.outcome == OutcomeKind::PitMissForwarded) {
          seen = true;
          break;
        }
      }
      written_ok[static_cast<std::size_t>(row)] = seen;
    }
  }

  // Classification.
  TrialReport report;
  report.sent = message;
  report.decoded = session.decoded_symbols("Rcv");
  report.t_thresh_used = params.threshold();
  report.overlap_fraction = est.overlap_fraction;
  report.overlap_warning = est.overlap_warning;
  report.probes = session.probes("Rcv");
  report.words_total = session.rows();
  report.sim_duration = last_read_local - params.t0;

  int mbits = codebook.bits_per_symbol();
  for (int row = 0; row < session.rows(); ++row) {
    std::uint32_t sent_word = message.word(row, mbits);
    auto decoded_word = session.decoded_word("Rcv", row);
    bool wok = written_ok[static_cast<std::size_t>(row)];
    report.word_sent.push_back(sent_word);
    report.word_decoded.push_back(decoded_word);
    report.word_written_ok.push_back(wok);

    if (!wok)
      ++report.word_write_errors;
    else if (!decoded_word)
      ++report.word_erasures;
    else if (*decoded_word != sent_word)
      ++report.word_read_errors;
    else
      ++report.words_correct;

    bool sender_acted = session.written_name(row).has_value();
    if (sender_acted && decoded_word && *decoded_word != sent_word)
      ++report.probe_write_suspects;

    // Bit-level classification inherits the word verdict.
    for (int k = 0; k < mbits; ++k) {
      int bit_index = row * mbits + k;
      if (bit_index >= spec.message_bits)
        break;
      Symbol d = report.decoded[static_cast<std::size_t>(bit_index)];
      std::uint8_t s = message.bits[static_cast<std::size_t>(bit_index)];
      if (!wok)
        ++report.write_errors;
      else if (d == Symbol::Erasure)
        ++report.erasures;
      else if (static_cast<std::uint8_t>(d) != s)
        ++report.read_errors;
      else
        ++report.correct;
    }
  }

  const auto& snd_after = net.counters("Snd");
  const auto& rcv_after = net.counters("Rcv");
  report.sender_bytes =
      (snd_after.bytes_sent - snd_before.bytes_sent) +
      (snd_after.bytes_received - snd_before.bytes_received);
  report.receiver_bytes =
      (rcv_after.bytes_sent - rcv_before.bytes_sent) +
      (rcv_after.bytes_received - rcv_before.bytes_received);
  report.sender_interests = snd_after.interests_sent - snd_before.interests_sent;
  report.receiver_interests = rcv_after.interests_sent - rcv_before.interests_sent;
  if (trace_out)
    *trace_out = net.trace();
  return report;
}

} // namespace ndncec
