#include "ndncec/cli.hpp"
#include "ndncec/csv.hpp"
#include "ndncec/errors.hpp"
#include "ndncec/privacy.hpp"
#include "ndncec/sweep.hpp"
#include "ndncec/trial.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ndncec;

namespace {

ExperimentSpec quiet_spec(Technique tech, int bits) {
  ExperimentSpec spec;
  spec.preset = "lan";
  spec.topology = TopologySpec::lan();
  for (auto& [k, m] : spec.topology.links)
    m.jitter = JitterSpec::none();
  spec.technique = tech;
  spec.protocol.technique = tech;
  spec.message_bits = bits;
  spec.calibration_probes = 40;
  return spec;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  int rc = run_cli(args, out, err);
  if (out_text)
    *out_text = out.str() + err.str();
  return rc;
}

} // namespace

TEST_CASE("perfect channel: zero errors for a full SBTC trial") {
  ExperimentSpec spec = quiet_spec(Technique::SBTC, 500);
  TrialReport rep = run_trial(spec, 1);
  CHECK(rep.correct == 500);
  CHECK(rep.write_errors == 0);
  CHECK(rep.read_errors == 0);
  CHECK(rep.erasures == 0);
  CHECK(rep.binary_error_rate() == 0.0);
}

TEST_CASE("error decomposition always sums to n") {
  for (auto tech : {Technique::SBTC, Technique::SBTP, Technique::TDP, Technique::MATRIX,
                    Technique::CPC}) {
    CAPTURE(to_string(tech));
    ExperimentSpec spec = quiet_spec(tech, 120);
    if (tech == Technique::MATRIX || tech == Technique::CPC)
      spec.m = 3;
    // Lossy links force a mix of buckets.
    auto m = spec.topology.link("Rcv", "Rt");
    m.loss_prob = 0.05;
    spec.topology.set_link("Rcv", "Rt", m);
    auto ms = spec.topology.link("Snd", "Rt");
    ms.loss_prob = 0.05;
    spec.topology.set_link("Snd", "Rt", ms);
    spec.protocol.timeout = 20 * kMillisecond;
    TrialReport rep = run_trial(spec, 7);
    CHECK(rep.correct + rep.write_errors + rep.read_errors + rep.erasures == 120);
    CHECK(rep.words_correct + rep.word_write_errors + rep.word_read_errors +
              rep.word_erasures ==
          rep.words_total);
  }
}

TEST_CASE("fault injection: one lost write interest is exactly one write error") {
  ExperimentSpec spec = quiet_spec(Technique::SBTC, 10);
  spec.fixed_message = "1111111111";
  spec.protocol.t_send = 10 * kMillisecond;
  spec.protocol.t_recv = 100 * kMillisecond; // slow-read probing rate
  // Writes alternate interest/data on Snd-Rt, so bit 3's interest is
  // transmit 6.
  spec.forced_drops.push_back({"Snd", "Rt", 6});
  TrialReport rep = run_trial(spec, 3);
  CHECK(rep.write_errors == 1);
  CHECK(rep.read_errors == 0);
  CHECK(rep.erasures == 0);
  CHECK(rep.correct == 9);
  // The slow re-read (probe method) flags the same single bit.
  CHECK(rep.probe_write_suspects == 1);
  REQUIRE(rep.word_written_ok.size() == 10);
  CHECK_FALSE(rep.word_written_ok[3]);
}

TEST_CASE("seed isolation: background traffic does not perturb protocol draws") {
  ExperimentSpec spec;
  spec.preset = "lan";
  spec.topology = TopologySpec::lan(); // jitter on: draws matter
  spec.technique = Technique::SBTC;
  spec.protocol.technique = Technique::SBTC;
  spec.message_bits = 200;
  spec.calibration_probes = 50;

  ExperimentSpec with_bg = spec;
  with_bg.topology.background.enabled = true;
  with_bg.topology.background.rate_per_sec = 200;

  TrialReport quiet = run_trial(spec, 11);
  TrialReport busy = run_trial(with_bg, 11);
  REQUIRE(quiet.probes.size() == busy.probes.size());
  for (std::size_t i = 0; i < quiet.probes.size(); ++i) {
    CHECK(quiet.probes[i].sample.rtt == busy.probes[i].sample.rtt);
    CHECK(quiet.probes[i].sample.issued_at == busy.probes[i].sample.issued_at);
  }
  CHECK(quiet.decoded == busy.decoded);
}

TEST_CASE("sweep: 3x4 grid emits 12 rows, byte-identical across runs") {
  ExperimentSpec spec = quiet_spec(Technique::SBTC, 50);
  spec.trials = 2;
  spec.sweep_t = {500 * kMicrosecond, kMillisecond, 2 * kMillisecond};
  spec.sweep_thresh = {600 * kMicrosecond, 800 * kMicrosecond, 900 * kMicrosecond,
                       1100 * kMicrosecond};
  SweepResult result = sweep(spec);
  CHECK(result.points.size() == 12);

  std::ostringstream a, b;
  write_sweep_csv(result, a);
  SweepResult again = sweep(spec);
  write_sweep_csv(again, b);
  CHECK(a.str() == b.str());

  // Header plus 12 data rows.
  int lines = 0;
  std::istringstream is(a.str());
  std::string line;
  while (std::getline(is, line))
    ++lines;
  CHECK(lines == 13);
}

TEST_CASE("empty sweep result writes a header-only file") {
  SweepResult empty;
  empty.spec = quiet_spec(Technique::SBTC, 10);
  std::ostringstream os;
  write_sweep_csv(empty, os);
  std::string text = os.str();
  CHECK(text.find("technique,preset,") == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
}

TEST_CASE("matrix bitrate scales by m for the sender, 2^m probes for the receiver") {
  const int n = 1000;
  const Duration t = kMillisecond;
  double s1 = sender_bitrate(Technique::MATRIX, n, 1, t);
  double s4 = sender_bitrate(Technique::MATRIX, n, 4, t);
  CHECK(s4 == doctest::Approx(4.0 * s1).epsilon(1e-12));

  double r1 = receiver_bitrate(Technique::MATRIX, n, 1, t);
  double r4 = receiver_bitrate(Technique::MATRIX, n, 4, t);
  // Probes per word: 2^m; words: n/m -> rate ratio m/2^(m-1) vs m=1.
  CHECK(r4 == doctest::Approx(r1 * 4.0 * 2.0 / 16.0).epsilon(1e-12));

  // Probe counts are exact integers.
  ExperimentSpec spec = quiet_spec(Technique::MATRIX, 64);
  spec.m = 4;
  Network net(spec.topology, 1);
  Codebook cb = Codebook::derive(1, 64, 4, Name::parse("/covert/m"), CodebookMode::Plain);
  cb.publish_all(net.producer(), spec.topology.data_freshness, spec.topology.data_bytes);
  ProtocolParams pp = spec.protocol;
  pp.technique = Technique::MATRIX;
  pp.t_thresh = kMillisecond;
  CovertSession session(net, cb, pp);
  CHECK(session.receiver_probe_count() == 16 * 16);
}

TEST_CASE("privacy game: states equal after expiry, different before") {
  ExperimentSpec spec = quiet_spec(Technique::SBTC, 24);
  spec.topology.data_freshness = 2 * kSecond;
  RngStream rng(3);
  Message m0 = Message::random(rng, 24);
  Message m1 = Message::random(rng, 24);
  if (m0 == m1)
    m1.bits[0] ^= 1;

  PrivacyGameResult res = privacy_game(spec, m0, m1);
  CHECK(res.indistinguishable);
  CHECK(res.pre_expiry_differs);
  CHECK(res.state_a0 == res.state_a1);
  CHECK_FALSE(res.state_a0.empty());

  // Same message on both sides: identical at all times.
  PrivacyGameResult same = privacy_game(spec, m0, m0);
  CHECK(same.indistinguishable);
  CHECK_FALSE(same.pre_expiry_differs);

  CHECK_THROWS_AS(privacy_game(spec, m0, Message::from_string("01")), ConfigError);
}

TEST_CASE("config files parse and unknown keys fail loudly") {
  ExperimentSpec spec = ExperimentSpec::from_json_text(R"({
    "preset": "lan",
    "technique": "cpc",
    "message_bits": 64,
    "m": 2,
    "seed": 9,
    "protocol": {"t_send_us": 700, "retransmit": true},
    "router": {"cache_capacity": 128, "policy": "lfu"},
    "background": {"enabled": true, "rate_per_s": 10, "namespace_size": 64},
    "data": {"freshness_ms": 5000}
  })");
  CHECK(spec.technique == Technique::CPC);
  CHECK(spec.m == 2);
  CHECK(spec.seed == 9);
  CHECK(spec.protocol.t_send == 700 * kMicrosecond);
  CHECK(spec.protocol.retransmit);
  CHECK(spec.topology.router.cache_capacity == 128);
  CHECK(spec.topology.router.replacement_policy == ReplacementPolicy::LFU);
  CHECK(spec.topology.background.enabled);
  CHECK(spec.topology.data_freshness == 5 * kSecond);

  CHECK_THROWS_AS(ExperimentSpec::from_json_text(R"({"presett": "lan"})"), ConfigError);
  CHECK_THROWS_AS(ExperimentSpec::from_json_text(R"({"technique": "morse"})"), ConfigError);
  CHECK_THROWS_AS(ExperimentSpec::from_json_text("not json"), ConfigError);
  // retransmit is only honored for cpc
  CHECK_THROWS_AS(ExperimentSpec::from_json_text(
                      R"({"technique": "sbtc", "protocol": {"retransmit": true}})"),
                  ConfigError);
}

TEST_CASE("cli: exit codes and determinism") {
  std::string out;
  CHECK(cli({"sweep", "--technique", "morse"}, &out) == 1);
  CHECK(cli({"frobnicate"}, &out) == 1);
  CHECK(cli({"run", "--no-such-flag"}, &out) == 1);

  // Constraint violations exit 2: reads cannot fit inside freshness.
  auto dir = std::filesystem::temp_directory_path() / "ndncec_cli_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream cfg(dir / "bad.json");
    cfg << R"({"technique": "sbtc", "message_bits": 2000,
               "protocol": {"t_recv_us": 100000},
               "data": {"freshness_ms": 1000}})";
  }
  CHECK(cli({"run", "--config", (dir / "bad.json").string(),
             "--out", (dir / "o").string()}, &out) == 2);

  // Same seed, same bytes.
  std::string out_a, out_b;
  CHECK(cli({"sweep", "--preset", "lan", "--technique", "sbtc", "--seed", "7", "--out",
             (dir / "a").string(), "--config", "/dev/null"}, nullptr) == 1); // bad config
  ExperimentSpec small = quiet_spec(Technique::SBTC, 60);
  {
    std::ofstream cfg(dir / "small.json");
    cfg << R"({"preset": "lan", "technique": "sbtc", "message_bits": 60,
               "trials": 2, "calibration": {"probes": 30},
               "sweep": {"t_us": [1000, 2000], "t_thresh_us": [900]}})";
  }
  CHECK(cli({"sweep", "--config", (dir / "small.json").string(), "--seed", "7", "--out",
             (dir / "a").string()}, &out_a) == 0);
  CHECK(cli({"sweep", "--config", (dir / "small.json").string(), "--seed", "7", "--out",
             (dir / "b").string()}, &out_b) == 0);
  CHECK(slurp((dir / "a" / "sweep.csv").string()) ==
        slurp((dir / "b" / "sweep.csv").string()));
  CHECK(slurp((dir / "a" / "rtt_samples.csv").string()) ==
        slurp((dir / "b" / "rtt_samples.csv").string()));

  // report renders the bitrate-vs-error table from the CSV.
  std::string report;
  CHECK(cli({"report", (dir / "a" / "sweep.csv").string()}, &report) == 0);
  CHECK(report.find("binary_error") != std::string::npos);
  CHECK(report.find("sbtc") != std::string::npos);
}

TEST_CASE("cli: NDN_CEC_SEED is honored and the flag wins") {
  std::string with_env, with_flag, with_both;
  setenv("NDN_CEC_SEED", "5", 1);
  CHECK(cli({"calibrate", "--preset", "lan"}, &with_env) == 0);
  unsetenv("NDN_CEC_SEED");
  CHECK(cli({"calibrate", "--preset", "lan", "--seed", "5"}, &with_flag) == 0);
  CHECK(with_env == with_flag);

  setenv("NDN_CEC_SEED", "5", 1);
  CHECK(cli({"calibrate", "--preset", "lan", "--seed", "99"}, &with_both) == 0);
  unsetenv("NDN_CEC_SEED");
  std::string flag99;
  CHECK(cli({"calibrate", "--preset", "lan", "--seed", "99"}, &flag99) == 0);
  CHECK(with_both == flag99);
}

TEST_CASE("burst heating: driving t toward the floor inflates errors on testbed-like") {
  // Router service time turns bursts into queueing; hit/miss RTTs smear
  // together for long messages, so the same threshold misreads far more.
  auto error_at = [&](Duration t) {
    ExperimentSpec spec;
    spec.preset = "testbed-like";
    spec.topology = TopologySpec::testbed_like();
    spec.technique = Technique::SBTC;
    spec.protocol.technique = Technique::SBTC;
    spec.message_bits = 1000;
    spec.calibration_probes = 150;
    spec.protocol.t_send = t;
    spec.protocol.t_recv = t;
    TrialReport rep = run_trial(spec, 2718);
    return rep.binary_error_rate();
  };
  double slow = error_at(5 * kMillisecond);
  double burst = error_at(kBurstFloor); // t_min = 0.3 us
  CAPTURE(slow);
  CAPTURE(burst);
  CHECK(burst > slow + 0.05);
}

TEST_CASE("router traces stream as one JSON record per line") {
  ExperimentSpec spec = quiet_spec(Technique::SBTC, 4);
  TraceLog trace;
  run_trial(spec, 5, &trace);
  REQUIRE_FALSE(trace.records().empty());

  std::ostringstream os;
  trace.write_ndjson(os);
  std::istringstream is(os.str());
  std::string line;
  std::size_t lines = 0;
  while (std::getline(is, line)) {
    ++lines;
    CHECK(line.front() == '{');
    CHECK(line.find("\"outcome\"") != std::string::npos);
  }
  CHECK(lines == trace.records().size());

  // CLI --trace writes the same stream to a file.
  auto dir = std::filesystem::temp_directory_path() / "ndncec_trace_test";
  std::filesystem::create_directories(dir);
  std::string out;
  CHECK(cli({"run", "--preset", "lan", "--technique", "sbtc", "--seed", "3", "--out",
             (dir / "o").string(), "--trace", (dir / "t.ndjson").string()},
            &out) == 0);
  CHECK(std::filesystem::file_size(dir / "t.ndjson") > 0);
}

TEST_CASE("changing only the background seed leaves link-delay draws unchanged") {
  ExperimentSpec spec;
  spec.preset = "lan";
  spec.topology = TopologySpec::lan();
  spec.technique = Technique::SBTC;
  spec.protocol.technique = Technique::SBTC;
  spec.message_bits = 150;
  spec.calibration_probes = 40;
  spec.topology.background.enabled = true;
  spec.topology.background.rate_per_sec = 200;

  ExperimentSpec reseeded = spec;
  reseeded.topology.background.seed_tag = "alt";

  TrialReport a = run_trial(spec, 13);
  TrialReport b = run_trial(reseeded, 13);
  REQUIRE(a.probes.size() == b.probes.size());
  for (std::size_t i = 0; i < a.probes.size(); ++i)
    CHECK(a.probes[i].sample.rtt == b.probes[i].sample.rtt);
  CHECK(a.decoded == b.decoded);
}

TEST_CASE("trace records also serialize as CSV rows") {
  ExperimentSpec spec = quiet_spec(Technique::SBTC, 4);
  spec.trials = 1;
  TraceLog trace;
  run_trial(spec, 5, &trace);
  std::ostringstream os;
  trace.write_csv(os);
  std::istringstream is(os.str());
  std::string header;
  REQUIRE(std::getline(is, header));
  CHECK(header ==
        "time_ns,node,packet,name,outcome,arrival_face,emitted_faces,cached,no_route");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(is, line))
    ++rows;
  CHECK(rows == trace.records().size());
}

TEST_CASE("the --trials flag scales bits per sweep point") {
  auto dir = std::filesystem::temp_directory_path() / "ndncec_trials_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream cfg(dir / "t.json");
    cfg << R"({"preset": "lan", "technique": "sbtc", "message_bits": 40,
               "calibration": {"probes": 20}})";
  }
  std::string out;
  REQUIRE(cli({"sweep", "--config", (dir / "t.json").string(), "--seed", "2", "--trials",
               "3", "--out", (dir / "o").string()},
              &out) == 0);
  std::string csv = slurp((dir / "o" / "sweep.csv").string());
  // trials column holds 3, bits 40.
  CHECK(csv.find("sbtc,lan,1,40,3,") != std::string::npos);
}
