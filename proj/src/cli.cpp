#include "ndncec/cli.hpp"

#include "ndncec/calibrate.hpp"
#include "ndncec/csv.hpp"
#include "ndncec/errors.hpp"
#include "ndncec/privacy.hpp"
#include "ndncec/sweep.hpp"
#include "ndncec/trial.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace ndncec {

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string preset;
  std::string technique;
  std::string out = "out";
  std::string trace_path;
  std::optional<int> trials;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config, "experiment config file (JSON)");
  cmd->add_option("--seed", flags.seed, "master seed (beats NDN_CEC_SEED)");
  cmd->add_option("--preset", flags.preset, "topology preset: lan | testbed-like")
      ->check(CLI::IsMember({"lan", "testbed-like"}));
  cmd->add_option("--technique", flags.technique,
                  "covert technique: sbtc | sbtp | tdp | matrix | cpc");
  cmd->add_option("--out", flags.out, "output directory for CSV files");
  cmd->add_option("--trials", flags.trials, "trials per sweep point (scale factor)");
}

ExperimentSpec build_spec(const CommonFlags& flags) {
  ExperimentSpec spec;
  if (!flags.config.empty())
    spec = ExperimentSpec::from_json_file(flags.config);

  if (!flags.technique.empty()) {
    spec.technique = technique_from_string(flags.technique);
    spec.protocol.technique = spec.technique;
  }
  if (!flags.preset.empty() && flags.preset != spec.preset) {
    // Replacing the preset swaps the link plan and router service time but
    // keeps protocol/router settings from the config.
    TopologySpec fresh = TopologySpec::preset(flags.preset);
    spec.preset = flags.preset;
    spec.topology.links = fresh.links;
    spec.topology.router.proc_delay = fresh.router.proc_delay;
  }
  // Precedence: --seed flag, then NDN_CEC_SEED, then the config file.
  if (flags.trials)
    spec.trials = *flags.trials;
  if (flags.seed) {
    spec.seed = *flags.seed;
  } else if (const char* env = std::getenv("NDN_CEC_SEED")) {
    try {
      spec.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("NDN_CEC_SEED is not a number: " + std::string(env));
    }
  }
  if (spec.technique == Technique::SBTP && spec.preset == "testbed-like" &&
      spec.protocol.pair_offset == 800 * kMicrosecond)
    spec.protocol.pair_offset = 16 * kMillisecond;
  spec.validate();
  return spec;
}

int cmd_calibrate(const CommonFlags& flags, std::ostream& out) {
  ExperimentSpec spec = build_spec(flags);
  Network net(spec.topology, spec.seed);
  net.trace().set_enabled(false);

  std::vector<Name> probes;
  Name base(std::vector<std::string>{"cal"});
  for (int i = 0; i < spec.calibration_probes; ++i) {
    probes.push_back(base.append("p" + std::to_string(i)));
    net.producer().publish(probes.back(), spec.topology.data_freshness,
                           spec.topology.data_bytes);
  }
  CalibrationOptions cal;
  cal.repeats = spec.calibration_repeats;
  ThresholdEstimate est = estimate_threshold(net, "Rcv", probes, cal);

  auto dist = [&out](const char* label, std::vector<Duration> v) {
    std::sort(v.begin(), v.end());
    out << label << "_us min " << to_us(v.front()) << " p50 " << to_us(v[v.size() / 2])
        << " p95 " << to_us(v[(v.size() * 95) / 100]) << " max " << to_us(v.back())
        << "\n";
  };
  out << "preset " << spec.preset << "\n";
  out << "probes " << probes.size() << " repeats " << spec.calibration_repeats << "\n";
  out << "rtt_hit_mean_us " << to_us(est.rtt_hit_mean) << "\n";
  out << "rtt_miss_mean_us " << to_us(est.rtt_miss_mean) << "\n";
  dist("rtt_hit", est.hit_rtts);
  dist("rtt_miss", est.miss_rtts);
  out << "t_thresh_us " << to_us(est.t_thresh) << "\n";
  out << "overlap_fraction " << est.overlap_fraction << "\n";
  out << "overlap_warning " << (est.overlap_warning ? 1 : 0) << "\n";
  if (spec.technique == Technique::SBTP)
    out << "sbtp_t_thresh_us " << to_us(sbtp_threshold(est, spec.protocol.pair_offset))
        << "\n";
  return 0;
}

int cmd_run(const CommonFlags& flags, std::ostream& out) {
  ExperimentSpec spec = build_spec(flags);
  TraceLog trace;
  TrialReport rep =
      run_trial(spec, derive_trial_seed(spec, 0, 0),
                flags.trace_path.empty() ? nullptr : &trace);
  if (!flags.trace_path.empty()) {
    std::ofstream tf(flags.trace_path, std::ios::binary);
    if (!tf)
      throw ConfigError("cannot write trace file: " + flags.trace_path);
    if (flags.trace_path.size() > 4 &&
        flags.trace_path.substr(flags.trace_path.size() - 4) == ".csv")
      trace.write_csv(tf);
    else
      trace.write_ndjson(tf);
    out << "trace " << flags.trace_path << " (" << trace.records().size()
        << " records)\n";
  }

  out << "technique " << to_string(spec.technique) << " preset " << spec.preset << " m "
      << spec.effective_m() << "\n";
  out << "bits " << rep.n() << "\n";
  out << "t_send_us " << to_us(spec.protocol.t_send) << " t_recv_us "
      << to_us(spec.protocol.t_recv) << "\n";
  out << "t_thresh_us " << to_us(rep.t_thresh_used) << " overlap "
      << rep.overlap_fraction << "\n";
  out << "correct " << rep.correct << "\n";
  out << "write_errors " << rep.write_errors << "\n";
  out << "read_errors " << rep.read_errors << "\n";
  out << "erasures " << rep.erasures << "\n";
  out << "binary_error_rate " << rep.binary_error_rate() << "\n";
  out << "sender_bytes " << rep.sender_bytes << " receiver_bytes " << rep.receiver_bytes
      << "\n";
  out << "sim_duration_ms " << to_ms(rep.sim_duration) << "\n";

  SweepResult single;
  single.spec = spec;
  for (const auto& pr : rep.probes) {
    SweepResult::RttRow row;
    row.trial = 0;
    row.t = spec.protocol.t_recv;
    row.index = pr.probe_index;
    row.name = pr.sample.name;
    row.issued = pr.sample.issued_at;
    row.rtt = pr.sample.rtt;
    row.timed_out = pr.sample.timed_out;
    single.rtt_rows.push_back(row);
  }
  std::error_code ec;
  std::filesystem::create_directories(flags.out, ec);
  std::ofstream rtt_os(rtt_csv_path(flags.out), std::ios::binary);
  if (rtt_os)
    write_rtt_csv(single, rtt_os);
  return 0;
}

int cmd_sweep(const CommonFlags& flags, std::ostream& out) {
  ExperimentSpec spec = build_spec(flags);
  SweepResult result = sweep(spec);
  emit_csv(result, flags.out);
  out << "wrote " << sweep_csv_path(flags.out) << " (" << result.points.size()
      << " points)\n";
  out << "wrote " << rtt_csv_path(flags.out) << " (" << result.rtt_rows.size()
      << " rows)\n";
  return 0;
}

int cmd_privacy(const CommonFlags& flags, std::ostream& out) {
  ExperimentSpec spec = build_spec(flags);
  RngStream rng(mix_seed(spec.seed, fnv1a("privacy-messages")));
  int pairs = spec.trials;
  bool all_ok = true;
  for (int i = 0; i < pairs; ++i) {
    Message m0 = Message::random(rng, spec.message_bits);
    Message m1 = Message::random(rng, spec.message_bits);
    if (m0 == m1)
      m1.bits[0] ^= 1;
    PrivacyGameResult res = privacy_game(spec, m0, m1);
    out << "pair " << i << " post_expiry_indistinguishable "
        << (res.indistinguishable ? 1 : 0) << " pre_expiry_differs "
        << (res.pre_expiry_differs ? 1 : 0) << "\n";
    all_ok = all_ok && res.indistinguishable && res.pre_expiry_differs;
  }
  out << (all_ok ? "retroactive privacy holds" : "retroactive privacy VIOLATED") << "\n";
  return 0;
}

int cmd_report(const CommonFlags& flags, const std::string& csv_arg, std::ostream& out) {
  std::string path = csv_arg.empty() ? sweep_csv_path(flags.out) : csv_arg;
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open " + path);

  std::string header;
  if (!std::getline(in, header))
    throw ConfigError("empty CSV: " + path);
  std::vector<std::string> cols;
  {
    std::stringstream ss(header);
    std::string c;
    while (std::getline(ss, c, ','))
      cols.push_back(c);
  }
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == name)
        return static_cast<int>(i);
    throw ConfigError("CSV lacks column " + name + ": " + path);
  };
  int c_tech = col("technique"), c_t = col("t_ns"), c_err = col("binary_error_rate");
  int c_sbps = col("sender_bitrate_bps"), c_rbps = col("receiver_bitrate_bps");
  int c_thresh = col("t_thresh_ns");

  out << "technique  t_us  t_thresh_us  snd_bits_per_sec  rcv_bits_per_sec  "
         "binary_error\n";
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ','))
      f.push_back(c);
    out << f[c_tech] << "  " << std::stod(f[c_t]) / 1000.0 << "  "
        << std::stod(f[c_thresh]) / 1000.0 << "  " << f[c_sbps] << "  " << f[c_rbps]
        << "  " << f[c_err] << "\n";
  }
  return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covert ephemeral communication experiments on a simulated NDN plane"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string report_csv;

  CLI::App* calibrate = app.add_subcommand("calibrate", "estimate t_thresh for a preset");
  add_common(calibrate, flags);
  CLI::App* run = app.add_subcommand("run", "run one trial verbosely");
  add_common(run, flags);
  run->add_option("--trace", flags.trace_path,
                  "stream the router trace to this file (NDJSON)");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep (t, t_thresh) and write CSVs");
  add_common(sweep_cmd, flags);
  CLI::App* privacy = app.add_subcommand("privacy", "run the retroactive-privacy game");
  add_common(privacy, flags);
  CLI::App* report = app.add_subcommand("report", "summarize a sweep CSV");
  add_common(report, flags);
  report->add_option("csv", report_csv, "sweep CSV path (default <out>/sweep.csv)");

  // CLI11 wants argv-style reversed vector.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    if (app.got_subcommand(calibrate))
      return cmd_calibrate(flags, out);
    if (app.got_subcommand(run))
      return cmd_run(flags, out);
    if (app.got_subcommand(sweep_cmd))
      return cmd_sweep(flags, out);
    if (app.got_subcommand(privacy))
      return cmd_privacy(flags, out);
    if (app.got_subcommand(report))
      return cmd_report(flags, report_csv, out);
    err << app.help();
    return 1;
  } catch (const ConstraintError& e) {
    err << "constraint violation: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

} // namespace ndncec
