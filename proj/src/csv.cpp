#include "ndncec/csv.hpp"

#include "ndncec/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace ndncec {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

} // namespace

void write_sweep_csv(const SweepResult& result, std::ostream& os) {
  os << "technique,preset,m,bits_per_trial,trials,t_ns,t_thresh_ns,mean_thresh_used_ns,"
        "correct,write_errors,read_errors,erasures,read_error_rate,erasure_rate,"
        "error_rate_all,binary_error_rate,err_ci_lo,err_ci_hi,overlap_fraction,"
        "sender_bytes,receiver_bytes,sender_bitrate_bps,receiver_bitrate_bps,"
        "sim_duration_ns\n";
  for (const auto& p : result.points) {
    os << to_string(result.spec.technique) << ',' << result.spec.preset << ','
       << result.spec.effective_m() << ',' << p.bits_per_trial << ',' << p.trials << ','
       << p.t << ',' << p.t_thresh << ',' << p.mean_thresh_used << ',' << p.correct << ','
       << p.write_errors << ',' << p.read_errors << ',' << p.erasures << ','
       << fmt(p.read_error_rate) << ',' << fmt(p.erasure_rate) << ','
       << fmt(p.error_rate_all) << ',' << fmt(p.binary_error_rate) << ','
       << fmt(p.err_ci_lo) << ',' << fmt(p.err_ci_hi) << ',' << fmt(p.overlap_fraction)
       << ',' << p.sender_bytes << ',' << p.receiver_bytes << ','
       << fmt(p.sender_bitrate_bps) << ',' << fmt(p.receiver_bitrate_bps) << ','
       << p.sim_duration << '\n';
  }
}

void write_rtt_csv(const SweepResult& result, std::ostream& os) {
  os << "trial,technique,t_ns,index,name,issued_ns,rtt_ns,timed_out,decoded,truth\n";
  for (const auto& r : result.rtt_rows) {
    os << r.trial << ',' << to_string(result.spec.technique) << ',' << r.t << ','
       << r.index << ',' << r.name.render() << ',' << r.issued << ',' << r.rtt << ','
       << (r.timed_out ? 1 : 0) << ',' << r.decoded << ',' << r.truth << '\n';
  }
}

std::string sweep_csv_path(const std::string& out_dir) { return out_dir + "/sweep.csv"; }
std::string rtt_csv_path(const std::string& out_dir) { return out_dir + "/rtt_samples.csv"; }

void emit_csv(const SweepResult& result, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  std::ofstream sweep_os(sweep_csv_path(out_dir), std::ios::binary);
  if (!sweep_os)
    throw ConfigError("cannot write " + sweep_csv_path(out_dir));
  write_sweep_csv(result, sweep_os);

  std::ofstream rtt_os(rtt_csv_path(out_dir), std::ios::binary);
  if (!rtt_os)
    throw ConfigError("cannot write " + rtt_csv_path(out_dir));
  write_rtt_csv(result, rtt_os);
}

} // namespace ndncec
