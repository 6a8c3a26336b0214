#include "ndncec/config.hpp"

#include "ndncec/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ndncec {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw ConfigError("config: " + msg); }

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      bad("unknown key '" + it.key() + "' in " + where);
}

Duration us_field(const json& j, const char* key, Duration fallback) {
  if (!j.contains(key))
    return fallback;
  double v = j.at(key).get<double>();
  return static_cast<Duration>(std::llround(v * kMicrosecond));
}

Duration ms_field(const json& j, const char* key, Duration fallback) {
  if (!j.contains(key))
    return fallback;
  double v = j.at(key).get<double>();
  return static_cast<Duration>(std::llround(v * kMillisecond));
}

JitterSpec jitter_from_json(const json& j) {
  check_keys(j, "jitter", {"kind", "half_width_us", "sigma_us", "mu_log", "sigma_log"});
  std::string kind = j.value("kind", "none");
  if (kind == "none")
    return JitterSpec::none();
  if (kind == "uniform")
    return JitterSpec::uniform(j.at("half_width_us").get<double>() * kMicrosecond);
  if (kind == "normal")
    return JitterSpec::normal(j.at("sigma_us").get<double>() * kMicrosecond);
  if (kind == "lognormal")
    return JitterSpec::lognormal(j.at("mu_log").get<double>(), j.at("sigma_log").get<double>());
  bad("unknown jitter kind '" + kind + "'");
}

LinkModel link_from_json(const json& j, const LinkModel& base) {
  check_keys(j, "link", {"base_delay_us", "jitter", "loss_prob"});
  LinkModel m = base;
  m.base_delay = us_field(j, "base_delay_us", m.base_delay);
  if (j.contains("jitter"))
    m.jitter = jitter_from_json(j.at("jitter"));
  m.loss_prob = j.value("loss_prob", m.loss_prob);
  return m;
}

ReplacementPolicy policy_from_string(const std::string& s) {
  if (s == "lru") return ReplacementPolicy::LRU;
  if (s == "lfu") return ReplacementPolicy::LFU;
  if (s == "none") return ReplacementPolicy::NONE;
  bad("unknown replacement policy '" + s + "'");
}

} // namespace

int ExperimentSpec::effective_m() const {
  switch (technique) {
    case Technique::SBTC:
    case Technique::SBTP:
    case Technique::TDP:
      return 1;
    default:
      return m;
  }
}

void ExperimentSpec::validate() const {
  topology.validate();
  protocol.validate();
  if (message_bits < 1)
    bad("message_bits must be >= 1");
  if (trials < 1)
    bad("trials must be >= 1");
  if (m < 1 || m > 8)
    bad("m must be in [1,8]");
  if (calibration_probes < 1 || calibration_repeats < 2)
    bad("calibration needs probes >= 1 and repeats >= 2");
  if (protocol.retransmit && technique != Technique::CPC)
    bad("retransmit is only honored for cpc");
}

ExperimentSpec ExperimentSpec::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  check_keys(j, "top level",
             {"preset", "technique", "message_bits", "m", "trials", "seed", "protocol",
              "sweep", "calibration", "topology", "router", "background", "clock", "data",
              "trace"});

  ExperimentSpec spec;
  spec.preset = j.value("preset", "lan");
  spec.topology = TopologySpec::preset(spec.preset);
  if (j.contains("technique"))
    spec.technique = technique_from_string(j.at("technique").get<std::string>());
  spec.message_bits = j.value("message_bits", 1000);
  spec.m = j.value("m", 1);
  spec.trials = j.value("trials", 1);
  spec.seed = j.value("seed", std::uint64_t{1});
  spec.keep_trace = j.value("trace", false);

  if (spec.technique == Technique::SBTP && spec.preset == "testbed-like")
    spec.protocol.pair_offset = 16 * kMillisecond;
  spec.protocol.technique = spec.technique;

  if (j.contains("protocol")) {
    const json& p = j.at("protocol");
    check_keys(p, "protocol",
               {"t_send_us", "t_recv_us", "t_thresh_us", "delta_us", "t0_ms",
                "pair_offset_us", "retransmit", "scope2", "timeout_ms", "write_verify",
                "read_guard_us", "max_retries"});
    auto& proto = spec.protocol;
    proto.t_send = us_field(p, "t_send_us", proto.t_send);
    proto.t_recv = us_field(p, "t_recv_us", proto.t_recv);
    proto.t_thresh = us_field(p, "t_thresh_us", proto.t_thresh);
    proto.delta = us_field(p, "delta_us", proto.delta);
    proto.t0 = ms_field(p, "t0_ms", proto.t0);
    proto.pair_offset = us_field(p, "pair_offset_us", proto.pair_offset);
    proto.retransmit = p.value("retransmit", proto.retransmit);
    proto.scope2 = p.value("scope2", proto.scope2);
    proto.timeout = ms_field(p, "timeout_ms", proto.timeout);
    proto.write_verify = p.value("write_verify", proto.write_verify);
    proto.read_guard = us_field(p, "read_guard_us", proto.read_guard);
    proto.max_retries = p.value("max_retries", proto.max_retries);
  }

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    check_keys(s, "sweep", {"t_us", "t_thresh_us"});
    if (s.contains("t_us"))
      for (double v : s.at("t_us"))
        spec.sweep_t.push_back(static_cast<Duration>(std::llround(v * kMicrosecond)));
    if (s.contains("t_thresh_us"))
      for (double v : s.at("t_thresh_us"))
        spec.sweep_thresh.push_back(static_cast<Duration>(std::llround(v * kMicrosecond)));
  }

  if (j.contains("calibration")) {
    const json& c = j.at("calibration");
    check_keys(c, "calibration", {"probes", "repeats"});
    spec.calibration_probes = c.value("probes", spec.calibration_probes);
    spec.calibration_repeats = c.value("repeats", spec.calibration_repeats);
  }

  if (j.contains("topology")) {
    const json& t = j.at("topology");
    check_keys(t, "topology", {"links", "hops_snd", "hops_rcv", "extra_receivers"});
    spec.topology.hops_snd = t.value("hops_snd", 0);
    spec.topology.hops_rcv = t.value("hops_rcv", 0);
    spec.topology.extra_receivers = t.value("extra_receivers", 0);
    if (t.contains("links")) {
      for (auto it = t.at("links").begin(); it != t.at("links").end(); ++it) {
        std::string key = it.key(); // "A-B"
        auto dash = key.find('-');
        if (dash == std::string::npos)
          bad("link keys look like 'Snd-Rt', got '" + key + "'");
        std::string a = key.substr(0, dash), b = key.substr(dash + 1);
        LinkModel base;
        auto found = spec.topology.links.find(LinkKey(a, b));
        if (found != spec.topology.links.end())
          base = found->second;
        spec.topology.set_link(a, b, link_from_json(it.value(), base));
      }
    }
    // Chain links default to the edge model when added after the preset.
    if (spec.topology.hops_snd > 0 || spec.topology.hops_rcv > 0) {
      for (const auto& consumer : {std::string("Snd"), std::string("Rcv")}) {
        auto path = spec.topology.chain(consumer);
        LinkModel edge = spec.topology.link(consumer, "Rt");
        spec.topology.links.erase(LinkKey(consumer, "Rt"));
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
          if (!spec.topology.links.count(LinkKey(path[i], path[i + 1])))
            spec.topology.set_link(path[i], path[i + 1], edge);
      }
    }
  }

  if (j.contains("router")) {
    const json& r = j.at("router");
    check_keys(r, "router",
               {"cache_capacity", "policy", "pit_lifetime_ms", "serve_stale",
                "cache_on_first_pass", "cache_hit_extra_delay_us", "proc_delay_us",
                "seen_once_ttl_ms"});
    auto& rc = spec.topology.router;
    rc.cache_capacity = r.value("cache_capacity", rc.cache_capacity);
    if (r.contains("policy"))
      rc.replacement_policy = policy_from_string(r.at("policy").get<std::string>());
    rc.pit_lifetime = ms_field(r, "pit_lifetime_ms", rc.pit_lifetime);
    rc.serve_stale = r.value("serve_stale", rc.serve_stale);
    rc.cache_on_first_pass = r.value("cache_on_first_pass", rc.cache_on_first_pass);
    rc.cache_hit_extra_delay = us_field(r, "cache_hit_extra_delay_us", rc.cache_hit_extra_delay);
    rc.proc_delay = us_field(r, "proc_delay_us", rc.proc_delay);
    rc.seen_once_ttl = ms_field(r, "seen_once_ttl_ms", rc.seen_once_ttl);
  }

  if (j.contains("background")) {
    const json& b = j.at("background");
    check_keys(b, "background", {"enabled", "rate_per_s", "namespace_size", "seed_tag"});
    spec.topology.background.enabled = b.value("enabled", false);
    spec.topology.background.rate_per_sec = b.value("rate_per_s", 50.0);
    spec.topology.background.namespace_size = b.value("namespace_size", 500);
    spec.topology.background.seed_tag = b.value("seed_tag", std::string{});
  }

  if (j.contains("clock")) {
    const json& c = j.at("clock");
    check_keys(c, "clock", {"snd_offset_us", "rcv_offset_us", "snd_drift", "rcv_drift"});
    spec.topology.snd_clock.offset = us_field(c, "snd_offset_us", 0);
    spec.topology.rcv_clock.offset = us_field(c, "rcv_offset_us", 0);
    spec.topology.snd_clock.drift = c.value("snd_drift", 1.0);
    spec.topology.rcv_clock.drift = c.value("rcv_drift", 1.0);
  }

  if (j.contains("data")) {
    const json& d = j.at("data");
    check_keys(d, "data", {"freshness_ms", "interest_bytes", "data_bytes"});
    spec.topology.data_freshness = ms_field(d, "freshness_ms", spec.topology.data_freshness);
    spec.topology.interest_bytes = d.value("interest_bytes", spec.topology.interest_bytes);
    spec.topology.data_bytes = d.value("data_bytes", spec.topology.data_bytes);
  }

  spec.validate();
  return spec;
}

ExperimentSpec ExperimentSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

} // namespace ndncec
