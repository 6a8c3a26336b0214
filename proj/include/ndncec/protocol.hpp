#pragma once

#include "ndncec/codebook.hpp"
#include "ndncec/network.hpp"
#include "ndncec/rng.hpp"
#include "ndncec/sample.hpp"
#include "ndncec/time.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ndncec {

enum class Technique : std::uint8_t { SBTC, SBTP, TDP, MATRIX, CPC };

const char* to_string(Technique t);
Technique technique_from_string(const std::string& s);

// Uninterrupted-burst floor for inter-interest spacing.
constexpr Duration kBurstFloor = 300; // 0.3 us

struct ProtocolParams {
  Technique technique = Technique::SBTC;
  Duration t_send = kMillisecond;     // sender inter-interest spacing
  Duration t_recv = kMillisecond;     // receiver inter-interest spacing
  Duration t_thresh = 0;              // decode threshold (calibrated when 0)
  Duration delta = 0;                 // guard added on top of t_thresh
  SimTime t0 = kSecond;               // agreed start, local clocks
  Duration pair_offset = 800 * kMicrosecond; // SBTP: Rcv issues this after Snd
  bool retransmit = false;            // honored for CPC only
  bool scope2 = false;                // scope=2 on receiver probes
  Duration timeout = 0;               // 0 = derive from topology
  bool write_verify = false;          // sender re-issues lost writes
  Duration read_guard = 0;            // 0 = derive from topology jitter
  int max_retries = 16;

  Duration threshold() const { return t_thresh + delta; }
  void validate() const;
};

struct Message {
  std::vector<std::uint8_t> bits; // each 0 or 1

  int size() const { return static_cast<int>(bits.size()); }
  static Message random(RngStream& rng, int n);
  static Message from_string(const std::string& s); // "0101..."
  std::string to_string() const;

  // Word W_i = bits[i*m .. i*m+m-1], MSB first, zero-padded at the tail.
  std::uint32_t word(int row, int m) const;
  bool operator==(const Message&) const = default;
};

enum class Symbol : std::int8_t { Zero = 0, One = 1, Erasure = 2 };

struct ProbeRecord {
  int probe_index = 0;
  int row = 0;
  int column = 0; // column probed (SBTC/SBTP: 1; CPC: -1, prefix probe)
  RttSample sample;
};

// One sender+receiver(s) protocol execution bound to a network. The caller
// schedules phases, runs the engine, then reads the decode.
class CovertSession {
public:
  CovertSession(Network& net, const Codebook& codebook, ProtocolParams params);

  const ProtocolParams& params() const { return params_; }
  const Codebook& codebook() const { return codebook_; }

  // Sender actions for M on Snd's local clock: word i at t0 + i*t_send.
  void schedule_send(const Message& m);

  // Receiver probes on the receiver's local clock. Default start leaves the
  // whole send phase cached (plus jitter guard); SBTP instead trails each
  // sender interest by pair_offset.
  void schedule_receive(const std::string& receiver = "Rcv",
                        std::optional<SimTime> start_local = std::nullopt);

  // Decode results, valid once the engine ran past all probe timeouts.
  Message decoded(const std::string& receiver = "Rcv") const;
  std::vector<Symbol> decoded_symbols(const std::string& receiver = "Rcv") const;
  std::optional<std::uint32_t> decoded_word(const std::string& receiver, int row) const;
  const std::vector<ProbeRecord>& probes(const std::string& receiver = "Rcv") const;

  // Name whose presence at Rt means word i was written (none for an
  // SBTC/SBTP zero bit).
  std::optional<Name> written_name(int row) const;

  int rows() const { return codebook_.rows(); }
  int receiver_probe_count() const;

  SimTime default_read_start_local() const;
  SimTime send_end_local() const;  // last sender issue + t_send
  SimTime read_end_local(const std::string& receiver = "Rcv") const;
  Duration effective_timeout() const { return timeout_; }
  Duration effective_read_guard() const { return read_guard_; }

private:
  struct RowState {
    std::vector<std::optional<RttSample>> col_samples; // per column
    std::optional<RttSample> prefix_sample;            // CPC
    std::optional<Name> returned;                      // CPC data name
    int retries = 0;
  };
  struct RxState {
    std::vector<RowState> rows;
    std::vector<ProbeRecord> probes;
    SimTime read_start_local = 0;
  };

  void send_word(int row, std::uint32_t w);
  void probe_column(const std::string& receiver, int row, int column, SimTime at_local);
  void probe_prefix(const std::string& receiver, int row, SimTime at_local);
  std::optional<std::uint32_t> decode_row(int row_index, const RowState& row) const;
  RxState& rx(const std::string& receiver);
  const RxState& rx(const std::string& receiver) const;

  Network& net_;
  Codebook codebook_;
  ProtocolParams params_;
  Duration timeout_ = 0;
  Duration read_guard_ = 0;
  Message sent_;
  bool send_scheduled_ = false;
  std::map<std::string, RxState> receivers_;
};

// Expands word symbols back into n bit symbols (erasure word -> m erasure
// bits) — shared by decode and the harness metrics.
std::vector<Symbol> words_to_symbols(const std::vector<std::optional<std::uint32_t>>& words,
                                     int n, int m);

} // namespace ndncec
