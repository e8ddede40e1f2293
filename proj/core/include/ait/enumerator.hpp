#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ait/bits.hpp"
#include "ait/machine.hpp"
#include "ait/natural.hpp"
#include "ait/profile.hpp"

namespace ait {

struct HaltEvent {
  Mode mode = Mode::kPrefix;
  BitString p;
  BitString x;
  std::uint64_t t = 0;
  std::uint64_t stage = 0;  // first stage at which the event exists: max(|p|, t)

  friend bool operator==(const HaltEvent&, const HaltEvent&) = default;
};

// Dovetailed enumeration of the prefix and plain domains.
//
// Stage s runs every program of length <= s with step budget s. A program
// that halts in t steps is therefore first seen at stage max(|p|, t), and the
// stage-s tables are exactly the events labelled <= s; advance() computes
// them with one walk of the program tree instead of s separate passes.
//
// The walk extends p only while the prefix-mode run asks for more input. A
// plain-mode event is recorded when p is read to its end (consumed == |p|);
// longer programs whose plain run stops early repeat a shorter program's
// output at greater length, so C_s is unaffected.
class Enumeration {
 public:
  static constexpr std::uint64_t kDefaultWorkCap = std::uint64_t{1} << 31;

  explicit Enumeration(MachineProfile profile, std::uint64_t work_cap = kDefaultWorkCap,
                       unsigned threads = 1);

  // Throws kResourceLimit when 2^(s+1) * s exceeds the work cap and
  // kInvalidArgument when s is below the watermark.
  void advance(std::uint64_t target_stage);

  std::uint64_t watermark() const { return watermark_; }
  const MachineProfile& profile() const { return profile_; }
  std::uint64_t work_cap() const { return work_cap_; }
  void set_threads(unsigned threads) { threads_ = threads == 0 ? 1 : threads; }

  // Ordered by (stage, mode, |p|, p).
  const std::vector<HaltEvent>& events() const { return events_; }

  // Minimal |p| over events with output x (and stage <= `stage` when given);
  // nullopt is the undiscovered value.
  std::optional<std::uint64_t> K(const BitString& x) const;
  std::optional<std::uint64_t> C(const BitString& x) const;
  std::optional<std::uint64_t> K_at(const BitString& x, std::uint64_t stage) const;
  std::optional<std::uint64_t> C_at(const BitString& x, std::uint64_t stage) const;
  // Shortest program, ties broken by the lexicographically least p.
  const HaltEvent* witness(Mode mode, const BitString& x) const;

  struct Entry {
    std::uint64_t length = 0;
    std::size_t event = 0;
  };
  const std::unordered_map<BitString, Entry>& table(Mode mode) const {
    return mode == Mode::kPrefix ? k_table_ : c_table_;
  }

  // Sum of 2^-|p| over the prefix domain found so far (optionally at an
  // earlier stage), and the sum of 2^-K_s(x) over discovered outputs.
  Dyadic omega() const { return omega_at(watermark_); }
  Dyadic omega_at(std::uint64_t stage) const;
  Dyadic omega_by_K() const;

  // #{w : |w| = n, K_s(w) <= K_s(lex_string(n)) + c}. Undiscovered values
  // count as +infinity on both sides, so only discovered w are counted.
  std::uint64_t counting_report(std::uint64_t n, std::int64_t c) const;

  // max over x discovered in both modes of C_s(x) - K_s(x), floored at 0.
  std::int64_t plain_prefix_overhead() const;

  // Ledger: "# ait-ledger v1 fingerprint=<hex> watermark=<s>" followed by
  // one "mode p x t stage" line per event (empty words are empty fields).
  std::string ledger() const;
  void snapshot(const std::filesystem::path& path) const;
  // Throws kFingerprintMismatch or kCorruptLedger. Every event is replayed.
  static Enumeration restore_from_text(std::string_view text, MachineProfile profile,
                                       std::uint64_t work_cap = kDefaultWorkCap);
  static Enumeration restore(const std::filesystem::path& path, MachineProfile profile,
                             std::uint64_t work_cap = kDefaultWorkCap);

 private:
  void add_events(std::vector<HaltEvent> fresh);
  void index_event(std::size_t i);
  std::optional<std::uint64_t> best_at(Mode mode, const BitString& x, std::uint64_t stage) const;

  MachineProfile profile_;
  std::uint64_t work_cap_;
  unsigned threads_;
  std::uint64_t watermark_ = 0;
  std::vector<HaltEvent> events_;
  std::unordered_map<BitString, Entry> k_table_;
  std::unordered_map<BitString, Entry> c_table_;
  std::unordered_map<BitString, std::vector<std::size_t>> by_output_;
};

// Work units for a stage: 2^(s+1) * s, saturating.
std::uint64_t stage_work(std::uint64_t stage);

// All halting events of programs up to length `stage` with budget `stage`,
// labelled with their first stage; unordered.
std::vector<HaltEvent> explore(const MachineProfile& profile, std::uint64_t stage,
                               unsigned threads = 1);

struct CountingCell {
  std::uint64_t n = 0;
  std::int64_t c = 0;
  std::uint64_t count = 0;
  std::int64_t implied = 0;  // ceil(log2 max(count, 1)) - c
};
std::vector<CountingCell> counting_matrix(const Enumeration& e, std::uint64_t n_max,
                                          std::int64_t c_max);

}  // namespace ait
