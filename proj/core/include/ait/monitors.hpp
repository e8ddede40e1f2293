#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ait/bits.hpp"
#include "ait/enumerator.hpp"
#include "ait/natural.hpp"
#include "ait/profile.hpp"
#include "ait/report.hpp"
#include "ait/solovay.hpp"
#include "ait/upper_bound.hpp"

namespace ait {

// An infinite (or file-backed finite) binary sequence read through prefixes.
// Rule and file sources are fully stable. An alpha source only emits
// certified bits, so it is stable too. An omega source is the binary
// expansion of the current Omega_s and marks every bit unstable.
class SequenceSource {
 public:
  enum class Kind { kRule, kFile, kAlpha, kOmegaSoFar };

  // bit(i) for i = 0, 1, ...
  static SequenceSource rule(std::string id, std::function<bool(std::uint64_t)> bit);
  static SequenceSource zeros();
  static SequenceSource ones();
  static SequenceSource alternating();  // 0101...
  // Pseudo-random coin flips from mt19937_64(seed), one bit per draw.
  static SequenceSource coin(std::uint64_t seed);
  // Finite source; '0'/'1' digits, everything else ignored.
  static SequenceSource file(const std::filesystem::path& path);
  static SequenceSource literal(std::string id, BitString bits);
  static SequenceSource alpha_of(UpperBoundFunction f);
  static SequenceSource omega_so_far(const Enumeration& table);

  // "zeros", "ones", "alt", "coin:<seed>", "bits:<digits>", "file:<path>",
  // "alpha:<function name>", "omega" (needs a table).
  static SequenceSource parse(std::string_view spec, const MachineProfile& profile,
                              const Enumeration* table = nullptr);

  Kind kind() const { return kind_; }
  const std::string& id() const { return id_; }
  // nullopt for infinite sources.
  std::optional<std::uint64_t> length() const { return length_; }

  // Throws kInvalidArgument past the end of a finite source.
  BitString prefix(std::uint64_t n) const;
  bool bit(std::uint64_t i) const { return prefix(i + 1)[i]; }
  bool stable(std::uint64_t i) const;
  // Every bit of the first n is stable.
  bool prefix_stable(std::uint64_t n) const { return n == 0 || stable(n - 1); }

 private:
  struct State;
  using Extend = std::function<void(BitString& cache, std::uint64_t n)>;
  SequenceSource(Kind kind, std::string id, std::optional<std::uint64_t> length, Extend extend);

  Kind kind_;
  std::string id_;
  std::optional<std::uint64_t> length_;
  std::shared_ptr<State> state_;
};

enum class Direction {
  kLowerBound,  // statistic lower-bounds the true value: refutes constants below it
  kExact,       // fully computable
  kUpperBound,  // statistic upper-bounds the true value: only consistency up to the stage
};
const char* direction_label(Direction d);

struct DeficiencyRow {
  std::uint64_t n = 0;
  std::optional<std::int64_t> statistic;  // nullopt: undiscovered prefix
  std::optional<std::int64_t> extremum;   // running sup (or min for trends)
  bool stable = true;
};

struct DeficiencyReport {
  std::string criterion;
  std::string source;
  Direction direction = Direction::kLowerBound;
  bool running_max = true;  // false: running minimum
  std::uint64_t watermark = 0;
  std::string fingerprint;
  std::vector<DeficiencyRow> rows;
  std::uint64_t top_count = 0;

  std::optional<std::int64_t> extremum() const;
  // "refutes-at-c <sup-1>", "exact ...", or "consistent-up-to-stage <s> ...".
  std::string verdict() const;
  CsvTable csv() const;
};

// Generic row builder for n = 1..N; a nullopt statistic counts as
// undiscovered.
using Statistic = std::function<std::optional<std::int64_t>(std::uint64_t n, const BitString&)>;
DeficiencyReport make_report(std::string criterion, const SequenceSource& src, Direction direction,
                             bool running_max, const Enumeration* table, std::uint64_t N,
                             const Statistic& stat);

// d(n) = n - K_s(src|n).
DeficiencyReport levin_schnorr(const SequenceSource& src, const Enumeration& table,
                               std::uint64_t N);
// d(n) = n - g(n) - C_s(src|n). Any f of finite weight may stand in for g.
DeficiencyReport miller_yu(const SequenceSource& src, const Enumeration& table,
                           const UpperBoundFunction& g, std::uint64_t N);
// d(n) = n - f(src|n), exact.
DeficiencyReport bm_criterion(const SequenceSource& src, const StringRule& f, std::uint64_t N);
// g(n) = K_s(src|n) - n with running minimum.
DeficiencyReport chaitin_trend(const SequenceSource& src, const Enumeration& table,
                               std::uint64_t N);
// Running min of g - K_s, through gap_table.
GapReport solovayness_probe(const UpperBoundFunction& g, const Enumeration& table,
                            std::uint64_t M);

// Prefixes n <= N with both complexities discovered and
// C_s(src|n) > K_s(src|n) + c_pc.
std::uint64_t cross_criterion_violations(const SequenceSource& src, const Enumeration& table,
                                         std::uint64_t N, std::int64_t c_pc);

// String rules for bm: "berry" / "const2len" (2|x|+2), "solovay", "two_log",
// "linear", "const:<v>"; index rules are read through lex_index.
StringRule string_rule_by_name(std::string_view name, const MachineProfile& profile);

}  // namespace ait
