#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ait/bits.hpp"
#include "ait/enumerator.hpp"
#include "ait/monitors.hpp"
#include "ait/report.hpp"

namespace ait {

// A nondecreasing rule h with memo. Values are checked for monotonicity
// against every point queried so far.
class NondecreasingFn {
 public:
  using Rule = std::function<std::uint64_t(std::uint64_t)>;

  NondecreasingFn(std::string id, Rule rule, bool bounded = false);

  // Throws kInvalidArgument when the rule decreases on the queried range.
  std::uint64_t operator()(std::uint64_t n) const;
  // min{n : h(n) >= k}; kInvalidArgument if no such n below 2^62.
  std::uint64_t inverse(std::uint64_t k) const;

  const std::string& id() const { return id_; }
  // Declared bounded (degenerate for the constructions).
  bool bounded() const { return bounded_; }

  static NondecreasingFn identity();
  static NondecreasingFn half();       // floor(n / 2)
  static NondecreasingFn sqrt_ceil();  // ceil(sqrt(n))
  static NondecreasingFn log2_ceil();  // ceil(log2(n + 2))
  static NondecreasingFn constant(std::uint64_t c);
  // "identity", "half", "sqrt", "log", "const:<c>", "dual:<name>".
  static NondecreasingFn by_name(std::string_view name);

 private:
  struct Memo {
    std::mutex mu;
    std::map<std::uint64_t, std::uint64_t> values;
  };
  std::string id_;
  Rule rule_;
  bool bounded_;
  std::shared_ptr<Memo> memo_;
};

// h(n) = ceil(log2(h'(n) + 2)); constant h' gives a constant (bounded) h.
NondecreasingFn dual_compose(const NondecreasingFn& h_prime);

// Oracle access: bit i of the oracle, or nullopt past its known prefix. A
// machine that needs a missing bit does not halt.
using Oracle = std::function<std::optional<bool>(std::uint64_t)>;
Oracle oracle_of(const BitString& prefix);
Oracle oracle_of(const SequenceSource& src);

struct OracleResult {
  std::uint64_t value = 0;
  std::uint64_t steps = 0;
  std::uint64_t use = 0;  // length of the oracle prefix read

  friend bool operator==(const OracleResult&, const OracleResult&) = default;
};

// Phi^X(k) under a declared step convention. run() returns nullopt when the
// computation does not halt within `budget` steps (or blocks on the oracle).
struct OracleMachine {
  std::string id;
  std::string step_convention;
  std::function<std::optional<OracleResult>(const Oracle&, std::uint64_t k, std::uint64_t budget)>
      run;
};

// Oracle-free: value h^-1(k) after one step.
OracleMachine immediate_machine(const NondecreasingFn& h);
// Oracle-free: value h^-1(k) after a*k + b steps.
OracleMachine linear_delay_machine(const NondecreasingFn& h, std::uint64_t a, std::uint64_t b);
// Reads oracle bits 0..2k-1 (one step each) and compares them with `key`;
// answers in one more step with h^-1(k) on a match and h^-1(k) + 1 otherwise.
OracleMachine oracle_reading_machine(const NondecreasingFn& h, const SequenceSource& key);
// Reports max over j in [1, k] of the steps of Phi(j): the running-max
// padding that makes t nondecreasing. Value and use are those of Phi(k)
// (use is the max over the runs).
OracleMachine pad_monotone(const OracleMachine& phi);

// Truncating the oracle to the reported use leaves value and steps intact.
bool use_sound(const OracleMachine& phi, const Oracle& oracle, std::uint64_t k,
               std::uint64_t budget);

// Insertions are numbered from 1: the k-th zero goes to position
// n_k = h^-1(k) + t(k), t the running max of Phi's step counts.
struct InsertionSchedule {
  std::vector<std::uint64_t> positions;  // positions[k - 1] = n_k
  std::vector<std::uint64_t> t;          // adjusted t(k)
  std::string h_id;
  std::string phi_id;
  std::string alpha_id;
  std::string step_convention;
  bool adjusted = false;      // the running max changed some t(k)
  std::vector<bool> unstable;  // settling schedules only

  // Insertions at positions < n.
  std::uint64_t count_below(std::uint64_t n) const;
  std::string serialize() const;
};

// K insertions. Throws kOracleDisagreement when Phi^alpha(k) does not
// return h^-1(k) within `budget`, kNonIncreasingSchedule when n_{k+1} <= n_k.
InsertionSchedule build_schedule(const NondecreasingFn& h, const OracleMachine& phi,
                                 const SequenceSource& alpha, std::uint64_t K,
                                 std::uint64_t budget = std::uint64_t{1} << 32);

// beta|N: 0 at scheduled positions, the next unread alpha bit elsewhere.
BitString insert_zeros(const SequenceSource& alpha, const InsertionSchedule& schedule,
                       std::uint64_t N);
// Inverse of insert_zeros on a prefix: drop the scheduled positions.
BitString delete_positions(const BitString& beta, const InsertionSchedule& schedule);
SequenceSource beta_source(const SequenceSource& alpha, const InsertionSchedule& schedule,
                           std::uint64_t N);

struct SelectionStage {
  std::uint64_t k = 0;  // bits selected before this stage
  std::uint64_t x = 0;  // bits read before this stage
};

struct SelectionTrace {
  std::string phi_id;
  std::string step_convention;
  std::string source_id;
  std::vector<SelectionStage> stages;  // n = 0..N
  std::vector<std::uint64_t> selected;
  BitString selected_bits;
  BitString read;  // x_N

  std::string serialize() const;
};

// The staged rule: at stage n run Phi with oracle x_n on input k_n + 1 with
// budget n; select bit n iff it halts in s steps with value + s == n.
SelectionTrace selection_rule_S(const SequenceSource& xi, const OracleMachine& phi,
                                std::uint64_t N);

struct BiasReport {
  std::uint64_t zeros = 0;
  std::uint64_t ones = 0;
  bool no_selection = true;
  std::uint64_t scanned = 0;
  std::string frequency_of_ones;  // "a/b", or "none"

  CsvTable csv(const SelectionTrace& trace) const;
};
BiasReport bias_report(const SelectionTrace& trace);

// c(n) = n - h(n) - K_s(beta|n), running max.
DeficiencyReport complexity_consistency(const SequenceSource& beta, const Enumeration& table,
                                        const NondecreasingFn& h, std::uint64_t N);

// max over n <= N of (#insertions below n) - h(n).
std::int64_t schedule_slack(const InsertionSchedule& schedule, const NondecreasingFn& h,
                            std::uint64_t N);

// t_s(n): least stage s' <= s with Omega_s' agreeing with Omega_s on n
// bits, for n = 1..N. Positions n_k = t_s(k) + k; all flagged unstable.
// Bits beyond the current precision (n > s) are absent.
struct SettlingSchedule {
  std::uint64_t watermark = 0;
  std::vector<std::uint64_t> settle;  // settle[n - 1] = t_s(n)
  InsertionSchedule schedule;
  std::uint64_t absent = 0;           // requested bits beyond the precision
};
SettlingSchedule settling_schedule(const Enumeration& table, std::uint64_t N);

}  // namespace ait
