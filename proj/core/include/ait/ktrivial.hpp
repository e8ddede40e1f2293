#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ait/bits.hpp"
#include "ait/code_tree.hpp"
#include "ait/enumerator.hpp"
#include "ait/monitors.hpp"
#include "ait/natural.hpp"
#include "ait/report.hpp"

namespace ait {

// K_s(x) dropped to `value` at `stage`, witnessed by a program p running t
// steps. Per x the values of successive events strictly decrease.
struct ComplexityEvent {
  std::uint64_t stage = 0;
  BitString x;
  std::uint64_t value = 0;
  BitString p;
  std::uint64_t t = 0;
};

class ComplexityEventStream {
 public:
  ComplexityEventStream() = default;
  // Throws kInvalidStream on a stage going backwards or a non-decreasing
  // value for some x.
  explicit ComplexityEventStream(std::vector<ComplexityEvent> events);

  // Every improvement of K_s in enumeration order.
  static ComplexityEventStream from_enumeration(const Enumeration& table);

  const std::vector<ComplexityEvent>& events() const { return events_; }

 private:
  std::vector<ComplexityEvent> events_;
};

struct LedgerPair {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  BitString w;
  std::uint64_t stage = 0;
};

// The c.e. request set: pairs (w, k) without repetition, in emission order.
class RequestLedger {
 public:
  // False when (w, k) is already present.
  bool insert(LedgerPair pair);
  bool contains(const BitString& w, std::uint64_t k) const;
  std::uint64_t count(std::uint64_t n, std::uint64_t k) const;
  const std::vector<LedgerPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  // Lines "n k w stage" after a header comment.
  std::string serialize(const std::string& header = "") const;
  static RequestLedger parse(std::string_view text);

 private:
  std::vector<LedgerPair> pairs_;
  std::set<std::pair<BitString, std::uint64_t>> seen_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> counters_;
};

// Exact sum of 2^-k over the ledger.
Dyadic ledger_weight(const RequestLedger& ledger);

struct StrategyConfig {
  std::uint64_t c = 0;
  std::uint64_t d = 1;
  std::uint64_t n_max = 0;
  // Candidate length: m_s itself, or |lex_string(m_s)| when set.
  bool output_len_index = false;
  // The bound g on witnesses, g = f_solovay for live runs.
  std::function<std::uint64_t(const Natural&)> g;
};

// g(<x, p, t>) = |p|: what f_solovay returns on a genuine witness. Used with
// synthetic streams, whose programs are not run.
std::function<std::uint64_t(const Natural&)> witness_length_g();

struct StrategyState {
  std::optional<std::uint64_t> value;  // current assumption K_s(n)
  Natural witness;                     // m_s = <lex_string(n), p, t>
  Natural target_length;               // candidate length
  std::uint64_t bound = 0;             // g(m_s) + c
  std::uint64_t emitted = 0;           // pairs at this assumption
  bool capped = false;
  std::uint64_t restarts = 0;
  std::uint64_t cap_hits = 0;
  std::uint64_t total_emitted = 0;
};

struct CoverageRow {
  std::uint64_t n = 0;
  std::optional<std::uint64_t> value;
  bool covered = false;  // (alpha|n, value) in L
};

struct StrategyResult {
  RequestLedger ledger;
  std::map<std::uint64_t, StrategyState> states;
  std::vector<CoverageRow> coverage;
  std::string alpha_id;
  StrategyConfig config;

  CsvTable summary() const;
};

// Throws kInvalidArgument for d = 0.
StrategyResult run_strategy(const ComplexityEventStream& stream, const SequenceSource& alpha,
                            const StrategyConfig& config);

// Requests (k + e, lex_index(w)) in ledger order. Throws kInsufficientBudget
// when the weight exceeds 2^e.
CodeTree compile_ledger(const RequestLedger& ledger, std::uint64_t e);

}  // namespace ait
