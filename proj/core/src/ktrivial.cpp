#include "ait/ktrivial.hpp"

#include <sstream>

#include "ait/encodings.hpp"
#include "ait/errors.hpp"
#include "ait/kraft_chaitin.hpp"

namespace ait {

ComplexityEventStream::ComplexityEventStream(std::vector<ComplexityEvent> events)
    : events_(std::move(events)) {
  std::unordered_map<BitString, std::uint64_t> last;
  std::uint64_t stage = 0;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const ComplexityEvent& e = events_[i];
    if (e.stage < stage) {
      throw Error(ErrorKind::kInvalidStream, "event " + std::to_string(i) + " goes back to stage " +
                                                 std::to_string(e.stage));
    }
    stage = e.stage;
    auto [it, fresh] = last.emplace(e.x, e.value);
    if (!fresh) {
      if (e.value >= it->second) {
        throw Error(ErrorKind::kInvalidStream,
                    "event " + std::to_string(i) + ": K_s(" + e.x.display() + ") goes from " +
                        std::to_string(it->second) + " to " + std::to_string(e.value));
      }
      it->second = e.value;
    }
  }
}

ComplexityEventStream ComplexityEventStream::from_enumeration(const Enumeration& table) {
  std::vector<ComplexityEvent> out;
  std::unordered_map<BitString, std::uint64_t> best;
  for (const HaltEvent& ev : table.events()) {
    if (ev.mode != Mode::kPrefix) continue;
    auto it = best.find(ev.x);
    if (it != best.end() && it->second <= ev.p.size()) continue;
    best[ev.x] = ev.p.size();
    out.push_back({ev.stage, ev.x, ev.p.size(), ev.p, ev.t});
  }
  return ComplexityEventStream(std::move(out));
}

bool RequestLedger::insert(LedgerPair pair) {
  if (!seen_.emplace(pair.w, pair.k).second) return false;
  ++counters_[{pair.n, pair.k}];
  pairs_.push_back(std::move(pair));
  return true;
}

bool RequestLedger::contains(const BitString& w, std::uint64_t k) const {
  return seen_.count({w, k}) != 0;
}

std::uint64_t RequestLedger::count(std::uint64_t n, std::uint64_t k) const {
  auto it = counters_.find({n, k});
  return it == counters_.end() ? 0 : it->second;
}

std::string RequestLedger::serialize(const std::string& header) const {
  std::string out = "# ait-ktriv-ledger v1";
  if (!header.empty()) out += " " + header;
  out += "\n";
  for (const LedgerPair& p : pairs_) {
    out += std::to_string(p.n) + " " + std::to_string(p.k) + " " + p.w.str() + " " +
           std::to_string(p.stage) + "\n";
  }
  return out;
}

RequestLedger RequestLedger::parse(std::string_view text) {
  RequestLedger l;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    // Fields are single-space separated; w may be empty.
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      const std::size_t sp = line.find(' ', start);
      f.push_back(line.substr(start, sp == std::string::npos ? std::string::npos : sp - start));
      if (sp == std::string::npos) break;
      start = sp + 1;
    }
    try {
      if (f.size() != 4) throw Error(ErrorKind::kCorruptLedger, "expected 4 fields");
      l.insert({std::stoull(f[0]), std::stoull(f[1]), BitString(f[2]), std::stoull(f[3])});
    } catch (const std::exception& e) {
      throw Error(ErrorKind::kCorruptLedger, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return l;
}

Dyadic ledger_weight(const RequestLedger& ledger) {
  Dyadic sum;
  for (const LedgerPair& p : ledger.pairs()) sum += Dyadic::inverse_pow2(p.k);
  return sum;
}

std::function<std::uint64_t(const Natural&)> witness_length_g() {
  return [](const Natural& m) -> std::uint64_t { return triple_decode(m).p.size(); };
}

namespace {

struct Runner {
  const StrategyConfig& cfg;
  StrategyResult& res;
  // Current K_s and the strings of each length in order of appearance.
  std::unordered_map<BitString, std::uint64_t> value;
  std::map<std::uint64_t, std::vector<BitString>> by_length;
  // Candidates already considered under the current assumption, per n.
  std::map<std::uint64_t, std::unordered_set<BitString>> processed;

  void offer(std::uint64_t n, const BitString& w, std::uint64_t stage) {
    StrategyState& st = res.states[n];
    if (st.capped || !st.value || w.size() < n) return;
    if (!processed[n].insert(w).second) return;
    const BitString head = w.prefix(n);
    if (res.ledger.contains(head, *st.value)) return;
    if (st.emitted == cfg.d) {
      // A (d+1)-th pair asks to enter: the assumption is wrong.
      st.capped = true;
      ++st.cap_hits;
      return;
    }
    res.ledger.insert({n, *st.value, head, stage});
    ++st.emitted;
    ++st.total_emitted;
  }

  bool is_candidate(const StrategyState& st, const BitString& w) const {
    return st.value && Natural(w.size()) == st.target_length && value.at(w) <= st.bound;
  }

  void adopt(std::uint64_t n, const ComplexityEvent& e) {
    StrategyState& st = res.states[n];
    if (st.value) ++st.restarts;
    st.value = e.value;
    st.witness = triple_code(e.x, e.p, e.t);
    st.target_length =
        cfg.output_len_index ? Natural(lex_string(st.witness).size()) : st.witness;
    st.bound = cfg.g(st.witness) + cfg.c;
    st.emitted = 0;
    st.capped = false;
    processed[n].clear();
    if (st.target_length > Natural(UINT64_MAX)) return;
    auto it = by_length.find(static_cast<std::uint64_t>(st.target_length));
    if (it == by_length.end()) return;
    for (const BitString& w : it->second) {
      if (is_candidate(st, w)) offer(n, w, e.stage);
    }
  }

  void consume(const ComplexityEvent& e) {
    auto [it, fresh] = value.emplace(e.x, e.value);
    if (fresh) {
      by_length[e.x.size()].push_back(e.x);
    } else {
      it->second = e.value;
    }
    if (e.x.size() < 64) {
      const Natural idx = lex_index(e.x);
      if (idx <= cfg.n_max) adopt(static_cast<std::uint64_t>(idx), e);
    }
    for (auto& [n, st] : res.states) {
      if (is_candidate(st, e.x)) offer(n, e.x, e.stage);
    }
  }
};

}  // namespace

StrategyResult run_strategy(const ComplexityEventStream& stream, const SequenceSource& alpha,
                            const StrategyConfig& config) {
  if (config.d == 0) throw Error(ErrorKind::kInvalidArgument, "d must be at least 1");
  if (!config.g) throw Error(ErrorKind::kInvalidArgument, "no bound function g");
  StrategyResult res;
  res.alpha_id = alpha.id();
  res.config = config;
  Runner r{config, res, {}, {}, {}};
  for (const ComplexityEvent& e : stream.events()) r.consume(e);
  for (std::uint64_t n = 0; n <= config.n_max; ++n) {
    CoverageRow row;
    row.n = n;
    auto it = res.states.find(n);
    if (it != res.states.end()) row.value = it->second.value;
    if (row.value) row.covered = res.ledger.contains(alpha.prefix(n), *row.value);
    res.coverage.push_back(row);
  }
  return res;
}

CsvTable StrategyResult::summary() const {
  CsvTable t({"n", "K_s", "restarts", "emitted", "cap_hits", "covered"});
  t.provenance("alpha", alpha_id);
  t.provenance("c", std::to_string(config.c));
  t.provenance("d", std::to_string(config.d));
  t.provenance("n_max", std::to_string(config.n_max));
  t.provenance("output_len_index", config.output_len_index ? "1" : "0");
  t.provenance("pairs", std::to_string(ledger.size()));
  t.provenance("weight", ledger_weight(ledger).to_string());
  for (const CoverageRow& row : coverage) {
    const auto it = states.find(row.n);
    const StrategyState st = it == states.end() ? StrategyState{} : it->second;
    t.row({std::to_string(row.n), cell(row.value), std::to_string(st.restarts),
           std::to_string(st.total_emitted), std::to_string(st.cap_hits),
           row.covered ? "1" : "0"});
  }
  return t;
}

CodeTree compile_ledger(const RequestLedger& ledger, std::uint64_t e) {
  const Dyadic w = ledger_weight(ledger);
  if (w > Dyadic(Natural(1) << e)) {
    throw Error(ErrorKind::kInsufficientBudget,
                "ledger weight " + w.to_string() + " exceeds 2^" + std::to_string(e));
  }
  KraftChaitinAllocator alloc;
  for (const LedgerPair& p : ledger.pairs()) alloc.request(p.k + e, lex_index(p.w));
  return alloc.tree();
}

}  // namespace ait
