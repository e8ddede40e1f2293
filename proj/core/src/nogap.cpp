#include "ait/nogap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "ait/errors.hpp"

namespace ait {

NondecreasingFn::NondecreasingFn(std::string id, Rule rule, bool bounded)
    : id_(std::move(id)), rule_(std::move(rule)), bounded_(bounded), memo_(std::make_shared<Memo>()) {}

std::uint64_t NondecreasingFn::operator()(std::uint64_t n) const {
  std::lock_guard lock(memo_->mu);
  auto& values = memo_->values;
  if (auto it = values.find(n); it != values.end()) return it->second;
  const std::uint64_t v = rule_(n);
  auto it = values.emplace(n, v).first;
  const bool below_ok = it == values.begin() || std::prev(it)->second <= v;
  const bool above_ok = std::next(it) == values.end() || std::next(it)->second >= v;
  if (!below_ok || !above_ok) {
    values.erase(it);
    throw Error(ErrorKind::kInvalidArgument, id_ + " decreases near n=" + std::to_string(n));
  }
  return v;
}

std::uint64_t NondecreasingFn::inverse(std::uint64_t k) const {
  if ((*this)(0) >= k) return 0;
  std::uint64_t hi = 1;
  while ((*this)(hi) < k) {
    if (hi >= (std::uint64_t{1} << 62)) {
      throw Error(ErrorKind::kInvalidArgument, id_ + " never reaches " + std::to_string(k));
    }
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // h(lo) < k <= h(hi)
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    ((*this)(mid) >= k ? hi : lo) = mid;
  }
  return hi;
}

NondecreasingFn NondecreasingFn::identity() {
  return {"identity", [](std::uint64_t n) { return n; }};
}

NondecreasingFn NondecreasingFn::half() {
  return {"half", [](std::uint64_t n) { return n / 2; }};
}

NondecreasingFn NondecreasingFn::sqrt_ceil() {
  return {"sqrt", [](std::uint64_t n) {
            auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
            while (r * r > n) --r;
            while ((r + 1) * (r + 1) <= n) ++r;
            return r * r == n ? r : r + 1;
          }};
}

NondecreasingFn NondecreasingFn::log2_ceil() {
  // ceil(log2(n + 2)) = bit_width(n + 1)
  return {"log", [](std::uint64_t n) { return static_cast<std::uint64_t>(std::bit_width(n + 1)); }};
}

NondecreasingFn NondecreasingFn::constant(std::uint64_t c) {
  return {"const:" + std::to_string(c), [c](std::uint64_t) { return c; }, true};
}

NondecreasingFn NondecreasingFn::by_name(std::string_view name) {
  if (name == "identity") return identity();
  if (name == "half") return half();
  if (name == "sqrt") return sqrt_ceil();
  if (name == "log") return log2_ceil();
  if (name.rfind("const:", 0) == 0) return constant(std::stoull(std::string(name.substr(6))));
  if (name.rfind("dual:", 0) == 0) return dual_compose(by_name(name.substr(5)));
  throw Error(ErrorKind::kInvalidArgument, "unknown h '" + std::string(name) + "'");
}

NondecreasingFn dual_compose(const NondecreasingFn& h_prime) {
  return {"dual(" + h_prime.id() + ")",
          [h_prime](std::uint64_t n) {
            return static_cast<std::uint64_t>(std::bit_width(h_prime(n) + 1));
          },
          h_prime.bounded()};
}

Oracle oracle_of(const BitString& prefix) {
  return [prefix](std::uint64_t i) -> std::optional<bool> {
    if (i >= prefix.size()) return std::nullopt;
    return prefix[i];
  };
}

Oracle oracle_of(const SequenceSource& src) {
  return [src](std::uint64_t i) -> std::optional<bool> {
    if (src.length() && i >= *src.length()) return std::nullopt;
    return src.bit(i);
  };
}

OracleMachine immediate_machine(const NondecreasingFn& h) {
  return {"immediate[" + h.id() + "]", "one step per answer",
          [h](const Oracle&, std::uint64_t k, std::uint64_t budget) -> std::optional<OracleResult> {
            if (budget < 1) return std::nullopt;
            return OracleResult{h.inverse(k), 1, 0};
          }};
}

OracleMachine linear_delay_machine(const NondecreasingFn& h, std::uint64_t a, std::uint64_t b) {
  return {"linear[" + h.id() + "," + std::to_string(a) + "k+" + std::to_string(b) + "]",
          "idle steps then one answer step; total a*k+b",
          [h, a, b](const Oracle&, std::uint64_t k, std::uint64_t budget)
              -> std::optional<OracleResult> {
            const std::uint64_t t = a * k + b;
            if (t > budget) return std::nullopt;
            return OracleResult{h.inverse(k), t, 0};
          }};
}

OracleMachine oracle_reading_machine(const NondecreasingFn& h, const SequenceSource& key) {
  return {"reading[" + h.id() + "," + key.id() + "]", "one step per oracle bit, one answer step",
          [h, key](const Oracle& oracle, std::uint64_t k, std::uint64_t budget)
              -> std::optional<OracleResult> {
            const std::uint64_t reads = 2 * k;
            if (reads + 1 > budget) return std::nullopt;
            bool match = true;
            for (std::uint64_t i = 0; i < reads; ++i) {
              const auto b = oracle(i);
              if (!b) return std::nullopt;
              match = match && *b == key.bit(i);
            }
            return OracleResult{h.inverse(k) + (match ? 0 : 1), reads + 1, reads};
          }};
}

OracleMachine pad_monotone(const OracleMachine& phi) {
  return {"padded[" + phi.id + "]", "running max over inputs 1..k of: " + phi.step_convention,
          [phi](const Oracle& oracle, std::uint64_t k, std::uint64_t budget)
              -> std::optional<OracleResult> {
            std::optional<OracleResult> out;
            std::uint64_t steps = 0;
            std::uint64_t use = 0;
            for (std::uint64_t j = 1; j <= k; ++j) {
              out = phi.run(oracle, j, budget);
              if (!out) return std::nullopt;
              steps = std::max(steps, out->steps);
              use = std::max(use, out->use);
            }
            if (!out) out = phi.run(oracle, k, budget);
            if (!out) return std::nullopt;
            out->steps = std::max(steps, out->steps);
            out->use = std::max(use, out->use);
            return out;
          }};
}

bool use_sound(const OracleMachine& phi, const Oracle& oracle, std::uint64_t k,
               std::uint64_t budget) {
  const auto full = phi.run(oracle, k, budget);
  if (!full) return true;
  const std::uint64_t use = full->use;
  const Oracle truncated = [&oracle, use](std::uint64_t i) -> std::optional<bool> {
    if (i >= use) return std::nullopt;
    return oracle(i);
  };
  const auto cut = phi.run(truncated, k, budget);
  return cut && *cut == *full;
}

std::uint64_t InsertionSchedule::count_below(std::uint64_t n) const {
  return static_cast<std::uint64_t>(std::lower_bound(positions.begin(), positions.end(), n) -
                                    positions.begin());
}

std::string InsertionSchedule::serialize() const {
  std::string out = "# schedule h=" + h_id + " phi=" + phi_id + " alpha=" + alpha_id +
                    " steps=\"" + step_convention + "\" adjusted=" + (adjusted ? "1" : "0") + "\n";
  for (std::size_t i = 0; i < positions.size(); ++i) {
    out += std::to_string(i + 1) + " " + std::to_string(positions[i]) + " " +
           std::to_string(t[i]);
    if (!unstable.empty()) out += unstable[i] ? " unstable" : " stable";
    out += "\n";
  }
  return out;
}

InsertionSchedule build_schedule(const NondecreasingFn& h, const OracleMachine& phi,
                                 const SequenceSource& alpha, std::uint64_t K,
                                 std::uint64_t budget) {
  InsertionSchedule s;
  s.h_id = h.id();
  s.phi_id = phi.id;
  s.alpha_id = alpha.id();
  s.step_convention = phi.step_convention;
  const Oracle oracle = oracle_of(alpha);
  std::uint64_t t = 0;
  for (std::uint64_t k = 1; k <= K; ++k) {
    const std::uint64_t expect = h.inverse(k);
    const auto r = phi.run(oracle, k, budget);
    if (!r || r->value != expect) {
      throw Error(ErrorKind::kOracleDisagreement,
                  phi.id + " on input " + std::to_string(k) + " gave " +
                      (r ? std::to_string(r->value) : std::string("no answer")) + ", h^-1 is " +
                      std::to_string(expect));
    }
    if (r->steps < t) s.adjusted = true;
    t = std::max(t, r->steps);
    const std::uint64_t pos = expect + t;
    if (!s.positions.empty() && pos <= s.positions.back()) {
      throw Error(ErrorKind::kNonIncreasingSchedule,
                  "n_" + std::to_string(k) + " = " + std::to_string(pos) + " <= n_" +
                      std::to_string(k - 1) + " = " + std::to_string(s.positions.back()));
    }
    s.positions.push_back(pos);
    s.t.push_back(t);
  }
  return s;
}

BitString insert_zeros(const SequenceSource& alpha, const InsertionSchedule& schedule,
                       std::uint64_t N) {
  const BitString a = alpha.prefix(N - schedule.count_below(N));
  BitString beta;
  std::size_t next = 0;
  std::uint64_t read = 0;
  for (std::uint64_t j = 0; j < N; ++j) {
    if (next < schedule.positions.size() && schedule.positions[next] == j) {
      beta.push_back(false);
      ++next;
    } else {
      beta.push_back(a[read++]);
    }
  }
  return beta;
}

BitString delete_positions(const BitString& beta, const InsertionSchedule& schedule) {
  BitString out;
  std::size_t next = 0;
  for (std::uint64_t j = 0; j < beta.size(); ++j) {
    if (next < schedule.positions.size() && schedule.positions[next] == j) {
      ++next;
      continue;
    }
    out.push_back(beta[j]);
  }
  return out;
}

SequenceSource beta_source(const SequenceSource& alpha, const InsertionSchedule& schedule,
                           std::uint64_t N) {
  return SequenceSource::literal("beta[" + alpha.id() + "," + schedule.h_id + "," +
                                     schedule.phi_id + "]",
                                 insert_zeros(alpha, schedule, N));
}

std::string SelectionTrace::serialize() const {
  std::string out = "# trace phi=" + phi_id + " steps=\"" + step_convention +
                    "\" source=" + source_id + "\n";
  std::size_t next = 0;
  for (std::size_t n = 0; n + 1 < stages.size(); ++n) {
    const bool sel = next < selected.size() && selected[next] == n;
    out += std::to_string(n) + " " + std::to_string(stages[n].k) + " " +
           std::to_string(stages[n].x) + " " + (sel ? "select" : "read") + "\n";
    if (sel) ++next;
  }
  return out;
}

SelectionTrace selection_rule_S(const SequenceSource& xi, const OracleMachine& phi,
                                std::uint64_t N) {
  SelectionTrace tr;
  tr.phi_id = phi.id;
  tr.step_convention = phi.step_convention;
  tr.source_id = xi.id();
  const BitString bits = xi.prefix(N);
  const BitString& x = tr.read;
  const Oracle oracle = [&x](std::uint64_t i) -> std::optional<bool> {
    if (i >= x.size()) return std::nullopt;
    return x[i];
  };
  std::uint64_t k = 0;
  for (std::uint64_t n = 0; n < N; ++n) {
    tr.stages.push_back({k, static_cast<std::uint64_t>(tr.read.size())});
    const auto r = phi.run(oracle, k + 1, n);
    if (r && r->value + r->steps == n) {
      tr.selected.push_back(n);
      tr.selected_bits.push_back(bits[n]);
      ++k;
    } else {
      tr.read.push_back(bits[n]);
    }
  }
  tr.stages.push_back({k, static_cast<std::uint64_t>(tr.read.size())});
  return tr;
}

BiasReport bias_report(const SelectionTrace& trace) {
  BiasReport b;
  for (std::size_t i = 0; i < trace.selected_bits.size(); ++i) {
    (trace.selected_bits[i] ? b.ones : b.zeros) += 1;
  }
  b.no_selection = trace.selected.empty();
  b.scanned = trace.stages.empty() ? 0 : trace.stages.size() - 1;
  b.frequency_of_ones =
      b.no_selection ? "none" : std::to_string(b.ones) + "/" + std::to_string(b.ones + b.zeros);
  return b;
}

CsvTable BiasReport::csv(const SelectionTrace& trace) const {
  CsvTable t({"scanned", "selected", "zeros", "ones", "frequency_of_ones", "no_selection"});
  t.provenance("phi", trace.phi_id);
  t.provenance("steps", trace.step_convention);
  t.provenance("source", trace.source_id);
  t.row({std::to_string(scanned), std::to_string(zeros + ones), std::to_string(zeros),
         std::to_string(ones), frequency_of_ones, no_selection ? "1" : "0"});
  return t;
}

DeficiencyReport complexity_consistency(const SequenceSource& beta, const Enumeration& table,
                                        const NondecreasingFn& h, std::uint64_t N) {
  return make_report("nogap_consistency[" + h.id() + "]", beta, Direction::kLowerBound, true,
                     &table, N,
                     [&](std::uint64_t n, const BitString& x) -> std::optional<std::int64_t> {
                       const auto k = table.K(x);
                       if (!k) return std::nullopt;
                       return static_cast<std::int64_t>(n) - static_cast<std::int64_t>(h(n)) -
                              static_cast<std::int64_t>(*k);
                     });
}

std::int64_t schedule_slack(const InsertionSchedule& schedule, const NondecreasingFn& h,
                            std::uint64_t N) {
  std::int64_t worst = INT64_MIN;
  for (std::uint64_t n = 0; n <= N; ++n) {
    worst = std::max(worst, static_cast<std::int64_t>(schedule.count_below(n)) -
                                static_cast<std::int64_t>(h(n)));
  }
  return worst;
}

SettlingSchedule settling_schedule(const Enumeration& table, std::uint64_t N) {
  SettlingSchedule out;
  const std::uint64_t s = table.watermark();
  out.watermark = s;
  out.schedule.h_id = "identity";
  out.schedule.phi_id = "settling@" + std::to_string(s);
  out.schedule.alpha_id = "omega@" + std::to_string(s);
  out.schedule.step_convention = "stages";
  std::vector<Dyadic> omegas;
  for (std::uint64_t st = 0; st <= s; ++st) omegas.push_back(table.omega_at(st));
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (n > s) {
      ++out.absent;
      continue;
    }
    const Natural final_bits = omegas[s].floor_scaled(n);
    std::uint64_t t = 0;
    while (omegas[t].floor_scaled(n) != final_bits) ++t;
    out.settle.push_back(t);
    out.schedule.positions.push_back(t + n);
    out.schedule.t.push_back(t);
    out.schedule.unstable.push_back(true);
  }
  return out;
}

}  // namespace ait
