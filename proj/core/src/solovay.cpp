#include "ait/solovay.hpp"

#include "ait/encodings.hpp"
#include "ait/errors.hpp"
#include "ait/machine.hpp"
#include "ait/programs.hpp"

namespace ait {

std::uint64_t solovay_fallback(const BitString& x, const BitString& p, const Natural& t) {
  // ceil(2 log2(t+2)) = ceil(log2((t+2)^2)) = bit_length((t+2)^2 - 1)
  const Natural sq = (t + 2) * (t + 2);
  return 2 * x.size() + 2 * p.size() + bit_length(sq - 1);
}

std::uint64_t f_solovay(const MachineProfile& profile, const Natural& m) {
  const Triple tr = triple_decode(m);
  if (tr.t > 0 && tr.t <= UINT64_MAX) {
    const auto budget = static_cast<std::uint64_t>(tr.t);
    const RunOutcome r = run_prefix(profile, tr.p.digits(), budget);
    const Halted* h = as_halted(r);
    if (h != nullptr && h->output == tr.x && h->consumed == tr.p.size() && h->steps == budget) {
      return tr.p.size();
    }
  }
  return solovay_fallback(tr.x, tr.p, tr.t);
}

UpperBoundFunction solovay_function(const MachineProfile& profile) {
  return {"solovay", [profile](std::uint64_t m) { return f_solovay(profile, Natural(m)); }};
}

GapReport gap_table(const UpperBoundFunction& f, const Enumeration& table, std::uint64_t M) {
  GapReport report{f.id(), table.watermark(), table.profile().fingerprint(), {}, 0};
  std::optional<std::int64_t> running;
  for (std::uint64_t m = 0; m <= M; ++m) {
    GapRow row;
    row.m = m;
    row.f = f(m);
    row.K = table.K(lex_string(m));
    if (row.K) {
      row.gap = static_cast<std::int64_t>(row.f) - static_cast<std::int64_t>(*row.K);
      if (!running || *row.gap < *running) running = row.gap;
    } else {
      ++report.undiscovered;
    }
    row.running_min = running;
    report.rows.push_back(row);
  }
  return report;
}

UpperBoundFunction shift_and_patch(const UpperBoundFunction& f, std::int64_t c, std::uint64_t n0,
                                   const Enumeration& table) {
  std::vector<std::uint64_t> patch;
  for (std::uint64_t n = 0; n < n0; ++n) {
    const auto k = table.K(lex_string(n));
    if (!k) {
      throw Error(ErrorKind::kUndiscoveredPrefix,
                  "K_s(" + lex_string(n).display() + ") is undiscovered at stage " +
                      std::to_string(table.watermark()));
    }
    patch.push_back(*k);
  }
  const std::string id = f.id() + "-shift(" + std::to_string(c) + ")@" + std::to_string(n0);
  return {id, [f, c, patch = std::move(patch)](std::uint64_t n) -> std::uint64_t {
            if (n < patch.size()) return patch[n];
            const std::int64_t v = static_cast<std::int64_t>(f(n)) - c;
            return v < 0 ? 0 : static_cast<std::uint64_t>(v);
          }};
}

std::uint64_t count_violations(const UpperBoundFunction& f, const Enumeration& table,
                               std::uint64_t M) {
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m <= M; ++m) {
    const auto k = table.K(lex_string(m));
    if (k && f(m) < *k) ++count;
  }
  return count;
}

StringRule berry_rule() {
  return {"2|x|+2", [](const BitString& x) { return berry_f(x); }, true};
}

BitString berry_x(const StringRule& f, const Natural& n, std::uint64_t budget) {
  std::uint64_t examined = 0;
  for (std::size_t len = 0;; ++len) {
    const std::uint64_t count = len >= 63 ? UINT64_MAX : (std::uint64_t{1} << len);
    for (std::uint64_t v = 0; v < count; ++v) {
      if (examined++ == budget) {
        throw Error(ErrorKind::kSearchBudgetExceeded,
                    "no x with f(x) >= " + to_string(n) + " among the first " + std::to_string(budget));
      }
      const BitString x = BitString::from_uint(v, len);
      if (f.f(x) >= n) return x;
      // Every string of this length has the same value.
      if (f.length_only) break;
    }
  }
}

BitString berry_program(const BitString& f_bytecode, const Natural& n) {
  return search_ge_program(f_bytecode, n);
}

std::vector<BerryRow> ratio_table(const MachineProfile& profile, const StringRule& f,
                                  const BitString& f_bytecode, const std::vector<Natural>& ns,
                                  const Enumeration* table, std::uint64_t budget) {
  std::vector<BerryRow> rows;
  for (const Natural& n : ns) {
    BerryRow row;
    row.n = n;
    row.x = berry_x(f, n);
    row.fx = f.f(row.x);
    const BitString prog = berry_program(f_bytecode, n);
    row.bound = prog.size();
    const RunOutcome r = run_prefix(profile, prog, budget);
    const Halted* h = as_halted(r);
    if (h == nullptr || h->output != row.x || h->consumed != prog.size()) {
      throw Error(ErrorKind::kOracleDisagreement,
                  "berry program for n=" + to_string(n) + " gave " + describe(r) + ", host search gave " +
                      row.x.display());
    }
    row.steps = h->steps;
    const BitString data = gamma_encode(lex_index(row.x) + 1);
    const Halted* fv = nullptr;
    const RunOutcome fr = run_bytecode_plain(profile, f_bytecode.digits(), data.digits(), budget);
    fv = as_halted(fr);
    if (fv == nullptr || lex_index(fv->output) != row.fx) {
      throw Error(ErrorKind::kOracleDisagreement, "host rule and F disagree on " + row.x.display());
    }
    if (table) row.C = table->C(row.x);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ait
