#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ait/bits.hpp"
#include "ait/enumerator.hpp"
#include "ait/natural.hpp"
#include "ait/profile.hpp"
#include "ait/upper_bound.hpp"

namespace ait {

// f(m): decode m = <x, p, t>; if the prefix machine on p halts with output x
// after exactly t steps having read all of p, f(m) = |p|. Otherwise the
// fallback ceil(2|x| + 2|p| + 2 log2(t + 2)).
std::uint64_t f_solovay(const MachineProfile& profile, const Natural& m);
std::uint64_t solovay_fallback(const BitString& x, const BitString& p, const Natural& t);
UpperBoundFunction solovay_function(const MachineProfile& profile);

struct GapRow {
  std::uint64_t m = 0;
  std::uint64_t f = 0;
  std::optional<std::uint64_t> K;       // K_s(lex_string(m)); nullopt = undiscovered
  std::optional<std::int64_t> gap;      // f - K_s
  std::optional<std::int64_t> running_min;
};
struct GapReport {
  std::string function_id;
  std::uint64_t watermark = 0;
  std::string fingerprint;
  std::vector<GapRow> rows;
  std::uint64_t undiscovered = 0;
};
// Gaps under-estimate f - K because K_s >= K: a small running minimum is
// evidence of Solovayness, a large one refutes specific constants.
GapReport gap_table(const UpperBoundFunction& f, const Enumeration& table, std::uint64_t M);

// f'(n) = K_s(lex_string(n)) for n < n0 and max(f(n) - c, 0) for n >= n0.
// Throws kUndiscoveredPrefix if some n < n0 is undiscovered.
UpperBoundFunction shift_and_patch(const UpperBoundFunction& f, std::int64_t c, std::uint64_t n0,
                                   const Enumeration& table);
// #{m <= M : K_s(m) discovered and f(m) < K_s(m)}.
std::uint64_t count_violations(const UpperBoundFunction& f, const Enumeration& table,
                               std::uint64_t M);

// A host-side rule on strings, used by the Berry search.
struct StringRule {
  std::string id;
  std::function<Natural(const BitString&)> f;
  bool length_only = false;  // f depends on |x| only
};
StringRule berry_rule();  // 2|x| + 2

// Length-lex least x with f(x) >= n. Throws kSearchBudgetExceeded after
// `budget` candidates.
BitString berry_x(const StringRule& f, const Natural& n, std::uint64_t budget = 1U << 24);
// gamma(L) ++ [ESCAPE gamma(2)] ++ gamma(|F|) ++ F ++ gamma(n).
BitString berry_program(const BitString& f_bytecode, const Natural& n);

struct BerryRow {
  Natural n;
  BitString x;
  Natural fx;
  std::optional<std::uint64_t> C;  // C_s(x_n) when a table is supplied
  std::uint64_t bound = 0;         // |berry_program|
  std::uint64_t steps = 0;         // steps of the program on the machine
};
// Runs each berry_program on the machine and checks its output against the
// host search and the host rule against F (kOracleDisagreement otherwise).
std::vector<BerryRow> ratio_table(const MachineProfile& profile, const StringRule& f,
                                  const BitString& f_bytecode, const std::vector<Natural>& ns,
                                  const Enumeration* table = nullptr,
                                  std::uint64_t budget = std::uint64_t{1} << 40);

}  // namespace ait
