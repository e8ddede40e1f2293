// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// line is FAIL. Every check recomputes its expectation independently of the
// code under test where that is feasible.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "ait/encodings.hpp"
#include "ait/enumerator.hpp"
#include "ait/errors.hpp"
#include "ait/kraft_chaitin.hpp"
#include "ait/ktrivial.hpp"
#include "ait/nogap.hpp"
#include "ait/programs.hpp"
#include "ait/solovay.hpp"
#include "naive_machine.hpp"
#include "synthetic.hpp"

using namespace ait;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report line.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  Outcome done(std::string summary) const {
    if (failures_ == 0) return {true, std::move(summary)};
    std::string d = std::to_string(failures_) + " failure(s):";
    for (const std::string& n : notes_) d += " [" + n + "]";
    return {false, d + "; " + summary};
  }

 private:
  std::uint64_t failures_ = 0;
  std::vector<std::string> notes_;
};

const MachineProfile& standard() {
  static const MachineProfile p = MachineProfile::standard();
  return p;
}

std::uint64_t ceil_log2(std::uint64_t v) {
  std::uint64_t e = 0;
  while ((std::uint64_t{1} << e) < v) ++e;
  return e;
}

bool is_prefix(const std::string& a, const std::string& b) {
  return a.size() <= b.size() && b.compare(0, a.size(), a) == 0;
}

// 1. Prefix-free domain and Omega_s.
Outcome prefix_free_domain() {
  Check ck;
  const auto start = std::chrono::steady_clock::now();
  Enumeration e(standard());
  e.advance(22);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::vector<std::string> domain;
  Dyadic omega;
  for (const HaltEvent& ev : e.events()) {
    if (ev.mode != Mode::kPrefix) continue;
    domain.push_back(ev.p.str());
    omega += Dyadic::inverse_pow2(ev.p.size());
  }
  // In sorted order a prefix-comparable pair forces an adjacent one.
  std::sort(domain.begin(), domain.end());
  for (std::size_t i = 1; i < domain.size(); ++i) {
    ck.expect(!is_prefix(domain[i - 1], domain[i]), domain[i - 1] + " < " + domain[i]);
  }
  ck.expect(omega == e.omega(), "omega recount " + omega.to_string());
  ck.expect(Dyadic() < omega && omega < Dyadic(1), "omega_22 not in (0,1)");
  Dyadic prev;
  for (std::uint64_t s = 0; s <= 22; ++s) {
    const Dyadic w = e.omega_at(s);
    ck.expect(prev <= w, "omega decreases at stage " + std::to_string(s));
    prev = w;
  }
  ck.expect(secs <= 600, "runtime over 10 min");
  std::ostringstream d;
  d << domain.size() << " halting programs, omega_22 = " << e.omega().to_string() << ", "
    << static_cast<int>(secs * 1000) << " ms";
  return ck.done(d.str());
}

// 2. Allocator against exact weights (numerators over 2^8) and a pairwise
// antichain check.
Outcome kraft_chaitin_oracle() {
  Check ck;
  std::mt19937_64 rng(8128);
  std::uint64_t requests = 0;
  std::uint64_t refusals = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    KraftChaitinAllocator alloc;
    std::uint64_t used = 0;  // issued weight * 2^8
    std::vector<std::string> codes;
    const int len = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < len; ++i) {
      const std::uint64_t k = rng() % 9;
      const std::uint64_t w = std::uint64_t{1} << (8 - k);
      const bool permitted = used + w <= 256;
      bool issued = false;
      try {
        const BitString cw = alloc.request(k);
        issued = true;
        ck.expect(cw.size() == k, "codeword length");
        codes.push_back(cw.str());
      } catch (const Error& err) {
        ck.expect(err.kind() == ErrorKind::kInsufficientBudget, err.what());
      }
      ck.expect(issued == permitted, "trial " + std::to_string(trial) + " request " +
                                         std::to_string(i) + " k=" + std::to_string(k));
      if (issued) used += w;
      refusals += !issued;
      ++requests;
    }
    for (std::size_t a = 0; a < codes.size(); ++a) {
      for (std::size_t b = 0; b < codes.size(); ++b) {
        if (a != b) ck.expect(!is_prefix(codes[a], codes[b]), codes[a] + " < " + codes[b]);
      }
    }
  }
  return ck.done("1000 streams, " + std::to_string(requests) + " requests, " +
                 std::to_string(refusals) + " refused");
}

// 3. Solovay function: partial sum, exactness on witnesses, constructive
// upper bound.
Outcome solovay_construction() {
  Check ck;
  // (a) exact sum over a common denominator.
  const std::uint64_t M = 1000000;
  std::vector<std::uint64_t> fs(M + 1);
  std::uint64_t fmax = 0;
  for (std::uint64_t m = 0; m <= M; ++m) {
    fs[m] = f_solovay(standard(), Natural(m));
    fmax = std::max(fmax, fs[m]);
  }
  Natural num = 0;
  for (std::uint64_t f : fs) num += Natural(1) << (fmax - f);
  ck.expect(num < (Natural(8) << fmax), "partial sum >= 8");

  // (b), (c) at stage 28 so that |p| + 16 <= s is not vacuous.
  const std::uint64_t s = 28;
  Enumeration e(standard(), std::uint64_t{1} << 36);
  e.advance(s);
  std::uint64_t witnesses = 0;
  std::uint64_t bounded = 0;
  for (const HaltEvent& ev : e.events()) {
    if (ev.mode != Mode::kPrefix) continue;
    ++witnesses;
    const Natural m = triple_code(ev.x, ev.p, ev.t);
    ck.expect(f_solovay(standard(), m) == ev.p.size(), "f != |p| for p=" + ev.p.str());
    if (ev.p.size() + 16 > s) continue;
    ++bounded;
    const BitString target = lex_string(m);
    const auto K = e.K(target);
    ck.expect(K && *K <= ev.p.size() + 16, "K_s(<x,p,t>) for p=" + ev.p.str());
    // The wrapper program itself, run on the independent interpreter.
    const auto out = naive::run(Mode::kPrefix, standard(), triple_wrap_program(ev.p).str(), s);
    const Halted* h = as_halted(out);
    ck.expect(h && h->output == target, "wrapper output for p=" + ev.p.str());
  }
  ck.expect(bounded > 0, "no event with |p| + 16 <= stage");
  std::ostringstream d;
  d << "sum_{m<=10^6} = " << Dyadic::from_parts(num, fmax).approx() << ", " << witnesses
    << " witnesses at stage " << s << ", " << bounded << " within |p| + 16";
  return ck.done(d.str());
}

// 4. Berry ratio.
Outcome berry_ratio() {
  Check ck;
  const std::vector<std::uint64_t> ns = {4, 8, 16, 32, 64};
  std::vector<Natural> args(ns.begin(), ns.end());
  const BitString F = berry_f_bytecode();
  const std::vector<BerryRow> rows = ratio_table(standard(), berry_rule(), F, args);
  ck.expect(rows.size() == ns.size(), "row count");
  auto gamma_len = [](std::uint64_t v) { return 2 * (std::bit_width(v) - 1) + 1; };
  std::string ratios;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::uint64_t n = ns[i];
    const std::uint64_t expect_len = 12 + F.size() + gamma_len(F.size()) + gamma_len(n);
    const BitString prog = berry_program(F, Natural(n));
    ck.expect(rows[i].bound == expect_len && prog.size() == expect_len,
              "length at n=" + std::to_string(n));
    // x_n: the shortest x with 2|x| + 2 >= n, all zeros.
    const BitString xn = BitString::zeros(n <= 2 ? 0 : (n - 1) / 2);
    ck.expect(rows[i].x == xn, "x_n at n=" + std::to_string(n));
    const auto out = run_prefix(standard(), prog, std::uint64_t{1} << 40);
    const Halted* h = as_halted(out);
    ck.expect(h && h->output == xn && h->consumed == prog.size(),
              "machine output at n=" + std::to_string(n));
    if (i > 0) {
      // f_i / b_i > f_{i-1} / b_{i-1}, cross-multiplied.
      const Natural lhs = rows[i].fx * rows[i - 1].bound;
      const Natural rhs = rows[i - 1].fx * rows[i].bound;
      ck.expect(lhs > rhs, "ratio not increasing at n=" + std::to_string(n));
    }
    std::ostringstream r;
    r.precision(4);
    r << rows[i].fx.convert_to<double>() / static_cast<double>(rows[i].bound);
    ratios += (i ? " " : "") + r.str();
  }
  return ck.done("|F| = " + std::to_string(F.size()) + ", ratios " + ratios);
}

// 5. No-gap selection.
std::uint64_t inverse_scan(const NondecreasingFn& h, std::uint64_t k) {
  std::uint64_t n = 0;
  while (h(n) < k) ++n;
  return n;
}

void check_recovery(Check& ck, const NondecreasingFn& h, const OracleMachine& phi,
                    const SequenceSource& alpha, std::uint64_t K, std::uint64_t& stages) {
  const std::string tag = h.id() + "/" + phi.id + "/" + alpha.id();
  const InsertionSchedule s = build_schedule(h, phi, alpha, K);
  // Positions from first principles: h^-1 by scanning plus the running max
  // of the observed step counts.
  std::vector<std::uint64_t> expect;
  std::uint64_t tmax = 0;
  for (std::uint64_t k = 1; k <= K; ++k) {
    const auto r = phi.run(oracle_of(alpha), k, std::uint64_t{1} << 32);
    ck.expect(r && r->value == inverse_scan(h, k), tag + " phi value");
    if (!r) return;
    tmax = std::max(tmax, r->steps);
    expect.push_back(inverse_scan(h, k) + tmax);
  }
  ck.expect(s.positions == expect, tag + " schedule");
  const std::uint64_t N = expect.back() + 1;
  const BitString beta = insert_zeros(alpha, s, N);
  const SelectionTrace tr = selection_rule_S(SequenceSource::literal("beta", beta), phi, N);
  ck.expect(tr.selected == expect, tag + " selected != inserted");
  for (std::uint64_t p : tr.selected) ck.expect(p < N && !beta[p], tag + " selected a 1");
  ck.expect(tr.stages.size() == N + 1, tag + " stage count");
  for (std::uint64_t n = 0; n < tr.stages.size(); ++n) {
    ck.expect(tr.stages[n].x + tr.stages[n].k == n, tag + " |x_n| + k_n != n");
  }
  stages += tr.stages.size();
}

Outcome nogap_selection() {
  Check ck;
  const std::string data = AIT_TEST_DATA;
  const std::vector<SequenceSource> alphas = {SequenceSource::file(data + "/alpha_a.bits"),
                                              SequenceSource::file(data + "/alpha_b.bits"),
                                              SequenceSource::zeros(), SequenceSource::coin(42)};
  const std::vector<NondecreasingFn> hs = {NondecreasingFn::identity(), NondecreasingFn::half(),
                                           NondecreasingFn::sqrt_ceil(),
                                           NondecreasingFn::log2_ceil()};
  std::uint64_t configs = 0;
  std::uint64_t stages = 0;
  for (const SequenceSource& alpha : alphas) {
    for (const NondecreasingFn& h : hs) {
      for (const OracleMachine& phi : {immediate_machine(h), linear_delay_machine(h, 3, 2),
                                       oracle_reading_machine(h, alpha)}) {
        check_recovery(ck, h, phi, alpha, h.id() == "log" ? 9 : 60, stages);
        ++configs;
      }
    }
  }
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const NondecreasingFn h = rng() % 5 == 0 ? dual_compose(hs[rng() % 3]) : hs[rng() % 4];
    const SequenceSource alpha = SequenceSource::coin(rng());
    OracleMachine phi = immediate_machine(h);
    const auto pick = rng() % 3;
    if (pick == 1) phi = linear_delay_machine(h, rng() % 5, 1 + rng() % 6);
    if (pick == 2) phi = oracle_reading_machine(h, alpha);
    const bool slow = h.id() == "log" || h.id().rfind("dual", 0) == 0;
    check_recovery(ck, h, phi, alpha, slow ? 1 + rng() % 7 : 1 + rng() % 40, stages);
    ++configs;
  }
  return ck.done(std::to_string(configs) + " configurations, " + std::to_string(stages) +
                 " trace stages");
}

// 6. K-triviality strategy.
Outcome ktrivial_strategy() {
  Check ck;
  std::mt19937_64 rng(4242);
  std::uint64_t pairs = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const synthetic::Stream s = synthetic::random_stream(rng);
    const std::string tag = "stream " + std::to_string(trial);
    const StrategyResult r = run_strategy(s.stream, SequenceSource::zeros(),
                                          {s.c, s.d, s.n_max, true, witness_length_g()});
    // Exact weight as a numerator over 2^kmax.
    std::uint64_t kmax = 0;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> per;
    for (const LedgerPair& p : r.ledger.pairs()) {
      kmax = std::max(kmax, p.k);
      ++per[{p.n, p.k}];
    }
    Natural num = 0;
    for (const LedgerPair& p : r.ledger.pairs()) num += Natural(1) << (kmax - p.k);
    ck.expect(num <= (Natural(2 * s.d) << kmax), tag + " weight > 2d");
    for (const auto& [key, count] : per) ck.expect(count <= s.d, tag + " emission > d");
    for (const auto& [n, drops] : s.drops) {
      const auto it = r.states.find(n);
      ck.expect(it != r.states.end() && it->second.restarts == drops, tag + " restarts");
    }
    try {
      const CodeTree tree = compile_ledger(r.ledger, ceil_log2(2 * s.d));
      ck.expect(tree.leaf_count() == r.ledger.size(), tag + " leaf count");
    } catch (const Error& err) {
      ck.expect(false, tag + " " + err.what());
    }
    pairs += r.ledger.size();
  }

  // Live run: stage 22, alpha = 0^omega, N_max = 8, g = f_solovay.
  Enumeration e(standard());
  e.advance(22);
  const MachineProfile& profile = e.profile();
  StrategyConfig cfg{4, 4, 8, true,
                     [profile](const Natural& m) { return f_solovay(profile, m); }};
  const StrategyResult live =
      run_strategy(ComplexityEventStream::from_enumeration(e), SequenceSource::zeros(), cfg);
  std::uint64_t discovered = 0;
  std::uint64_t covered = 0;
  for (std::uint64_t n = 0; n <= 8; ++n) {
    const auto K = e.K(lex_string(n));
    if (!K) continue;
    ++discovered;
    const bool in = live.ledger.contains(BitString::zeros(n), *K);
    covered += in;
    ck.expect(in, "live: (0^" + std::to_string(n) + ", " + std::to_string(*K) + ") not in L");
  }
  return ck.done("500 synthetic streams, " + std::to_string(pairs) + " pairs; live stage 22: " +
                 std::to_string(covered) + " of " + std::to_string(discovered) +
                 " discovered n covered, " + std::to_string(live.ledger.size()) + " pairs");
}

// 7. Counting lemma table, recounted from the K table.
Outcome counting_lemma() {
  Check ck;
  const MachineProfile profile = MachineProfile::load(AIT_PROFILE_DIR "/standard.profile");
  Enumeration e(profile);
  e.advance(22);
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_length;
  for (const auto& [x, entry] : e.table(Mode::kPrefix)) by_length[x.size()].push_back(entry.length);
  const std::vector<CountingCell> cells = counting_matrix(e, 10, 4);
  std::int64_t max_implied = 0;
  std::string table;
  std::size_t i = 0;
  for (std::uint64_t n = 0; n <= 10; ++n) {
    const auto Kn = e.K(lex_string(n));
    for (std::int64_t c = 0; c <= 4; ++c) {
      std::uint64_t count = 0;
      for (std::uint64_t k : by_length[n]) {
        if (Kn && static_cast<std::int64_t>(k) <= static_cast<std::int64_t>(*Kn) + c) ++count;
      }
      const std::int64_t implied =
          static_cast<std::int64_t>(ceil_log2(std::max<std::uint64_t>(count, 1))) - c;
      max_implied = std::max(max_implied, implied);
      ck.expect(i < cells.size() && cells[i].n == n && cells[i].c == c &&
                    cells[i].count == count && cells[i].implied == implied,
                "cell n=" + std::to_string(n) + " c=" + std::to_string(c));
      ++i;
    }
  }
  ck.expect(i == cells.size(), "cell count");
  const auto bound = profile.counting_bound();
  ck.expect(bound.has_value() && max_implied <= *bound, "max c-hat above the profile bound");
  return ck.done("max c-hat = " + std::to_string(max_implied) + ", profile bound " +
                 (bound ? std::to_string(*bound) : std::string("none")));
}

// 8. Determinism and persistence.
std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    out[fs::relative(entry.path(), dir).string()] = buf.str();
  }
  return out;
}

Outcome determinism() {
  Check ck;
  // Library: snapshot at stage 14, restore, continue; and a resume from
  // every intermediate stage of a stepped run.
  Enumeration full(standard());
  full.advance(22);
  Enumeration part(standard());
  part.advance(14);
  Enumeration resumed = Enumeration::restore_from_text(part.ledger(), standard());
  resumed.advance(22);
  ck.expect(resumed.ledger() == full.ledger(), "restore at 14 then 22 differs");
  Enumeration stepped(standard());
  for (std::uint64_t s = 0; s <= 22; s += 5) {
    stepped = Enumeration::restore_from_text(stepped.ledger(), standard());
    stepped.advance(s);
  }
  stepped.advance(22);
  ck.expect(stepped.ledger() == full.ledger(), "stepped restore differs");

  std::uint64_t files = 0;
  const std::string cli = AIT_CLI;
  if (!cli.empty()) {
    const fs::path root = fs::temp_directory_path() / ("ait_acceptance_" + std::to_string(getpid()));
    fs::remove_all(root);
    const std::string data = AIT_TEST_DATA;
    const std::vector<std::string> runs = {
        "enumerate --stage 16",
        "solovay gap --stage 16 --M 300",
        "solovay sum --n 20000",
        "solovay alpha --f linear --k 24",
        "kc alloc --requests 3,1,2,4,4,5,1,6",
        "kc compile --f two_log --c 1 --N 40",
        "berry --ns 4,8,16 --stage 12",
        "monitor ls --stage 16 --src file:" + data + "/alpha_a.bits --n 24",
        "monitor my --stage 16 --src coin:5 --n 20",
        "monitor bm --f const2len --src zeros --n 64",
        "monitor trend --stage 16 --src omega --n 12",
        "monitor probe --stage 16 --n 200",
        "nogap build --h-rule sqrt --phi reading --alpha coin:3 --K 30",
        "nogap select --h-rule half --phi linear:3:2 --alpha zeros --K 30",
        "nogap report --h-rule identity --phi immediate --alpha coin:4 --K 12 --stage 16",
        "ktriv run --stage 16",
    };
    for (std::size_t i = 0; i < runs.size(); ++i) {
      std::map<std::string, std::string> first;
      for (int rep = 0; rep < 2; ++rep) {
        const fs::path out = root / (std::to_string(i) + "_" + std::to_string(rep));
        const std::string cmd =
            cli + " --out " + out.string() + " " + runs[i] + " > /dev/null 2>&1";
        ck.expect(std::system(cmd.c_str()) == 0, "exit status: " + runs[i]);
        const auto contents = read_dir(out);
        ck.expect(!contents.empty(), "no output: " + runs[i]);
        if (rep == 0) {
          first = contents;
          files += contents.size();
        } else {
          ck.expect(contents == first, "rerun differs: " + runs[i]);
        }
      }
    }
    // CLI resume after an interrupted (shorter) run.
    const fs::path a = root / "resume_a";
    const fs::path b = root / "resume_b";
    const std::string q = " > /dev/null 2>&1";
    ck.expect(std::system((cli + " --out " + a.string() + " enumerate --stage 18" + q).c_str()) == 0,
              "uninterrupted run");
    ck.expect(std::system((cli + " --out " + b.string() + " enumerate --stage 11" + q).c_str()) == 0,
              "interrupted run");
    ck.expect(std::system((cli + " --out " + b.string() + " enumerate --stage 18 --resume" + q)
                              .c_str()) == 0,
              "resumed run");
    ck.expect(read_dir(a).at("ledger.txt") == read_dir(b).at("ledger.txt"), "CLI resume differs");
    fs::remove_all(root);
  } else {
    ck.expect(false, "built without the CLI");
  }
  return ck.done("restore/resume equivalent; " + std::to_string(files) +
                 " output files byte-identical on rerun");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"prefix-free domain and Omega_s", prefix_free_domain},
      {"Kraft-Chaitin exact oracle", kraft_chaitin_oracle},
      {"Solovay function", solovay_construction},
      {"Berry ratio", berry_ratio},
      {"no-gap selection rule", nogap_selection},
      {"K-trivial request strategy", ktrivial_strategy},
      {"counting lemma regression", counting_lemma},
      {"determinism and persistence", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
