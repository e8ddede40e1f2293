#include "ait/enumerator.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "ait/encodings.hpp"
#include "ait/errors.hpp"

namespace ait {

namespace {

struct Walker {
  const MachineProfile& profile;
  std::uint64_t stage;
  std::vector<HaltEvent> out;
  std::string p;

  void visit() {
    const Probe pr = probe(profile, p, stage);
    if (const Halted* h = as_halted(pr.plain); h && h->consumed == p.size()) {
      out.push_back({Mode::kPlain, BitString(p), h->output, h->steps,
                     std::max<std::uint64_t>(p.size(), h->steps)});
    }
    if (const Halted* h = as_halted(pr.prefix)) {
      out.push_back({Mode::kPrefix, BitString(p), h->output, h->steps,
                     std::max<std::uint64_t>(p.size(), h->steps)});
      return;
    }
    if (std::holds_alternative<NeedsInput>(pr.prefix) && p.size() < stage) {
      for (char bit : {'0', '1'}) {
        p.push_back(bit);
        visit();
        p.pop_back();
      }
    }
  }
};

// Collects the open nodes at depth `depth` (or shallower leaves' events).
void frontier(const MachineProfile& profile, std::uint64_t stage, std::string& p,
              std::size_t depth, std::vector<HaltEvent>& events,
              std::vector<std::string>& open) {
  if (p.size() == depth) {
    open.push_back(p);
    return;
  }
  const Probe pr = probe(profile, p, stage);
  if (const Halted* h = as_halted(pr.plain); h && h->consumed == p.size()) {
    events.push_back({Mode::kPlain, BitString(p), h->output, h->steps,
                      std::max<std::uint64_t>(p.size(), h->steps)});
  }
  if (const Halted* h = as_halted(pr.prefix)) {
    events.push_back({Mode::kPrefix, BitString(p), h->output, h->steps,
                      std::max<std::uint64_t>(p.size(), h->steps)});
    return;
  }
  if (std::holds_alternative<NeedsInput>(pr.prefix) && p.size() < stage) {
    for (char bit : {'0', '1'}) {
      p.push_back(bit);
      frontier(profile, stage, p, depth, events, open);
      p.pop_back();
    }
  }
}

bool event_less(const HaltEvent& a, const HaltEvent& b) {
  if (a.stage != b.stage) return a.stage < b.stage;
  if (a.mode != b.mode) return a.mode < b.mode;
  if (a.p.size() != b.p.size()) return a.p.size() < b.p.size();
  return a.p < b.p;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t sp = line.find(' ', start);
    fields.emplace_back(line.substr(start, sp == std::string_view::npos ? sp : sp - start));
    if (sp == std::string_view::npos) break;
    start = sp + 1;
  }
  return fields;
}

std::uint64_t parse_u64(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorKind::kCorruptLedger, "bad number '" + s + "'");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw Error(ErrorKind::kCorruptLedger, "number out of range '" + s + "'");
  }
}

}  // namespace

std::uint64_t stage_work(std::uint64_t stage) {
  if (stage + 1 >= 64) return UINT64_MAX;
  const std::uint64_t nodes = std::uint64_t{1} << (stage + 1);
  if (stage != 0 && nodes > UINT64_MAX / stage) return UINT64_MAX;
  return nodes * stage;
}

std::vector<HaltEvent> explore(const MachineProfile& profile, std::uint64_t stage,
                               unsigned threads) {
  if (threads <= 1 || stage < 8) {
    Walker w{profile, stage, {}, {}};
    w.visit();
    return std::move(w.out);
  }
  std::vector<HaltEvent> events;
  std::vector<std::string> open;
  std::string root;
  frontier(profile, stage, root, 8, events, open);

  std::vector<std::vector<HaltEvent>> partial(threads);
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < threads; ++k) {
    pool.emplace_back([&, k] {
      for (std::size_t i = k; i < open.size(); i += threads) {
        Walker w{profile, stage, {}, open[i]};
        w.visit();
        partial[k].insert(partial[k].end(), w.out.begin(), w.out.end());
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (auto& part : partial) events.insert(events.end(), part.begin(), part.end());
  return events;
}

Enumeration::Enumeration(MachineProfile profile, std::uint64_t work_cap, unsigned threads)
    : profile_(std::move(profile)), work_cap_(work_cap), threads_(threads == 0 ? 1 : threads) {}

void Enumeration::advance(std::uint64_t target) {
  if (target < watermark_) {
    throw Error(ErrorKind::kInvalidArgument, "target stage " + std::to_string(target) +
                                                 " is below the watermark " + std::to_string(watermark_));
  }
  if (stage_work(target) > work_cap_) {
    throw Error(ErrorKind::kResourceLimit, "stage " + std::to_string(target) + " needs " +
                                               std::to_string(stage_work(target)) +
                                               " work units, cap is " + std::to_string(work_cap_));
  }
  if (target == watermark_) return;
  std::vector<HaltEvent> found = explore(profile_, target, threads_);
  std::vector<HaltEvent> fresh;
  for (HaltEvent& e : found) {
    if (e.stage > watermark_) fresh.push_back(std::move(e));
  }
  watermark_ = target;
  add_events(std::move(fresh));
}

void Enumeration::add_events(std::vector<HaltEvent> fresh) {
  std::sort(fresh.begin(), fresh.end(), event_less);
  for (HaltEvent& e : fresh) {
    events_.push_back(std::move(e));
    index_event(events_.size() - 1);
  }
}

void Enumeration::index_event(std::size_t i) {
  const HaltEvent& e = events_[i];
  auto& table = e.mode == Mode::kPrefix ? k_table_ : c_table_;
  auto [it, inserted] = table.try_emplace(e.x, Entry{e.p.size(), i});
  if (!inserted) {
    const HaltEvent& old = events_[it->second.event];
    if (e.p.size() < old.p.size() || (e.p.size() == old.p.size() && e.p < old.p)) {
      it->second = {e.p.size(), i};
    }
  }
  by_output_[e.x].push_back(i);
}

std::optional<std::uint64_t> Enumeration::K(const BitString& x) const {
  const auto it = k_table_.find(x);
  if (it == k_table_.end()) return std::nullopt;
  return it->second.length;
}

std::optional<std::uint64_t> Enumeration::C(const BitString& x) const {
  const auto it = c_table_.find(x);
  if (it == c_table_.end()) return std::nullopt;
  return it->second.length;
}

std::optional<std::uint64_t> Enumeration::best_at(Mode mode, const BitString& x,
                                                  std::uint64_t stage) const {
  const auto it = by_output_.find(x);
  if (it == by_output_.end()) return std::nullopt;
  std::optional<std::uint64_t> best;
  for (std::size_t i : it->second) {
    const HaltEvent& e = events_[i];
    if (e.mode != mode || e.stage > stage) continue;
    if (!best || e.p.size() < *best) best = e.p.size();
  }
  return best;
}

std::optional<std::uint64_t> Enumeration::K_at(const BitString& x, std::uint64_t stage) const {
  return best_at(Mode::kPrefix, x, stage);
}

std::optional<std::uint64_t> Enumeration::C_at(const BitString& x, std::uint64_t stage) const {
  return best_at(Mode::kPlain, x, stage);
}

const HaltEvent* Enumeration::witness(Mode mode, const BitString& x) const {
  const auto& t = table(mode);
  const auto it = t.find(x);
  return it == t.end() ? nullptr : &events_[it->second.event];
}

Dyadic Enumeration::omega_at(std::uint64_t stage) const {
  Dyadic sum;
  for (const HaltEvent& e : events_) {
    if (e.mode == Mode::kPrefix && e.stage <= stage) sum += Dyadic::inverse_pow2(e.p.size());
  }
  return sum;
}

Dyadic Enumeration::omega_by_K() const {
  Dyadic sum;
  for (const auto& [x, entry] : k_table_) sum += Dyadic::inverse_pow2(entry.length);
  return sum;
}

std::uint64_t Enumeration::counting_report(std::uint64_t n, std::int64_t c) const {
  const std::optional<std::uint64_t> bound = K(lex_string(n));
  std::uint64_t count = 0;
  for (const auto& [w, entry] : k_table_) {
    if (w.size() != n) continue;
    if (!bound || static_cast<std::int64_t>(entry.length) <= static_cast<std::int64_t>(*bound) + c) {
      ++count;
    }
  }
  return count;
}

std::int64_t Enumeration::plain_prefix_overhead() const {
  std::int64_t worst = 0;
  for (const auto& [x, entry] : k_table_) {
    if (const auto c = C(x)) {
      worst = std::max(worst, static_cast<std::int64_t>(*c) - static_cast<std::int64_t>(entry.length));
    }
  }
  return worst;
}

std::string Enumeration::ledger() const {
  std::ostringstream os;
  os << "# ait-ledger v1 fingerprint=" << profile_.fingerprint() << " watermark=" << watermark_
     << "\n";
  for (const HaltEvent& e : events_) {
    os << mode_name(e.mode) << ' ' << e.p.str() << ' ' << e.x.str() << ' ' << e.t << ' ' << e.stage
       << '\n';
  }
  return os.str();
}

void Enumeration::snapshot(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path.string());
  out << ledger();
  if (!out) throw Error(ErrorKind::kInvalidArgument, "write failed for " + path.string());
}

Enumeration Enumeration::restore_from_text(std::string_view text, MachineProfile profile,
                                           std::uint64_t work_cap) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::kCorruptLedger, "empty ledger");
  const std::string magic = "# ait-ledger v1 fingerprint=";
  if (line.rfind(magic, 0) != 0) throw Error(ErrorKind::kCorruptLedger, "missing ledger header");
  const std::size_t wpos = line.find(" watermark=", magic.size());
  if (wpos == std::string::npos) throw Error(ErrorKind::kCorruptLedger, "header has no watermark");
  const std::string fingerprint = line.substr(magic.size(), wpos - magic.size());
  if (fingerprint != profile.fingerprint()) {
    throw Error(ErrorKind::kFingerprintMismatch,
                "ledger fingerprint " + fingerprint + " does not match profile " + profile.fingerprint());
  }
  Enumeration e(std::move(profile), work_cap);
  e.watermark_ = parse_u64(line.substr(wpos + 11));

  std::vector<HaltEvent> events;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (f.size() != 5) throw Error(ErrorKind::kCorruptLedger, "expected 5 fields" + where);
    HaltEvent ev;
    if (f[0] == "prefix") {
      ev.mode = Mode::kPrefix;
    } else if (f[0] == "plain") {
      ev.mode = Mode::kPlain;
    } else {
      throw Error(ErrorKind::kCorruptLedger, "bad mode '" + f[0] + "'" + where);
    }
    try {
      ev.p = BitString(f[1]);
      ev.x = BitString(f[2]);
    } catch (const Error&) {
      throw Error(ErrorKind::kCorruptLedger, "bad bit string" + where);
    }
    ev.t = parse_u64(f[3]);
    ev.stage = parse_u64(f[4]);
    if (ev.stage > e.watermark_ || ev.stage != std::max<std::uint64_t>(ev.p.size(), ev.t)) {
      throw Error(ErrorKind::kCorruptLedger, "inconsistent stage" + where);
    }
    const RunOutcome replay = run(ev.mode, e.profile_, ev.p.digits(), ev.t);
    const Halted* h = as_halted(replay);
    if (h == nullptr || h->output != ev.x || h->steps != ev.t || h->consumed != ev.p.size()) {
      throw Error(ErrorKind::kCorruptLedger, "event does not replay" + where);
    }
    events.push_back(std::move(ev));
  }
  const std::size_t before = events.size();
  std::sort(events.begin(), events.end(), event_less);
  events.erase(std::unique(events.begin(), events.end(),
                           [](const HaltEvent& a, const HaltEvent& b) {
                             return a.mode == b.mode && a.p == b.p;
                           }),
               events.end());
  if (events.size() != before) throw Error(ErrorKind::kCorruptLedger, "duplicate event");
  e.add_events(std::move(events));
  return e;
}

Enumeration Enumeration::restore(const std::filesystem::path& path, MachineProfile profile,
                                 std::uint64_t work_cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kCorruptLedger, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return restore_from_text(buf.str(), std::move(profile), work_cap);
}

std::vector<CountingCell> counting_matrix(const Enumeration& e, std::uint64_t n_max,
                                          std::int64_t c_max) {
  std::vector<CountingCell> cells;
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    for (std::int64_t c = 0; c <= c_max; ++c) {
      const std::uint64_t count = e.counting_report(n, c);
      const std::uint64_t m = std::max<std::uint64_t>(count, 1);
      // ceil(log2 m)
      const auto log2m = static_cast<std::int64_t>(bit_length(Natural(m - 1)));
      cells.push_back({n, c, count, log2m - c});
    }
  }
  return cells;
}

}  // namespace ait
