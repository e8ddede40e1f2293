#include "ait/monitors.hpp"

#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include "ait/encodings.hpp"
#include "ait/errors.hpp"

namespace ait {

struct SequenceSource::State {
  std::mutex mu;
  BitString cache;
  Extend extend;
  // Omega source: bits never count as settled.
  bool unstable = false;
};

SequenceSource::SequenceSource(Kind kind, std::string id, std::optional<std::uint64_t> length,
                               Extend extend)
    : kind_(kind), id_(std::move(id)), length_(length), state_(std::make_shared<State>()) {
  state_->extend = std::move(extend);
  state_->unstable = kind == Kind::kOmegaSoFar;
}

BitString SequenceSource::prefix(std::uint64_t n) const {
  if (length_ && n > *length_) {
    throw Error(ErrorKind::kInvalidArgument, "source " + id_ + " has only " +
                                                 std::to_string(*length_) + " bits, asked for " +
                                                 std::to_string(n));
  }
  std::lock_guard lock(state_->mu);
  if (state_->cache.size() < n) state_->extend(state_->cache, n);
  return state_->cache.prefix(n);
}

bool SequenceSource::stable(std::uint64_t) const { return !state_->unstable; }

SequenceSource SequenceSource::rule(std::string id, std::function<bool(std::uint64_t)> bit) {
  return {Kind::kRule, std::move(id), std::nullopt, [bit](BitString& cache, std::uint64_t n) {
            while (cache.size() < n) cache.push_back(bit(cache.size()));
          }};
}

SequenceSource SequenceSource::zeros() {
  return rule("zeros", [](std::uint64_t) { return false; });
}

SequenceSource SequenceSource::ones() {
  return rule("ones", [](std::uint64_t) { return true; });
}

SequenceSource SequenceSource::alternating() {
  return rule("alt", [](std::uint64_t i) { return i % 2 == 1; });
}

SequenceSource SequenceSource::coin(std::uint64_t seed) {
  auto engine = std::make_shared<std::mt19937_64>(seed);
  return {Kind::kRule, "coin:" + std::to_string(seed), std::nullopt,
          [engine](BitString& cache, std::uint64_t n) {
            while (cache.size() < n) cache.push_back(((*engine)() & 1U) != 0);
          }};
}

SequenceSource SequenceSource::literal(std::string id, BitString bits) {
  const std::uint64_t len = bits.size();
  return {Kind::kFile, std::move(id), len,
          [bits = std::move(bits)](BitString& cache, std::uint64_t) { cache = bits; }};
}

SequenceSource SequenceSource::file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  BitString bits;
  for (char c : text.str()) {
    if (c == '0' || c == '1') bits.push_back(c == '1');
  }
  return literal("file:" + path.filename().string(), std::move(bits));
}

SequenceSource SequenceSource::alpha_of(UpperBoundFunction f) {
  const std::string id = "alpha:" + f.id();
  return {Kind::kAlpha, id, std::nullopt, [f = std::move(f)](BitString& cache, std::uint64_t n) {
            cache = certified_bits(f, n);
          }};
}

SequenceSource SequenceSource::omega_so_far(const Enumeration& table) {
  const Dyadic omega = table.omega();
  return {Kind::kOmegaSoFar, "omega@" + std::to_string(table.watermark()), std::nullopt,
          [omega](BitString& cache, std::uint64_t n) {
            // Omega < 1, so floor(Omega 2^n) has at most n binary digits.
            const Natural v = omega.floor_scaled(n);
            cache = BitString();
            for (std::uint64_t i = 0; i < n; ++i) {
              cache.push_back(boost::multiprecision::bit_test(v, static_cast<unsigned>(n - 1 - i)));
            }
          }};
}

SequenceSource SequenceSource::parse(std::string_view spec, const MachineProfile& profile,
                                     const Enumeration* table) {
  auto rest = [&spec](std::size_t skip) { return std::string(spec.substr(skip)); };
  if (spec == "zeros") return zeros();
  if (spec == "ones") return ones();
  if (spec == "alt") return alternating();
  if (spec.rfind("coin:", 0) == 0) return coin(saturate_u64(parse_natural(rest(5))));
  if (spec.rfind("bits:", 0) == 0) return literal(std::string(spec), BitString(rest(5)));
  if (spec.rfind("file:", 0) == 0) return file(rest(5));
  if (spec.rfind("alpha:", 0) == 0) return alpha_of(UpperBoundFunction::by_name(rest(6), profile));
  if (spec == "omega") {
    if (table == nullptr) throw Error(ErrorKind::kInvalidArgument, "omega source needs a table");
    return omega_so_far(*table);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown source '" + std::string(spec) + "'");
}

const char* direction_label(Direction d) {
  switch (d) {
    case Direction::kLowerBound:
      return "refutes-at-c";
    case Direction::kExact:
      return "exact";
    case Direction::kUpperBound:
      return "consistent-up-to-stage";
  }
  return "?";
}

std::optional<std::int64_t> DeficiencyReport::extremum() const {
  return rows.empty() ? std::nullopt : rows.back().extremum;
}

std::string DeficiencyReport::verdict() const {
  const auto e = extremum();
  const std::string stage = std::to_string(watermark);
  if (!e) return "no data (" + std::to_string(top_count) + " undiscovered prefixes)";
  const std::string v = std::to_string(*e);
  switch (direction) {
    case Direction::kLowerBound:
      return "refutes-at-c " + std::to_string(*e - 1) + " (every c < " + v +
             "); consistent-up-to-stage " + stage + " for c >= " + v;
    case Direction::kExact:
      return std::string("exact ") + (running_max ? "sup " : "min ") + v;
    case Direction::kUpperBound:
      return "consistent-up-to-stage " + stage + " with " + (running_max ? "sup " : "min ") + v;
  }
  return {};
}

CsvTable DeficiencyReport::csv() const {
  CsvTable t({"n", "statistic", running_max ? "running_sup" : "running_min", "stable"});
  t.provenance("criterion", criterion);
  t.provenance("source", source);
  t.provenance("direction", direction_label(direction));
  if (!fingerprint.empty()) t.provenance("profile", fingerprint);
  t.provenance("watermark", std::to_string(watermark));
  t.provenance("undiscovered", std::to_string(top_count));
  t.provenance("verdict", verdict());
  for (const DeficiencyRow& r : rows) {
    t.row({std::to_string(r.n), cell(r.statistic), cell(r.extremum), r.stable ? "1" : "0"});
  }
  return t;
}

DeficiencyReport make_report(std::string criterion, const SequenceSource& src, Direction direction,
                       bool running_max, const Enumeration* table, std::uint64_t N,
                       const Statistic& stat) {
  DeficiencyReport r;
  r.criterion = std::move(criterion);
  r.source = src.id();
  r.direction = direction;
  r.running_max = running_max;
  if (table) {
    r.watermark = table->watermark();
    r.fingerprint = table->profile().fingerprint();
  }
  std::optional<std::int64_t> ext;
  for (std::uint64_t n = 1; n <= N; ++n) {
    DeficiencyRow row;
    row.n = n;
    const BitString x = src.prefix(n);
    row.statistic = stat(n, x);
    row.stable = src.prefix_stable(n);
    if (row.statistic) {
      if (!ext || (running_max ? *row.statistic > *ext : *row.statistic < *ext)) {
        ext = row.statistic;
      }
    } else {
      ++r.top_count;
    }
    row.extremum = ext;
    r.rows.push_back(row);
  }
  return r;
}

namespace {

std::int64_t as_signed(std::uint64_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

DeficiencyReport levin_schnorr(const SequenceSource& src, const Enumeration& table,
                               std::uint64_t N) {
  return make_report("levin_schnorr", src, Direction::kLowerBound, true, &table, N,
               [&table](std::uint64_t n, const BitString& x) -> std::optional<std::int64_t> {
                 const auto k = table.K(x);
                 if (!k) return std::nullopt;
                 return as_signed(n) - as_signed(*k);
               });
}

DeficiencyReport miller_yu(const SequenceSource& src, const Enumeration& table,
                           const UpperBoundFunction& g, std::uint64_t N) {
  return make_report("miller_yu[" + g.id() + "]", src, Direction::kLowerBound, true, &table, N,
               [&](std::uint64_t n, const BitString& x) -> std::optional<std::int64_t> {
                 const auto c = table.C(x);
                 if (!c) return std::nullopt;
                 return as_signed(n) - as_signed(g(n)) - as_signed(*c);
               });
}

DeficiencyReport bm_criterion(const SequenceSource& src, const StringRule& f, std::uint64_t N) {
  return make_report("bm[" + f.id + "]", src, Direction::kExact, true, nullptr, N,
               [&f](std::uint64_t n, const BitString& x) -> std::optional<std::int64_t> {
                 const Natural v = f.f(x);
                 // f values beyond int64 make d hugely negative; clamp.
                 const std::uint64_t fv = saturate_u64(v);
                 if (fv > static_cast<std::uint64_t>(INT64_MAX / 2)) return INT64_MIN / 2;
                 return as_signed(n) - as_signed(fv);
               });
}

DeficiencyReport chaitin_trend(const SequenceSource& src, const Enumeration& table,
                               std::uint64_t N) {
  return make_report("chaitin_trend", src, Direction::kUpperBound, false, &table, N,
               [&table](std::uint64_t n, const BitString& x) -> std::optional<std::int64_t> {
                 const auto k = table.K(x);
                 if (!k) return std::nullopt;
                 return as_signed(*k) - as_signed(n);
               });
}

GapReport solovayness_probe(const UpperBoundFunction& g, const Enumeration& table,
                            std::uint64_t M) {
  return gap_table(g, table, M);
}

std::uint64_t cross_criterion_violations(const SequenceSource& src, const Enumeration& table,
                                         std::uint64_t N, std::int64_t c_pc) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const BitString x = src.prefix(n);
    const auto k = table.K(x);
    const auto c = table.C(x);
    if (k && c && as_signed(*c) > as_signed(*k) + c_pc) ++count;
  }
  return count;
}

StringRule string_rule_by_name(std::string_view name, const MachineProfile& profile) {
  if (name == "berry" || name == "const2len") return berry_rule();
  if (name == "solovay") {
    return {"solovay", [profile](const BitString& x) -> Natural {
              return f_solovay(profile, lex_index(x));
            }};
  }
  if (name == "two_log") {
    // 2 ceil(log2(m + 2)) = 2 bit_length(m + 1)
    return {"two_log", [](const BitString& x) -> Natural {
              return 2 * bit_length(lex_index(x) + 1);
            }};
  }
  if (name == "linear") {
    return {"linear", [](const BitString& x) -> Natural { return lex_index(x) + 2; }};
  }
  if (name.rfind("const:", 0) == 0) {
    const Natural v = parse_natural(std::string(name.substr(6)));
    return {std::string(name), [v](const BitString&) { return v; }, true};
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown string rule '" + std::string(name) + "'");
}

}  // namespace ait
