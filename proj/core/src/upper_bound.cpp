#include "ait/upper_bound.hpp"

#include "ait/encodings.hpp"
#include "ait/errors.hpp"
#include "ait/machine.hpp"
#include "ait/solovay.hpp"

namespace ait {

namespace {

// ceil(log2(v)) for v >= 1.
std::uint64_t ceil_log2(std::uint64_t v) { return v <= 1 ? 0 : 64 - __builtin_clzll(v - 1); }

std::uint64_t pow2_minus_2(std::uint64_t e) {
  if (e >= 63) return UINT64_MAX;
  const std::uint64_t p = std::uint64_t{1} << e;
  return p < 2 ? 0 : p - 2;
}

}  // namespace

UpperBoundFunction::UpperBoundFunction(std::string id, Rule rule,
                                       std::optional<TailCertificate> certificate)
    : id_(std::move(id)),
      rule_(std::move(rule)),
      certificate_(std::move(certificate)),
      memo_(std::make_shared<Memo>()) {}

std::uint64_t UpperBoundFunction::operator()(std::uint64_t n) const {
  {
    std::lock_guard lock(memo_->mu);
    const auto it = memo_->values.find(n);
    if (it != memo_->values.end()) return it->second;
  }
  const std::uint64_t v = rule_(n);
  std::lock_guard lock(memo_->mu);
  if (memo_->values.size() < (1U << 20)) memo_->values.emplace(n, v);
  return v;
}

UpperBoundFunction UpperBoundFunction::constant(std::uint64_t value) {
  return {"const:" + std::to_string(value), [value](std::uint64_t) { return value; }};
}

UpperBoundFunction UpperBoundFunction::two_log() {
  // Indices with ceil(log2(n+2)) = j number 2^(j-1) and weigh 2^(-j-1) in
  // total, so the tail beyond n + 2 = 2^J is 2^(-J-1).
  return {"two_log", [](std::uint64_t n) { return 2 * ceil_log2(n + 2); },
          TailCertificate{[](std::uint64_t k) { return k == 0 ? 0 : pow2_minus_2(k - 1); },
                          "tail beyond n+2 = 2^J is sum_{j>J} 2^(-j-1) = 2^(-J-1)"}};
}

UpperBoundFunction UpperBoundFunction::linear() {
  return {"linear", [](std::uint64_t n) { return n + 2; },
          TailCertificate{[](std::uint64_t k) { return k < 2 ? 0 : k - 2; },
                          "geometric tail sum_{n>N} 2^(-n-2) = 2^(-N-2)"}};
}

UpperBoundFunction UpperBoundFunction::berry_length() {
  // Strings of length l weigh 2^l * 2^(-2l-2) = 2^(-l-2); all strings of
  // length < L are the indices below 2^L - 1.
  return {"berry", [](std::uint64_t n) { return 2 * (bit_length(Natural(n) + 1) - 1) + 2; },
          TailCertificate{[](std::uint64_t k) { return k == 0 ? 0 : pow2_minus_2(k - 1); },
                          "tail beyond length L is sum_{l>=L} 2^(-l-2) = 2^(-L-1)"}};
}

UpperBoundFunction UpperBoundFunction::from_bytecode(MachineProfile profile, BitString f_bytecode,
                                                     std::uint64_t budget) {
  const std::string id = "bytecode:" + f_bytecode.str();
  return {id, [profile = std::move(profile), f = std::move(f_bytecode), budget](std::uint64_t n) {
            const BitString data = gamma_encode(Natural(n) + 1);
            const RunOutcome r = run_bytecode_plain(profile, f.digits(), data.digits(), budget);
            const Halted* h = as_halted(r);
            if (h == nullptr) {
              throw Error(ErrorKind::kSearchBudgetExceeded,
                          "F did not halt on n=" + std::to_string(n) + ": " + describe(r));
            }
            return saturate_u64(lex_index(h->output));
          }};
}

UpperBoundFunction UpperBoundFunction::by_name(std::string_view name,
                                               const MachineProfile& profile) {
  if (name.rfind("const:", 0) == 0) {
    const std::string digits(name.substr(6));
    return constant(saturate_u64(parse_natural(digits)));
  }
  if (name == "two_log") return two_log();
  if (name == "linear") return linear();
  if (name == "berry") return berry_length();
  if (name == "solovay") return solovay_function(profile);
  throw Error(ErrorKind::kInvalidArgument, "unknown function '" + std::string(name) + "'");
}

Dyadic alpha_approx(const UpperBoundFunction& f, std::uint64_t N) {
  // Accumulate counts per exponent first; the result is exact either way.
  std::unordered_map<std::uint64_t, Natural> histogram;
  for (std::uint64_t n = 0; n <= N; ++n) histogram[f(n)] += 1;
  Dyadic sum;
  for (const auto& [e, count] : histogram) sum += Dyadic::inverse_pow2(e).times(count);
  return sum;
}

Membership membership_check(const UpperBoundFunction& f, std::uint64_t N) {
  Membership m{alpha_approx(f, N), std::nullopt, std::nullopt};
  if (!f.certificate()) return m;
  const auto& cert = *f.certificate();
  if (cert.N(0) > N) return m;
  std::uint64_t k = 0;
  while (k < 4096 && cert.N(k + 1) <= N) ++k;
  m.k = k;
  m.upper = m.partial + Dyadic::inverse_pow2(k);
  return m;
}

BitString certified_bits(const UpperBoundFunction& f, std::uint64_t k, std::uint64_t max_terms) {
  if (!f.certificate()) {
    throw Error(ErrorKind::kInvalidArgument, f.id() + " has no tail certificate");
  }
  const auto& cert = *f.certificate();
  const Natural one_scaled = Natural(1) << k;
  for (std::uint64_t precision = k; precision <= k + 16; ++precision) {
    const std::uint64_t N = cert.N(precision);
    if (N > max_terms) break;
    const Dyadic lo = alpha_approx(f, N);
    const Dyadic hi = lo + Dyadic::inverse_pow2(precision);
    const Natural j = lo.floor_scaled(k);
    if (j >= one_scaled) {
      throw Error(ErrorKind::kInvalidArgument, "alpha >= 1 has no expansion after the binary point");
    }
    if (hi <= Dyadic::from_parts(j + 1, k)) {
      BitString bits;
      for (std::uint64_t i = 0; i < k; ++i) bits.push_back(bit_test(j, static_cast<unsigned>(k - 1 - i)));
      return bits;
    }
  }
  throw Error(ErrorKind::kBoundaryAmbiguity,
              "enclosure of " + f.id() + " straddles a multiple of 2^-" + std::to_string(k));
}

}  // namespace ait
