#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "ait/bits.hpp"
#include "ait/natural.hpp"
#include "ait/profile.hpp"

namespace ait {

// Effective tail bound: sum_{n > N(k)} 2^-f(n) <= 2^-k, N nondecreasing.
struct TailCertificate {
  std::function<std::uint64_t(std::uint64_t)> N;
  std::string provenance;
};

// A total computable rule n -> f(n) with a memo cache. Arguments are
// naturals in the length-lex identification (n <-> lex_string(n)).
// Thread-safe; memoization never changes values.
class UpperBoundFunction {
 public:
  using Rule = std::function<std::uint64_t(std::uint64_t)>;

  UpperBoundFunction(std::string id, Rule rule, std::optional<TailCertificate> certificate = {});

  std::uint64_t operator()(std::uint64_t n) const;
  const std::string& id() const { return id_; }
  const std::optional<TailCertificate>& certificate() const { return certificate_; }

  // f(n) = value.
  static UpperBoundFunction constant(std::uint64_t value);
  // f(n) = 2 ceil(log2(n + 2)); N(k) = max(2^(k-1) - 2, 0).
  static UpperBoundFunction two_log();
  // f(n) = n + 2; alpha = 1/2; N(k) = max(k - 2, 0).
  static UpperBoundFunction linear();
  // f(n) = 2 |lex_string(n)| + 2; the Berry rule read on indices.
  static UpperBoundFunction berry_length();
  // f(n) = lex_index of the plain-mode output of F on gamma(n + 1). Throws
  // kSearchBudgetExceeded if F does not halt within `budget`.
  static UpperBoundFunction from_bytecode(MachineProfile profile, BitString f_bytecode,
                                          std::uint64_t budget);

  // "const:<v>", "two_log", "linear", "berry", "solovay" (needs a profile).
  static UpperBoundFunction by_name(std::string_view name, const MachineProfile& profile);

 private:
  struct Memo {
    std::mutex mu;
    std::unordered_map<std::uint64_t, std::uint64_t> values;
  };
  std::string id_;
  Rule rule_;
  std::optional<TailCertificate> certificate_;
  std::shared_ptr<Memo> memo_;
};

// Exact sum_{n <= N} 2^-f(n).
Dyadic alpha_approx(const UpperBoundFunction& f, std::uint64_t N);

struct Membership {
  Dyadic partial;                  // sum_{n <= N}
  std::optional<std::uint64_t> k;  // largest k with N(k) <= N, if certified
  std::optional<Dyadic> upper;     // partial + 2^-k
};
Membership membership_check(const UpperBoundFunction& f, std::uint64_t N);

// First k binary digits of alpha = sum 2^-f(n) after the binary point.
// Tightens the enclosure a few times; throws kBoundaryAmbiguity when it
// still straddles a multiple of 2^-k, kInvalidArgument without a
// certificate or when alpha >= 1.
BitString certified_bits(const UpperBoundFunction& f, std::uint64_t k,
                         std::uint64_t max_terms = 1U << 22);

}  // namespace ait
