#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ait/bits.hpp"
#include "ait/code_tree.hpp"
#include "ait/natural.hpp"
#include "ait/profile.hpp"
#include "ait/upper_bound.hpp"

namespace ait {

// Online Kraft-Chaitin allocator over [0, 1).
//
// Free space is a list of aligned dyadic intervals (named by the codeword of
// their left endpoint) ordered left to right with strictly increasing sizes.
// A request takes the leftmost free interval that is large enough, which is
// also the smallest, issues its leftmost subinterval of the requested size
// and keeps the right halves split off on the way down. The size ordering is
// preserved, so free sizes are distinct powers of two and a request fails
// only when the total free weight is below 2^-k.
//
// With budget exponent c the capacity 2^c is normalized to weight 1: a
// request k has weight 2^-k relative to 2^c and receives a codeword of
// length k + c. With c = 0 (the default) codewords have length exactly k.
class KraftChaitinAllocator {
 public:
  explicit KraftChaitinAllocator(std::uint64_t budget_exponent = 0);

  // Throws kInsufficientBudget when no free interval of size 2^-(k+c) exists.
  BitString request(std::uint64_t k, const Natural& payload = 0);

  std::uint64_t budget_exponent() const { return c_; }
  const std::vector<BitString>& free_intervals() const { return free_; }
  const std::vector<std::pair<BitString, Natural>>& issued() const { return issued_; }
  Dyadic free_weight() const;
  Dyadic issued_weight() const;
  CodeTree tree() const;

 private:
  std::uint64_t c_;
  std::vector<BitString> free_;
  std::vector<std::pair<BitString, Natural>> issued_;
};

struct CompiledCode {
  CodeTree tree;
  MachineProfile profile;  // base profile with the tree registered
  std::uint64_t tree_id = 0;
  std::uint64_t overhead = 0;  // h4: program length minus codeword length
};

// Requests (f(n) + c, n) for n = 0..N and registers the tree. For each n the
// machine then has a program of length f(n) + c + overhead printing
// lex_string(n). Throws kInsufficientBudget unless sum_{n<=N} 2^-f(n) <= 2^c.
CompiledCode compile_function(const UpperBoundFunction& f, std::uint64_t c, std::uint64_t N,
                              const MachineProfile& base);

}  // namespace ait
