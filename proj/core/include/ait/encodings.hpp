#pragma once

#include <cstddef>
#include <string_view>
#include <utility>

#include "ait/bits.hpp"
#include "ait/natural.hpp"

namespace ait {

// Length-lexicographic bijection: lex_index(x) = 2^|x| - 1 + bin(x).
//   ε -> 0, "0" -> 1, "1" -> 2, "00" -> 3, ...
Natural lex_index(const BitString& x);
std::uint64_t lex_index_u64(std::string_view digits);  // |x| <= 63
BitString lex_string(const Natural& n);

// Elias gamma: floor(log2 n) zeros followed by the binary digits of n.
// Throws kInvalidArgument for n == 0.
BitString gamma_encode(const Natural& n);
std::size_t gamma_length(const Natural& n);

struct GammaDecoded {
  Natural value;
  std::size_t consumed = 0;
};

// Decodes one gamma code starting at `offset`. Throws kMalformedCode when
// the zeros run off the end of `digits` or the binary part is truncated.
GammaDecoded gamma_decode(std::string_view digits, std::size_t offset = 0);
inline GammaDecoded gamma_decode(const BitString& bits, std::size_t offset = 0) {
  return gamma_decode(bits.digits(), offset);
}

// Cantor pairing pi(a, b) = (a + b)(a + b + 1)/2 + b and its inverse.
Natural cantor_pair(const Natural& a, const Natural& b);
std::pair<Natural, Natural> cantor_unpair(const Natural& z);

struct Triple {
  BitString x;
  BitString p;
  Natural t;

  friend bool operator==(const Triple&, const Triple&) = default;
};

// <x, p, t> = pi(pi(lex_index(x), lex_index(p)), t).
Natural triple_code(const BitString& x, const BitString& p, const Natural& t);
Triple triple_decode(const Natural& code);

}  // namespace ait
