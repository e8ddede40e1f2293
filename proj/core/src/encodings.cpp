#include "ait/encodings.hpp"

#include "ait/errors.hpp"

namespace ait {

Natural lex_index(const BitString& x) {
  Natural value = 1;
  for (char c : x.digits()) {
    value <<= 1;
    if (c == '1') value |= 1;
  }
  return value - 1;
}

std::uint64_t lex_index_u64(std::string_view digits) {
  std::uint64_t value = 1;
  for (char c : digits) value = (value << 1) | (c == '1' ? 1U : 0U);
  return value - 1;
}

BitString lex_string(const Natural& n) {
  const Natural m = n + 1;
  const std::uint64_t width = bit_length(m);
  BitString out;
  for (std::uint64_t i = width - 1; i-- > 0;) {
    out.push_back(boost::multiprecision::bit_test(m, static_cast<unsigned>(i)));
  }
  return out;
}

std::size_t gamma_length(const Natural& n) { return 2 * (bit_length(n) - 1) + 1; }

BitString gamma_encode(const Natural& n) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "gamma code requires n >= 1");
  const std::uint64_t width = bit_length(n);
  BitString out = BitString::zeros(width - 1);
  for (std::uint64_t i = width; i-- > 0;) {
    out.push_back(boost::multiprecision::bit_test(n, static_cast<unsigned>(i)));
  }
  return out;
}

GammaDecoded gamma_decode(std::string_view digits, std::size_t offset) {
  std::size_t pos = offset;
  std::size_t zeros = 0;
  while (pos < digits.size() && digits[pos] == '0') {
    ++zeros;
    ++pos;
  }
  if (pos >= digits.size()) {
    throw Error(ErrorKind::kMalformedCode, "gamma prefix runs off the end of the stream");
  }
  if (digits.size() - pos < zeros + 1) {
    throw Error(ErrorKind::kMalformedCode, "gamma code is missing binary digits");
  }
  Natural value = 0;
  for (std::size_t i = 0; i <= zeros; ++i) {
    value <<= 1;
    if (digits[pos + i] == '1') value |= 1;
  }
  return {std::move(value), 2 * zeros + 1};
}

Natural cantor_pair(const Natural& a, const Natural& b) {
  const Natural s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Natural, Natural> cantor_unpair(const Natural& z) {
  // w = floor((sqrt(8z + 1) - 1) / 2) is the anti-diagonal holding z.
  const Natural disc = 8 * z + 1;
  Natural w = (boost::multiprecision::sqrt(disc) - 1) / 2;
  const Natural base = w * (w + 1) / 2;
  Natural b = z - base;
  Natural a = w - b;
  return {std::move(a), std::move(b)};
}

Natural triple_code(const BitString& x, const BitString& p, const Natural& t) {
  return cantor_pair(cantor_pair(lex_index(x), lex_index(p)), t);
}

Triple triple_decode(const Natural& code) {
  auto [xp, t] = cantor_unpair(code);
  auto [xi, pi] = cantor_unpair(xp);
  return {lex_string(xi), lex_string(pi), std::move(t)};
}

}  // namespace ait
