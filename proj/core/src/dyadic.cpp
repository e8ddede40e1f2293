#include "ait/natural.hpp"

#include <cmath>
#include <sstream>

#include "ait/errors.hpp"

namespace ait {

std::uint64_t bit_length(const Natural& n) {
  if (n <= 0) return 0;
  return boost::multiprecision::msb(n) + 1;
}

std::uint64_t saturate_u64(const Natural& n) {
  if (n > Natural(UINT64_MAX)) return UINT64_MAX;
  return static_cast<std::uint64_t>(n);
}

std::string to_string(const Natural& n) { return n.str(); }

Natural parse_natural(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorKind::kInvalidArgument, "not a natural number: '" + text + "'");
  }
  return Natural(text);
}

Dyadic Dyadic::inverse_pow2(std::uint64_t k) {
  Dyadic d;
  d.numerator_ = 1;
  d.exponent_ = k;
  return d;
}

Dyadic Dyadic::from_parts(Natural numerator, std::uint64_t exponent) {
  Dyadic d;
  d.numerator_ = std::move(numerator);
  d.exponent_ = exponent;
  d.normalize();
  return d;
}

void Dyadic::normalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  Natural magnitude = abs(numerator_);
  std::uint64_t shift = boost::multiprecision::lsb(magnitude);
  if (shift > exponent_) shift = exponent_;
  if (shift > 0) {
    numerator_ >>= shift;  // exact: the low `shift` bits are zero
    exponent_ -= shift;
  }
}

Dyadic& Dyadic::operator+=(const Dyadic& other) {
  if (other.exponent_ > exponent_) {
    numerator_ <<= (other.exponent_ - exponent_);
    exponent_ = other.exponent_;
    numerator_ += other.numerator_;
  } else {
    numerator_ += other.numerator_ << (exponent_ - other.exponent_);
  }
  normalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& other) {
  Dyadic negated = other;
  negated.numerator_ = -negated.numerator_;
  return *this += negated;
}

Dyadic Dyadic::times(const Natural& factor) const {
  return from_parts(numerator_ * factor, exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const std::uint64_t e = std::max(a.exponent_, b.exponent_);
  const Natural lhs = a.numerator_ << (e - a.exponent_);
  const Natural rhs = b.numerator_ << (e - b.exponent_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Natural Dyadic::floor_scaled(std::uint64_t k) const {
  if (k >= exponent_) return numerator_ << (k - exponent_);
  return numerator_ >> (exponent_ - k);
}

Natural Dyadic::ceil_scaled(std::uint64_t k) const {
  if (k >= exponent_) return numerator_ << (k - exponent_);
  Natural q = numerator_ >> (exponent_ - k);
  if ((q << (exponent_ - k)) != numerator_) q += 1;
  return q;
}

std::string Dyadic::to_string() const {
  std::ostringstream os;
  os << numerator_;
  if (exponent_ > 0) os << "/2^" << exponent_;
  return os.str();
}

Dyadic Dyadic::parse(const std::string& text) {
  const auto slash = text.find("/2^");
  if (slash == std::string::npos) return Dyadic(parse_natural(text));
  const Natural num = parse_natural(text.substr(0, slash));
  const std::string exp = text.substr(slash + 3);
  if (exp.empty() || exp.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorKind::kInvalidArgument, "bad dyadic exponent: '" + text + "'");
  }
  return from_parts(num, std::stoull(exp));
}

double Dyadic::approx() const {
  // Scale into double range by shifting both parts.
  Natural num = numerator_;
  std::uint64_t exp = exponent_;
  const std::uint64_t bits = bit_length(abs(num));
  if (bits > 60) {
    const std::uint64_t drop = std::min<std::uint64_t>(bits - 60, exp);
    num >>= drop;
    exp -= drop;
  }
  return std::ldexp(num.convert_to<double>(), -static_cast<int>(std::min<std::uint64_t>(exp, 100000)));
}

}  // namespace ait
