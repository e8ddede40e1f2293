#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ait {

// Arbitrary-precision natural numbers. Triple codes grow quadratically per
// pairing level, so 64-bit integers overflow at desk-scale inputs.
using Natural = boost::multiprecision::cpp_int;

// Number of binary digits of n (0 for n == 0).
std::uint64_t bit_length(const Natural& n);

// Saturating conversion: values above UINT64_MAX map to UINT64_MAX.
std::uint64_t saturate_u64(const Natural& n);

std::string to_string(const Natural& n);
Natural parse_natural(const std::string& text);

// Exact dyadic rational numerator / 2^exponent, kept normalized (numerator
// odd or exponent zero). Every weight in the project (Omega, Kraft sums,
// ledger weights, partial sums of 2^-f) is one of these; no floating point.
class Dyadic {
 public:
  Dyadic() = default;
  explicit Dyadic(Natural integer) : numerator_(std::move(integer)) {}

  // 2^-k for k >= 0.
  static Dyadic inverse_pow2(std::uint64_t k);
  static Dyadic from_parts(Natural numerator, std::uint64_t exponent);

  const Natural& numerator() const { return numerator_; }
  std::uint64_t exponent() const { return exponent_; }
  bool is_zero() const { return numerator_ == 0; }

  Dyadic& operator+=(const Dyadic& other);
  Dyadic& operator-=(const Dyadic& other);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  Dyadic times(const Natural& factor) const;

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.numerator_ == b.numerator_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  // floor(value * 2^k); requires a nonnegative value.
  Natural floor_scaled(std::uint64_t k) const;
  // ceil(value * 2^k); requires a nonnegative value.
  Natural ceil_scaled(std::uint64_t k) const;

  // "numerator/2^exponent" (or just the numerator when exponent is 0).
  std::string to_string() const;
  static Dyadic parse(const std::string& text);
  double approx() const;

 private:
  void normalize();

  Natural numerator_ = 0;
  std::uint64_t exponent_ = 0;
};

}  // namespace ait
