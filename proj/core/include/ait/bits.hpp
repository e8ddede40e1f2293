#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace ait {

// A finite binary word. Stored as ASCII '0'/'1' digits so that it can be
// hashed, ordered and serialized without conversion; bit 0 is the first
// (leftmost) digit.
class BitString {
 public:
  BitString() = default;
  // Throws ait::Error(kInvalidArgument) on characters other than '0'/'1'.
  explicit BitString(std::string_view digits);

  static BitString zeros(std::size_t n);
  static BitString ones(std::size_t n);
  // `width` low-order bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t width);

  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  bool operator[](std::size_t i) const { return digits_[i] == '1'; }

  void push_back(bool bit) { digits_.push_back(bit ? '1' : '0'); }
  void append(const BitString& other) { digits_ += other.digits_; }
  void append(std::string_view digits);
  void pop_back() { digits_.pop_back(); }

  BitString prefix(std::size_t n) const { return BitString(Raw{}, digits_.substr(0, n)); }
  BitString suffix_from(std::size_t n) const;
  bool is_prefix_of(const BitString& other) const;

  std::string_view digits() const { return digits_; }
  // Machine-facing form: empty word is the empty string.
  const std::string& str() const { return digits_; }
  // Human-facing form: empty word is rendered as "ε".
  std::string display() const;

  friend BitString operator+(BitString a, const BitString& b) {
    a.append(b);
    return a;
  }
  friend bool operator==(const BitString&, const BitString&) = default;
  // Plain lexicographic order on digits; see length_lex_less for the
  // length-lexicographic order used by the natural-number identification.
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    return a.digits_ <=> b.digits_;
  }

 private:
  struct Raw {};
  BitString(Raw, std::string digits) : digits_(std::move(digits)) {}

  std::string digits_;
};

bool length_lex_less(const BitString& a, const BitString& b);

std::ostream& operator<<(std::ostream& os, const BitString& bits);

}  // namespace ait

template <>
struct std::hash<ait::BitString> {
  std::size_t operator()(const ait::BitString& b) const noexcept {
    return std::hash<std::string_view>{}(b.digits());
  }
};
