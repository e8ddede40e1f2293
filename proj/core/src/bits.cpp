#include "ait/bits.hpp"

#include <algorithm>

#include "ait/errors.hpp"

namespace ait {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedCode: return "MalformedCode";
    case ErrorKind::kOperandOutOfRange: return "OperandOutOfRange";
    case ErrorKind::kResourceLimit: return "ResourceLimit";
    case ErrorKind::kFingerprintMismatch: return "FingerprintMismatch";
    case ErrorKind::kCorruptLedger: return "CorruptLedger";
    case ErrorKind::kInsufficientBudget: return "InsufficientBudget";
    case ErrorKind::kUndiscoveredPrefix: return "UndiscoveredPrefix";
    case ErrorKind::kBoundaryAmbiguity: return "BoundaryAmbiguity";
    case ErrorKind::kSearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::kOracleDisagreement: return "OracleDisagreement";
    case ErrorKind::kNonIncreasingSchedule: return "NonIncreasingSchedule";
    case ErrorKind::kInvalidStream: return "InvalidStream";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

BitString::BitString(std::string_view digits) : digits_(digits) {
  if (!std::all_of(digits_.begin(), digits_.end(),
                   [](char c) { return c == '0' || c == '1'; })) {
    throw Error(ErrorKind::kInvalidArgument,
                "bit string may only contain '0' and '1': " + digits_);
  }
}

BitString BitString::zeros(std::size_t n) { return BitString(Raw{}, std::string(n, '0')); }

BitString BitString::ones(std::size_t n) { return BitString(Raw{}, std::string(n, '1')); }

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  std::string digits(width, '0');
  for (std::size_t i = 0; i < width && i < 64; ++i) {
    if ((value >> i) & 1U) digits[width - 1 - i] = '1';
  }
  return BitString(Raw{}, std::move(digits));
}

void BitString::append(std::string_view digits) { digits_ += BitString(digits).digits_; }

BitString BitString::suffix_from(std::size_t n) const {
  if (n >= digits_.size()) return {};
  return BitString(Raw{}, digits_.substr(n));
}

bool BitString::is_prefix_of(const BitString& other) const {
  return other.digits_.size() >= digits_.size() &&
         other.digits_.compare(0, digits_.size(), digits_) == 0;
}

std::string BitString::display() const { return digits_.empty() ? "ε" : digits_; }

bool length_lex_less(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.digits() < b.digits();
}

std::ostream& operator<<(std::ostream& os, const BitString& bits) {
  return os << bits.display();
}

}  // namespace ait
