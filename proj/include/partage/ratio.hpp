#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "partage/errors.hpp"

namespace partage {

using BigInt = boost::multiprecision::cpp_int;

// Exact arbitrary-precision rational, always stored in lowest terms with a
// positive denominator. Every quantity the share computations touch is a
// Ratio; the library has no floating-point path. Text form is "p/q" with an
// optional sign on p and q > 0, or a bare integer meaning p/1.
class Ratio {
 public:
  Ratio() = default;
  template <std::integral T>
  Ratio(T value) : value_(value) {}  // NOLINT: counts promote freely
  explicit Ratio(BigInt value) : value_(std::move(value)) {}
  template <std::floating_point T>
  Ratio(T) = delete;  // no silent contamination from floating point

  Ratio(BigInt numerator, BigInt denominator) {
    if (denominator.is_zero()) {
      throw ValidationError(Errc::MalformedRatio, "ratio with zero denominator");
    }
    if (denominator < 0) {
      numerator = -numerator;
      denominator = -denominator;
    }
    value_ = Backend(std::move(numerator), std::move(denominator));
  }

  static Ratio parse(std::string_view text);

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_.is_zero(); }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return value_.sign(); }

  friend Ratio operator+(const Ratio& a, const Ratio& b) { return Ratio(Backend(a.value_ + b.value_)); }
  friend Ratio operator-(const Ratio& a, const Ratio& b) { return Ratio(Backend(a.value_ - b.value_)); }
  friend Ratio operator*(const Ratio& a, const Ratio& b) { return Ratio(Backend(a.value_ * b.value_)); }
  friend Ratio operator/(const Ratio& a, const Ratio& b) {
    if (b.is_zero()) {
      throw InternalError(Errc::DivisionByZero, "ratio division by zero");
    }
    return Ratio(Backend(a.value_ / b.value_));
  }
  friend Ratio operator-(const Ratio& a) { return Ratio(Backend(-a.value_)); }

  Ratio& operator+=(const Ratio& other) { value_ += other.value_; return *this; }
  Ratio& operator-=(const Ratio& other) { value_ -= other.value_; return *this; }
  Ratio& operator*=(const Ratio& other) { value_ *= other.value_; return *this; }
  Ratio& operator/=(const Ratio& other) { return *this = *this / other; }

  friend bool operator==(const Ratio& a, const Ratio& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    return a.value_.compare(b.value_) <=> 0;
  }

  // Lowest-terms "p/q", or bare "p" when the denominator is 1.
  std::string str() const {
    std::string out = numerator().str();
    const BigInt den = denominator();
    if (den != 1) {
      out += '/';
      out += den.str();
    }
    return out;
  }

  // Decimal rendering with the given number of fraction digits, rounded
  // half-even. Display only; never feeds back into computation.
  std::string decimal(unsigned digits) const;

  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.str(); }

 private:
  using Backend = boost::multiprecision::cpp_rational;

  explicit Ratio(Backend value) : value_(std::move(value)) {}

  Backend value_;
};

namespace detail {

// Digits only, no sign. Leading zeros are stripped before handing the text
// to the bigint constructor, which would otherwise read them as octal.
inline bool parse_digits(std::string_view text, BigInt& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  std::size_t first = text.find_first_not_of('0');
  if (first == std::string_view::npos) {
    out = 0;
    return true;
  }
  out = BigInt(std::string(text.substr(first)));
  return true;
}

}  // namespace detail

inline Ratio Ratio::parse(std::string_view text) {
  const auto fail = [text] {
    return ValidationError(Errc::MalformedRatio,
                           "malformed ratio '" + std::string(text) + "' (expected p or p/q with q > 0)");
  };
  std::string_view num_part = text;
  std::string_view den_part;
  bool has_den = false;
  if (const std::size_t slash = text.find('/'); slash != std::string_view::npos) {
    num_part = text.substr(0, slash);
    den_part = text.substr(slash + 1);
    has_den = true;
  }
  bool negative = false;
  if (!num_part.empty() && (num_part.front() == '+' || num_part.front() == '-')) {
    negative = num_part.front() == '-';
    num_part.remove_prefix(1);
  }
  BigInt num;
  if (!detail::parse_digits(num_part, num)) throw fail();
  if (negative) num = -num;
  if (!has_den) return Ratio(std::move(num), 1);
  BigInt den;
  if (!detail::parse_digits(den_part, den)) throw fail();
  if (den.is_zero()) throw fail();
  return Ratio(std::move(num), std::move(den));
}

inline std::string Ratio::decimal(unsigned digits) const {
  BigInt num = numerator();
  const BigInt den = denominator();
  const bool negative = num < 0;
  if (negative) num = -num;
  const BigInt scale = boost::multiprecision::pow(BigInt(10), digits);
  BigInt scaled = num * scale;
  BigInt quot = scaled / den;
  const BigInt twice_rem = (scaled % den) * 2;
  if (twice_rem > den || (twice_rem == den && quot % 2 != 0)) ++quot;
  std::string out;
  if (negative && !quot.is_zero()) out += '-';
  out += BigInt(quot / scale).str();
  if (digits > 0) {
    std::string frac = BigInt(quot % scale).str();
    out += '.';
    out.append(digits - frac.size(), '0');
    out += frac;
  }
  return out;
}

// Tally of exact-rational operations, for comparing the cost of evaluation
// strategies. Subtractions are counted as additions. Counters only grow
// during a computation; reset() is the one way back to zero.
struct OpCount {
  std::uint64_t additions = 0;
  std::uint64_t multiplications = 0;
  std::uint64_t divisions = 0;

  void reset() { *this = OpCount{}; }
  std::uint64_t total() const { return additions + multiplications + divisions; }

  friend bool operator==(const OpCount&, const OpCount&) = default;
  friend OpCount operator-(const OpCount& a, const OpCount& b) {
    return {a.additions - b.additions, a.multiplications - b.multiplications,
            a.divisions - b.divisions};
  }
};

// Arithmetic front end that tallies into an optional counter. A null counter
// means "don't count"; the arithmetic is identical either way. Each
// computation owns its own counter; nothing here is shared across threads.
class RatioOps {
 public:
  explicit RatioOps(OpCount* count = nullptr) : count_(count) {}

  Ratio add(const Ratio& a, const Ratio& b) const {
    if (count_) ++count_->additions;
    return a + b;
  }
  Ratio sub(const Ratio& a, const Ratio& b) const {
    if (count_) ++count_->additions;
    return a - b;
  }
  Ratio mul(const Ratio& a, const Ratio& b) const {
    if (count_) ++count_->multiplications;
    return a * b;
  }
  Ratio div(const Ratio& a, const Ratio& b) const {
    if (count_) ++count_->divisions;
    return a / b;
  }

 private:
  OpCount* count_;
};

// base^exp by binary exponentiation; multiplications are tallied.
inline Ratio pow(const Ratio& base, std::uint64_t exp, const RatioOps& ops = RatioOps()) {
  Ratio result = 1;
  Ratio square = base;
  while (exp > 0) {
    if (exp & 1) result = ops.mul(result, square);
    exp >>= 1;
    if (exp > 0) square = ops.mul(square, square);
  }
  return result;
}

}  // namespace partage
