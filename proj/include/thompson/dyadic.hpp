#pragma once

// Exact dyadic rationals k/2^n, standard dyadic intervals and the binary
// addresses that name them. Everything here is immutable value types.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include "json.hpp"

namespace thompson {

using Integer = mpz_class;
using Rational = mpq_class;

// value = numerator / 2^exponent, kept canonical: exponent == 0 or the
// numerator is odd.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Dyadic(Integer numerator, std::uint64_t exponent);

  // 2^power for any integer power.
  static Dyadic pow2(long power);

  // Fails with ParseError on anything that is not an exact dyadic value.
  // Accepts "k", "k/m" (m a power of two) and "k/2^n".
  static Dyadic parse(std::string_view text);

  // Fails with NotThompson if the rational's reduced denominator is not a
  // power of two.
  static Dyadic from_rational(const Rational& value);

  const Integer& numerator() const { return num_; }
  std::uint64_t exponent() const { return exp_; }

  Rational to_rational() const;
  double to_double() const;
  bool is_zero() const { return num_ == 0; }
  int sign() const { return sgn(num_); }

  // Largest integer not above the value.
  Integer floor() const;

  // Plain fraction text: "0", "1", "-3/4".
  std::string to_string() const;
  // Power form: "3/2^3", "1/2^0".
  std::string to_power_string() const;

  Dyadic operator-() const;
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }
  Dyadic& operator-=(const Dyadic& b) { return *this = *this - b; }

  // Multiply by 2^power.
  Dyadic scaled(long power) const;

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void canonicalize();

  Integer num_{0};
  std::uint64_t exp_{0};
};

void to_json(nlohmann::json& j, const Dyadic& d);
void from_json(const nlohmann::json& j, Dyadic& d);

enum class Half : char { L = 'L', R = 'R' };

struct DyadicInterval;

// Path from [0,1] by successive halving; the empty address is [0,1].
class BinaryAddress {
 public:
  BinaryAddress() = default;
  // Fails with ParseError unless every character is 'L' or 'R'.
  explicit BinaryAddress(std::string_view bits);

  std::size_t depth() const { return bits_.size(); }
  bool is_root() const { return bits_.empty(); }
  Half at(std::size_t i) const { return static_cast<Half>(bits_[i]); }
  Half last() const { return static_cast<Half>(bits_.back()); }

  BinaryAddress child(Half h) const;
  BinaryAddress parent() const;
  BinaryAddress sibling() const;
  BinaryAddress concat(const BinaryAddress& suffix) const;
  // Remainder after removing `prefix`; requires prefix.is_prefix_of(*this).
  BinaryAddress suffix_after(const BinaryAddress& prefix) const;
  bool is_prefix_of(const BinaryAddress& other) const;

  // Position left-to-right among the 2^depth addresses of this depth.
  Integer index() const;
  static BinaryAddress from_index(std::size_t depth, const Integer& index);

  const std::string& str() const { return bits_; }

  // Lexicographic with L < R. For a prefix-free set this is left-to-right
  // order of the intervals.
  friend auto operator<=>(const BinaryAddress&, const BinaryAddress&) = default;

 private:
  std::string bits_;
};

struct DyadicInterval {
  Dyadic lo;
  Dyadic hi;

  DyadicInterval(Dyadic lo_, Dyadic hi_);

  Dyadic width() const { return hi - lo; }
  bool is_standard() const;
  bool contains(const DyadicInterval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  std::string to_string() const;

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

DyadicInterval interval_of_address(const BinaryAddress& a);
// Fails with NotStandard unless `interval.is_standard()`.
BinaryAddress address_of_interval(const DyadicInterval& interval);

}  // namespace thompson
