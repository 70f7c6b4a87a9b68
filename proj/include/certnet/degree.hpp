#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "certnet/errors.hpp"

namespace certnet {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact certainty degree in [0, 1].
///
/// Backed by an arbitrary-precision rational so that min/max/complement,
/// decimal parsing and interval midpoints never round. Two degrees compare
/// equal iff they are the same rational number.
class Degree {
 public:
  Degree() = default;  // zero

  explicit Degree(Rational value) : value_(std::move(value)) {
    if (value_ < 0 || value_ > 1) {
      throw domain_error("degree out of range [0,1]: " + raw_string(value_));
    }
  }

  static Degree zero() { return Degree(); }
  static Degree one() { return Degree(Rational(1)); }

  /// Parses `0`, `1`, `0.25`, `1/3`, ... without rounding.
  static Degree parse(std::string_view text);

  const Rational& value() const { return value_; }

  /// 1 - x.
  Degree complement() const { return Degree(1 - value_); }

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  /// Shortest exact rendering: terminating decimals as decimals ("0.25"),
  /// everything else as a fraction ("1/3").
  std::string str() const;

  friend bool operator==(const Degree& a, const Degree& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const Degree& a, const Degree& b) { return !(a == b); }
  friend bool operator<(const Degree& a, const Degree& b) {
    return a.value_ < b.value_;
  }
  friend bool operator>(const Degree& a, const Degree& b) { return b < a; }
  friend bool operator<=(const Degree& a, const Degree& b) { return !(b < a); }
  friend bool operator>=(const Degree& a, const Degree& b) { return !(a < b); }

 private:
  static std::string raw_string(const Rational& r) {
    return r.str();
  }

  Rational value_;
};

inline const Degree& min(const Degree& a, const Degree& b) {
  return b < a ? b : a;
}

inline const Degree& max(const Degree& a, const Degree& b) {
  return a < b ? b : a;
}

inline Degree midpoint(const Degree& a, const Degree& b) {
  return Degree((a.value() + b.value()) / 2);
}

inline std::string Degree::str() const {
  const Integer num = boost::multiprecision::numerator(value_);
  const Integer den = boost::multiprecision::denominator(value_);

  Integer rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) {
    return num.str() + "/" + den.str();
  }

  const int digits = std::max(twos, fives);
  if (digits == 0) {
    return num.str();  // 0 or 1
  }
  Integer pow10 = 1;
  for (int i = 0; i < digits; ++i) pow10 *= 10;
  std::string frac = Integer(num * pow10 / den).str();
  if (static_cast<int>(frac.size()) < digits) {
    frac.insert(frac.begin(), digits - frac.size(), '0');
  }
  return "0." + frac;
}

inline Degree Degree::parse(std::string_view text) {
  const auto fail = [&](const std::string& why) -> parse_error {
    return parse_error(0, "invalid degree literal \"" + std::string(text) +
                              "\": " + why);
  };
  const auto all_digits = [](std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return c >= '0' && c <= '9'; });
  };
  const auto digits_value = [](std::string_view s) {
    Integer v = 0;
    for (char c : s) {
      v *= 10;
      v += c - '0';
    }
    return v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw fail("expected p/q");
    const Integer d = digits_value(den);
    if (d == 0) throw fail("zero denominator");
    return Degree(Rational(digits_value(num), d));
  }

  std::string_view whole = text;
  std::string_view frac;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    whole = text.substr(0, dot);
    frac = text.substr(dot + 1);
    if (!all_digits(frac)) throw fail("expected digits after '.'");
  }
  if (!all_digits(whole)) throw fail("expected a decimal number");

  Integer scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  return Degree(
      Rational(digits_value(whole) * scale + digits_value(frac), scale));
}

}  // namespace certnet
