#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hypercover {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Malformed user input (file contents, command-line values).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands that live in different ambient dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A checked consequence of a proven statement failed. Signals a bug, never bad input.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

/// Greatest integer <= r, exact for negative and non-integral values.
inline BigInt floor_rational(const Rational& r) {
  BigInt num = numerator(r);
  const BigInt den = denominator(r);  // always positive
  BigInt q = num / den;               // truncates toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

inline int sign(const Rational& r) { return r.sign(); }
inline int sign(const BigInt& z) { return z.sign(); }

inline std::optional<std::int64_t> to_int64(const BigInt& z) {
  static const BigInt lo = std::numeric_limits<std::int64_t>::min();
  static const BigInt hi = std::numeric_limits<std::int64_t>::max();
  if (z < lo || z > hi) return std::nullopt;
  return static_cast<std::int64_t>(z);
}

/// Always "p/q" with q >= 1, e.g. "0/1", "-3/2".
inline std::string format_fraction(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace detail {

inline bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

inline BigInt parse_integer(std::string_view text) {
  if (!detail::is_decimal_integer(text))
    throw InputError("not an integer: \"" + std::string(text) + "\"");
  return BigInt(std::string(text));
}

/// Accepts "p/q" (q > 0) and bare integers "p". Decimal notation is rejected.
inline Rational parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!detail::is_decimal_integer(text))
      throw InputError("expected a fraction \"p/q\", got \"" + std::string(text) + "\"");
    return Rational(parse_integer(text));
  }
  const auto num_text = text.substr(0, slash);
  const auto den_text = text.substr(slash + 1);
  if (!detail::is_decimal_integer(num_text) || !detail::is_decimal_integer(den_text) ||
      den_text.front() == '-')
    throw InputError("expected a fraction \"p/q\", got \"" + std::string(text) + "\"");
  BigInt den = parse_integer(den_text);
  if (den == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
  return Rational(parse_integer(num_text), den);
}

}  // namespace hypercover
