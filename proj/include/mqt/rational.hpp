#pragma once

/// @file rational.hpp
/// Exact rationals (arbitrary precision, always in lowest terms) and their
/// "n/d" string form.

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace mqt {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Always "n/d", including integers ("1/1", "0/1").
inline std::string to_fraction_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

/// Accepts "n/d" or a plain integer "n".
inline Rational parse_fraction(const std::string& s) {
  auto valid_int = [](const std::string& x) {
    if (x.empty()) return false;
    std::size_t i = (x[0] == '-' || x[0] == '+') ? 1 : 0;
    if (i == x.size()) return false;
    for (; i < x.size(); ++i)
      if (x[i] < '0' || x[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("not a fraction: '" + s + "'");
  BigInt n(num[0] == '+' ? num.substr(1) : num);
  BigInt d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  return Rational(n, d);
}

/// Short human form: "1/2", "0", "1".
inline std::string to_display_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return to_fraction_string(q);
}

}  // namespace mqt
