#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace lambdabv {

// Exact arithmetic for domain points. All geometric predicates (ordering,
// membership, disjointness) go through this type so they are decided with
// zero tolerance; function *values* stay in binary64.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational pow2(long long k) {
  if (k >= 0) return Rational(BigInt(1) << k);
  return Rational(BigInt(1), BigInt(1) << (-k));
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

// Parses "num/den" or "num" with optional leading '-'. Rejects empty parts,
// zero denominators and stray characters.
inline Rational parse_rational(const std::string& text) {
  const auto bad = [&](const char* why) {
    throw std::invalid_argument("bad rational '" + text + "': " + why);
  };
  if (text.empty()) bad("empty");
  const auto slash = text.find('/');
  const std::string num_s = text.substr(0, slash);
  const std::string den_s =
      slash == std::string::npos ? std::string("1") : text.substr(slash + 1);
  if (num_s.empty() || den_s.empty()) bad("missing part");
  const auto digits_only = [](const std::string& s, bool sign_ok) {
    for (size_t i = 0; i < s.size(); ++i) {
      if (i == 0 && sign_ok && (s[i] == '-' || s[i] == '+') && s.size() > 1) continue;
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  if (!digits_only(num_s, true) || !digits_only(den_s, false)) bad("not an integer ratio");
  BigInt num(num_s), den(den_s);
  if (den == 0) bad("zero denominator");
  return Rational(num, den);
}

// Canonical "num/den" form; integers print without the "/1".
inline std::string rational_to_string(const Rational& x) {
  const BigInt num = numerator(x);
  const BigInt den = denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline bool in_unit_interval(const Rational& x) { return x >= 0 && x <= 1; }

}  // namespace lambdabv
