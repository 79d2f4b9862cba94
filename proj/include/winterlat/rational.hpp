#ifndef WINTERLAT_RATIONAL_HPP
#define WINTERLAT_RATIONAL_HPP

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "winterlat/error.hpp"

namespace winterlat {

// Mixed rational/int equality recurses forever under C++20 rewritten operators in Boost 1.74;
// compare against Rational(k), never a bare integer.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r)
{
  return boost::rational_cast<double>(r);
}

inline Rational abs(const Rational& r)
{
  return r < 0 ? -r : r;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t floor(const Rational& r)
{
  return floor_div(r.numerator(), r.denominator());
}

inline std::int64_t ceil(const Rational& r)
{
  return -floor_div(-r.numerator(), r.denominator());
}

/// Non-negative residue of a modulo m (m > 0).
inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& r)
{
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace detail {

inline std::int64_t parse_int(std::string_view s, std::string_view whole)
{
  if (s.empty()) throw Error(ErrorKind::Parse, "empty integer in '" + std::string(whole) + "'");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw Error(ErrorKind::Parse, "bad integer '" + std::string(whole) + "'");
  std::int64_t v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw Error(ErrorKind::Parse, "bad rational '" + std::string(whole) + "'");
    v = v * 10 + (s[i] - '0');
    if (v > (std::int64_t{1} << 52)) throw Error(ErrorKind::Parse, "integer too large in '" + std::string(whole) + "'");
  }
  return neg ? -v : v;
}

}  // namespace detail

/// Parses "a/b", "a", or a finite decimal such as "3.75" into an exact rational.
inline Rational parse_rational(std::string_view text)
{
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  const std::string_view s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = detail::parse_int(trim(s.substr(0, slash)), s);
    const auto den = detail::parse_int(trim(s.substr(slash + 1)), s);
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (fp.size() > 12) throw Error(ErrorKind::Parse, "too many decimals in '" + std::string(s) + "'");
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.remove_prefix(1);
    const std::int64_t whole = ip.empty() ? 0 : detail::parse_int(ip, s);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    const std::int64_t frac = fp.empty() ? 0 : detail::parse_int(fp, s);
    if (!fp.empty() && (fp[0] == '-' || fp[0] == '+')) throw Error(ErrorKind::Parse, "bad decimal '" + std::string(s) + "'");
    Rational v = Rational(whole) + Rational(frac, scale);
    return neg ? -v : v;
  }
  return Rational(detail::parse_int(s, s));
}

}  // namespace winterlat

#endif  // WINTERLAT_RATIONAL_HPP
