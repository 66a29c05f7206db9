#include "groupwalk/rational.hpp"

#include <cctype>

namespace groupwalk {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  using boost::multiprecision::cpp_int;
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  Rational value;
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw Error(ErrorKind::ConfigError, "bad fraction '" + text + "'");
    cpp_int d(den);
    if (d == 0) throw Error(ErrorKind::ConfigError, "zero denominator in '" + text + "'");
    value = Rational(cpp_int(num), d);
  } else {
    auto dot = s.find('.');
    if (dot == std::string::npos) {
      if (!all_digits(s)) throw Error(ErrorKind::ConfigError, "bad number '" + text + "'");
      value = Rational(cpp_int(s));
    } else {
      std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
      if (whole.empty()) whole = "0";
      if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
        throw Error(ErrorKind::ConfigError, "bad decimal '" + text + "'");
      cpp_int scale = 1;
      for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
      value = Rational(cpp_int(whole) * scale + cpp_int(frac.empty() ? "0" : frac), scale);
    }
  }
  return negative ? -value : value;
}

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace groupwalk
