#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "groupwalk/errors.hpp"

namespace groupwalk {

/// Exact arithmetic backend. Probabilities in this mode never drift, so
/// oracle tests can assert equalities and sharp inequalities.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "a/b", a decimal like "0.25", or a plain integer, exactly.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace groupwalk
