#pragma once

#include <string>
#include <string_view>

#include "rframes/speed.hpp"

namespace rframes {

/// 12 significant digits, "C" locale, -0 printed as 0. "inf" for +infinity.
std::string format_real(double x);

/// Like format_real, but always contains '.' or an exponent so the text
/// reads back as a floating value ("2" -> "2.0").
std::string format_float(double x);

/// format_float, or "inf" for an infinite speed.
std::string format_speed(const Speedd& s);

/// x rounded to 12 significant digits (the value format_real prints).
double round_significant(double x);

/// Locale-independent full-string parse. Rejects trailing garbage.
/// Throws DomainError(field, ...) on failure.
double parse_real(std::string_view text, const std::string& field);

/// Accepts a nonnegative number or "inf"/"infinity".
Speedd parse_speed(std::string_view text, const std::string& field);

}  // namespace rframes
