#include "rframes/number_format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <system_error>

namespace rframes {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) return "0";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::general, 12);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

std::string format_float(double x) {
  std::string s = format_real(x);
  if (s.find_first_of(".eni") == std::string::npos) s += ".0";
  return s;
}

std::string format_speed(const Speedd& s) {
  return s.is_infinite() ? "inf" : format_float(s.value());
}

double round_significant(double x) {
  if (!std::isfinite(x) || x == 0) return x == 0 ? 0.0 : x;
  const std::string s = format_real(x);
  double out = 0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

double parse_real(std::string_view text, const std::string& field) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
    text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t'))
    text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw DomainError(field, "not a number: '" + std::string(text) + "'");
  if (!std::isfinite(value))
    throw DomainError(field, "must be finite: '" + std::string(text) + "'");
  return value;
}

Speedd parse_speed(std::string_view text, const std::string& field) {
  if (text == "inf" || text == "infinity" || text == "INF" || text == "Infinity")
    return Speedd::infinite();
  const double v = parse_real(text, field);
  if (v < 0) throw DomainError(field, "speed must be >= 0");
  return Speedd::finite(v);
}

}  // namespace rframes
