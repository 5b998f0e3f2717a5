#include "bubbledyn/complex_parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <regex>
#include <string>

namespace bubbledyn {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<int> parse_int(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<Complex> parse_complex(std::string_view text) {
  static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex real_only("^([+-]?" + num + ")$");
  static const std::regex imag_only("^([+-]?)(" + num + ")?[ij]$");
  static const std::regex both("^([+-]?" + num + ")([+-])(" + num + ")?[ij]$");

  const std::string s(trim(text));
  std::smatch m;
  auto coefficient = [](const std::ssub_match& sign, const std::ssub_match& digits) -> std::optional<double> {
    double magnitude = 1.0;
    if (digits.matched) {
      const auto v = parse_double(digits.str());
      if (!v) return std::nullopt;
      magnitude = *v;
    }
    return sign.str() == "-" ? -magnitude : magnitude;
  };

  if (std::regex_match(s, m, real_only)) {
    const auto re = parse_double(m[1].str());
    if (!re) return std::nullopt;
    return Complex{*re, 0.0};
  }
  if (std::regex_match(s, m, imag_only)) {
    const auto im = coefficient(m[1], m[2]);
    if (!im) return std::nullopt;
    return Complex{0.0, *im};
  }
  if (std::regex_match(s, m, both)) {
    const auto re = parse_double(m[1].str());
    const auto im = coefficient(m[2], m[3]);
    if (!re || !im) return std::nullopt;
    return Complex{*re, *im};
  }
  return std::nullopt;
}

}  // namespace bubbledyn
