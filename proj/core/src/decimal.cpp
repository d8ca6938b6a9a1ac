#include "lfd/decimal.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace lfd {

std::string format_decimal(double value, int max_places) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot format non-finite value");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, max_places);
  if (ec != std::errc()) throw std::invalid_argument("value too large to format");
  std::string text(buf, end);
  if (text.find('.') != std::string::npos) {
    while (text.back() == '0') text.pop_back();
    if (text.back() == '.') text.pop_back();
  }
  if (text == "-0") text = "0";
  return text;
}

std::optional<double> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    ++i;
  }
  std::size_t digits = 0;
  bool seen_dot = false;
  for (std::size_t j = i; j < text.size(); ++j) {
    const char c = text[j];
    if (c >= '0' && c <= '9') {
      ++digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      return std::nullopt;
    }
  }
  if (digits == 0) return std::nullopt;

  std::string_view body = text.substr(i);
  std::string tmp;
  if (body.front() == '.') {
    tmp = "0" + std::string(body);
    body = tmp;
  }
  double value = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value,
                                   std::chars_format::fixed);
  if (ec != std::errc() || ptr != body.data() + body.size()) return std::nullopt;
  return negative ? -value : value;
}

}  // namespace lfd
