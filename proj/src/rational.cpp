#include "cohft/rational.hpp"

#include <charconv>

namespace cohft {

namespace {

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw StructuralError("malformed rational '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(Integer(parse_integer(text, text)));
  std::int64_t num = parse_integer(text.substr(0, slash), text);
  std::int64_t den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw StructuralError("zero denominator in rational '" + std::string(text) + "'");
  return Rational(Integer(num), Integer(den));
}

std::string to_string(const Rational& value) {
  auto num = static_cast<std::int64_t>(value.numerator());
  auto den = static_cast<std::int64_t>(value.denominator());
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace cohft
