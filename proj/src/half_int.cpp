#include "singosc4/half_int.hpp"

#include <charconv>

#include "singosc4/errors.hpp"

namespace singosc4 {

namespace {

int parse_int(std::string_view text, std::string_view whole) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("not an exact (half-)integer: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return HalfInt(parse_int(text, text));
  const int num = parse_int(text.substr(0, slash), text);
  const int den = parse_int(text.substr(slash + 1), text);
  if (den == 1) return HalfInt(num);
  if (den != 2) throw DomainError("denominator must be 1 or 2: '" + std::string(text) + "'");
  return from_twice(num);
}

int HalfInt::to_int() const {
  if (!is_integer()) throw DomainError("half-integer " + str() + " used where an integer is required");
  return twice_ / 2;
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

}  // namespace singosc4
