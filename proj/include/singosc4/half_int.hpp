#pragma once

#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>

namespace singosc4 {

/// Exact integer or half-integer, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int value) : twice_(2 * value) {}  // NOLINT(google-explicit-constructor)

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  /// Parses "3", "-2", "1/2", "-3/2". Decimal forms such as "0.5" are rejected.
  static HalfInt parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  /// Integer value; throws DomainError for a proper half-integer.
  int to_int() const;

  std::string str() const;

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }
  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr std::strong_ordering operator<=>(HalfInt a, HalfInt b) {
    return a.twice_ <=> b.twice_;
  }

 private:
  int twice_ = 0;
};

constexpr HalfInt abs(HalfInt h) { return HalfInt::from_twice(h.twice() < 0 ? -h.twice() : h.twice()); }

}  // namespace singosc4
