#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ppj {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Used for probability thresholds and measure values.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class value);

  /// Accepts "n", "-n", "n/m" and finite decimals "a.b"; throws
  /// std::invalid_argument on anything else.
  static Rational parse(std::string_view text);

  [[nodiscard]] std::string str() const;

  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }

  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

  /// Sum of the binary lengths of numerator and denominator (|bin(0)| = 1).
  [[nodiscard]] std::size_t bit_size() const;

  [[nodiscard]] std::size_t hash() const;

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

/// Binary length of |n|; 1 for zero.
std::size_t bit_length(const mpz_class& n);

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace ppj

template <>
struct std::hash<ppj::Rational> {
  std::size_t operator()(const ppj::Rational& q) const noexcept { return q.hash(); }
};
