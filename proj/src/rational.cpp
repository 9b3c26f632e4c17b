#include "ppj/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace ppj {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  mpq_class value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) {
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(std::string(whole) + std::string(frac), 10);
    value = mpq_class(digits, scale);
  } else {
    if (!all_digits(body)) {
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }
    value = mpq_class(mpz_class(std::string(body), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(std::move(value));
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::size_t bit_length(const mpz_class& n) {
  if (n == 0) return 1;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

std::size_t Rational::bit_size() const {
  return bit_length(value_.get_num()) + bit_length(value_.get_den());
}

namespace {

std::size_t hash_mpz(const mpz_class& n, std::size_t seed) {
  const auto* z = n.get_mpz_t();
  seed ^= static_cast<std::size_t>(mpz_sgn(z)) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  for (std::size_t i = 0; i < mpz_size(z); ++i) {
    seed ^= static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))) +
            0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}

}  // namespace

std::size_t Rational::hash() const {
  // Lowest terms make (num, den) canonical.
  return hash_mpz(value_.get_den(), hash_mpz(value_.get_num(), 0));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace ppj
