#include "ghostcheck/rational.hpp"

#include <cctype>
#include <algorithm>

#include "ghostcheck/error.hpp"

namespace ghostcheck {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

[[noreturn]] void bad_rational(std::string_view text, const char* why) {
  throw Error(ErrorCode::InvalidInput,
              "malformed rational \"" + std::string(text) + "\": " + why);
}

}  // namespace

Rational::Rational(std::int64_t value) {
  value_ = mpq_class(mpz_class(static_cast<long>(value)));
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_text = body.substr(0, slash);
  const std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num_text)) bad_rational(text, "numerator is not a decimal integer");
  if (!all_digits(den_text)) bad_rational(text, "denominator is not a decimal integer");

  mpz_class num(std::string(num_text), 10);
  mpz_class den(std::string(den_text), 10);
  if (den == 0) bad_rational(text, "zero denominator");
  if (negative) num = -num;
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::InvalidInput, "inverse of zero");
  mpq_class inv = 1 / value_;
  return Rational(std::move(inv));
}

Rational Rational::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  // Powers of coprime integers stay coprime, so no canonicalization needed.
  return Rational(mpq_class(num, den));
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::InvalidInput, "division by zero");
  value_ /= rhs.value_;
  return *this;
}

bool is_zero_vector(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

}  // namespace ghostcheck
