#include "sqpack/rational.hpp"

#include <climits>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace sqpack {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt to_bigint(std::int64_t v) {
  // mpz_class has no int64_t constructor on every platform; go through text
  // only when the value does not fit a long.
  if (v >= static_cast<std::int64_t>(LONG_MIN) &&
      v <= static_cast<std::int64_t>(LONG_MAX)) {
    return BigInt(static_cast<long>(v));
  }
  return BigInt(std::to_string(v));
}

}  // namespace

Rational::Rational(mpq_class value) : value_(std::move(value)) {
  value_.canonicalize();
}

Rational::Rational(std::int64_t value) : value_(to_bigint(value)) {}

Rational::Rational(std::int64_t num, std::int64_t den)
    : Rational(to_bigint(num), to_bigint(den)) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(const BigInt& value) : value_(value) {}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num_text = body.substr(0, slash);
  std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw std::invalid_argument("malformed rational \"" + std::string(text) + "\"");
  }
  BigInt num(std::string(num_text), 10);
  BigInt den(std::string(den_text), 10);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
  }
  if (negative) num = -num;
  return Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt num = value_.get_num() * scale;
  if (num < 0) num = -num;
  const BigInt& den = value_.get_den();
  BigInt q = num / den;
  BigInt r = num - q * den;
  if (2 * r >= den) q += 1;
  std::string body = q.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  if (sign() < 0 && q != 0) body.insert(0, "-");
  return body;
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

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
  if (rhs.sign() == 0) throw std::domain_error("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational best_rational_approximation(double x, std::int64_t max_denominator) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
  if (max_denominator < 1) throw std::invalid_argument("max_denominator must be >= 1");

  const bool negative = x < 0;
  long double target = std::fabs(static_cast<long double>(x));
  const long double whole = std::floor(target);
  long double frac = target - whole;

  // Convergents of the fractional part: h/k with h_{-1}=1,k_{-1}=0,h_0=0,k_0=1.
  std::int64_t h_prev = 1, k_prev = 0;
  std::int64_t h = 0, k = 1;
  long double y = frac;
  while (y > 0) {
    const long double inv = 1.0L / y;
    if (inv > 1e18L) break;
    const auto term = static_cast<std::int64_t>(std::floor(inv));
    y = inv - static_cast<long double>(term);
    if (term > (max_denominator - k_prev) / k) {
      // Largest semiconvergent that still fits the bound.
      const std::int64_t t = (max_denominator - k_prev) / k;
      if (t > 0) {
        const std::int64_t hs = t * h + h_prev;
        const std::int64_t ks = t * k + k_prev;
        const long double err_semi = std::fabs(frac - static_cast<long double>(hs) / ks);
        const long double err_conv = std::fabs(frac - static_cast<long double>(h) / k);
        if (err_semi < err_conv) {
          h = hs;
          k = ks;
        }
      }
      break;
    }
    const std::int64_t h_next = term * h + h_prev;
    const std::int64_t k_next = term * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    if (std::fabs(frac - static_cast<long double>(h) / k) == 0) break;
  }

  Rational result = Rational(static_cast<std::int64_t>(whole)) + Rational(h, k);
  return negative ? -result : result;
}

}  // namespace sqpack
