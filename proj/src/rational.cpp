#include "omega/rational.hpp"

#include <charconv>

namespace omega {

int valuation(const Integer& n, int p) {
  if (n == 0) throw InfiniteValuation();
  Integer m = abs(n);
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& q, int p) {
  if (q == 0) throw InfiniteValuation();
  return valuation(numerator(q), p) - valuation(denominator(q), p);
}

Rational rational_power(int p, int k) {
  Integer pk = integer_power(Integer(p), static_cast<unsigned>(k < 0 ? -k : k));
  if (k >= 0) return Rational(pk);
  return Rational(Integer(1), pk);
}

Integer integer_power(const Integer& base, unsigned k) {
  return boost::multiprecision::pow(base, k);
}

bool in_localization(const Rational& q, int p) {
  Integer d = denominator(q);
  while (d % p == 0) d /= p;
  return d == 1;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(Integer(std::string(text)));
    Integer num(std::string(text.substr(0, slash)));
    Integer den(std::string(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace omega
