#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace omega {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when asked for the valuation of zero.
class InfiniteValuation : public std::domain_error {
 public:
  InfiniteValuation() : std::domain_error("valuation of zero is infinite") {}
};

/// Exponent of the prime p in the nonzero rational q.
int valuation(const Rational& q, int p);
int valuation(const Integer& n, int p);

/// p^k as an exact rational; k may be negative.
Rational rational_power(int p, int k);
Integer integer_power(const Integer& base, unsigned k);

/// True when the denominator of q is a power of p.
bool in_localization(const Rational& q, int p);

double to_double(const Rational& q);

/// "n" or "n/d" in lowest terms.
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

bool is_prime(int p);

}  // namespace omega
