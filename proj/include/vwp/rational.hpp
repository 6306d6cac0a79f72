#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace vwp {

using BigInt = mpz_class;
// Exact rational, always kept in lowest terms with a positive denominator
// (mpq_class maintains both through its operators).
using Rational = mpq_class;

// Accepts "7", "-3/4", "0.25", "2.5e-3".  Decimal forms are converted
// exactly (never through a binary float).
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);

bool is_integer(const Rational& q);
bool is_nonpositive_integer(const Rational& q);
// pre: is_integer(q) and the value fits in a long
long to_long(const Rational& q);

BigInt factorial(unsigned long n);
BigInt binomial_int(unsigned long n, unsigned long k);

Rational parse_rational_list_item(const std::string&);
std::vector<Rational> parse_rational_list(const std::string& csv);

}  // namespace vwp
