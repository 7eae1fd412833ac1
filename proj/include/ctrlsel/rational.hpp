#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ctrlsel {

/// Exact rational scalar. mpq_class keeps values canonical (gcd 1, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;

inline bool is_integer(const Rational& q) { return mpz_divisible_p(q.get_num_mpz_t(), q.get_den_mpz_t()) != 0; }

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Fixed-point rendering rounded half away from zero to `digits` places.
std::string to_decimal(const Rational& q, int digits = 6);

/// Accepts "p", "-p", "p/q". Throws Error(Errc::Parse) on malformed input or q == 0.
Rational parse_rational(std::string_view text);

}  // namespace ctrlsel
