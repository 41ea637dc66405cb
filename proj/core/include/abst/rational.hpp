#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace abst {

// GMP keeps every mpq_class result in canonical (gcd-reduced) form.
using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "a/b", "a", or a decimal literal such as "0.125" (converted exactly).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

// Smallest integer k >= 0 with p * 2^k >= 1, i.e. ceil(log2(1/p)) for 0 < p <= 1.
unsigned ceil_log2_inverse(const Rational& p);

inline Rational make_rational(std::uint64_t num, std::uint64_t den) {
    Rational r{BigInt{std::to_string(num)}, BigInt{std::to_string(den)}};
    r.canonicalize();
    return r;
}

double to_double(const Rational& r);

}  // namespace abst
