#include "abst/rational.hpp"

#include "abst/errors.hpp"

#include <algorithm>
#include <cctype>

namespace abst {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw ParseError("malformed rational '" + std::string(text) + "'");
        }
        BigInt d{std::string(den), 10};
        if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        value = Rational{BigInt{std::string(num), 10}, d};
        value.canonicalize();
    } else {
        auto dot = s.find('.');
        auto int_part = s.substr(0, dot);
        auto frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part))) {
            throw ParseError("malformed number '" + std::string(text) + "'");
        }
        BigInt scale = 1;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
        std::string digits = std::string(int_part) + std::string(frac_part);
        value = Rational{BigInt{digits.empty() ? std::string("0") : digits, 10}, scale};
        value.canonicalize();
    }
    return negative ? Rational{-value} : value;
}

std::string to_string(const Rational& r) {
    return r.get_str();
}

unsigned ceil_log2_inverse(const Rational& p) {
    const BigInt& a = p.get_num();
    const BigInt& b = p.get_den();
    if (a <= 0) throw InvalidDistribution("ceil_log2_inverse requires a positive argument");
    if (a >= b) return 0;
    const auto la = mpz_sizeinbase(a.get_mpz_t(), 2);
    const auto lb = mpz_sizeinbase(b.get_mpz_t(), 2);
    // a << (lb - la) has the same bit length as b, so k is that shift or one more.
    auto k = static_cast<unsigned>(lb - la);
    BigInt shifted = a << k;
    return shifted >= b ? k : k + 1;
}

double to_double(const Rational& r) {
    return r.get_d();
}

}  // namespace abst
