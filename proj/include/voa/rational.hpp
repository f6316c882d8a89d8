#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace voa {

// Exact rational coefficients. All kernel arithmetic is exact; there is no
// floating point anywhere in the library.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string rat_string(const Rational& r) { return r.get_str(); }

// Level grammar: optional sign, integer or integer/integer ("p/q").
// Reports the offending position on failure.
inline Rational parse_rational(std::string_view s) {
    auto fail = [&](std::size_t pos, const std::string& what) {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what +
                                    " in '" + std::string(s) + "'");
    };
    std::size_t i = 0;
    auto read_int = [&]() -> std::string {
        std::string out;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') out.push_back('-');
            ++i;
        }
        std::size_t start = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') out.push_back(s[i++]);
        if (i == start) fail(i, "expected digit");
        return out;
    };
    if (s.empty()) fail(0, "empty rational");
    std::string num = read_int();
    std::string den = "1";
    if (i < s.size() && s[i] == '/') {
        ++i;
        den = read_int();
    }
    if (i != s.size()) fail(i, "trailing characters");
    Integer d{den};
    if (sgn(d) == 0) fail(s.find('/') + 1, "zero denominator");
    Rational r{Integer(num), d};
    r.canonicalize();
    return r;
}

// int64 view of an exact integer, for JSON serialization of levels.
inline std::int64_t to_int64(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer too large for report serialization");
    return z.get_si();
}

}  // namespace voa
