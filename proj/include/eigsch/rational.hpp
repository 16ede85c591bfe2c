#pragma once

#include <gmpxx.h>

#include <cctype>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eigsch {

using Integer = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

/// Parses `[+-]digits[/digits]`. Throws std::invalid_argument on anything else.
inline Rational parse_rational(std::string_view text) {
    std::size_t pos = 0;
    auto fail = [&] { throw std::invalid_argument("malformed rational: '" + std::string(text) + "'"); };
    std::string num;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') num.push_back('-');
        ++pos;
    }
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) num.push_back(text[pos++]);
    if (pos == start) fail();
    std::string den = "1";
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        start = pos;
        den.clear();
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) den.push_back(text[pos++]);
        if (pos == start) fail();
    }
    if (pos != text.size()) fail();
    Integer d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(Integer(num, 10), d);
    q.canonicalize();
    return q;
}

/// p/q in lowest terms; mpq_class(p, q) alone leaves the fraction uncanonicalized.
inline Rational ratio(long p, long q) {
    if (q == 0) throw std::invalid_argument("zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline Complex to_complex(const Rational& q) { return {q.get_d(), 0.0}; }

inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

/// Binomial coefficient for small arguments (sizes of monomial bases and pair sets).
inline std::size_t binom(long n, long k) {
    Integer b = binomial(n, k);
    if (!b.fits_ulong_p()) throw std::overflow_error("binomial coefficient too large");
    return b.get_ui();
}

inline Integer lcm_of_denominators(const std::vector<Rational>& values) {
    Integer l = 1;
    for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    return l;
}

}  // namespace eigsch
