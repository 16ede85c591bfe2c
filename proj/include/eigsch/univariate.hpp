#pragma once

// Dense univariate polynomials over Q (coefficient k multiplies t^k) and a
// simultaneous-iteration (Aberth-Ehrlich) complex root finder.

#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eigsch {

using UPoly = std::vector<Rational>;

inline void trim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

/// -1 for the zero polynomial.
inline int degree(const UPoly& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d >= 0 && p[static_cast<std::size_t>(d)] == 0) --d;
    return d;
}

inline Rational evaluate(const UPoly& p, const Rational& t) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
    return acc;
}

inline UPoly derivative(const UPoly& p) {
    UPoly out;
    for (std::size_t k = 1; k < p.size(); ++k) out.push_back(p[k] * static_cast<long>(k));
    trim(out);
    return out;
}

/// Quotient and remainder; throws on division by zero.
inline std::pair<UPoly, UPoly> divmod(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    if (a.size() < b.size()) return {UPoly{}, a};
    UPoly q(a.size() - b.size() + 1);
    Rational lead = b.back();
    for (std::size_t shift = q.size(); shift-- > 0;) {
        Rational c = a[shift + b.size() - 1] / lead;
        q[shift] = c;
        if (c != 0)
            for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline UPoly monic(UPoly p) {
    trim(p);
    if (p.empty()) return p;
    Rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

inline UPoly gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Yun's square-free decomposition: p = lead * prod_i factors[i]^(i+1), each factor monic.
inline std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
    UPoly a = monic(p);
    std::vector<UPoly> out;
    if (degree(a) <= 0) return out;
    UPoly g = gcd(a, derivative(a));
    UPoly b = divmod(a, g).first;
    UPoly c = divmod(derivative(a), g).first;
    while (true) {
        UPoly db = derivative(b);
        UPoly diff = c;
        diff.resize(std::max(diff.size(), db.size()));
        for (std::size_t k = 0; k < db.size(); ++k) diff[k] -= db[k];
        trim(diff);
        UPoly factor = gcd(b, diff);
        out.push_back(factor);
        b = divmod(b, factor).first;
        if (degree(b) <= 0) break;
        c = divmod(diff, factor).first;
    }
    while (!out.empty() && degree(out.back()) <= 0) out.pop_back();
    return out;
}

/// Interpolates the polynomial of degree < xs.size() through (xs[k], ys[k]).
inline UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
    std::size_t n = xs.size();
    std::vector<Rational> dd = ys;  // divided differences in place
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    UPoly p{dd[n - 1]};
    for (std::size_t k = n - 1; k-- > 0;) {
        // p <- p * (t - xs[k]) + dd[k]
        UPoly next(p.size() + 1);
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += p[i];
            next[i] -= p[i] * xs[k];
        }
        next[0] += dd[k];
        p = std::move(next);
    }
    trim(p);
    return p;
}

// ---------------------------------------------------------------------------

inline std::vector<Complex> to_complex_coefficients(const UPoly& p) {
    // Scale by the largest coefficient before converting so huge rationals stay in range.
    Rational big = 0;
    for (const auto& c : p) big = std::max(big, Rational(abs(c)));
    std::vector<Complex> out;
    for (const auto& c : p) out.emplace_back(big == 0 ? 0.0 : Rational(c / big).get_d(), 0.0);
    return out;
}

template <typename T>
std::complex<T> horner(const std::vector<std::complex<T>>& p, std::complex<T> z) {
    std::complex<T> acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

/// All complex roots (with multiplicity) of sum_k coeffs[k] t^k by Aberth-Ehrlich
/// iteration in extended precision. Leading coefficients below `drop` times the
/// largest are treated as zero.
inline std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs, double drop = 0.0) {
    using LC = std::complex<long double>;
    double big = 0;
    for (const auto& c : coeffs) big = std::max(big, std::abs(c));
    while (!coeffs.empty() && std::abs(coeffs.back()) <= drop * big) coeffs.pop_back();
    if (coeffs.size() <= 1) return {};
    std::size_t zeros = 0;  // exact roots at the origin
    while (zeros < coeffs.size() && coeffs[zeros] == Complex(0)) ++zeros;
    std::vector<Complex> roots(zeros, Complex(0));
    std::vector<LC> p;
    for (std::size_t k = zeros; k < coeffs.size(); ++k) p.emplace_back(coeffs[k].real(), coeffs[k].imag());
    std::size_t deg = p.size() - 1;
    if (deg == 0) return roots;
    LC lead = p.back();
    for (auto& c : p) c /= lead;
    std::vector<LC> dp;
    for (std::size_t k = 1; k < p.size(); ++k) dp.push_back(p[k] * static_cast<long double>(k));

    // Initial guesses on a circle whose radius is the geometric mean of the root
    // moduli, rotated off the axes.
    long double radius = std::pow(std::abs(p[0]), 1.0L / static_cast<long double>(deg));
    radius = std::clamp<long double>(radius, 1e-3L, 1e3L);
    std::vector<LC> z(deg);
    for (std::size_t k = 0; k < deg; ++k) {
        long double ang = 2 * std::numbers::pi_v<long double> * static_cast<long double>(k) / static_cast<long double>(deg) + 0.4L;
        z[k] = std::polar(radius, ang);
    }
    std::vector<bool> done(deg, false);
    for (int iter = 0; iter < 1000; ++iter) {
        bool all = true;
        for (std::size_t k = 0; k < deg; ++k) {
            if (done[k]) continue;
            LC pv = horner(p, z[k]);
            LC dv = horner(dp, z[k]);
            if (pv == LC(0)) {
                done[k] = true;
                continue;
            }
            if (dv == LC(0)) {
                z[k] += LC(1e-8L * (1 + std::abs(z[k])), 1e-8L);
                all = false;
                continue;
            }
            LC ratio = pv / dv;
            LC sum = 0;
            for (std::size_t j = 0; j < deg; ++j)
                if (j != k) sum += LC(1) / (z[k] - z[j]);
            LC step = ratio / (LC(1) - ratio * sum);
            z[k] -= step;
            if (std::abs(step) <= 1e-17L * (1 + std::abs(z[k])))
                done[k] = true;
            else
                all = false;
        }
        if (all) break;
    }
    for (const auto& r : z) roots.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
    return roots;
}

/// Best rational approximations p/q (q <= max_den) of x by continued fractions.
inline std::vector<Rational> convergents(double x, long max_den) {
    std::vector<Rational> out;
    if (!std::isfinite(x)) return out;
    Integer h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // h_{-1}, h_{-2}, ...
    double r = x;
    for (int it = 0; it < 40; ++it) {
        double a = std::floor(r);
        if (std::abs(a) > 1e15) break;
        Integer ai(static_cast<long>(a));
        Integer h = ai * h0 + h1, k = ai * k0 + k1;
        if (k > max_den) break;
        out.emplace_back(h, k);
        out.back().canonicalize();
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
        double frac = r - a;
        if (frac < 1e-15) break;
        r = 1 / frac;
    }
    return out;
}

}  // namespace eigsch
