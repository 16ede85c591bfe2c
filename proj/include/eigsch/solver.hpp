#pragma once

// Eigenpoint enumeration: closed-form Fermat eigenpoints, exact/numeric roots of
// the single minor for n = 1, and a chart-wise resultant solver for n = 2.

#include "hilbert.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "tensor.hpp"
#include "univariate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace eigsch {

struct EigenpointSet {
    std::vector<ProjPoint> points;
    std::vector<int> multiplicity;
    std::vector<double> residual;  // 0 for exact points
    std::vector<bool> polished;
    std::vector<std::string> chart_failures;

    std::size_t size() const { return points.size(); }

    void add(ProjPoint p, int mult, double res, bool pol) {
        points.push_back(std::move(p));
        multiplicity.push_back(mult);
        residual.push_back(res);
        polished.push_back(pol);
    }
};

inline ComplexPoint as_complex(const ProjPoint& p) {
    if (const auto* r = std::get_if<RatPoint>(&p)) return to_complex(*r);
    return std::get<ComplexPoint>(p);
}

inline constexpr double kDedupDistance = 1e-6;
inline constexpr double kSolverTolerance = 1e-8;
inline constexpr int kNewtonIterations = 25;

namespace detail {

// Sort key: exact points first in lexicographic order, then complex points by
// rounded normalized coordinates.
inline void canonical_sort(EigenpointSet& s) {
    std::vector<std::size_t> order(s.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    auto key = [&](std::size_t k) {
        std::vector<double> out;
        auto q = normalized(as_complex(s.points[k]));
        for (const auto& c : q.coords) {
            out.push_back(std::round(c.real() * 1e8) / 1e8);
            out.push_back(std::round(c.imag() * 1e8) / 1e8);
        }
        return out;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        bool ea = std::holds_alternative<RatPoint>(s.points[a]);
        bool eb = std::holds_alternative<RatPoint>(s.points[b]);
        if (ea != eb) return ea;
        if (ea) {
            const auto& pa = std::get<RatPoint>(s.points[a]).coords;
            const auto& pb = std::get<RatPoint>(s.points[b]).coords;
            return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end(),
                                                [](const Rational& x, const Rational& y) { return x > y; });
        }
        auto ka = key(a), kb = key(b);
        for (std::size_t i = 0; i < ka.size(); ++i)
            if (ka[i] != kb[i]) return ka[i] > kb[i];
        return false;
    });
    EigenpointSet out;
    out.chart_failures = s.chart_failures;
    for (auto k : order) out.add(s.points[k], s.multiplicity[k], s.residual[k], s.polished[k]);
    s = std::move(out);
}

}  // namespace detail

/// All eigenpoints of x_0^d + ... + x_n^d.
inline EigenpointSet fermat_eigenpoints(int n, int d) {
    if (n < 1 || d < 3) throw std::invalid_argument("fermat_eigenpoints: need n >= 1, d >= 3");
    int m = d - 2;
    bool exact = d <= 4;
    std::vector<Complex> roots;
    for (int k = 0; k < m; ++k) roots.push_back(std::polar(1.0, 2 * std::numbers::pi * k / m));
    EigenpointSet out;
    int nv = n + 1;
    for (unsigned mask = 1; mask < (1u << nv); ++mask) {
        std::vector<int> support;
        for (int i = 0; i < nv; ++i)
            if (mask & (1u << i)) support.push_back(i);
        std::size_t free = support.size() - 1;
        std::size_t combos = 1;
        for (std::size_t k = 0; k < free; ++k) combos *= static_cast<std::size_t>(m);
        for (std::size_t c = 0; c < combos; ++c) {
            std::vector<int> choice(free);
            std::size_t rest = c;
            for (std::size_t k = 0; k < free; ++k) {
                choice[k] = static_cast<int>(rest % static_cast<std::size_t>(m));
                rest /= static_cast<std::size_t>(m);
            }
            if (exact) {
                RatPoint p{std::vector<Rational>(static_cast<std::size_t>(nv), Rational(0))};
                p.coords[static_cast<std::size_t>(support[0])] = 1;
                for (std::size_t k = 0; k < free; ++k)
                    p.coords[static_cast<std::size_t>(support[k + 1])] = choice[k] == 0 ? 1 : -1;
                out.add(p, 1, 0.0, true);
            } else {
                ComplexPoint p{std::vector<Complex>(static_cast<std::size_t>(nv), Complex(0))};
                p.coords[static_cast<std::size_t>(support[0])] = 1;
                for (std::size_t k = 0; k < free; ++k)
                    p.coords[static_cast<std::size_t>(support[k + 1])] = roots[static_cast<std::size_t>(choice[k])];
                out.add(p, 1, 0.0, true);
            }
        }
    }
    if (!exact) {
        auto f = determinantal_generators(SymTensor::make(n, d, [&] {
            Poly s(nv);
            for (int i = 0; i < nv; ++i) s += Poly::variable(nv, i).pow(d);
            return s;
        }()));
        for (std::size_t k = 0; k < out.size(); ++k)
            out.residual[k] = eigen_residual(f, std::get<ComplexPoint>(out.points[k]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// n = 1

/// Roots of the binary form f_01, with multiplicity.
inline EigenpointSet solve_eigenpoints_p1(const PSTensor& t) {
    if (t.n != 1) throw std::invalid_argument("solve_eigenpoints_p1: need n = 1");
    auto f = determinantal_generators(t);
    const Poly& f01 = f.at(0, 1);
    if (f01.is_zero()) throw std::domain_error("f_01 vanishes identically: the eigenscheme is all of P^1");
    int d = t.d;
    UPoly P(static_cast<std::size_t>(d + 1));
    for (const auto& [m, c] : f01.terms()) P[static_cast<std::size_t>(m[1])] = c;
    int deg = degree(P);
    EigenpointSet out;
    if (deg < d) out.add(RatPoint{{Rational(0), Rational(1)}}, d - deg, 0.0, true);
    if (deg <= 0) return out;

    auto factors = squarefree_decomposition(P);
    for (std::size_t mi = 0; mi < factors.size(); ++mi) {
        int mult = static_cast<int>(mi) + 1;
        UPoly g = factors[mi];
        // Integer content: lead coefficient bounds rational root denominators.
        Integer den = lcm_of_denominators(g);
        Integer lead = Rational(g.back() * den).get_num();
        long max_den = lead.fits_slong_p() ? std::abs(lead.get_si()) : std::numeric_limits<long>::max();
        bool progress = true;
        while (progress && degree(g) > 0) {
            progress = false;
            for (const auto& r : polynomial_roots(to_complex_coefficients(g))) {
                if (std::abs(r.imag()) > 1e-6 * (1 + std::abs(r))) continue;
                for (const auto& q : convergents(r.real(), max_den)) {
                    if (evaluate(g, q) != 0) continue;
                    out.add(RatPoint{{Rational(1), q}}, mult, 0.0, true);
                    g = divmod(g, UPoly{-q, Rational(1)}).first;
                    progress = true;
                    break;
                }
                if (progress) break;
            }
        }
        if (degree(g) <= 0) continue;
        for (const auto& r : polynomial_roots(to_complex_coefficients(g))) {
            ComplexPoint p{{Complex(1), r}};
            out.add(normalized(p), mult, eigen_residual(f, p), true);
        }
    }
    detail::canonical_sort(out);
    return out;
}

// ---------------------------------------------------------------------------
// n = 2

namespace detail {

// A dehomogenized form as a polynomial in v whose coefficients are polynomials in u.
using BivariateForm = std::vector<UPoly>;

inline BivariateForm dehomogenize(const Poly& p, int u_var, int v_var) {
    BivariateForm out;
    for (const auto& [m, c] : p.terms()) {
        auto i = static_cast<std::size_t>(m[u_var]);
        auto j = static_cast<std::size_t>(m[v_var]);
        if (out.size() <= j) out.resize(j + 1);
        if (out[j].size() <= i) out[j].resize(i + 1);
        out[j][i] += c;
    }
    return out;
}

inline UPoly specialize(const BivariateForm& f, const Rational& u) {
    UPoly out;
    for (const auto& cu : f) out.push_back(evaluate(cu, u));
    return out;
}

inline std::vector<Complex> specialize(const BivariateForm& f, Complex u) {
    std::vector<Complex> out;
    for (const auto& cu : f) {
        Complex acc = 0;
        for (auto it = cu.rbegin(); it != cu.rend(); ++it) acc = acc * u + it->get_d();
        out.push_back(acc);
    }
    return out;
}

// Sylvester resultant with formal degrees (a.size()-1, b.size()-1).
inline Rational sylvester_resultant(const UPoly& a, const UPoly& b) {
    std::size_t m = a.size() - 1, k = b.size() - 1, n = m + k;
    if (n == 0) return 1;
    RatMatrix s(n, n);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c <= m; ++c) s(r, r + c) = a[m - c];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c <= k; ++c) s(k + r, r + c) = b[k - c];
    return determinant(s);
}

// Res_v(a, b) as a polynomial in u, by evaluation at u = 0..bound and interpolation.
inline UPoly resultant_in_u(const BivariateForm& a, const BivariateForm& b, int bound) {
    std::vector<Rational> xs, ys;
    for (int u = 0; u <= bound; ++u) {
        xs.emplace_back(u);
        ys.push_back(sylvester_resultant(specialize(a, Rational(u)), specialize(b, Rational(u))));
    }
    return interpolate(xs, ys);
}

struct Candidate {
    ComplexPoint point;
    double residual;
    bool polished;
};

inline double coefficient_scale(const DetTuple& f) {
    double s = 0;
    for (const auto& e : f.entries)
        for (const auto& [m, c] : e.terms()) s = std::max(s, std::abs(c.get_d()));
    return s == 0 ? 1 : s;
}

// Damped Newton on two minors in the chart of the largest coordinate.
inline Candidate polish(const DetTuple& f, const std::vector<std::array<Poly, 3>>& grads, ComplexPoint p, double tol) {
    auto pairs = index_pairs(2);
    p = normalized(p);
    double res = eigen_residual(f, p);
    for (int it = 0; it < kNewtonIterations && res >= tol * 1e-3; ++it) {
        std::size_t chart = 0;
        for (std::size_t k = 1; k < 3; ++k)
            if (std::abs(p.coords[k]) > std::abs(p.coords[chart])) chart = k;
        std::array<std::size_t, 2> un{};
        for (std::size_t k = 0, q = 0; k < 3; ++k)
            if (k != chart) un[q++] = k;
        std::vector<Complex> vals;
        std::vector<std::array<Complex, 2>> jac;
        std::vector<double> gnorm;
        for (std::size_t e = 0; e < f.entries.size(); ++e) {
            vals.push_back(evaluate(f.entries[e], p.coords));
            std::array<Complex, 2> row{evaluate(grads[e][un[0]], p.coords), evaluate(grads[e][un[1]], p.coords)};
            jac.push_back(row);
            gnorm.push_back(std::abs(row[0]) + std::abs(row[1]));
        }
        auto try_pair = [&](std::size_t e0, std::size_t e1) -> std::optional<std::array<Complex, 2>> {
            Complex det = jac[e0][0] * jac[e1][1] - jac[e0][1] * jac[e1][0];
            if (std::abs(det) <= 1e-12 * (gnorm[e0] * gnorm[e1] + 1e-300)) return std::nullopt;
            return std::array<Complex, 2>{(vals[e0] * jac[e1][1] - vals[e1] * jac[e0][1]) / det,
                                          (jac[e0][0] * vals[e1] - jac[e1][0] * vals[e0]) / det};
        };
        std::array<std::size_t, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gnorm[a] > gnorm[b]; });
        auto step = try_pair(order[0], order[1]);
        if (!step) {
            // Minors through the chart variable: f_{chart,un0} and f_{chart,un1}.
            std::size_t e0 = 0, e1 = 0;
            for (std::size_t e = 0; e < pairs.size(); ++e) {
                auto [i, j] = pairs[e];
                auto has = [&](std::size_t a, std::size_t b) {
                    return (static_cast<std::size_t>(i) == a && static_cast<std::size_t>(j) == b) ||
                           (static_cast<std::size_t>(i) == b && static_cast<std::size_t>(j) == a);
                };
                if (has(chart, un[0])) e0 = e;
                if (has(chart, un[1])) e1 = e;
            }
            step = try_pair(e0, e1);
        }
        if (!step) break;
        double damp = 1.0;
        bool improved = false;
        for (int half = 0; half < 20; ++half) {
            ComplexPoint q = p;
            q.coords[un[0]] -= damp * (*step)[0];
            q.coords[un[1]] -= damp * (*step)[1];
            double r = eigen_residual(f, q);
            if (r < res) {
                p = normalized(q);
                res = r;
                improved = true;
                break;
            }
            damp /= 2;
        }
        if (!improved) break;
    }
    return {p, res, res < tol};
}

}  // namespace detail

/// Numeric eigenpoints of a ternary tensor. Throws std::domain_error when the
/// eigenscheme is not 0-dimensional.
inline EigenpointSet solve_eigenpoints_p2(const PSTensor& t, double tol = kSolverTolerance,
                                          double dedup = kDedupDistance) {
    if (t.n != 2) throw std::invalid_argument("solve_eigenpoints_p2: need n = 2");
    auto f = determinantal_generators(t);
    if (!dimension_probe(f).zero_dimensional) throw std::domain_error("eigenscheme is not 0-dimensional");
    int d = t.d;
    double scale = detail::coefficient_scale(f);
    std::vector<std::array<Poly, 3>> grads;
    for (const auto& e : f.entries) grads.push_back({partial_derivative(e, 0), partial_derivative(e, 1), partial_derivative(e, 2)});

    EigenpointSet out;
    std::vector<detail::Candidate> cands;
    for (int c = 0; c < 3; ++c) {
        int a = c == 0 ? 1 : 0;
        int b = c == 2 ? 1 : 2;
        Poly fca = c < a ? f.at(c, a) : -f.at(a, c);
        Poly fcb = c < b ? f.at(c, b) : -f.at(b, c);
        auto A = detail::dehomogenize(fca, a, b);
        auto B = detail::dehomogenize(fcb, a, b);
        if (A.empty() || B.empty()) {
            out.chart_failures.push_back("chart x" + std::to_string(c) + ": vanishing minor");
            continue;
        }
        UPoly res = detail::resultant_in_u(A, B, d * d);
        if (degree(res) < 0) {
            out.chart_failures.push_back("chart x" + std::to_string(c) + ": identically zero resultant");
            continue;
        }
        if (degree(res) == 0) continue;
        UPoly sqfree{Rational(1)};
        for (const auto& fac : squarefree_decomposition(res)) {
            UPoly prod(sqfree.size() + fac.size() - 1);
            for (std::size_t i = 0; i < sqfree.size(); ++i)
                for (std::size_t j = 0; j < fac.size(); ++j) prod[i + j] += sqfree[i] * fac[j];
            sqfree = std::move(prod);
        }
        auto us = polynomial_roots(to_complex_coefficients(sqfree));
        if (us.size() != static_cast<std::size_t>(degree(sqfree))) {
            out.chart_failures.push_back("chart x" + std::to_string(c) + ": root finder did not converge");
            continue;
        }
        for (const auto& u : us) {
            std::vector<Complex> vs;
            for (const auto* form : {&A, &B}) {
                auto coeffs = detail::specialize(*form, u);
                double big = 0;
                for (const auto& x : coeffs) big = std::max(big, std::abs(x));
                if (big <= 1e-12 * scale) continue;
                auto r = polynomial_roots(coeffs, 1e-10);
                vs.insert(vs.end(), r.begin(), r.end());
            }
            for (const auto& v : vs) {
                ComplexPoint p{std::vector<Complex>(3)};
                p.coords[static_cast<std::size_t>(c)] = 1;
                p.coords[static_cast<std::size_t>(a)] = u;
                p.coords[static_cast<std::size_t>(b)] = v;
                double r0 = eigen_residual(f, p);
                if (!std::isfinite(r0) || r0 > 1e-4 * scale) continue;
                auto cand = detail::polish(f, grads, p, tol);
                if (!cand.polished && cand.residual > 1e-6 * scale) continue;
                cands.push_back(cand);
            }
        }
    }
    std::stable_sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) { return x.residual < y.residual; });
    std::vector<ComplexPoint> kept;
    for (const auto& cand : cands) {
        bool dup = std::any_of(kept.begin(), kept.end(), [&](const ComplexPoint& q) { return chordal_distance(q, cand.point) < dedup; });
        if (dup) continue;
        kept.push_back(cand.point);
        out.add(cand.point, 1, cand.residual, cand.polished);
    }
    detail::canonical_sort(out);
    return out;
}

}  // namespace eigsch
