#pragma once

// Partially symmetric and symmetric tensors, their determinantal generators,
// eigenpoint membership and the eigenpoint count w(n, d).

#include "linalg.hpp"
#include "poly.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace eigsch {

// ---------------------------------------------------------------------------
// Index bookkeeping for pairs i<j and triples i<j<k of {0..n}, both in
// lexicographic order: (0,1), (0,2), ..., (0,n), (1,2), ...

inline std::size_t pair_count(int n) { return binom(n + 1, 2); }

inline std::size_t pair_index(int n, int i, int j) {
    if (!(0 <= i && i < j && j <= n)) throw std::out_of_range("pair_index: need 0 <= i < j <= n");
    // pairs before row i: sum_{a<i} (n - a)
    std::size_t before = static_cast<std::size_t>(i) * static_cast<std::size_t>(n) -
                         static_cast<std::size_t>(i) * static_cast<std::size_t>(i - 1) / 2;
    return before + static_cast<std::size_t>(j - i - 1);
}

inline std::vector<std::pair<int, int>> index_pairs(int n) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.emplace_back(i, j);
    return out;
}

struct Triple {
    int i, j, k;
};

inline std::vector<Triple> index_triples(int n) {
    std::vector<Triple> out;
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) out.push_back({i, j, k});
    return out;
}

// ---------------------------------------------------------------------------

/// Number of eigenpoints of a general tensor of order d on P^n.
inline std::uint64_t w_count(int n, int d) {
    if (n < 1) throw std::invalid_argument("w_count: n must be >= 1");
    if (d < 2) throw std::invalid_argument("w_count: d must be >= 2");
    if (d == 2) return static_cast<std::uint64_t>(n) + 1;
    Integer num;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(d - 1), static_cast<unsigned long>(n + 1));
    num -= 1;
    Integer w = num / (d - 2);
    if (!w.fits_ulong_p()) throw std::overflow_error("w_count: value exceeds 64 bits");
    return w.get_ui();
}

/// Upper bound on dim Eig_{n,d}: (n+1) C(n+d-1, n) - C(n+d-2, n) - 1, the
/// parameter count of tuples of forms minus the fiber of tensors sharing
/// determinantal equations.
inline Integer eig_dimension_bound(int n, int d) {
    if (n < 1 || d < 2) throw std::invalid_argument("eig_dimension_bound: need n >= 1, d >= 2");
    return Integer(n + 1) * binomial(n + d - 1, n) - binomial(n + d - 2, n) - 1;
}

// ---------------------------------------------------------------------------

struct PSTensor {
    int n = 1;
    int d = 2;
    std::vector<Poly> forms;  // g_0, ..., g_n, each of degree d-1

    /// Validates shape and degrees; zero forms are allowed.
    static PSTensor make(int n, int d, std::vector<Poly> forms) {
        if (n < 1) throw std::invalid_argument("tensor: n must be >= 1");
        if (d < 2) throw std::invalid_argument("tensor: d must be >= 2");
        if (forms.size() != static_cast<std::size_t>(n + 1))
            throw std::invalid_argument("tensor: expected n+1 forms");
        for (const auto& g : forms) {
            if (g.nvars() != n + 1) throw std::invalid_argument("tensor: form has wrong number of variables");
            if (!g.is_homogeneous_of_degree(d - 1))
                throw std::invalid_argument("tensor: form '" + g.to_string() + "' is not homogeneous of degree d-1");
        }
        return PSTensor{n, d, std::move(forms)};
    }

    friend bool operator==(const PSTensor&, const PSTensor&) = default;
};

struct SymTensor {
    int n = 1;
    int d = 2;
    Poly f;

    static SymTensor make(int n, int d, Poly f) {
        if (n < 1) throw std::invalid_argument("tensor: n must be >= 1");
        if (d < 2) throw std::invalid_argument("tensor: d must be >= 2");
        if (f.nvars() != n + 1) throw std::invalid_argument("tensor: form has wrong number of variables");
        if (!f.is_homogeneous_of_degree(d))
            throw std::invalid_argument("tensor: form '" + f.to_string() + "' is not homogeneous of degree d");
        return SymTensor{n, d, std::move(f)};
    }

    friend bool operator==(const SymTensor&, const SymTensor&) = default;
};

/// Tuple (f_ij : 0 <= i < j <= n) of degree-d forms, stored in pair order.
struct DetTuple {
    int n = 1;
    int d = 2;
    std::vector<Poly> entries;

    static DetTuple make(int n, int d, std::vector<Poly> entries) {
        if (n < 1) throw std::invalid_argument("tuple: n must be >= 1");
        if (d < 1) throw std::invalid_argument("tuple: d must be >= 1");
        if (entries.size() != pair_count(n)) throw std::invalid_argument("tuple: expected C(n+1,2) forms");
        for (const auto& f : entries) {
            if (f.nvars() != n + 1) throw std::invalid_argument("tuple: form has wrong number of variables");
            if (!f.is_homogeneous_of_degree(d))
                throw std::invalid_argument("tuple: form '" + f.to_string() + "' is not homogeneous of degree d");
        }
        return DetTuple{n, d, std::move(entries)};
    }

    static DetTuple zero(int n, int d) { return DetTuple{n, d, std::vector<Poly>(pair_count(n), Poly(n + 1))}; }

    const Poly& at(int i, int j) const { return entries[pair_index(n, i, j)]; }
    Poly& at(int i, int j) { return entries[pair_index(n, i, j)]; }

    bool is_zero() const {
        return std::all_of(entries.begin(), entries.end(), [](const Poly& p) { return p.is_zero(); });
    }

    friend bool operator==(const DetTuple&, const DetTuple&) = default;
};

inline PSTensor scaled(const PSTensor& t, const Rational& c) {
    PSTensor r = t;
    for (auto& g : r.forms) g *= c;
    return r;
}

inline DetTuple scaled(const DetTuple& t, const Rational& c) {
    DetTuple r = t;
    for (auto& f : r.entries) f *= c;
    return r;
}

/// f_ij = x_i g_j - x_j g_i.
inline DetTuple determinantal_generators(const PSTensor& t) {
    int nv = t.n + 1;
    DetTuple out{t.n, t.d, {}};
    out.entries.reserve(pair_count(t.n));
    for (auto [i, j] : index_pairs(t.n)) {
        out.entries.push_back(Poly::variable(nv, i) * t.forms[static_cast<std::size_t>(j)] -
                              Poly::variable(nv, j) * t.forms[static_cast<std::size_t>(i)]);
    }
    return out;
}

inline PSTensor gradient_tensor(const SymTensor& s) {
    PSTensor t{s.n, s.d, {}};
    for (int i = 0; i <= s.n; ++i) t.forms.push_back(partial_derivative(s.f, i));
    return t;
}

inline DetTuple determinantal_generators(const SymTensor& s) { return determinantal_generators(gradient_tensor(s)); }

// ---------------------------------------------------------------------------
// Projective points.

struct RatPoint {
    std::vector<Rational> coords;
    friend bool operator==(const RatPoint&, const RatPoint&) = default;
};

struct ComplexPoint {
    std::vector<Complex> coords;
};

using ProjPoint = std::variant<RatPoint, ComplexPoint>;

inline bool is_zero_vector(const RatPoint& p) {
    return std::all_of(p.coords.begin(), p.coords.end(), [](const Rational& c) { return c == 0; });
}

/// First nonzero coordinate scaled to 1.
inline RatPoint normalized(const RatPoint& p) {
    auto it = std::find_if(p.coords.begin(), p.coords.end(), [](const Rational& c) { return c != 0; });
    if (it == p.coords.end()) throw std::invalid_argument("zero vector is not a projective point");
    Rational lead = *it;
    RatPoint q = p;
    for (auto& c : q.coords) c /= lead;
    return q;
}

/// Largest-modulus coordinate scaled to 1 (first one on ties).
inline ComplexPoint normalized(const ComplexPoint& p) {
    std::size_t best = 0;
    double m = -1;
    for (std::size_t k = 0; k < p.coords.size(); ++k) {
        double a = std::abs(p.coords[k]);
        if (a > m * (1 + 1e-12)) {
            m = a;
            best = k;
        }
    }
    if (p.coords.empty() || m == 0) throw std::invalid_argument("zero vector is not a projective point");
    ComplexPoint q = p;
    Complex lead = p.coords[best];
    for (auto& c : q.coords) c /= lead;
    q.coords[best] = 1.0;
    return q;
}

inline ComplexPoint to_complex(const RatPoint& p) {
    ComplexPoint q;
    for (const auto& c : p.coords) q.coords.emplace_back(c.get_d(), 0.0);
    return q;
}

/// Chordal (Fubini-Study sine) distance between two projective points.
inline double chordal_distance(const ComplexPoint& a, const ComplexPoint& b) {
    if (a.coords.size() != b.coords.size()) throw std::invalid_argument("chordal_distance: dimension mismatch");
    Complex inner = 0;
    double na = 0, nb = 0;
    for (std::size_t k = 0; k < a.coords.size(); ++k) {
        inner += std::conj(a.coords[k]) * b.coords[k];
        na += std::norm(a.coords[k]);
        nb += std::norm(b.coords[k]);
    }
    double c = std::norm(inner) / (na * nb);
    return std::sqrt(std::max(0.0, 1.0 - c));
}

// ---------------------------------------------------------------------------

inline std::vector<Rational> evaluate_tuple(const DetTuple& f, const RatPoint& p) {
    std::vector<Rational> out;
    for (const auto& e : f.entries) out.push_back(evaluate(e, p.coords));
    return out;
}

inline std::vector<Complex> evaluate_tuple(const DetTuple& f, const ComplexPoint& p) {
    std::vector<Complex> out;
    for (const auto& e : f.entries) out.push_back(evaluate(e, p.coords));
    return out;
}

inline bool is_eigenpoint(const PSTensor& t, const RatPoint& p) {
    if (static_cast<int>(p.coords.size()) != t.n + 1) throw std::invalid_argument("is_eigenpoint: dimension mismatch");
    if (is_zero_vector(p)) throw std::invalid_argument("is_eigenpoint: zero vector");
    auto v = evaluate_tuple(determinantal_generators(t), p);
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

struct EigenpointCheck {
    bool is_eigenpoint = false;
    double residual = 0;  // max |f_ij(P)| at the normalized point
};

inline constexpr double kMembershipTolerance = 1e-9;

/// Max |f_ij| at the normalized point.
inline double eigen_residual(const DetTuple& f, const ComplexPoint& p) {
    auto q = normalized(p);
    double r = 0;
    for (const auto& v : evaluate_tuple(f, q)) r = std::max(r, std::abs(v));
    return r;
}

inline EigenpointCheck is_eigenpoint(const PSTensor& t, const ComplexPoint& p, double tol = kMembershipTolerance) {
    if (static_cast<int>(p.coords.size()) != t.n + 1) throw std::invalid_argument("is_eigenpoint: dimension mismatch");
    double r = eigen_residual(determinantal_generators(t), p);
    return {r < tol, r};
}

// ---------------------------------------------------------------------------

struct SharedEquations {
    Rational c;
    Poly h;
};

/// Finds (c, h) with c != 0 and g'_k = c g_k + x_k h for every k, if any.
inline std::optional<SharedEquations> same_determinantal_equations(const PSTensor& t, const PSTensor& t2) {
    if (t.n != t2.n || t.d != t2.d) throw std::invalid_argument("same_determinantal_equations: shape mismatch");
    int nv = t.n + 1;
    auto hbasis = monomial_basis(nv, t.d - 2);
    auto gbasis = monomial_basis(nv, t.d - 1);
    // Unknowns: c, then the coefficients of h. One block of rows per k.
    std::size_t unknowns = 1 + hbasis.size();
    RatMatrix m(0, unknowns);
    RatVector rhs;
    for (int k = 0; k <= t.n; ++k) {
        auto gk = to_coefficients(t.forms[static_cast<std::size_t>(k)], gbasis);
        auto gk2 = to_coefficients(t2.forms[static_cast<std::size_t>(k)], gbasis);
        std::vector<RatVector> block(gbasis.size(), RatVector(unknowns));
        for (std::size_t r = 0; r < gbasis.size(); ++r) block[r][0] = gk[r];
        Monomial xk = Monomial::variable(nv, k);
        for (std::size_t a = 0; a < hbasis.size(); ++a) {
            Monomial prod = hbasis[a] * xk;
            auto it = std::find(gbasis.begin(), gbasis.end(), prod);
            block[static_cast<std::size_t>(it - gbasis.begin())][1 + a] = 1;
        }
        for (std::size_t r = 0; r < gbasis.size(); ++r) {
            m.append_row(block[r]);
            rhs.push_back(gk2[r]);
        }
    }
    auto unpack = [&](const RatVector& x) {
        return SharedEquations{x[0], from_coefficients(nv, hbasis, std::span<const Rational>(x).subspan(1))};
    };
    // Prefer c = 1; if that is infeasible, c is constant on the solution set.
    {
        RatMatrix mh(m.rows(), unknowns - 1);
        RatVector rh(rhs.size());
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 1; c < unknowns; ++c) mh(r, c - 1) = m(r, c);
            rh[r] = rhs[r] - m(r, 0);
        }
        if (auto x = solve(mh, rh)) {
            RatVector full(unknowns);
            full[0] = 1;
            std::copy(x->begin(), x->end(), full.begin() + 1);
            return unpack(full);
        }
    }
    auto x = solve(m, rhs);
    if (!x || (*x)[0] == 0) return std::nullopt;
    return unpack(*x);
}

/// Given a 2 x (n+1) matrix with linear first row ls and degree-(d-1) second row
/// hs, returns (b_0..b_n) with N B having first row (x_0..x_n), when the l_i are
/// linearly independent.
inline std::optional<PSTensor> normalize_matrix(const std::vector<Poly>& ls, const std::vector<Poly>& hs) {
    if (ls.size() != hs.size() || ls.empty()) throw std::invalid_argument("normalize_matrix: row length mismatch");
    int n = static_cast<int>(ls.size()) - 1;
    int nv = n + 1;
    auto lin = monomial_basis(nv, 1);
    // L(i, k) = coefficient of x_k in l_i; we need B = (L^T)^{-1}.
    RatMatrix lt(static_cast<std::size_t>(nv), static_cast<std::size_t>(nv));
    for (int i = 0; i < nv; ++i) {
        if (ls[static_cast<std::size_t>(i)].nvars() != nv || hs[static_cast<std::size_t>(i)].nvars() != nv)
            throw std::invalid_argument("normalize_matrix: inconsistent variable count");
        if (!ls[static_cast<std::size_t>(i)].is_homogeneous_of_degree(1))
            throw std::invalid_argument("normalize_matrix: first row must be linear forms");
        for (int k = 0; k < nv; ++k)
            lt(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) =
                ls[static_cast<std::size_t>(i)].coefficient(Monomial::variable(nv, k));
    }
    if (rank(lt) < static_cast<std::size_t>(nv)) return std::nullopt;
    int d = -1;
    for (const auto& h : hs)
        if (!h.is_zero()) d = h.degree() + 1;
    if (d < 0) d = 2;
    std::vector<Poly> bs(static_cast<std::size_t>(nv), Poly(nv));
    for (int j = 0; j < nv; ++j) {
        RatVector e(static_cast<std::size_t>(nv));
        e[static_cast<std::size_t>(j)] = 1;
        auto col = solve(lt, e);  // column j of B
        for (int i = 0; i < nv; ++i)
            bs[static_cast<std::size_t>(j)] += hs[static_cast<std::size_t>(i)] * (*col)[static_cast<std::size_t>(i)];
    }
    return PSTensor::make(n, d, std::move(bs));
}

}  // namespace eigsch
