#pragma once

// Laguerre map, the wedge map v -> omega ^ v and its fiber lines, and the
// configuration checks on candidate eigenpoint sets: no d+1 points on a line,
// and (in the plane) no kd points on a curve of degree k for 2 <= k <= d-1.

#include "linalg.hpp"
#include "poly.hpp"
#include "tensor.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eigsch {

/// Raised when a map is evaluated on its base locus.
class Indeterminacy : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct PluckerVector {
    int n = 1;
    std::vector<Rational> coords;  // p_ij in pair order
    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](const Rational& c) { return c == 0; });
    }
    friend bool operator==(const PluckerVector&, const PluckerVector&) = default;
};

/// v ^ w with p_ij = v_i w_j - v_j w_i.
inline PluckerVector wedge(const std::vector<Rational>& v, const std::vector<Rational>& w) {
    if (v.size() != w.size() || v.size() < 2) throw std::invalid_argument("wedge: dimension mismatch");
    int n = static_cast<int>(v.size()) - 1;
    PluckerVector p{n, {}};
    for (auto [i, j] : index_pairs(n))
        p.coords.push_back(v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)] -
                           v[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(i)]);
    return p;
}

/// The point's image: the determinantal tuple evaluated at P.
inline PluckerVector laguerre(const PSTensor& t, const RatPoint& p) {
    if (static_cast<int>(p.coords.size()) != t.n + 1) throw std::invalid_argument("laguerre: dimension mismatch");
    if (is_zero_vector(p)) throw std::invalid_argument("laguerre: zero vector");
    PluckerVector out{t.n, evaluate_tuple(determinantal_generators(t), p)};
    if (out.is_zero()) throw Indeterminacy("laguerre: point is an eigenpoint of the tensor");
    return out;
}

/// Matrix of v -> omega ^ v: one row per triple i<j<k with entries
/// p_jk at column i, -p_ik at column j, p_ij at column k.
inline RatMatrix wedge_matrix(const PluckerVector& w) {
    if (w.coords.size() != pair_count(w.n)) throw std::invalid_argument("wedge_matrix: wrong coordinate count");
    auto triples = index_triples(w.n);
    RatMatrix a(triples.size(), static_cast<std::size_t>(w.n + 1));
    for (std::size_t r = 0; r < triples.size(); ++r) {
        auto [i, j, k] = triples[r];
        a(r, static_cast<std::size_t>(i)) = w.coords[pair_index(w.n, j, k)];
        a(r, static_cast<std::size_t>(j)) = -w.coords[pair_index(w.n, i, k)];
        a(r, static_cast<std::size_t>(k)) = w.coords[pair_index(w.n, i, j)];
    }
    return a;
}

inline std::size_t rank_A_omega(const PluckerVector& w) {
    if (w.is_zero()) throw std::invalid_argument("rank_A_omega: zero 2-vector");
    return rank(wedge_matrix(w));
}

inline bool is_decomposable(const PluckerVector& w) { return !w.is_zero() && rank_A_omega(w) + 1 == static_cast<std::size_t>(w.n); }

/// Linear equations of the line with Plucker coordinates omega.
inline RatMatrix fiber_line(const PluckerVector& w) {
    if (w.is_zero()) throw std::invalid_argument("fiber_line: zero 2-vector");
    auto a = wedge_matrix(w);
    if (rank(a) + 1 != static_cast<std::size_t>(w.n)) throw std::invalid_argument("fiber_line: 2-vector is not decomposable");
    return a;
}

// ---------------------------------------------------------------------------
// Incremental row spaces over Q (exact) or C (tolerance on normalized data).

template <typename S>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static bool negligible(const Rational& x, double) { return x == 0; }
    static double magnitude(const Rational& x) { return x == 0 ? 0.0 : 1.0; }
};

template <>
struct FieldTraits<Complex> {
    static bool negligible(const Complex& x, double tol) { return std::abs(x) <= tol; }
    static double magnitude(const Complex& x) { return std::abs(x); }
};

/// Rows kept in reduced form with their pivot scaled to 1. Exact scalars pivot
/// on the first nonzero entry, floating ones on the largest.
template <typename S>
class RowSpace {
public:
    RowSpace(std::size_t cols, double tol) : cols_(cols), tol_(tol) {}

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    bool insert(std::vector<S> row) {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            S f = row[pivots_[r]];
            if (f == S(0)) continue;
            for (std::size_t c = 0; c < cols_; ++c) row[c] -= f * rows_[r][c];
            row[pivots_[r]] = S(0);
        }
        std::size_t piv = cols_;
        double best = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            if (FieldTraits<S>::negligible(row[c], tol_)) continue;
            double m = FieldTraits<S>::magnitude(row[c]);
            if (piv == cols_ || (!std::is_same_v<S, Rational> && m > best)) {
                piv = c;
                best = m;
                if constexpr (std::is_same_v<S, Rational>) break;
            }
        }
        if (piv == cols_) return false;
        S lead = row[piv];
        for (auto& v : row) v /= lead;
        row[piv] = S(1);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            S f = rows_[r][piv];
            if (f == S(0)) continue;
            for (std::size_t c = 0; c < cols_; ++c) rows_[r][c] -= f * row[c];
            rows_[r][piv] = S(0);
        }
        rows_.push_back(std::move(row));
        pivots_.push_back(piv);
        return true;
    }

    /// A nonzero vector orthogonal (bilinearly) to all rows, free entry 1; empty if full rank.
    std::vector<S> kernel_vector() const {
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : pivots_) is_pivot[p] = true;
        std::size_t free = 0;
        while (free < cols_ && is_pivot[free]) ++free;
        if (free == cols_) return {};
        std::vector<S> v(cols_, S(0));
        v[free] = S(1);
        for (std::size_t r = 0; r < rows_.size(); ++r) v[pivots_[r]] = -rows_[r][free];
        return v;
    }

private:
    std::size_t cols_;
    double tol_;
    std::vector<std::vector<S>> rows_;
    std::vector<std::size_t> pivots_;
};

inline constexpr double kGeometryTolerance = 1e-8;

struct LineIncidence {
    std::vector<std::size_t> points;
};

struct CurveIncidence {
    int k = 0;
    std::string curve;
    std::vector<std::size_t> points;
};

struct ConfigReport {
    std::vector<LineIncidence> collinear_violations;  // lines with >= d+1 points
    std::vector<LineIncidence> sharp_lines;           // lines with exactly d points
    std::vector<CurveIncidence> curve_candidates;     // irreducibility unchecked
    bool curve_search_complete = true;
};

namespace detail {

inline std::vector<std::vector<Rational>> coordinates(const std::vector<RatPoint>& pts) {
    std::vector<std::vector<Rational>> out;
    for (const auto& p : pts) out.push_back(normalized(p).coords);
    return out;
}

inline std::vector<std::vector<Complex>> coordinates(const std::vector<ComplexPoint>& pts) {
    std::vector<std::vector<Complex>> out;
    for (const auto& p : pts) out.push_back(normalized(p).coords);
    return out;
}

template <typename S>
std::size_t span_rank(const std::vector<const std::vector<S>*>& rows, double tol) {
    RowSpace<S> rs(rows.front()->size(), tol);
    for (const auto* r : rows) rs.insert(*r);
    return rs.rank();
}

template <typename S>
void check_distinct(const std::vector<std::vector<S>>& pts, double tol) {
    for (std::size_t a = 0; a < pts.size(); ++a) {
        if (pts[a].size() != pts.front().size()) throw std::invalid_argument("points of different dimensions");
        for (std::size_t b = 0; b < a; ++b)
            if (span_rank<S>({&pts[a], &pts[b]}, tol) < 2) throw std::invalid_argument("duplicate point in configuration");
    }
}

inline std::string format_coefficient(const Complex& c) {
    std::ostringstream os;
    os.precision(12);
    os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    return os.str();
}

inline std::string curve_string(int nvars, const std::vector<Monomial>& basis, const std::vector<Rational>& v) {
    Poly p = from_coefficients(nvars, basis, v);
    if (!p.is_zero()) p *= 1 / p.terms().begin()->second;
    return p.to_string();
}

inline std::string curve_string(int, const std::vector<Monomial>& basis, const std::vector<Complex>& v) {
    std::size_t best = 0;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (std::abs(v[k]) > std::abs(v[best])) best = k;
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        Complex c = v[k] / v[best];
        if (std::abs(c) < 1e-12) continue;
        if (!out.empty()) out += " + ";
        out += format_coefficient(c) + "*" + monomial_to_string(basis[k]);
    }
    return out;
}

template <typename S>
S monomial_at(const Monomial& m, const std::vector<S>& p) {
    S v(1);
    for (int i = 0; i < m.nvars(); ++i)
        for (int e = 0; e < m[i]; ++e) v *= p[static_cast<std::size_t>(i)];
    return v;
}

template <typename S>
ConfigReport collinearity(const std::vector<std::vector<S>>& pts, int d, double tol) {
    if (pts.size() < 2) throw std::invalid_argument("collinearity_report: need at least two points");
    if (d < 2) throw std::invalid_argument("collinearity_report: d must be >= 2");
    check_distinct(pts, tol);
    std::set<std::vector<std::size_t>> lines;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            std::vector<std::size_t> members{a, b};
            for (std::size_t c = 0; c < pts.size(); ++c) {
                if (c == a || c == b) continue;
                if (span_rank<S>({&pts[a], &pts[b], &pts[c]}, tol) == 2) members.push_back(c);
            }
            std::sort(members.begin(), members.end());
            lines.insert(std::move(members));
        }
    ConfigReport report;
    for (const auto& line : lines) {
        if (line.size() >= static_cast<std::size_t>(d) + 1) report.collinear_violations.push_back({line});
        else if (line.size() == static_cast<std::size_t>(d)) report.sharp_lines.push_back({line});
    }
    return report;
}

template <typename S>
void curve_incidence(const std::vector<std::vector<S>>& pts, int d, double tol, std::uint64_t cap, ConfigReport& report) {
    check_distinct(pts, tol);
    if (!pts.empty() && pts.front().size() != 3) throw std::invalid_argument("curve_incidence_report: points must lie in P^2");
    std::uint64_t extensions = 0;
    for (int k = 2; k <= d - 1; ++k) {
        auto basis = monomial_basis(3, k);
        std::size_t target = static_cast<std::size_t>(k) * static_cast<std::size_t>(d);
        if (pts.size() < target) continue;
        std::vector<std::vector<S>> rows;
        for (const auto& p : pts) {
            std::vector<S> r;
            for (const auto& m : basis) r.push_back(monomial_at(m, p));
            rows.push_back(std::move(r));
        }
        std::vector<std::size_t> chosen;
        // Depth-first over increasing index subsets; a subset whose evaluation
        // rows already have full rank lies on no curve, nor does any superset.
        auto dfs = [&](auto&& self, std::size_t next, const RowSpace<S>& space) -> void {
            if (!report.curve_search_complete) return;
            if (chosen.size() == target) {
                auto v = space.kernel_vector();
                report.curve_candidates.push_back({k, curve_string(3, basis, v), chosen});
                return;
            }
            for (std::size_t c = next; c + (target - chosen.size()) <= pts.size(); ++c) {
                if (++extensions > cap) {
                    report.curve_search_complete = false;
                    return;
                }
                RowSpace<S> extended = space;
                extended.insert(rows[c]);
                if (extended.rank() == basis.size()) continue;
                chosen.push_back(c);
                self(self, c + 1, extended);
                chosen.pop_back();
            }
        };
        dfs(dfs, 0, RowSpace<S>(basis.size(), tol));
    }
}

}  // namespace detail

inline ConfigReport collinearity_report(const std::vector<RatPoint>& pts, int d) {
    return detail::collinearity(detail::coordinates(pts), d, 0.0);
}

inline ConfigReport collinearity_report(const std::vector<ComplexPoint>& pts, int d, double tol = kGeometryTolerance) {
    return detail::collinearity(detail::coordinates(pts), d, tol);
}

inline constexpr std::uint64_t kSubsetExtensionCap = 10'000'000;

/// Curve part of the report; only meaningful in P^2.
inline ConfigReport curve_incidence_report(const std::vector<RatPoint>& pts, int d, std::uint64_t cap = kSubsetExtensionCap) {
    ConfigReport r;
    detail::curve_incidence(detail::coordinates(pts), d, 0.0, cap, r);
    return r;
}

inline ConfigReport curve_incidence_report(const std::vector<ComplexPoint>& pts, int d, double tol = kGeometryTolerance,
                                           std::uint64_t cap = kSubsetExtensionCap) {
    ConfigReport r;
    detail::curve_incidence(detail::coordinates(pts), d, tol, cap, r);
    return r;
}

}  // namespace eigsch
