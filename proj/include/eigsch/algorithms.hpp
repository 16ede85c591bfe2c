#pragma once

// Deciding whether a tuple of forms is the tuple of determinantal equations of
// an eigenscheme (Koszul relations, plus de Rham relations for symmetric
// tensors), recovering the tensor, searching for a change of basis that makes a
// tuple valid, and fitting tensors whose eigenscheme contains given points.

#include "linalg.hpp"
#include "poly.hpp"
#include "tensor.hpp"

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <tuple>
#include <variant>
#include <vector>

namespace eigsch {

namespace detail {

struct RowKeyLess {
    bool operator()(const std::pair<std::size_t, Monomial>& a, const std::pair<std::size_t, Monomial>& b) const {
        if (a.first != b.first) return a.first < b.first;
        return GrevlexGreater{}(a.second, b.second);
    }
};

/// Coefficient matrix of a linear map into tuples of polynomials. Rows are
/// indexed by (output component, monomial), columns by unknowns.
class RowAccumulator {
public:
    explicit RowAccumulator(std::size_t unknowns) : unknowns_(unknowns) {}

    void add(std::size_t component, const Poly& image, std::size_t unknown, const Rational& scale = 1) {
        for (const auto& [m, c] : image.terms()) rows_[{component, m}][unknown] += c * scale;
    }

    void touch(std::size_t component, const Poly& p) {
        for (const auto& [m, c] : p.terms()) rows_.try_emplace({component, m});
    }

    std::size_t unknowns() const { return unknowns_; }

    Echelon echelon() const {
        Echelon e(unknowns_);
        for (const auto& [key, row] : rows_) e.insert_entries(entries(row));
        return e;
    }

    /// Solves A x = target, where target[component] gives the right-hand side.
    std::optional<RatVector> solve_for(const std::vector<Poly>& target) {
        for (std::size_t k = 0; k < target.size(); ++k) touch(k, target[k]);
        RatMatrix a(rows_.size(), unknowns_);
        RatVector rhs(rows_.size());
        std::size_t r = 0;
        for (const auto& [key, row] : rows_) {
            for (const auto& [c, v] : row) a(r, c) = v;
            rhs[r] = target.at(key.first).coefficient(key.second);
            ++r;
        }
        return solve(a, rhs);
    }

private:
    static std::vector<std::pair<std::size_t, Rational>> entries(const std::map<std::size_t, Rational>& row) {
        std::vector<std::pair<std::size_t, Rational>> out;
        for (const auto& [c, v] : row)
            if (v != 0) out.emplace_back(c, v);
        return out;
    }

    std::size_t unknowns_;
    std::map<std::pair<std::size_t, Monomial>, std::map<std::size_t, Rational>, RowKeyLess> rows_;
};

inline bool is_zero_vector(const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// x_i f_jk - x_j f_ik + x_k f_ij = 0 for all i<j<k.
inline bool koszul_check(const DetTuple& f) {
    int nv = f.n + 1;
    for (auto [i, j, k] : index_triples(f.n)) {
        Poly s = Poly::variable(nv, i) * f.at(j, k) - Poly::variable(nv, j) * f.at(i, k) +
                 Poly::variable(nv, k) * f.at(i, j);
        if (!s.is_zero()) return false;
    }
    return true;
}

/// d_i f_jk - d_j f_ik + d_k f_ij = 0 for all i<j<k.
inline bool derham_check(const DetTuple& f) {
    for (auto [i, j, k] : index_triples(f.n)) {
        Poly s = partial_derivative(f.at(j, k), i) - partial_derivative(f.at(i, k), j) +
                 partial_derivative(f.at(i, j), k);
        if (!s.is_zero()) return false;
    }
    return true;
}

namespace detail {
// A homogeneous system's particular solution is zero; prefer a nonzero
// representative so callers get a meaningful witness.
inline RatVector prefer_nonzero(RatVector x, const RowAccumulator& acc) {
    if (!is_zero_vector(x)) return x;
    auto kb = kernel_of(acc.echelon());
    if (kb.dim > 0) return kb.vectors.front();
    return x;
}
}  // namespace detail

/// Returns (g_0..g_n) with x_i g_j - x_j g_i = f_ij, or nullopt when the
/// Koszul relations fail. The answer is unique up to adding (x_0 h, ..., x_n h).
inline std::optional<PSTensor> recover_partially_symmetric(const DetTuple& f) {
    if (!koszul_check(f)) return std::nullopt;
    int nv = f.n + 1;
    auto gbasis = monomial_basis(nv, f.d - 1);
    std::size_t gsize = gbasis.size();
    detail::RowAccumulator acc(static_cast<std::size_t>(nv) * gsize);
    for (auto [i, j] : index_pairs(f.n)) {
        std::size_t p = pair_index(f.n, i, j);
        for (std::size_t a = 0; a < gsize; ++a) {
            acc.add(p, Poly::term(gbasis[a] * Monomial::variable(nv, i), 1), static_cast<std::size_t>(j) * gsize + a);
            acc.add(p, Poly::term(gbasis[a] * Monomial::variable(nv, j), -1), static_cast<std::size_t>(i) * gsize + a);
        }
    }
    auto x = acc.solve_for(f.entries);
    if (!x) throw std::logic_error("Koszul relations hold but the recovery system is inconsistent");
    RatVector sol = detail::prefer_nonzero(std::move(*x), acc);
    PSTensor t{f.n, f.d, {}};
    for (int k = 0; k < nv; ++k)
        t.forms.push_back(
            from_coefficients(nv, gbasis, std::span<const Rational>(sol).subspan(static_cast<std::size_t>(k) * gsize, gsize)));
    return t;
}

namespace detail {
/// Image of a form under f -> (x_i d_j f - x_j d_i f)_{i<j}, in pair order.
inline std::vector<Poly> alpha_image(const Poly& f, int n) {
    int nv = n + 1;
    std::vector<Poly> out;
    for (auto [i, j] : index_pairs(n))
        out.push_back(Poly::variable(nv, i) * partial_derivative(f, j) - Poly::variable(nv, j) * partial_derivative(f, i));
    return out;
}

inline RowAccumulator alpha_system(int n, const std::vector<Monomial>& basis) {
    RowAccumulator acc(basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a) {
        auto img = alpha_image(Poly::term(basis[a], 1), n);
        for (std::size_t p = 0; p < img.size(); ++p) acc.add(p, img[p], a);
    }
    return acc;
}
}  // namespace detail

/// Returns f with x_i d_j f - x_j d_i f = f_ij when both relation families hold
/// and such an f exists.
inline std::optional<SymTensor> recover_symmetric(const DetTuple& f) {
    if (!koszul_check(f) || !derham_check(f)) return std::nullopt;
    int nv = f.n + 1;
    auto basis = monomial_basis(nv, f.d);
    auto acc = detail::alpha_system(f.n, basis);
    auto x = acc.solve_for(f.entries);
    if (!x) return std::nullopt;
    RatVector sol = detail::prefer_nonzero(std::move(*x), acc);
    return SymTensor{f.n, f.d, from_coefficients(nv, basis, sol)};
}

// ---------------------------------------------------------------------------

struct AlphaKernel {
    std::size_t dim = 0;
    std::optional<Poly> generator;
};

/// Kernel of f -> (x_i d_j f - x_j d_i f)_{i<j} on forms of degree d.
inline AlphaKernel alpha_kernel(int n, int d) {
    if (n < 1 || d < 2) throw std::invalid_argument("alpha_kernel: need n >= 1, d >= 2");
    auto basis = monomial_basis(n + 1, d);
    auto kb = kernel_of(detail::alpha_system(n, basis).echelon());
    AlphaKernel out{kb.dim, std::nullopt};
    if (kb.dim > 0) out.generator = from_coefficients(n + 1, basis, kb.vectors.front());
    return out;
}

// ---------------------------------------------------------------------------

struct BasisChange {
    RatMatrix m;  // f_a = sum_b m(a, b) h_b
    DetTuple f;
};

struct BasisChangeOutcome {
    std::optional<BasisChange> change;
    std::size_t solution_dim = 0;  // dimension of the space of matrices satisfying the relations
    bool exhaustive = true;        // false when non-existence was only checked by random sampling
};

inline constexpr int kBasisChangeTrials = 8;
inline constexpr std::size_t kBasisChangeGridBudget = 20000;

/// Searches for an invertible constant matrix M such that M * hs satisfies the
/// Koszul relations (and the de Rham relations when `symmetric`).
inline BasisChangeOutcome basis_change_search(const std::vector<Poly>& hs, bool symmetric, std::uint64_t seed = 0) {
    if (hs.empty()) throw std::invalid_argument("basis_change_search: no forms");
    std::size_t count = hs.size();
    int nv = hs.front().nvars();
    int n = nv - 1;
    if (pair_count(n) != count)
        throw std::invalid_argument("basis_change_search: expected C(n+1,2) forms in n+1 variables");
    int d = -1;
    for (const auto& h : hs) {
        if (h.nvars() != nv) throw std::invalid_argument("basis_change_search: variable-count mismatch");
        if (!h.is_homogeneous()) throw std::invalid_argument("basis_change_search: form is not homogeneous");
        if (h.is_zero()) continue;
        if (d < 0) d = h.degree();
        if (h.degree() != d) throw std::invalid_argument("basis_change_search: forms of different degrees");
    }
    if (d < 0) d = 2;

    auto to_tuple = [&](const RatMatrix& m) {
        DetTuple f{n, d, std::vector<Poly>(count, Poly(nv))};
        for (std::size_t a = 0; a < count; ++a)
            for (std::size_t b = 0; b < count; ++b)
                if (m(a, b) != 0) f.entries[a] += hs[b] * m(a, b);
        return f;
    };

    // Unknown m(a, b) has index a * count + b.
    auto unknown = [count](std::size_t a, std::size_t b) { return a * count + b; };
    detail::RowAccumulator acc(count * count);
    auto triples = index_triples(n);
    for (std::size_t t = 0; t < triples.size(); ++t) {
        auto [i, j, k] = triples[t];
        std::size_t pjk = pair_index(n, j, k), pik = pair_index(n, i, k), pij = pair_index(n, i, j);
        for (std::size_t b = 0; b < count; ++b) {
            acc.add(t, Poly::variable(nv, i) * hs[b], unknown(pjk, b));
            acc.add(t, Poly::variable(nv, j) * hs[b], unknown(pik, b), -1);
            acc.add(t, Poly::variable(nv, k) * hs[b], unknown(pij, b));
            if (symmetric) {
                std::size_t comp = triples.size() + t;
                acc.add(comp, partial_derivative(hs[b], i), unknown(pjk, b));
                acc.add(comp, partial_derivative(hs[b], j), unknown(pik, b), -1);
                acc.add(comp, partial_derivative(hs[b], k), unknown(pij, b));
            }
        }
    }
    auto kb = kernel_of(acc.echelon());
    BasisChangeOutcome out;
    out.solution_dim = kb.dim;
    if (kb.dim == 0) return out;

    auto combine = [&](const std::vector<Integer>& coeffs) {
        RatMatrix m(count, count);
        for (std::size_t s = 0; s < kb.dim; ++s) {
            if (coeffs[s] == 0) continue;
            for (std::size_t u = 0; u < count * count; ++u) m(u / count, u % count) += kb.vectors[s][u] * coeffs[s];
        }
        return m;
    };
    auto accept = [&](RatMatrix m) {
        DetTuple f = to_tuple(m);
        out.change = BasisChange{std::move(m), std::move(f)};
        return out;
    };

    {
        DetTuple natural = to_tuple(RatMatrix::identity(count));
        if (koszul_check(natural) && (!symmetric || derham_check(natural)))
            return accept(RatMatrix::identity(count));
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> small(-3, 3);
    std::vector<Integer> coeffs(kb.dim);
    for (int trial = 0; trial < kBasisChangeTrials; ++trial) {
        for (auto& c : coeffs) c = small(rng);
        auto m = combine(coeffs);
        if (determinant(m) != 0) return accept(std::move(m));
    }

    // det(sum t_s K_s) has degree <= count in each t_s; vanishing on the grid
    // {0..count}^dim proves it is identically zero.
    double grid = std::pow(static_cast<double>(count + 1), static_cast<double>(kb.dim));
    if (grid <= static_cast<double>(kBasisChangeGridBudget)) {
        std::vector<std::size_t> idx(kb.dim, 0);
        while (true) {
            for (std::size_t s = 0; s < kb.dim; ++s) coeffs[s] = static_cast<long>(idx[s]);
            auto m = combine(coeffs);
            if (determinant(m) != 0) return accept(std::move(m));
            std::size_t s = 0;
            while (s < kb.dim && ++idx[s] > count) idx[s++] = 0;
            if (s == kb.dim) break;
        }
        return out;
    }
    std::uniform_int_distribution<long> wide(-1'000'000, 1'000'000);
    for (int trial = 0; trial < 64; ++trial) {
        for (auto& c : coeffs) c = wide(rng);
        auto m = combine(coeffs);
        if (determinant(m) != 0) return accept(std::move(m));
    }
    out.exhaustive = false;
    return out;
}

// ---------------------------------------------------------------------------

struct WitnessResult {
    bool found = false;
    std::variant<std::monostate, PSTensor, SymTensor> witness;
    std::size_t kernel_dim = 0;
    std::size_t trivial_dim = 0;
};

namespace detail {
inline Rational monomial_value(const Monomial& m, const RatPoint& p) {
    Rational v = 1;
    for (int i = 0; i < m.nvars(); ++i)
        for (int e = 0; e < m[i]; ++e) v *= p.coords[static_cast<std::size_t>(i)];
    return v;
}

inline void check_point_set(const std::vector<RatPoint>& points, int& n) {
    if (points.empty()) throw std::invalid_argument("need at least one point");
    n = static_cast<int>(points.front().coords.size()) - 1;
    if (n < 1) throw std::invalid_argument("points must have at least two coordinates");
    std::vector<RatPoint> seen;
    for (const auto& p : points) {
        if (static_cast<int>(p.coords.size()) != n + 1) throw std::invalid_argument("points of different dimensions");
        auto q = normalized(p);
        if (std::find(seen.begin(), seen.end(), q) != seen.end()) throw std::invalid_argument("duplicate point");
        seen.push_back(std::move(q));
    }
}
}  // namespace detail

/// Looks for a tensor of order d (symmetric or partially symmetric) whose
/// eigenscheme contains every given point, beyond the tensors whose
/// determinantal tuple vanishes identically.
inline WitnessResult fit_tensor_to_points(const std::vector<RatPoint>& points, int d, bool symmetric) {
    if (d < 2) throw std::invalid_argument("fit_tensor_to_points: d must be >= 2");
    int n = 0;
    detail::check_point_set(points, n);
    int nv = n + 1;
    WitnessResult out;

    if (!symmetric) {
        auto gbasis = monomial_basis(nv, d - 1);
        std::size_t gsize = gbasis.size();
        std::size_t unknowns = static_cast<std::size_t>(nv) * gsize;
        Echelon sys(unknowns);
        for (const auto& p : points) {
            std::vector<Rational> vals;
            for (const auto& m : gbasis) vals.push_back(detail::monomial_value(m, p));
            for (auto [i, j] : index_pairs(n)) {
                RatVector row(unknowns);
                for (std::size_t a = 0; a < gsize; ++a) {
                    row[static_cast<std::size_t>(j) * gsize + a] += p.coords[static_cast<std::size_t>(i)] * vals[a];
                    row[static_cast<std::size_t>(i) * gsize + a] -= p.coords[static_cast<std::size_t>(j)] * vals[a];
                }
                sys.insert(row);
            }
        }
        auto kb = kernel_of(sys);
        // Trivial family (x_0 h, ..., x_n h), h of degree d-2.
        Echelon trivial(unknowns);
        for (const auto& h : monomial_basis(nv, d - 2)) {
            RatVector v(unknowns);
            for (int k = 0; k < nv; ++k) {
                auto m = h * Monomial::variable(nv, k);
                auto it = std::find(gbasis.begin(), gbasis.end(), m);
                v[static_cast<std::size_t>(k) * gsize + static_cast<std::size_t>(it - gbasis.begin())] = 1;
            }
            trivial.insert(v);
        }
        out.kernel_dim = kb.dim;
        out.trivial_dim = trivial.rank();
        out.found = out.kernel_dim > out.trivial_dim;
        if (out.found) {
            for (const auto& v : kb.vectors) {
                if (trivial.in_span(v)) continue;
                PSTensor t{n, d, {}};
                for (int k = 0; k < nv; ++k)
                    t.forms.push_back(from_coefficients(
                        nv, gbasis, std::span<const Rational>(v).subspan(static_cast<std::size_t>(k) * gsize, gsize)));
                out.witness = std::move(t);
                break;
            }
        }
        return out;
    }

    auto basis = monomial_basis(nv, d);
    std::size_t unknowns = basis.size();
    // Partial derivatives of each basis monomial, shared across points.
    std::vector<std::vector<Poly>> grads(unknowns);
    for (std::size_t a = 0; a < unknowns; ++a)
        for (int i = 0; i < nv; ++i) grads[a].push_back(partial_derivative(Poly::term(basis[a], 1), i));
    Echelon sys(unknowns);
    for (const auto& p : points) {
        for (auto [i, j] : index_pairs(n)) {
            RatVector row(unknowns);
            for (std::size_t a = 0; a < unknowns; ++a)
                row[a] = p.coords[static_cast<std::size_t>(i)] * evaluate(grads[a][static_cast<std::size_t>(j)], p.coords) -
                         p.coords[static_cast<std::size_t>(j)] * evaluate(grads[a][static_cast<std::size_t>(i)], p.coords);
            sys.insert(row);
        }
    }
    auto kb = kernel_of(sys);
    Echelon trivial(unknowns);
    if (d % 2 == 0) {
        Poly q(nv);
        for (int i = 0; i < nv; ++i) q += Poly::variable(nv, i) * Poly::variable(nv, i);
        trivial.insert(to_coefficients(q.pow(d / 2), basis));
    }
    out.kernel_dim = kb.dim;
    out.trivial_dim = trivial.rank();
    out.found = out.kernel_dim > out.trivial_dim;
    if (out.found) {
        for (const auto& v : kb.vectors) {
            if (trivial.in_span(v)) continue;
            out.witness = SymTensor{n, d, from_coefficients(nv, basis, v)};
            break;
        }
    }
    return out;
}

}  // namespace eigsch
