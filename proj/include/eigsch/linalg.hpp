#pragma once

// Exact linear algebra over Q.
//
// Rank, kernels and linear solves go through an incremental row echelon form
// kept over the integers: every stored row is primitive (content 1, positive
// leading entry) and reductions are fraction-free cross-multiplications followed
// by content removal. Rows are stored sparsely, which keeps the large but very
// sparse coefficient matrices (two nonzeros per row for the derivative map)
// cheap. Determinants use Bareiss elimination. Back-substitution to reduced
// echelon form happens in rationals.

#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eigsch {

using RatVector = std::vector<Rational>;

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) throw std::invalid_argument("RatMatrix: entry count != rows*cols");
    }
    RatMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("RatMatrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Rational>& data() const { return data_; }

    void append_row(std::span<const Rational> r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw std::invalid_argument("append_row: length mismatch");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    RatVector apply(std::span<const Rational> v) const {
        if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
        RatVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (sgn((*this)(r, c)) != 0 && sgn(v[c]) != 0) out[r] += (*this)(r, c) * v[c];
        return out;
    }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
        RatMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
            }
        return out;
    }

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct KernelBasis {
    std::size_t dim = 0;
    std::vector<RatVector> vectors;
};

namespace detail {

using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

inline void make_primitive(SparseRow& row) {
    if (row.empty()) return;
    Integer g = 0;
    for (const auto& [c, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    if (row.front().second < 0) g = -g;
    if (g != 1)
        for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

/// row <- p*row - a*pivot where a, p are the leading entries; the leading column cancels.
inline SparseRow cross_reduce(const SparseRow& row, const SparseRow& pivot) {
    Integer a = row.front().second;
    Integer p = pivot.front().second;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    a /= g;
    p /= g;
    SparseRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 1, j = 1;
    while (i < row.size() || j < pivot.size()) {
        if (j >= pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.emplace_back(row[i].first, p * row[i].second);
            ++i;
        } else if (i >= row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, -a * pivot[j].second);
            ++j;
        } else {
            Integer v = p * row[i].second - a * pivot[j].second;
            if (v != 0) out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    make_primitive(out);
    return out;
}

/// Clears denominators of a sparse rational row (entries sorted by column).
inline SparseRow integer_row(const std::vector<std::pair<std::size_t, Rational>>& r) {
    Integer l = 1;
    for (const auto& [c, v] : r)
        if (v != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    SparseRow out;
    for (const auto& [c, v] : r) {
        if (v == 0) continue;
        out.emplace_back(c, l / v.get_den() * v.get_num());
    }
    make_primitive(out);
    return out;
}

inline SparseRow integer_row(std::span<const Rational> r) {
    Integer l = 1;
    for (const auto& v : r)
        if (v != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    SparseRow out;
    for (std::size_t c = 0; c < r.size(); ++c) {
        if (r[c] == 0) continue;
        Integer v = l / r[c].get_den() * r[c].get_num();
        out.emplace_back(c, std::move(v));
    }
    make_primitive(out);
    return out;
}

}  // namespace detail

/// Incremental row echelon form. Pivots are keyed by leading column; rows are
/// reduced in insertion order, so the result depends only on the input order.
class Echelon {
public:
    explicit Echelon(std::size_t cols) : cols_(cols) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return pivots_.size(); }
    const std::map<std::size_t, detail::SparseRow>& pivots() const { return pivots_; }

    /// Returns true when the row was independent of the rows inserted so far.
    bool insert(std::span<const Rational> row) {
        if (row.size() != cols_) throw std::invalid_argument("Echelon::insert: length mismatch");
        return insert_sparse(detail::integer_row(row));
    }

    /// Sparse variant: (column, value) pairs sorted by column.
    bool insert_entries(const std::vector<std::pair<std::size_t, Rational>>& row) {
        return insert_sparse(detail::integer_row(row));
    }

    bool insert_sparse(detail::SparseRow row) {
        reduce_leading(row);
        if (row.empty()) return false;
        std::size_t lead = row.front().first;
        pivots_.emplace(lead, std::move(row));
        return true;
    }

    bool in_span(std::span<const Rational> row) const {
        auto r = detail::integer_row(row);
        reduce_leading(r);
        return r.empty();
    }

    /// Reduced row echelon form: pivot column -> row with a 1 at the pivot and
    /// nonzero entries only in non-pivot columns.
    std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> reduced() const {
        std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> out;
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            const auto& row = it->second;
            Rational lead(row.front().second);
            std::map<std::size_t, Rational> acc;
            for (std::size_t k = 1; k < row.size(); ++k) {
                Rational v(row[k].second);
                v /= lead;
                auto p = out.find(row[k].first);
                if (p == out.end()) {
                    acc[row[k].first] += v;
                } else {
                    for (const auto& [c, w] : p->second)
                        if (c != row[k].first) acc[c] -= v * w;
                }
            }
            std::vector<std::pair<std::size_t, Rational>> entries;
            entries.emplace_back(it->first, Rational(1));
            for (auto& [c, v] : acc)
                if (v != 0) entries.emplace_back(c, v);
            out.emplace(it->first, std::move(entries));
        }
        return out;
    }

private:
    void reduce_leading(detail::SparseRow& row) const {
        while (!row.empty()) {
            auto it = pivots_.find(row.front().first);
            if (it == pivots_.end()) return;
            row = detail::cross_reduce(row, it->second);
        }
    }

    std::size_t cols_;
    std::map<std::size_t, detail::SparseRow> pivots_;
};

inline Echelon echelon_of(const RatMatrix& m) {
    Echelon e(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    return e;
}

/// Largest prime below 2^62.
inline constexpr std::uint64_t kDefaultModulus = 4611686018427387847ULL;

/// Rank over Z/p. Returns nullopt when p divides some denominator.
inline std::optional<std::size_t> rank_mod_p(const RatMatrix& m, std::uint64_t p = kDefaultModulus) {
    using u128 = unsigned __int128;
    auto mulmod = [p](std::uint64_t a, std::uint64_t b) { return static_cast<std::uint64_t>(u128(a) * b % p); };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    Integer P(static_cast<unsigned long>(p));
    auto reduce = [&](const Integer& z) -> std::uint64_t {
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), P.get_mpz_t());
        return static_cast<std::uint64_t>(r.get_ui());
    };
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::uint64_t> a(rows * cols, 0);
    for (std::size_t i = 0; i < rows * cols; ++i) {
        const Rational& q = m.data()[i];
        if (q == 0) continue;
        std::uint64_t den = reduce(q.get_den());
        if (den == 0) return std::nullopt;
        a[i] = mulmod(reduce(q.get_num()), powmod(den, p - 2));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t k = 0; k < cols; ++k) std::swap(a[piv * cols + k], a[rank * cols + k]);
        std::uint64_t inv = powmod(a[rank * cols + c], p - 2);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            std::uint64_t f = a[r * cols + c];
            if (f == 0) continue;
            f = mulmod(f, inv);
            for (std::size_t k = c; k < cols; ++k) {
                std::uint64_t s = mulmod(f, a[rank * cols + k]);
                std::uint64_t& t = a[r * cols + k];
                t = t >= s ? t - s : t + p - s;
            }
        }
        ++rank;
    }
    return rank;
}

/// Exact rank. Large dense inputs try a modular rank first; a full modular rank
/// is conclusive because reduction mod p can only lose rank.
inline std::size_t rank(const RatMatrix& m) {
    std::size_t full = std::min(m.rows(), m.cols());
    if (full == 0) return 0;
    if (m.rows() * m.cols() >= 4096 && m.rows() * m.cols() * full <= 50'000'000) {
        if (auto rp = rank_mod_p(m); rp && *rp == full) return full;
    }
    return echelon_of(m).rank();
}

/// Kernel of an echelon form: one vector per free column, free entry 1.
inline KernelBasis kernel_of(const Echelon& e) {
    KernelBasis kb;
    auto rref = e.reduced();
    for (std::size_t f = 0; f < e.cols(); ++f) {
        if (rref.count(f)) continue;
        RatVector v(e.cols());
        v[f] = 1;
        for (const auto& [lead, entries] : rref)
            for (const auto& [c, w] : entries)
                if (c == f) v[lead] = -w;
        kb.vectors.push_back(std::move(v));
    }
    kb.dim = kb.vectors.size();
    return kb;
}

/// Basis of the right null space.
inline KernelBasis kernel_basis(const RatMatrix& m) { return kernel_of(echelon_of(m)); }

/// One particular solution of m x = b (free variables set to zero), or nullopt.
inline std::optional<RatVector> solve(const RatMatrix& m, std::span<const Rational> b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
    std::size_t n = m.cols();
    Echelon e(n + 1);
    RatVector row(n + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto src = m.row(r);
        std::copy(src.begin(), src.end(), row.begin());
        row[n] = b[r];
        e.insert(row);
    }
    if (e.pivots().count(n)) return std::nullopt;
    RatVector x(n);
    for (const auto& [lead, entries] : e.reduced())
        for (const auto& [c, w] : entries)
            if (c == n) x[lead] = w;
    return x;
}

/// Determinant by Bareiss fraction-free elimination on the denominator-cleared rows.
inline Rational determinant(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    std::vector<Integer> a(n * n);
    Integer scale = 1;
    for (std::size_t r = 0; r < n; ++r) {
        Integer l = 1;
        for (const auto& v : m.row(r)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        scale *= l;
        for (std::size_t c = 0; c < n; ++c) a[r * n + c] = l / m(r, c).get_den() * m(r, c).get_num();
    }
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k * n + k] == 0) {
            std::size_t s = k + 1;
            while (s < n && a[s * n + k] == 0) ++s;
            if (s == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[s * n + c]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a[k * n + k] * a[i * n + j] - a[i * n + k] * a[k * n + j];
                mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i * n + k] = 0;
        }
        prev = a[k * n + k];
    }
    Rational det(a[n * n - 1] * sign, scale);
    det.canonicalize();
    return det;
}

}  // namespace eigsch
