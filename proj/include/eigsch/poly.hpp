#pragma once

// Sparse multivariate polynomials over Q with a graded reverse-lexicographic
// term order. Variables are named x0, x1, ..., x{nvars-1}.

#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <complex>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eigsch {

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
        for (int e : exps_)
            if (e < 0) throw std::invalid_argument("negative exponent in monomial");
    }

    static Monomial one(int nvars) { return Monomial(std::vector<int>(static_cast<std::size_t>(nvars), 0)); }
    static Monomial variable(int nvars, int i) {
        auto m = one(nvars);
        m.exps_.at(static_cast<std::size_t>(i)) = 1;
        return m;
    }

    int nvars() const { return static_cast<int>(exps_.size()); }
    int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
    int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& exponents() const { return exps_; }

    Monomial operator*(const Monomial& o) const {
        if (o.nvars() != nvars()) throw std::invalid_argument("monomial variable-count mismatch");
        Monomial r = *this;
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
        return r;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > o.exps_[i]) return false;
        return true;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<int> exps_;
};

/// Strict "a before b" in descending grevlex order: higher degree first; within a
/// degree, a precedes b when the last nonzero entry of a - b is negative.
struct GrevlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        for (int i = a.nvars() - 1; i >= 0; --i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }
};

/// All monomials of degree e in nvars variables, in descending grevlex order.
inline std::vector<Monomial> monomial_basis(int nvars, int e) {
    if (nvars < 1) throw std::invalid_argument("monomial_basis: nvars must be positive");
    if (e < 0) throw std::invalid_argument("monomial_basis: negative degree");
    std::vector<Monomial> out;
    std::vector<int> exps(static_cast<std::size_t>(nvars), 0);
    // Recursive fill of the exponent vector from the last variable down.
    auto rec = [&](auto&& self, int var, int left) -> void {
        if (var == 0) {
            exps[0] = left;
            out.emplace_back(exps);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            exps[static_cast<std::size_t>(var)] = k;
            self(self, var - 1, left - k);
        }
        exps[static_cast<std::size_t>(var)] = 0;
    };
    rec(rec, nvars - 1, e);
    std::sort(out.begin(), out.end(), GrevlexGreater{});
    return out;
}

class Poly {
public:
    using Terms = std::map<Monomial, Rational, GrevlexGreater>;

    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {
        if (nvars < 1) throw std::invalid_argument("polynomial needs at least one variable");
    }

    static Poly constant(int nvars, const Rational& c) {
        Poly p(nvars);
        p.add_term(Monomial::one(nvars), c);
        return p;
    }
    static Poly variable(int nvars, int i) {
        if (i < 0 || i >= nvars) throw std::out_of_range("variable index out of range");
        Poly p(nvars);
        p.add_term(Monomial::variable(nvars, i), 1);
        return p;
    }
    static Poly term(const Monomial& m, const Rational& c) {
        Poly p(m.nvars());
        p.add_term(m, c);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (m.nvars() != nvars_) throw std::invalid_argument("monomial variable-count mismatch");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

    /// The zero polynomial counts as homogeneous of every degree.
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = degree();
        return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
    }
    bool is_homogeneous_of_degree(int d) const {
        return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Poly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_same(b);
        Poly r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

    Poly pow(int k) const {
        if (k < 0) throw std::invalid_argument("negative power");
        Poly r = constant(nvars_, 1);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    std::string to_string() const;
    static Poly parse(std::string_view text, int nvars);

private:
    void check_same(const Poly& o) const {
        if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial variable-count mismatch");
    }

    int nvars_ = 1;
    Terms terms_;
};

inline Poly partial_derivative(const Poly& p, int i) {
    if (i < 0 || i >= p.nvars()) throw std::out_of_range("partial_derivative: variable index out of range");
    Poly r(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        int e = m[i];
        if (e == 0) continue;
        auto exps = m.exponents();
        exps[static_cast<std::size_t>(i)] -= 1;
        r.add_term(Monomial(std::move(exps)), c * e);
    }
    return r;
}

namespace detail {
template <typename S>
S convert_coefficient(const Rational& c) {
    if constexpr (std::is_same_v<S, Rational>) {
        return c;
    } else if constexpr (std::is_same_v<S, Complex>) {
        return Complex(c.get_d(), 0.0);
    } else {
        return static_cast<S>(c.get_d());
    }
}

template <typename S>
S power(const S& x, int e) {
    S r(1);
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}
}  // namespace detail

/// Evaluates p at a point. Exact for Rational coordinates, floating for Complex.
template <typename S>
S evaluate(const Poly& p, std::span<const S> point) {
    if (static_cast<int>(point.size()) != p.nvars()) throw std::invalid_argument("evaluate: dimension mismatch");
    S total(0);
    for (const auto& [m, c] : p.terms()) {
        S t = detail::convert_coefficient<S>(c);
        for (int i = 0; i < m.nvars(); ++i)
            if (m[i] != 0) t *= detail::power(point[static_cast<std::size_t>(i)], m[i]);
        total += t;
    }
    return total;
}

inline Rational evaluate(const Poly& p, const std::vector<Rational>& point) {
    return evaluate<Rational>(p, std::span<const Rational>(point));
}
inline Complex evaluate(const Poly& p, const std::vector<Complex>& point) {
    return evaluate<Complex>(p, std::span<const Complex>(point));
}

/// Builds the polynomial sum_k coeffs[k] * basis[k].
inline Poly from_coefficients(int nvars, const std::vector<Monomial>& basis, std::span<const Rational> coeffs) {
    if (basis.size() != coeffs.size()) throw std::invalid_argument("coefficient vector length mismatch");
    Poly p(nvars);
    for (std::size_t k = 0; k < basis.size(); ++k) p.add_term(basis[k], coeffs[k]);
    return p;
}

/// Coefficients of p on a monomial basis; throws if p has a term outside it.
inline std::vector<Rational> to_coefficients(const Poly& p, const std::vector<Monomial>& basis) {
    std::map<Monomial, std::size_t, GrevlexGreater> index;
    for (std::size_t k = 0; k < basis.size(); ++k) index.emplace(basis[k], k);
    std::vector<Rational> out(basis.size());
    for (const auto& [m, c] : p.terms()) {
        auto it = index.find(m);
        if (it == index.end()) throw std::invalid_argument("polynomial has a term outside the basis");
        out[it->second] = c;
    }
    return out;
}

inline std::string monomial_to_string(const Monomial& m) {
    std::string s;
    for (int i = 0; i < m.nvars(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += 'x' + std::to_string(i);
        if (m[i] > 1) s += '^' + std::to_string(m[i]);
    }
    return s;
}

inline std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = abs(c);
        if (first) {
            if (c < 0) out += '-';
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono = monomial_to_string(m);
        if (mono.empty()) {
            out += eigsch::to_string(a);
        } else if (a == 1) {
            out += mono;
        } else {
            out += eigsch::to_string(a) + "*" + mono;
        }
    }
    return out;
}

/// Grammar: sum of signed terms; a term is a product of factors, each either a
/// rational number `p` or `p/q`, or a variable `xI` with optional `^e`. The `*`
/// between factors may be omitted. Whitespace is ignored.
inline Poly Poly::parse(std::string_view text, int nvars) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("cannot parse polynomial '" + std::string(text) + "': " + why);
    };
    auto read_digits = [&]() {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected digits at offset " + std::to_string(start));
        return s.substr(start, pos - start);
    };
    if (s.empty()) fail("empty input");

    Poly result(nvars);
    bool first = true;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            fail("expected '+' or '-' at offset " + std::to_string(pos));
        }
        first = false;
        Rational coeff = sign;
        std::vector<int> exps(static_cast<std::size_t>(nvars), 0);
        bool any_factor = false;
        while (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
            if (any_factor && s[pos] == '*') {
                ++pos;
                if (pos >= s.size()) fail("dangling '*'");
            }
            if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::string num = read_digits();
                std::string den = "1";
                if (pos < s.size() && s[pos] == '/') {
                    ++pos;
                    den = read_digits();
                }
                coeff *= parse_rational(num + "/" + den);
            } else if (s[pos] == 'x') {
                ++pos;
                int idx = std::stoi(read_digits());
                if (idx >= nvars) fail("variable x" + std::to_string(idx) + " out of range");
                int e = 1;
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    e = std::stoi(read_digits());
                }
                exps[static_cast<std::size_t>(idx)] += e;
            } else {
                fail(std::string("unexpected character '") + s[pos] + "'");
            }
            any_factor = true;
        }
        if (!any_factor) fail("empty term");
        result.add_term(Monomial(std::move(exps)), coeff);
    }
    return result;
}

}  // namespace eigsch
