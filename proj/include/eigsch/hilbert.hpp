#pragma once

// Betti table and Hilbert function predicted by the Eagon-Northcott resolution
// of a 0-dimensional eigenscheme ideal, and the actual Hilbert function of the
// ideal generated by a determinantal tuple, computed by exact rank.

#include "linalg.hpp"
#include "poly.hpp"
#include "tensor.hpp"

#include <map>
#include <optional>
#include <vector>

namespace eigsch {

struct BettiEntry {
    int index;         // homological index i, 1..n
    int twist;         // a in R(-a)
    Integer multiplicity;
    friend bool operator==(const BettiEntry&, const BettiEntry&) = default;
};

struct BettiTable {
    int n = 1;
    int d = 2;
    std::vector<BettiEntry> entries;  // ordered by index, then by j

    std::vector<BettiEntry> at_index(int i) const {
        std::vector<BettiEntry> out;
        for (const auto& e : entries)
            if (e.index == i) out.push_back(e);
        return out;
    }
};

/// F_i = sum_{j=1..i} R(-j(d-2)-i-1)^{C(n+1,i+1)} for i = 1..n.
inline BettiTable predicted_betti(int n, int d) {
    if (n < 1 || d < 2) throw std::invalid_argument("predicted_betti: need n >= 1, d >= 2");
    BettiTable t{n, d, {}};
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) t.entries.push_back({i, j * (d - 2) + i + 1, binomial(n + 1, i + 1)});
    return t;
}

/// Numerator of the Hilbert series of R/I: 1 + sum_i (-1)^i sum_j mult t^twist.
inline std::map<int, Integer> hilbert_numerator(int n, int d) {
    std::map<int, Integer> num;
    num[0] = 1;
    for (const auto& e : predicted_betti(n, d).entries) {
        if (e.index % 2 == 1)
            num[e.twist] -= e.multiplicity;
        else
            num[e.twist] += e.multiplicity;
    }
    return num;
}

/// Coefficient of t^e in numerator / (1-t)^{n+1}.
inline Integer predicted_hilbert(int n, int d, int e) {
    if (e < 0) throw std::invalid_argument("predicted_hilbert: negative degree");
    Integer total = 0;
    for (const auto& [k, c] : hilbert_numerator(n, d))
        if (k <= e) total += c * binomial(e - k + n, n);
    return total;
}

/// dim (R/I)_e for the ideal generated by the tuple's entries.
inline Integer actual_hilbert(const DetTuple& f, int e) {
    if (e < 0) throw std::invalid_argument("actual_hilbert: negative degree");
    int nv = f.n + 1;
    Integer full = binomial(e + f.n, f.n);
    if (e < f.d || f.is_zero()) return full;
    auto cols = monomial_basis(nv, e);
    std::map<Monomial, std::size_t, GrevlexGreater> index;
    for (std::size_t k = 0; k < cols.size(); ++k) index.emplace(cols[k], k);
    auto shifts = monomial_basis(nv, e - f.d);
    Echelon ech(cols.size());
    for (const auto& g : f.entries) {
        if (g.is_zero()) continue;
        for (const auto& s : shifts) {
            std::vector<std::pair<std::size_t, Rational>> row;
            for (const auto& [m, c] : g.terms()) row.emplace_back(index.at(m * s), c);
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            ech.insert_entries(row);
            if (ech.rank() == cols.size()) return 0;
        }
    }
    return full - static_cast<unsigned long>(ech.rank());
}

struct HilbertRecord {
    int degree;
    Integer predicted;
    Integer actual;
    bool agree;
};

/// Default comparison window: largest twist in F_n minus n, plus one.
inline int default_hilbert_window(int n, int d) { return n * (d - 2) + 2; }

inline std::vector<HilbertRecord> compare_hilbert(const DetTuple& f, int max_degree) {
    std::vector<HilbertRecord> out;
    for (int e = 0; e <= max_degree; ++e) {
        Integer p = predicted_hilbert(f.n, f.d, e);
        Integer a = actual_hilbert(f, e);
        out.push_back({e, p, a, p == a});
    }
    return out;
}

struct DimensionProbe {
    bool zero_dimensional = false;
    std::optional<Integer> degree;
};

/// Compares the Hilbert function at e* = n(d-2)+1 and e*+1.
inline DimensionProbe dimension_probe(const DetTuple& f) {
    int e = f.n * (f.d - 2) + 1;
    Integer a = actual_hilbert(f, e);
    Integer b = actual_hilbert(f, e + 1);
    if (a == b) return {true, a};
    return {false, std::nullopt};
}

}  // namespace eigsch
