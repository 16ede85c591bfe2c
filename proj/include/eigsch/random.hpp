#pragma once

// Seeded random tensors with small integer coefficients.

#include "poly.hpp"
#include "tensor.hpp"

#include <cstdint>
#include <random>

namespace eigsch {

inline constexpr int kRandomCoefficientBound = 20;

class TensorSampler {
public:
    explicit TensorSampler(std::uint64_t seed, int bound = kRandomCoefficientBound) : rng_(seed), bound_(bound) {}

    long coefficient() { return std::uniform_int_distribution<long>(-bound_, bound_)(rng_); }

    Poly form(int nvars, int degree) {
        Poly p(nvars);
        for (const auto& m : monomial_basis(nvars, degree)) p.add_term(m, Rational(coefficient()));
        return p;
    }

    PSTensor partially_symmetric(int n, int d) {
        std::vector<Poly> forms;
        for (int i = 0; i <= n; ++i) forms.push_back(form(n + 1, d - 1));
        return PSTensor::make(n, d, std::move(forms));
    }

    SymTensor symmetric(int n, int d) { return SymTensor::make(n, d, form(n + 1, d)); }

    std::vector<Rational> point(int n) {
        std::vector<Rational> v;
        do {
            v.clear();
            for (int i = 0; i <= n; ++i) v.emplace_back(coefficient());
        } while (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; }));
        return v;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    long bound_;
};

}  // namespace eigsch
