// Scramble the minors of a cubic's eigenscheme by an invertible matrix and
// search for a basis that restores them.

#include "eigsch/eigsch.hpp"

#include <iostream>

using namespace eigsch;

int main() {
    auto f = SymTensor::make(2, 3, Poly::parse("x0^3 + x1^3 + x2^3 - 2*x0*x1*x2", 3));
    auto minors = determinantal_generators(f);
    std::vector<Poly> hs{minors.entries[1] + minors.entries[2], minors.entries[0], Rational(3) * minors.entries[2]};
    for (const auto& h : hs) std::cout << "h = " << h.to_string() << "\n";

    auto res = basis_change_search(hs, true);
    if (!res.change) {
        std::cout << "no basis found\n";
        return 1;
    }
    std::cout << "recovered minors:\n";
    for (const auto& e : res.change->f.entries) std::cout << "  " << e.to_string() << "\n";
    auto g = recover_symmetric(res.change->f);
    std::cout << "symmetric tensor: " << g->f.to_string() << "\n";
}
