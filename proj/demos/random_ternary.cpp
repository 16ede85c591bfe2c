// Solve a random ternary quartic and compare the count with w(2,4).

#include "eigsch/eigsch.hpp"

#include <cstdlib>
#include <iostream>

using namespace eigsch;

int main(int argc, char** argv) {
    std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
    TensorSampler sampler(seed);
    auto f = sampler.symmetric(2, 4);
    std::cout << "f = " << f.f.to_string() << "\n";

    auto sol = solve_eigenpoints_p2(gradient_tensor(f));
    std::cout << sol.size() << " eigenpoints, expected " << w_count(2, 4) << "\n";
    for (std::size_t k = 0; k < sol.size(); ++k)
        std::cout << "  " << to_json(sol.points[k]).dump() << "  residual " << sol.residual[k] << "\n";

    std::vector<ComplexPoint> pts;
    for (const auto& p : sol.points) pts.push_back(as_complex(p));
    auto report = collinearity_report(pts, 4);
    std::cout << report.collinear_violations.size() << " lines with 5 or more eigenpoints\n";
}
