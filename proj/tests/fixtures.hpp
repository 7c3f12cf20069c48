#ifndef TDPSA_TESTS_FIXTURES_HPP
#define TDPSA_TESTS_FIXTURES_HPP

#include <random>

#include "tdpsa/system.hpp"

namespace fixtures {

using tdpsa::Complex;
using tdpsa::Matrix;
using tdpsa::TimeDelaySystem;

inline Matrix scalar(double x) {
    Matrix A(1, 1);
    A(0, 0) = x;
    return A;
}

// x' = -x
inline TimeDelaySystem sys_a() { return {{scalar(-1.0)}, {0.0}}; }

// x'(t) = -x(t-1)
inline TimeDelaySystem sys_b() { return {{scalar(0.0), scalar(-1.0)}, {0.0, 1.0}}; }

// Seeded random system; complex entries when complex_entries is set.
inline TimeDelaySystem random_system(std::mt19937& rng, int max_n, int max_m,
                                     bool complex_entries, double entry_scale = 1.0) {
    std::uniform_int_distribution<int> pick_n(1, max_n), pick_m(0, max_m);
    std::uniform_real_distribution<double> entry(-entry_scale, entry_scale);
    std::uniform_real_distribution<double> gap(0.2, 1.0);
    const int n = pick_n(rng);
    const int m = pick_m(rng);

    std::vector<double> delays{0.0};
    for (int i = 1; i <= m; ++i) delays.push_back(delays.back() + gap(rng));
    std::vector<Matrix> mats;
    for (int i = 0; i <= m; ++i) {
        Matrix A(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                A(r, c) = complex_entries ? Complex(entry(rng), entry(rng)) : Complex(entry(rng), 0.0);
        mats.push_back(std::move(A));
    }
    return {std::move(mats), std::move(delays)};
}

}  // namespace fixtures

#endif
