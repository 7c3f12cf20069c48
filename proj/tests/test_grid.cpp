#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tdpsa/grid.hpp"

#include "fixtures.hpp"

using namespace tdpsa;

namespace {
const PerturbationSpec kSpecA({1.0}, 0.1);
}

TEST_CASE("degenerate grid requests are rejected") {
    CHECK_THROWS_AS(sample_grid(fixtures::sys_a(), kSpecA, {-2.0, 0.0}, {-1.0, 1.0}, 1, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_grid(fixtures::sys_a(), kSpecA, {0.0, 0.0}, {-1.0, 1.0}, 10, 10),
                    std::invalid_argument);
}

TEST_CASE("scalar contour crosses at the closed-form boundary") {
    const auto g = sample_grid(fixtures::sys_a(), kSpecA, {-1.5, -0.5}, {-0.1, 0.1}, 100, 3);
    // log10 f = 1 exactly at re = -0.9 on the middle row; find the sign change
    const auto& row = g.values[1];
    int crossing = -1;
    for (std::size_t i = 1; i < row.size(); ++i)
        if ((row[i - 1] - 1.0) * (row[i] - 1.0) < 0.0 && g.re_axis[i] > -1.0) crossing = static_cast<int>(i);
    REQUIRE(crossing > 0);
    CHECK(g.re_axis[crossing - 1] <= -0.9);
    CHECK(g.re_axis[crossing] >= -0.9);
}

TEST_CASE("values are conjugate-symmetric for real data") {
    const auto g = sample_grid(fixtures::sys_b(), PerturbationSpec({1.0, 1.0}, 0.1), {-1.0, 0.5},
                               {-2.0, 2.0}, 21, 21);
    const int ny = static_cast<int>(g.im_axis.size());
    for (int j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < g.re_axis.size(); ++i)
            CHECK(g.values[j][i] == doctest::Approx(g.values[ny - 1 - j][i]).epsilon(1e-12));
}

TEST_CASE("super-level regions nest monotonically in epsilon") {
    const auto sys = fixtures::sys_b();
    const PerturbationSpec small({1.0, 1.0}, 0.05), big({1.0, 1.0}, 0.2);
    const auto g1 = sample_grid(sys, small, {-1.0, 0.5}, {0.0, 3.0}, 25, 25);
    const auto g2 = sample_grid(sys, big, {-1.0, 0.5}, {0.0, 3.0}, 25, 25);
    for (std::size_t j = 0; j < g1.values.size(); ++j)
        for (std::size_t i = 0; i < g1.values[j].size(); ++i) {
            const bool in1 = g1.values[j][i] > std::log10(1.0 / small.epsilon());
            const bool in2 = g2.values[j][i] > std::log10(1.0 / big.epsilon());
            if (in1) CHECK(in2);
        }
}

TEST_CASE("roots map to the sentinel and csv prints inf") {
    const auto g = sample_grid(fixtures::sys_a(), kSpecA, {-1.0001, -0.9999}, {-1.0, 1.0}, 3, 3);
    bool has_inf = false;
    for (const auto& row : g.values)
        for (double v : row) has_inf |= std::isinf(v);
    CHECK(has_inf);

    const std::string csv = grid_to_csv(g);
    CHECK(csv.find("re,im,log10f\n") == 0);
    CHECK(csv.find(",inf") != std::string::npos);
    // header + one row per point
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 9);
}

TEST_CASE("json emission round-trips") {
    const auto g = sample_grid(fixtures::sys_b(), PerturbationSpec({1.0, 1.0}, 0.1), {-1.0, 0.0},
                               {0.0, 1.0}, 4, 5);
    const auto back = grid_from_json(grid_to_json(g));
    CHECK(back.epsilon == g.epsilon);
    CHECK(back.system_hash == g.system_hash);
    CHECK(back.re_axis == g.re_axis);
    CHECK(back.im_axis == g.im_axis);
    CHECK(back.values == g.values);
}

TEST_CASE("grid output is deterministic") {
    const auto a = grid_to_csv(sample_grid(fixtures::sys_a(), kSpecA, {-2.0, 0.0}, {-1.0, 1.0}, 8, 8));
    const auto b = grid_to_csv(sample_grid(fixtures::sys_a(), kSpecA, {-2.0, 0.0}, {-1.0, 1.0}, 8, 8));
    CHECK(a == b);
}
