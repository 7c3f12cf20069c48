#include <doctest.h>

#include <cmath>

#include "tdpsa/predictor.hpp"

#include "fixtures.hpp"

using namespace tdpsa;

namespace {

const PerturbationSpec kSpecA({1.0}, 0.1);
const PerturbationSpec kSpecB({1.0, 1.0}, 0.1);

}  // namespace

TEST_CASE("imaginary-axis test matches the scalar closed form") {
    const auto sys = fixtures::sys_a();
    const auto mesh = build_mesh(3, 1.0);

    // lambda^2 = a^2 - s^2 with a = -1 - sigma, s = 0.1
    auto test_at = [&](double sigma) {
        const auto op = build_L_sigma_N(sys, kSpecA, mesh, sigma);
        return has_imaginary_eigs(op, default_tol_im(op));
    };

    const auto below = test_at(-0.95);
    CHECK(below.first);
    REQUIRE(below.second.size() == 1);
    CHECK(below.second[0] == doctest::Approx(std::sqrt(0.01 - 0.0025)).epsilon(1e-6));

    CHECK_FALSE(test_at(-0.85).first);

    const auto critical = test_at(-0.9);
    CHECK(critical.first);
    REQUIRE(critical.second.size() == 1);
    CHECK(critical.second[0] < 1e-5);  // double eigenvalue at the origin
}

TEST_CASE("predict brackets the scalar closed-form abscissa") {
    const auto sys = fixtures::sys_a();
    const auto mesh = build_mesh(3, 1.0);

    const auto fine = predict(sys, kSpecA, mesh, -1.0, 1e-3);
    CHECK(fine.sigma_tilde >= -0.902);
    CHECK(fine.sigma_tilde <= -0.900 + 1e-9);
    CHECK(fine.bracket.first <= -0.9 + 1e-9);
    CHECK(fine.bracket.second >= -0.9);
    CHECK(fine.bracket.second - fine.bracket.first <= 2e-3);

    const auto coarse = predict(sys, kSpecA, mesh, -1.0, 0.05);
    CHECK(coarse.sigma_tilde >= -1.0);
    CHECK(coarse.sigma_tilde <= -0.9);
    CHECK(coarse.bracket.second - coarse.bracket.first <= 0.1);

    // candidate frequency obeys omega = sqrt(s^2 - a^2) at the last true test
    REQUIRE(fine.frequencies.size() == 1);
    double sigma_true = fine.sigma_tilde;
    const double a = -1.0 - sigma_true;
    CHECK(std::abs(fine.frequencies[0] - std::sqrt(std::max(0.01 - a * a, 0.0))) < 1e-4);
}

TEST_CASE("bracketing invariant holds along the trace") {
    const auto sys = fixtures::sys_b();
    const auto mesh = build_mesh(6, 1.0);
    const auto res = predict(sys, kSpecB, mesh, -0.3181315052047641, 0.01);

    // every true test lies left of every false test
    double max_true = -1e300, min_false = 1e300;
    for (const auto& [sigma, hit] : res.trace)
        (hit ? max_true : min_false) = hit ? std::max(max_true, sigma) : std::min(min_false, sigma);
    CHECK(max_true < min_false);
    CHECK(res.sigma_tilde == res.bracket.first);
    for (double w : res.frequencies) CHECK(w >= 0.0);
}

TEST_CASE("discretized test is monotone in sigma") {
    const auto sys_list = {fixtures::sys_a(), fixtures::sys_b()};
    for (const auto& sys : sys_list) {
        const bool delayed = sys.num_delays() > 0;
        const PerturbationSpec& spec = delayed ? kSpecB : kSpecA;
        const auto mesh = build_mesh(6, 1.0);
        const OperatorBuilder builder(sys, spec, mesh);
        const double lo = delayed ? -0.318 : -0.999;
        const double hi = lo + 0.5;

        int flips = 0;
        bool prev = true;
        for (int k = 0; k < 20; ++k) {
            const double sigma = lo + (hi - lo) * k / 19.0;
            const auto op = builder.build(sigma);
            const bool hit = has_imaginary_eigs(op, default_tol_im(op)).first;
            if (hit != prev) ++flips;
            prev = hit;
        }
        CHECK(flips == 1);  // true below the threshold, false above
    }
}

TEST_CASE("level-set function diverges at alpha0 and decays to the right") {
    const auto sys = fixtures::sys_b();
    const double alpha0 = -0.3181315052047641;
    double prev = 0.0;
    for (int k = 1; k <= 6; ++k) {
        const double f = eval_f(sys, kSpecB, alpha0 + std::pow(10.0, -k));
        CHECK(f > prev);
        prev = f;
    }
    CHECK(eval_f(sys, kSpecB, 10.0) < 0.3);
    CHECK(eval_f(sys, kSpecB, 100.0) < 0.02);
}

TEST_CASE("alpha_f_N grid supremum") {
    const auto sys = fixtures::sys_a();
    const auto mesh = build_mesh(3, 1.0);
    std::vector<double> grid;
    for (int k = -10; k <= 10; ++k) grid.push_back(0.1 * k);

    for (double sigma : {-0.8, -0.5, 0.0})
        CHECK(alpha_f_N(sys, kSpecA, mesh, sigma, grid) ==
              doctest::Approx(1.0 / std::abs(1.0 + sigma)).epsilon(1e-12));

    // finer grid never decreases the value
    const auto sysb = fixtures::sys_b();
    const auto meshb = build_mesh(6, 1.0);
    std::vector<double> fine = grid;
    for (int k = 0; k < 20; ++k) fine.push_back(0.05 + 0.1 * k);
    CHECK(alpha_f_N(sysb, kSpecB, meshb, 0.0, fine) >=
          alpha_f_N(sysb, kSpecB, meshb, 0.0, grid) - 1e-15);
}

TEST_CASE("discretized level-set converges to the exact one") {
    const auto sys = fixtures::sys_b();
    const auto mesh = build_mesh(20, 1.0);
    std::vector<double> grid;
    for (int k = 0; k <= 400; ++k) grid.push_back(0.01 * k);

    const double sigma = -0.1;
    double exact = 0.0;
    for (double w : grid) exact = std::max(exact, eval_f(sys, kSpecB, Complex(sigma, w)));
    CHECK(alpha_f_N(sys, kSpecB, mesh, sigma, grid) == doctest::Approx(exact).epsilon(1e-6));
}
