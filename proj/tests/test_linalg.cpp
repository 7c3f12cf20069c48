#include <doctest.h>

#include <algorithm>
#include <random>

#include "tdpsa/linalg.hpp"

using namespace tdpsa;
using namespace tdpsa::linalg;

namespace {

Matrix random_matrix(std::mt19937& rng, int p, int q) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Matrix A(p, q);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c < q; ++c) A(r, c) = Complex(d(rng), d(rng));
    return A;
}

}  // namespace

TEST_CASE("svd basics") {
    CHECK(svd(Matrix::Identity(2, 2)).values.isApprox(Eigen::Vector2d(1.0, 1.0)));

    Matrix D = Matrix::Zero(2, 2);
    D(0, 0) = 3.0;
    D(1, 1) = Complex(0.0, -4.0);
    const auto r = svd(D);
    CHECK(r.values(0) == doctest::Approx(4.0));
    CHECK(r.values(1) == doctest::Approx(3.0));

    Matrix R = Matrix::Zero(2, 2);
    R(0, 1) = 2.0;
    const auto r2 = svd(R);
    CHECK(r2.values(0) == doctest::Approx(2.0));
    CHECK(r2.values(1) == doctest::Approx(0.0));
}

TEST_CASE("svd reconstruction on random matrices") {
    std::mt19937 rng(1);
    for (int t = 0; t < 5; ++t) {
        const Matrix A = random_matrix(rng, 7, 5);
        const auto r = svd(A);
        CHECK(std::is_sorted(r.values.data(), r.values.data() + r.values.size(),
                             std::greater<double>()));
        const Matrix rec = r.U * r.values.asDiagonal().toDenseMatrix().cast<Complex>() * r.V.adjoint();
        CHECK((A - rec).norm() <= 1e-13 * A.norm());
    }
}

TEST_CASE("eigenvalues basics") {
    Matrix D = Matrix::Zero(3, 3);
    D(0, 0) = 1.0;
    D(1, 1) = 2.0;
    D(2, 2) = 3.0;
    auto ev = eigenvalues(D).values;
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(std::abs(ev[0] - 1.0) < 1e-13);
    CHECK(std::abs(ev[2] - 3.0) < 1e-13);

    Matrix R(2, 2);
    R << 0.0, 1.0, -1.0, 0.0;
    auto evr = eigenvalues(R).values;
    std::sort(evr.begin(), evr.end(), [](Complex a, Complex b) { return a.imag() < b.imag(); });
    CHECK(std::abs(evr[0] - Complex(0.0, -1.0)) < 1e-14);
    CHECK(std::abs(evr[1] - Complex(0.0, 1.0)) < 1e-14);

    // trace 0, det 0: double eigenvalue at the origin
    Matrix M(2, 2);
    M << -0.1, -0.01, 1.0, 0.1;
    for (Complex mu : eigenvalues(M).values) CHECK(std::abs(mu) < 1e-7);
}

TEST_CASE("solve") {
    const Vector b = Vector::Random(4);
    CHECK((solve(Matrix::Identity(4, 4), b) - b).norm() < 1e-14);

    Matrix D = Matrix::Zero(2, 2);
    D(0, 0) = 2.0;
    D(1, 1) = 4.0;
    Vector rhs(2);
    rhs << 2.0, 8.0;
    const Vector x = solve(D, rhs);
    CHECK(std::abs(x(0) - 1.0) < 1e-15);
    CHECK(std::abs(x(1) - 2.0) < 1e-15);

    Matrix U(2, 2);
    U << 1.0, 1.0, 0.0, 1.0;
    Vector r2(2);
    r2 << 3.0, 1.0;
    const Vector x2 = solve(U, r2);
    CHECK(std::abs(x2(0) - 2.0) < 1e-14);
    CHECK(std::abs(x2(1) - 1.0) < 1e-14);

    CHECK_THROWS_AS(solve(Matrix::Zero(2, 2), rhs), LinalgError);
}

TEST_CASE("lstsq") {
    const Vector b = Vector::Random(3);
    CHECK((lstsq(Matrix::Identity(3, 3), b) - b).norm() < 1e-14);

    Matrix col(2, 1);
    col << 1.0, 1.0;
    Vector rhs(2);
    rhs << 0.0, 2.0;
    CHECK(std::abs(lstsq(col, rhs)(0) - 1.0) < 1e-14);

    Matrix A(3, 2);
    A << 1.0, 0.0, 0.0, 1.0, 1.0, 1.0;
    Vector b3(3);
    b3 << 1.0, 1.0, 0.0;
    const Vector x = lstsq(A, b3);
    CHECK(std::abs(x(0) - 1.0 / 3.0) < 1e-14);
    CHECK(std::abs(x(1) - 1.0 / 3.0) < 1e-14);

    Matrix rankdef(3, 2);
    rankdef << 1.0, 2.0, 2.0, 4.0, 3.0, 6.0;
    CHECK_THROWS_AS(lstsq(rankdef, b3), LinalgError);
}

TEST_CASE("svd and eigenvalues agree on Hermitian matrices") {
    std::mt19937 rng(2);
    for (int t = 0; t < 5; ++t) {
        Matrix A = random_matrix(rng, 9, 9);
        A = (A + A.adjoint()).eval();
        auto sv = svd(A).values;
        std::vector<double> abs_ev;
        for (Complex mu : eigenvalues(A).values) abs_ev.push_back(std::abs(mu));
        std::sort(abs_ev.begin(), abs_ev.end(), std::greater<double>());
        for (int i = 0; i < 9; ++i)
            CHECK(sv(i) == doctest::Approx(abs_ev[i]).epsilon(1e-12));
    }
}

TEST_CASE("block-triangular eigenvalues are the union of blocks") {
    std::mt19937 rng(3);
    const Matrix B1 = random_matrix(rng, 3, 3);
    const Matrix B2 = random_matrix(rng, 4, 4);
    Matrix T = Matrix::Zero(7, 7);
    T.topLeftCorner(3, 3) = B1;
    T.bottomRightCorner(4, 4) = B2;
    T.topRightCorner(3, 4) = random_matrix(rng, 3, 4);

    std::vector<Complex> expected;
    for (Complex mu : eigenvalues(B1).values) expected.push_back(mu);
    for (Complex mu : eigenvalues(B2).values) expected.push_back(mu);
    for (Complex mu : eigenvalues(T).values) {
        double best = 1e9;
        for (Complex e : expected) best = std::min(best, std::abs(mu - e));
        CHECK(best < 1e-10);
    }
}

TEST_CASE("solve residual contract") {
    std::mt19937 rng(4);
    for (int t = 0; t < 5; ++t) {
        const Matrix A = random_matrix(rng, 6, 6);
        const Vector b = random_matrix(rng, 6, 1);
        const Vector x = solve(A, b);
        CHECK((A * x - b).norm() <= 1e-10 * (1.0 + b.norm()));
    }
}
