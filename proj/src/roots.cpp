#include "tdpsa/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tdpsa/linalg.hpp"
#include "tdpsa/mesh.hpp"

namespace tdpsa {

namespace {

Matrix eval_F_prime(const TimeDelaySystem& sys, Complex lambda) {
    const int n = sys.dim();
    Matrix Fp = Matrix::Identity(n, n);
    for (std::size_t i = 1; i < sys.matrices().size(); ++i)
        Fp += sys.delays()[i] * sys.matrices()[i] * std::exp(-lambda * sys.delays()[i]);
    return Fp;
}

// Newton on [F(lambda) v; c* v - 1] = 0 in the unknowns (v, lambda).
// Returns the refined root and residual, or nullopt on divergence.
std::optional<Root> refine_root(const TimeDelaySystem& sys, Complex lambda0) {
    const int n = sys.dim();
    const double tol = 1e-12 * sys.scale();

    const auto dec = linalg::svd(eval_F(sys, lambda0));
    Vector v = dec.V.col(n - 1);
    const Vector c = v;
    Complex lambda = lambda0;

    for (int it = 0; it < 25; ++it) {
        const Matrix F = eval_F(sys, lambda);
        const Vector Fv = F * v;
        if (Fv.norm() <= tol) return Root{lambda, Fv.norm()};

        Matrix J(n + 1, n + 1);
        J.topLeftCorner(n, n) = F;
        J.block(0, n, n, 1) = eval_F_prime(sys, lambda) * v;
        J.block(n, 0, 1, n) = c.adjoint();
        J(n, n) = 0.0;
        Vector rhs(n + 1);
        rhs.head(n) = -Fv;
        rhs(n) = 1.0 - c.dot(v);

        Vector step;
        try {
            step = linalg::solve(J, rhs);
        } catch (const linalg::LinalgError&) {
            return std::nullopt;
        }
        v += step.head(n);
        lambda += step(n);
        if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) return std::nullopt;
    }
    const double res = (eval_F(sys, lambda) * v).norm();
    if (res <= tol) return Root{lambda, res};
    return std::nullopt;
}

}  // namespace

RootSet characteristic_roots(const TimeDelaySystem& sys, int Na, std::optional<double> cutoff) {
    const Matrix G = build_generator_N(sys, Na);
    const auto eig = linalg::eigenvalues(G);

    double rightmost = -std::numeric_limits<double>::infinity();
    for (Complex mu : eig.values) rightmost = std::max(rightmost, mu.real());
    const double r = cutoff.value_or(rightmost - 1.0);

    RootSet out{{}, -std::numeric_limits<double>::infinity(), 0};
    for (Complex mu : eig.values) {
        if (mu.real() < r) continue;
        std::optional<Root> root;
        if (sys.num_delays() == 0) {
            root = Root{mu, linalg::svd(eval_F(sys, mu)).values(sys.dim() - 1)};
        } else {
            root = refine_root(sys, mu);
        }
        if (!root) {
            ++out.dropped;
            continue;
        }
        if (root->lambda.real() < r) continue;
        bool dup = false;
        for (const auto& kept : out.roots)
            if (std::abs(kept.lambda - root->lambda) <= 1e-8) {
                dup = true;
                break;
            }
        if (!dup) out.roots.push_back(*root);
    }
    for (const auto& root : out.roots) out.alpha0 = std::max(out.alpha0, root.lambda.real());
    std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() > b.lambda.real();
        return a.lambda.imag() < b.lambda.imag();
    });
    return out;
}

double spectral_abscissa(const TimeDelaySystem& sys) {
    if (sys.num_delays() == 0) return characteristic_roots(sys, 1).alpha0;

    int Na = 16;
    double prev = characteristic_roots(sys, Na).alpha0;
    while (Na < 128) {
        Na *= 2;
        const double cur = characteristic_roots(sys, Na).alpha0;
        if (std::abs(cur - prev) < 1e-9) return cur;
        prev = cur;
    }
    throw std::runtime_error(
        "spectral_abscissa: rightmost root did not settle up to Na = 128; choose Na manually");
}

}  // namespace tdpsa
