#include "tdpsa/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tdpsa/linalg.hpp"

namespace tdpsa {

double default_tol_im(const DiscretizedOperator& op) { return 1e-7 * (1.0 + op.L.norm()); }

std::pair<bool, std::vector<double>> has_imaginary_eigs(const DiscretizedOperator& op, double tol_im) {
    if (!(tol_im > 0.0)) throw std::invalid_argument("has_imaginary_eigs: tol_im must be positive");
    const auto eig = linalg::eigenvalues(op.L);
    std::vector<double> freqs;
    for (Complex mu : eig.values) {
        if (std::abs(mu.real()) <= tol_im * (1.0 + std::abs(mu)) && mu.imag() >= -tol_im)
            freqs.push_back(std::max(mu.imag(), 0.0));
    }
    std::sort(freqs.begin(), freqs.end());
    std::vector<double> dedup;
    for (double w : freqs)
        if (dedup.empty() || w - dedup.back() > 10.0 * tol_im) dedup.push_back(w);
    return {!dedup.empty(), dedup};
}

PredictorResult predict(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                        const ChebyshevMesh& mesh, double alpha0, double tol,
                        std::optional<double> tol_im) {
    if (!(tol > 0.0)) throw std::invalid_argument("predict: tol must be positive");
    const OperatorBuilder builder(sys, spec, mesh);

    double sigma_L = alpha0;
    double sigma_R = std::numeric_limits<double>::infinity();
    double delta = tol;
    PredictorResult res;
    res.tol = tol;
    res.iterations = 0;

    while (sigma_R - sigma_L > 2.0 * tol) {
        if (++res.iterations > 200)
            throw std::runtime_error("predict: iteration cap exceeded (200 bisection steps)");
        delta *= 2.0;
        const double sigma_M =
            std::isinf(sigma_R) ? sigma_L + delta : 0.5 * (sigma_L + sigma_R);
        const DiscretizedOperator op = builder.build(sigma_M);
        const auto [hit, freqs] = has_imaginary_eigs(op, tol_im.value_or(default_tol_im(op)));
        res.trace.emplace_back(sigma_M, hit);
        if (hit) {
            sigma_L = sigma_M;
            res.frequencies = freqs;
        } else {
            sigma_R = sigma_M;
        }
    }
    if (res.frequencies.empty()) {
        // No test ever came back true (the bracket closed on the first probe);
        // harvest candidate frequencies at sigma_L directly.
        const DiscretizedOperator op = builder.build(sigma_L);
        const auto [hit, freqs] = has_imaginary_eigs(op, tol_im.value_or(default_tol_im(op)));
        res.trace.emplace_back(sigma_L, hit);
        if (hit) res.frequencies = freqs;
    }
    res.sigma_tilde = sigma_L;
    res.bracket = {sigma_L, sigma_R};
    return res;
}

double alpha_f_N(const TimeDelaySystem& sys, const PerturbationSpec& spec, const ChebyshevMesh& mesh,
                 double sigma, const std::vector<double>& omega_grid) {
    const ShiftedSystem sh = shift(sys, sigma);
    const double w = eval_w_line(spec, sys, sigma);
    const int n = sys.dim();

    double best = 0.0;
    for (double omega : omega_grid) {
        Matrix F = Complex(0.0, omega) * Matrix::Identity(n, n) - sh.matrices[0];
        bool ok = true;
        for (int i = 1; i <= sys.num_delays(); ++i) {
            try {
                F -= sh.matrices[i] * eval_pN(mesh, Complex(0.0, omega), -sys.delays()[i]);
            } catch (const linalg::LinalgError&) {
                ok = false;  // exceptional lambda, grid point skipped
                break;
            }
        }
        if (!ok) continue;
        const double smin = linalg::svd(F).values(n - 1);
        best = std::max(best, smin == 0.0 ? kInfSentinel : w / smin);
    }
    return best;
}

}  // namespace tdpsa
