#include "tdpsa/corrector.hpp"

#include <cmath>
#include <stdexcept>

#include "tdpsa/linalg.hpp"
#include "tdpsa/mesh.hpp"

namespace tdpsa {

namespace {

constexpr Complex kJ{0.0, 1.0};

// B(omega, sigma) = I + sum_{i>=1} A_{sigma,i} tau_i e^{-j omega tau_i};
// the stationarity scalar is Im{v* B u}.
Matrix stationarity_matrix(const TimeDelaySystem& sys, const ShiftedSystem& sh, double omega) {
    const int n = sys.dim();
    Matrix B = Matrix::Identity(n, n);
    for (int i = 1; i <= sys.num_delays(); ++i) {
        const double tau = sys.delays()[i];
        B += sh.matrices[i] * tau * std::exp(-kJ * omega * tau);
    }
    return B;
}

double dw_dsigma(const PerturbationSpec& spec, const TimeDelaySystem& sys, double sigma) {
    double d = 0.0;
    for (std::size_t i = 1; i < sys.delays().size(); ++i)
        d -= sys.delays()[i] * std::exp(-sigma * sys.delays()[i]) / spec.weights()[i];
    return d;
}

// Truncated-SVD least squares; used when the Jacobian loses rank or is close
// enough to singular that the QR step explodes (e.g. at omega = 0 where the
// +/- omega branches of the level curve merge).
Eigen::VectorXd lstsq_truncated(const Eigen::MatrixXd& J, const Eigen::VectorXd& r,
                                double rel_cut) {
    const auto dec = linalg::svd(J.cast<Complex>().eval());
    const double cut = dec.values(0) * rel_cut;
    const Vector y = dec.U.adjoint() * r.cast<Complex>();
    Vector coeff = Vector::Zero(J.cols());
    for (int i = 0; i < dec.values.size(); ++i)
        if (dec.values(i) > cut) coeff(i) = y(i) / dec.values(i);
    return (dec.V * coeff).real();
}

}  // namespace

Matrix assemble_H(const TimeDelaySystem& sys, const PerturbationSpec& spec, double sigma,
                  Complex lambda) {
    const HamiltonianBlocks b = make_blocks(sys, spec, sigma);
    const int n2 = 2 * sys.dim();
    Matrix H = lambda * Matrix::Identity(n2, n2) - b.M0;
    for (int i = 1; i <= sys.num_delays(); ++i) {
        const double tau = sys.delays()[i];
        H -= b.Mi[i - 1] * std::exp(-lambda * tau) + b.Mi_neg[i - 1] * std::exp(lambda * tau);
    }
    return H;
}

std::pair<Vector, double> null_vector(const Matrix& H) {
    const auto dec = linalg::svd(H);
    const int q = static_cast<int>(H.cols());
    return {dec.V.col(q - 1), dec.values(q - 1)};
}

Eigen::VectorXd residual(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                         const CorrectorState& z, const Vector& cref) {
    const int n = sys.dim();
    Vector x(2 * n);
    x << z.u, z.v;

    const Vector rho = assemble_H(sys, spec, z.sigma, kJ * z.omega) * x;
    const Complex norm_eq = cref.dot(x) - 1.0;
    const ShiftedSystem sh = shift(sys, z.sigma);
    const double stat = (z.v.adjoint() * stationarity_matrix(sys, sh, z.omega) * z.u)(0).imag();

    Eigen::VectorXd r(4 * n + 3);
    r.segment(0, 2 * n) = rho.real();
    r.segment(2 * n, 2 * n) = rho.imag();
    r(4 * n) = norm_eq.real();
    r(4 * n + 1) = norm_eq.imag();
    r(4 * n + 2) = stat;
    return r;
}

Eigen::MatrixXd residual_jacobian(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                                  const CorrectorState& z, const Vector& cref) {
    const int n = sys.dim();
    const int n2 = 2 * n;
    Vector x(n2);
    x << z.u, z.v;

    const Matrix H = assemble_H(sys, spec, z.sigma, kJ * z.omega);
    const ShiftedSystem sh = shift(sys, z.sigma);
    const double w = eval_w_line(spec, sys, z.sigma);
    const double eps = spec.epsilon();

    // dH/domega applied to x.
    Matrix dHdw = kJ * Matrix::Identity(n2, n2);
    for (int i = 1; i <= sys.num_delays(); ++i) {
        const double tau = sys.delays()[i];
        Matrix Mi = Matrix::Zero(n2, n2);
        Mi.topLeftCorner(n, n) = sh.matrices[i];
        Matrix Mn = Matrix::Zero(n2, n2);
        Mn.bottomRightCorner(n, n) = -sh.matrices[i].adjoint();
        dHdw += kJ * tau * Mi * std::exp(-kJ * z.omega * tau) -
                kJ * tau * Mn * std::exp(kJ * z.omega * tau);
    }
    const Vector drho_domega = dHdw * x;

    // dH/dsigma applied to x: H = jwI - M0 - sum(Mi e + Mn e), so the
    // derivative is -(dM0 + sum dMi e^{-jwt} + dMn e^{jwt}).
    const double ds2 = 2.0 * eps * eps * w * dw_dsigma(spec, sys, z.sigma);
    Matrix dHds = Matrix::Zero(n2, n2);
    dHds.topLeftCorner(n, n) = Matrix::Identity(n, n);          // -d(A0 - sI)/ds
    dHds.topRightCorner(n, n) = ds2 * Matrix::Identity(n, n);   // -d(-s^2 I)/ds
    dHds.bottomRightCorner(n, n) = -Matrix::Identity(n, n);     // -d(-A*)/ds
    for (int i = 1; i <= sys.num_delays(); ++i) {
        const double tau = sys.delays()[i];
        dHds.topLeftCorner(n, n) += tau * sh.matrices[i] * std::exp(-kJ * z.omega * tau);
        dHds.bottomRightCorner(n, n) -= tau * sh.matrices[i].adjoint() * std::exp(kJ * z.omega * tau);
    }
    const Vector drho_dsigma = dHds * x;

    const Matrix B = stationarity_matrix(sys, sh, z.omega);
    Matrix dBdw = Matrix::Zero(n, n);
    Matrix dBds = Matrix::Zero(n, n);
    for (int i = 1; i <= sys.num_delays(); ++i) {
        const double tau = sys.delays()[i];
        dBdw += sh.matrices[i] * tau * (-kJ * tau) * std::exp(-kJ * z.omega * tau);
        dBds += -tau * sh.matrices[i] * tau * std::exp(-kJ * z.omega * tau);
    }
    const Eigen::RowVectorXcd vB = z.v.adjoint() * B;  // length n
    const Vector Bu = B * z.u;

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(4 * n + 3, 4 * n + 2);
    auto put_complex_col = [&](int col, const Vector& d) {
        J.block(0, col, n2, 1) = d.real();
        J.block(n2, col, n2, 1) = d.imag();
    };
    // Columns for Re x_k and Im x_k (x = [u; v]).
    for (int k = 0; k < n2; ++k) {
        const Vector hcol = H.col(k);
        put_complex_col(k < n ? k : n + k, hcol);               // Re u_k at k, Re v_k at n2..
        put_complex_col(k < n ? n + k : n2 + k, kJ * hcol);
    }
    // Reorder note: layout is [Re u (0..n), Im u (n..2n), Re v (2n..3n), Im v (3n..4n)].
    put_complex_col(4 * n, drho_domega);
    put_complex_col(4 * n + 1, drho_dsigma);

    for (int k = 0; k < n; ++k) {
        const Complex cu = std::conj(cref(k));       // d norm / d u_k parts
        const Complex cv = std::conj(cref(n + k));   // d norm / d v_k parts
        J(4 * n, k) = cu.real();
        J(4 * n + 1, k) = cu.imag();
        J(4 * n, n + k) = (kJ * cu).real();
        J(4 * n + 1, n + k) = (kJ * cu).imag();
        J(4 * n, 2 * n + k) = cv.real();
        J(4 * n + 1, 2 * n + k) = cv.imag();
        J(4 * n, 3 * n + k) = (kJ * cv).real();
        J(4 * n + 1, 3 * n + k) = (kJ * cv).imag();

        J(4 * n + 2, k) = vB(k).imag();              // d stat / d Re u_k
        J(4 * n + 2, n + k) = vB(k).real();          // d stat / d Im u_k
        J(4 * n + 2, 2 * n + k) = Bu(k).imag();      // d stat / d Re v_k
        J(4 * n + 2, 3 * n + k) = -Bu(k).real();     // d stat / d Im v_k
    }
    J(4 * n + 2, 4 * n) = (z.v.adjoint() * dBdw * z.u)(0).imag();
    J(4 * n + 2, 4 * n + 1) = (z.v.adjoint() * dBds * z.u)(0).imag();
    return J;
}

CorrectionCandidate gauss_newton_correct(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                                         const CorrectorState& seed) {
    const int n = sys.dim();
    Vector cref(2 * n);
    cref << seed.u, seed.v;

    CorrectionCandidate cand;
    cand.u = seed.u;
    cand.v = seed.v;
    cand.omega = seed.omega;
    cand.sigma = seed.sigma;

    const double tol_res = 1e-10 * sys.scale();
    CorrectorState z = seed;

    for (int it = 0; it < 50; ++it) {
        const Eigen::VectorXd r = residual(sys, spec, z, cref);
        cand.residual_norm = r.norm();
        cand.iterations = it;
        if (cand.residual_norm <= tol_res) {
            cand.converged = true;
            break;
        }

        Eigen::MatrixXd J;
        Eigen::VectorXd step;
        try {
            J = residual_jacobian(sys, spec, z, cref);
            try {
                step = linalg::lstsq(J.cast<Complex>(), (-r).cast<Complex>()).real();
            } catch (const linalg::LinalgError&) {
                step = lstsq_truncated(J, -r, 1e-12);
            }
        } catch (const linalg::LinalgError& e) {
            cand.reason = std::string("jacobian solve failed: ") + e.what();
            break;
        }

        const double znorm =
            std::sqrt(z.u.squaredNorm() + z.v.squaredNorm() + z.omega * z.omega + z.sigma * z.sigma);
        double scale = 1.0;
        CorrectorState trial = z;
        auto line_search = [&](const Eigen::VectorXd& s) {
            scale = 1.0;
            for (int h = 0; h <= 8; ++h) {
                trial.u = z.u + scale * (s.segment(0, n).cast<Complex>() +
                                         kJ * s.segment(n, n).cast<Complex>());
                trial.v = z.v + scale * (s.segment(2 * n, n).cast<Complex>() +
                                         kJ * s.segment(3 * n, n).cast<Complex>());
                trial.omega = z.omega + scale * s(4 * n);
                trial.sigma = z.sigma + scale * s(4 * n + 1);
                if (residual(sys, spec, trial, cref).norm() < cand.residual_norm) return true;
                scale *= 0.5;
            }
            return false;
        };
        bool improved = line_search(step);
        if (!improved) {
            // Near-singular Jacobian can blow the QR step up; drop the small
            // singular directions and try again before giving up.
            step = lstsq_truncated(J, -r, 1e-6);
            improved = line_search(step);
        }
        if (!improved) {
            cand.reason = "no descent after 8 step halvings";
            break;
        }
        z = trial;
        if (scale * step.norm() <= 1e-14 * (1.0 + znorm)) {
            cand.residual_norm = residual(sys, spec, z, cref).norm();
            cand.converged = cand.residual_norm <= tol_res;
            if (!cand.converged) cand.reason = "stalled: step below 1e-14 relative";
            break;
        }
    }
    if (!cand.converged && cand.reason.empty()) cand.reason = "iteration cap (50) exceeded";

    cand.u = z.u;
    cand.v = z.v;
    cand.omega = z.omega;
    cand.sigma = z.sigma;
    cand.residual_norm = residual(sys, spec, z, cref).norm();
    return cand;
}

PsaResult correct_all(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                      const PredictorResult& pred) {
    if (pred.frequencies.empty())
        throw std::runtime_error("correct_all: predictor produced no candidate frequencies");

    PsaResult out;
    int best = -1;
    // Each frequency is corrected from sigma_tilde and, when the bracket is
    // nondegenerate, from its right end as well: a seed on top of a closed
    // level curve can slide to the leftmost stationary point, and the second
    // seed approaches the curve from the right instead.
    std::vector<std::pair<double, double>> seeds;
    for (double omega : pred.frequencies) {
        seeds.emplace_back(pred.sigma_tilde, omega);
        if (std::isfinite(pred.bracket.second) && pred.bracket.second > pred.sigma_tilde)
            seeds.emplace_back(pred.bracket.second, omega);
    }
    for (const auto& [sigma0, omega] : seeds) {
        const Matrix H = assemble_H(sys, spec, sigma0, kJ * omega);
        const auto [x, smin] = null_vector(H);
        (void)smin;
        CorrectorState seed{x.head(sys.dim()), x.tail(sys.dim()), omega, sigma0};
        CorrectionCandidate cand = gauss_newton_correct(sys, spec, seed);

        // Spurious: wandered onto another level-set sheet or below the axis.
        if (cand.converged &&
            (cand.sigma < pred.sigma_tilde - 10.0 * pred.tol || cand.omega < -1e-12)) {
            cand.converged = false;
            cand.reason = "discarded as spurious (left the predictor bracket)";
        }
        if (cand.converged && cand.omega < 0.0) cand.omega = 0.0;

        out.candidates.push_back(std::move(cand));
        const auto& c = out.candidates.back();
        if (c.converged && (best < 0 || c.sigma > out.candidates[best].sigma))
            best = static_cast<int>(out.candidates.size()) - 1;
    }
    if (best < 0) throw std::runtime_error("correct_all: no candidate converged");
    const auto& b = out.candidates[best];
    out.alpha_epsilon = b.sigma;
    out.omega_epsilon = b.omega;
    out.u = b.u;
    out.v = b.v;
    return out;
}

}  // namespace tdpsa
