#ifndef TDPSA_CORRECTOR_HPP
#define TDPSA_CORRECTOR_HPP

#include <string>
#include <vector>

#include "tdpsa/predictor.hpp"
#include "tdpsa/system.hpp"

namespace tdpsa {

struct CorrectionCandidate {
    Vector u;  // n
    Vector v;  // n
    double omega = 0.0;
    double sigma = 0.0;
    double residual_norm = 0.0;
    bool converged = false;
    int iterations = 0;
    std::string reason;  // when not converged
};

struct PsaResult {
    double alpha_epsilon;
    double omega_epsilon;
    Vector u;
    Vector v;
    std::vector<CorrectionCandidate> candidates;
};

// H_sigma(lambda) = lambda I - M0 - sum_i (M_i e^{-lambda tau_i} + M_{-i} e^{lambda tau_i}),
// dimension 2n; the level inside M0 is re-evaluated at the given sigma.
Matrix assemble_H(const TimeDelaySystem& sys, const PerturbationSpec& spec, double sigma,
                  Complex lambda);

// Right singular vector for the smallest singular value, unit norm.
std::pair<Vector, double> null_vector(const Matrix& H);

// Unknowns of the corrector, 4n+2 reals: (Re u, Im u, Re v, Im v, omega, sigma).
struct CorrectorState {
    Vector u;
    Vector v;
    double omega;
    double sigma;
};

// The 4n+3 real equations: H_sigma(j omega)[u;v] = 0 split into real and
// imaginary parts, the normalization cref*[u;v] = 1 (2 equations), and the
// stationarity scalar Im{v*(I + sum A_{sigma,i} tau_i e^{-j omega tau_i})u}.
Eigen::VectorXd residual(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                         const CorrectorState& z, const Vector& cref);

// Analytic (4n+3) x (4n+2) Jacobian of the residual.
Eigen::MatrixXd residual_jacobian(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                                  const CorrectorState& z, const Vector& cref);

// Damped Gauss-Newton from the given seed; cref is fixed to the seed [u;v].
CorrectionCandidate gauss_newton_correct(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                                         const CorrectorState& seed);

// Seeds one candidate per predictor frequency, corrects them all, and takes
// the maximum corrected sigma. Throws if no candidate survives.
PsaResult correct_all(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                      const PredictorResult& pred);

}  // namespace tdpsa

#endif
