#ifndef TDPSA_PREDICTOR_HPP
#define TDPSA_PREDICTOR_HPP

#include <optional>
#include <utility>
#include <vector>

#include "tdpsa/mesh.hpp"
#include "tdpsa/system.hpp"

namespace tdpsa {

struct PredictorResult {
    double sigma_tilde;                          // = sigma_L at exit
    std::vector<double> frequencies;             // nonneg, increasing, deduplicated
    std::pair<double, double> bracket;           // (sigma_L, sigma_R)
    int iterations;
    double tol;
    std::vector<std::pair<double, bool>> trace;  // (sigma_M, test outcome)
};

// True iff some eigenvalue mu of L satisfies |Re mu| <= tol_im (1 + |mu|);
// the returned frequencies are the nonnegative imaginary parts of the
// qualifying eigenvalues, deduplicated at 10 * tol_im.
std::pair<bool, std::vector<double>> has_imaginary_eigs(const DiscretizedOperator& op, double tol_im);

double default_tol_im(const DiscretizedOperator& op);

// Bisection on sigma with the imaginary-axis eigenvalue test: sigma_L
// starts at alpha0, sigma_R at infinity, the step doubles every iteration
// until the bracket closes to width 2 * tol.
PredictorResult predict(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                        const ChebyshevMesh& mesh, double alpha0, double tol,
                        std::optional<double> tol_im = std::nullopt);

// Grid supremum of the discretized level-set function on the vertical line
// Re = sigma (test support).
double alpha_f_N(const TimeDelaySystem& sys, const PerturbationSpec& spec, const ChebyshevMesh& mesh,
                 double sigma, const std::vector<double>& omega_grid);

}  // namespace tdpsa

#endif
