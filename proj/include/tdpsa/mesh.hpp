#ifndef TDPSA_MESH_HPP
#define TDPSA_MESH_HPP

#include <Eigen/Dense>

#include "tdpsa/system.hpp"

namespace tdpsa {

// Symmetric collocation mesh of 2N+1 Chebyshev extremal points on
// [-tau_max, tau_max], theta_i = tau_max * sin(i pi / (2N)), i = -N..N.
// Index k = i + N into the stored arrays. theta_0 = 0 and
// theta_{-i} = -theta_i hold exactly by construction.
class ChebyshevMesh {
public:
    ChebyshevMesh(int N, double tau_max);

    int N() const { return N_; }
    int size() const { return 2 * N_ + 1; }
    double tau_max() const { return tau_max_; }
    const Eigen::VectorXd& points() const { return points_; }
    const Eigen::VectorXd& bary_weights() const { return bary_; }

    // Entry (i,k) is l'_{N,k}(theta_i); rows sum to zero.
    const Eigen::MatrixXd& differentiation_matrix() const { return diff_; }

    // Values of the Lagrange cardinal polynomials l_{N,k}(t).
    Eigen::VectorXd cardinal(double t) const;

    // Barycentric interpolation of nodal values at t.
    Complex interpolate(const Vector& nodal, double t) const;

private:
    int N_;
    double tau_max_;
    Eigen::VectorXd points_;
    Eigen::VectorXd bary_;
    Eigen::MatrixXd diff_;
};

inline ChebyshevMesh build_mesh(int N, double tau_max) { return {N, tau_max}; }

// Dense matrix approximating the level-set test operator; dimension 2n(2N+1).
struct DiscretizedOperator {
    Matrix L;
    double sigma;
    int N;
    int n;
    double level;  // epsilon * w(sigma)
};

// Blocks of the middle row of the discretized operator (and of H_sigma).
// Sign convention: the lower-left block of M0 is +I, so that for the
// scalar undelayed case the eigenvalues are +-sqrt(a^2 - s^2), imaginary
// exactly when the level s reaches |a|.
struct HamiltonianBlocks {
    Matrix M0;
    std::vector<Matrix> Mi;        // i = 1..m, upper-left A_{sigma,i}
    std::vector<Matrix> Mi_neg;    // i = 1..m, lower-right -A_{sigma,i}^*
};

HamiltonianBlocks make_blocks(const TimeDelaySystem& sys, const PerturbationSpec& spec, double sigma);

// Precomputes everything sigma-independent (differentiation rows, cardinal
// values at -+tau_i); build() refreshes only the middle block row.
class OperatorBuilder {
public:
    OperatorBuilder(const TimeDelaySystem& sys, const PerturbationSpec& spec, const ChebyshevMesh& mesh);

    DiscretizedOperator build(double sigma) const;

private:
    const TimeDelaySystem& sys_;
    const PerturbationSpec& spec_;
    const ChebyshevMesh& mesh_;
    std::vector<Eigen::VectorXd> card_minus_;  // l_{N,k}(-tau_i), i = 1..m
    std::vector<Eigen::VectorXd> card_plus_;   // l_{N,k}(+tau_i)
    Matrix frame_;  // differentiation rows expanded by I_{2n}; middle row zero
};

DiscretizedOperator build_L_sigma_N(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                                    const ChebyshevMesh& mesh, double sigma);

// The degree-2N collocation polynomial with p_N(0) = 1 and
// p_N'(theta_i) = lambda p_N(theta_i) for i != 0, evaluated at t.
Complex eval_pN(const ChebyshevMesh& mesh, Complex lambda, double t);

// Solution-operator collocation on Na+1 Chebyshev extremal points of
// [-tau_max, 0]; eigenvalues approximate the characteristic roots.
Matrix build_generator_N(const TimeDelaySystem& sys, int Na);

}  // namespace tdpsa

#endif
