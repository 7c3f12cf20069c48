#ifndef TDPSA_LINALG_HPP
#define TDPSA_LINALG_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "tdpsa/system.hpp"

namespace tdpsa::linalg {

struct LinalgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SvdResult {
    Eigen::VectorXd values;  // nonincreasing
    Matrix U;
    Matrix V;
};

struct EigenvalueSet {
    std::vector<Complex> values;
    std::optional<Matrix> vectors;  // right eigenvectors as columns, when requested
};

SvdResult svd(const Matrix& A);

EigenvalueSet eigenvalues(const Matrix& A, bool with_vectors = false);

// Solve A x = b for square nonsingular A; throws LinalgError on a pivot
// that is singular to working precision.
Vector solve(const Matrix& A, const Vector& b);

// Least-squares minimizer of ||A x - b|| for p >= q with full column rank.
Vector lstsq(const Matrix& A, const Vector& b);

}  // namespace tdpsa::linalg

#endif
