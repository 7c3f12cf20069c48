#include "tdpsa/linalg.hpp"

#include <string>

namespace tdpsa::linalg {

SvdResult svd(const Matrix& A) {
    Eigen::JacobiSVD<Matrix> dec(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success)
        throw LinalgError("svd: iterative reduction failed to converge");
    return {dec.singularValues(), dec.matrixU(), dec.matrixV()};
}

EigenvalueSet eigenvalues(const Matrix& A, bool with_vectors) {
    Eigen::ComplexEigenSolver<Matrix> dec(A, with_vectors);
    if (dec.info() != Eigen::Success)
        throw LinalgError("eigenvalues: QR iteration failed to converge");
    EigenvalueSet out;
    const Vector& ev = dec.eigenvalues();
    out.values.assign(ev.data(), ev.data() + ev.size());
    if (with_vectors) out.vectors = dec.eigenvectors();
    return out;
}

Vector solve(const Matrix& A, const Vector& b) {
    Eigen::PartialPivLU<Matrix> lu(A);
    const auto diag = lu.matrixLU().diagonal();
    const double scale = A.norm();
    double pmin = diag.cwiseAbs().minCoeff();
    if (pmin <= 1e-15 * (scale > 0 ? scale : 1.0))
        throw LinalgError("solve: singular to working precision, pivot magnitude " + std::to_string(pmin));
    return lu.solve(b);
}

Vector lstsq(const Matrix& A, const Vector& b) {
    if (A.rows() < A.cols()) throw LinalgError("lstsq: requires p >= q");
    Eigen::ColPivHouseholderQR<Matrix> qr(A);
    if (qr.rank() < A.cols())
        throw LinalgError("lstsq: rank deficient, estimated rank " + std::to_string(qr.rank()));
    return qr.solve(b);
}

}  // namespace tdpsa::linalg
