#include "tdpsa/mesh.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tdpsa/linalg.hpp"

namespace tdpsa {

ChebyshevMesh::ChebyshevMesh(int N, double tau_max) : N_(N), tau_max_(tau_max) {
    if (N < 1) throw std::invalid_argument("mesh: N must be >= 1");
    if (!(tau_max > 0.0)) throw std::invalid_argument("mesh: tau_max must be positive");
    const int M = 2 * N + 1;
    points_.resize(M);
    points_(N) = 0.0;
    for (int i = 1; i <= N; ++i) {
        const double p = tau_max * std::sin(i * std::numbers::pi / (2.0 * N));
        points_(N + i) = p;
        points_(N - i) = -p;  // mirrored, symmetric in floating point
    }
    // Chebyshev extremal nodes: weights alternate, halved at the endpoints.
    bary_.resize(M);
    for (int k = 0; k < M; ++k) bary_(k) = (k % 2 == 0) ? 1.0 : -1.0;
    bary_(0) *= 0.5;
    bary_(M - 1) *= 0.5;

    diff_.resize(M, M);
    for (int i = 0; i < M; ++i) {
        double rowsum = 0.0;
        for (int k = 0; k < M; ++k) {
            if (k == i) continue;
            const double d = (bary_(k) / bary_(i)) / (points_(i) - points_(k));
            diff_(i, k) = d;
            rowsum += d;
        }
        diff_(i, i) = -rowsum;  // negative-sum trick
    }
}

Eigen::VectorXd ChebyshevMesh::cardinal(double t) const {
    const int M = size();
    Eigen::VectorXd l = Eigen::VectorXd::Zero(M);
    for (int k = 0; k < M; ++k) {
        if (t == points_(k)) {
            l(k) = 1.0;
            return l;
        }
    }
    double denom = 0.0;
    for (int k = 0; k < M; ++k) {
        l(k) = bary_(k) / (t - points_(k));
        denom += l(k);
    }
    l /= denom;
    return l;
}

Complex ChebyshevMesh::interpolate(const Vector& nodal, double t) const {
    const Eigen::VectorXd l = cardinal(t);
    Complex out = 0.0;
    for (int k = 0; k < size(); ++k) out += l(k) * nodal(k);
    return out;
}

HamiltonianBlocks make_blocks(const TimeDelaySystem& sys, const PerturbationSpec& spec, double sigma) {
    const int n = sys.dim();
    const double s = spec.epsilon() * eval_w_line(spec, sys, sigma);
    const ShiftedSystem sh = shift(sys, sigma);

    HamiltonianBlocks b;
    b.M0 = Matrix::Zero(2 * n, 2 * n);
    b.M0.topLeftCorner(n, n) = sh.matrices[0];
    b.M0.topRightCorner(n, n) = -(s * s) * Matrix::Identity(n, n);
    b.M0.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
    b.M0.bottomRightCorner(n, n) = -sh.matrices[0].adjoint();
    for (int i = 1; i <= sys.num_delays(); ++i) {
        Matrix Mi = Matrix::Zero(2 * n, 2 * n);
        Mi.topLeftCorner(n, n) = sh.matrices[i];
        Matrix Mn = Matrix::Zero(2 * n, 2 * n);
        Mn.bottomRightCorner(n, n) = -sh.matrices[i].adjoint();
        b.Mi.push_back(std::move(Mi));
        b.Mi_neg.push_back(std::move(Mn));
    }
    return b;
}

OperatorBuilder::OperatorBuilder(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                                 const ChebyshevMesh& mesh)
    : sys_(sys), spec_(spec), mesh_(mesh) {
    if (sys.num_delays() >= 1) {
        const double tm = sys.max_delay();
        if (std::abs(mesh.tau_max() - tm) > 1e-12 * tm)
            throw std::invalid_argument("operator: mesh tau_max must equal the largest system delay");
    }
    for (int i = 1; i <= sys.num_delays(); ++i) {
        card_minus_.push_back(mesh.cardinal(-sys.delays()[i]));
        card_plus_.push_back(mesh.cardinal(sys.delays()[i]));
    }
    const int n2 = 2 * sys.dim();
    const int M = mesh.size();
    frame_ = Matrix::Zero(n2 * M, n2 * M);
    const auto& D = mesh.differentiation_matrix();
    for (int r = 0; r < M; ++r) {
        if (r == mesh.N()) continue;
        for (int c = 0; c < M; ++c)
            frame_.block(r * n2, c * n2, n2, n2) = D(r, c) * Matrix::Identity(n2, n2);
    }
}

DiscretizedOperator OperatorBuilder::build(double sigma) const {
    const HamiltonianBlocks blocks = make_blocks(sys_, spec_, sigma);
    const int n2 = 2 * sys_.dim();
    const int mid = mesh_.N();

    DiscretizedOperator op{frame_, sigma, mesh_.N(), sys_.dim(),
                           spec_.epsilon() * eval_w_line(spec_, sys_, sigma)};
    for (int c = 0; c < mesh_.size(); ++c) {
        Matrix a = Matrix::Zero(n2, n2);
        if (c == mid) a = blocks.M0;
        for (int i = 0; i < sys_.num_delays(); ++i)
            a += blocks.Mi[i] * card_minus_[i](c) + blocks.Mi_neg[i] * card_plus_[i](c);
        op.L.block(mid * n2, c * n2, n2, n2) = a;
    }
    return op;
}

DiscretizedOperator build_L_sigma_N(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                                    const ChebyshevMesh& mesh, double sigma) {
    return OperatorBuilder(sys, spec, mesh).build(sigma);
}

Complex eval_pN(const ChebyshevMesh& mesh, Complex lambda, double t) {
    if (std::abs(t) > mesh.tau_max() * (1.0 + 1e-12))
        throw std::invalid_argument("eval_pN: t outside the mesh interval");
    const int M = mesh.size();
    Matrix A = Matrix::Zero(M, M);
    Vector rhs = Vector::Zero(M);
    const auto& D = mesh.differentiation_matrix();
    for (int i = 0; i < M; ++i) {
        if (i == mesh.N()) {
            A(i, i) = 1.0;
            rhs(i) = 1.0;
        } else {
            A.row(i) = D.row(i).cast<Complex>();
            A(i, i) -= lambda;
        }
    }
    Vector nodal;
    try {
        nodal = linalg::solve(A, rhs);
    } catch (const linalg::LinalgError&) {
        throw linalg::LinalgError("eval_pN: singular collocation system at this lambda");
    }
    return mesh.interpolate(nodal, t);
}

Matrix build_generator_N(const TimeDelaySystem& sys, int Na) {
    const int n = sys.dim();
    if (sys.num_delays() == 0) return sys.matrices()[0];
    if (Na < 1) throw std::invalid_argument("generator: Na must be >= 1");

    const double tm = sys.max_delay();
    const int M = Na + 1;
    // Ascending Chebyshev extremal nodes on [-tau_max, 0]; node 0 is last.
    Eigen::VectorXd pts(M), w(M);
    for (int j = 0; j < M; ++j) {
        pts(j) = 0.5 * tm * (std::cos((Na - j) * std::numbers::pi / Na) - 1.0);
        w(j) = (j % 2 == 0) ? 1.0 : -1.0;
    }
    pts(M - 1) = 0.0;
    w(0) *= 0.5;
    w(M - 1) *= 0.5;

    Eigen::MatrixXd D(M, M);
    for (int i = 0; i < M; ++i) {
        double rowsum = 0.0;
        for (int k = 0; k < M; ++k) {
            if (k == i) continue;
            D(i, k) = (w(k) / w(i)) / (pts(i) - pts(k));
            rowsum += D(i, k);
        }
        D(i, i) = -rowsum;
    }

    auto card = [&](double t) {
        Eigen::VectorXd l = Eigen::VectorXd::Zero(M);
        for (int k = 0; k < M; ++k)
            if (t == pts(k)) {
                l(k) = 1.0;
                return l;
            }
        double denom = 0.0;
        for (int k = 0; k < M; ++k) {
            l(k) = w(k) / (t - pts(k));
            denom += l(k);
        }
        l /= denom;
        return l;
    };

    Matrix G = Matrix::Zero(n * M, n * M);
    for (int r = 0; r + 1 < M; ++r)
        for (int c = 0; c < M; ++c)
            G.block(r * n, c * n, n, n) = D(r, c) * Matrix::Identity(n, n);
    // Row at node 0 enforces x'(0) = sum_i A_i x(-tau_i).
    for (std::size_t i = 0; i < sys.matrices().size(); ++i) {
        const Eigen::VectorXd l = card(-sys.delays()[i]);
        for (int c = 0; c < M; ++c)
            G.block((M - 1) * n, c * n, n, n) += l(c) * sys.matrices()[i];
    }
    return G;
}

}  // namespace tdpsa
