#include "tdpsa/system.hpp"

#include <cmath>
#include <stdexcept>

#include "tdpsa/linalg.hpp"

namespace tdpsa {

TimeDelaySystem::TimeDelaySystem(std::vector<Matrix> matrices, std::vector<double> delays)
    : matrices_(std::move(matrices)), delays_(std::move(delays)) {
    if (matrices_.empty() || matrices_.size() != delays_.size())
        throw std::invalid_argument("system: matrices and delays must be nonempty and of equal length");
    if (delays_[0] != 0.0)
        throw std::invalid_argument("system: tau_0 must be exactly 0");
    for (std::size_t i = 1; i < delays_.size(); ++i) {
        if (!(delays_[i] > 0.0))
            throw std::invalid_argument("system: delays must be positive for i >= 1");
        if (!(delays_[i] > delays_[i - 1]))
            throw std::invalid_argument("system: delays must be strictly increasing (duplicates rejected)");
    }
    n_ = static_cast<int>(matrices_[0].rows());
    if (n_ < 1) throw std::invalid_argument("system: state dimension must be positive");
    for (const auto& A : matrices_)
        if (A.rows() != n_ || A.cols() != n_)
            throw std::invalid_argument("system: every matrix must be n x n");
}

bool TimeDelaySystem::is_real() const {
    for (const auto& A : matrices_)
        if (A.imag().cwiseAbs().maxCoeff() != 0.0) return false;
    return true;
}

double TimeDelaySystem::scale() const {
    double m = 0.0;
    for (const auto& A : matrices_) m = std::max(m, A.norm());
    return 1.0 + m;
}

PerturbationSpec::PerturbationSpec(std::vector<double> weights, double epsilon)
    : weights_(std::move(weights)), epsilon_(epsilon) {
    if (weights_.empty()) throw std::invalid_argument("perturbation: weights must be nonempty");
    for (double w : weights_)
        if (!(w > 0.0)) throw std::invalid_argument("perturbation: weights must be positive");
    if (!(epsilon_ > 0.0)) throw std::invalid_argument("perturbation: epsilon must be positive");
}

Matrix eval_F(const TimeDelaySystem& sys, Complex lambda) {
    const int n = sys.dim();
    Matrix F = lambda * Matrix::Identity(n, n);
    for (std::size_t i = 0; i < sys.matrices().size(); ++i)
        F -= sys.matrices()[i] * std::exp(-lambda * sys.delays()[i]);
    return F;
}

double eval_w_line(const PerturbationSpec& spec, const TimeDelaySystem& sys, double sigma) {
    if (spec.weights().size() != sys.delays().size())
        throw std::invalid_argument("perturbation: weights count must match delay count");
    double w = 0.0;
    for (std::size_t i = 0; i < spec.weights().size(); ++i)
        w += std::exp(-sigma * sys.delays()[i]) / spec.weights()[i];
    return w;
}

double eval_f(const TimeDelaySystem& sys, const PerturbationSpec& spec, Complex lambda) {
    const Matrix F = eval_F(sys, lambda);
    const double smin = linalg::svd(F).values(F.cols() - 1);
    if (smin == 0.0) return kInfSentinel;
    return eval_w_line(spec, sys, lambda.real()) / smin;
}

ShiftedSystem shift(const TimeDelaySystem& sys, double sigma) {
    ShiftedSystem out;
    out.sigma = sigma;
    out.matrices.reserve(sys.matrices().size());
    out.matrices.push_back(sys.matrices()[0] - sigma * Matrix::Identity(sys.dim(), sys.dim()));
    for (std::size_t i = 1; i < sys.matrices().size(); ++i)
        out.matrices.push_back(sys.matrices()[i] * std::exp(-sys.delays()[i] * sigma));
    return out;
}

}  // namespace tdpsa
