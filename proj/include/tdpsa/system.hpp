#ifndef TDPSA_SYSTEM_HPP
#define TDPSA_SYSTEM_HPP

#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace tdpsa {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Delay system  x'(t) = sum_i A_i x(t - tau_i),  tau_0 = 0.
// Characteristic matrix  F(lambda) = lambda I - sum_i A_i e^{-lambda tau_i}.
class TimeDelaySystem {
public:
    TimeDelaySystem(std::vector<Matrix> matrices, std::vector<double> delays);

    int dim() const { return n_; }
    int num_delays() const { return static_cast<int>(delays_.size()) - 1; }  // m
    const std::vector<Matrix>& matrices() const { return matrices_; }
    const std::vector<double>& delays() const { return delays_; }
    double max_delay() const { return delays_.back(); }
    bool is_real() const;

    // 1 + max_i ||A_i||_F, the residual scale used repo-wide.
    double scale() const;

private:
    int n_;
    std::vector<Matrix> matrices_;
    std::vector<double> delays_;
};

// Perturbation weights w_i and radius epsilon; each delta A_i is bounded
// by epsilon / w_i in spectral norm. The perturbations themselves are
// never materialized.
class PerturbationSpec {
public:
    PerturbationSpec(std::vector<double> weights, double epsilon);

    const std::vector<double>& weights() const { return weights_; }
    double epsilon() const { return epsilon_; }

private:
    std::vector<double> weights_;
    double epsilon_;
};

// sigma-shifted matrices: A_{sigma,0} = A_0 - sigma I, A_{sigma,i} = A_i e^{-tau_i sigma}.
struct ShiftedSystem {
    double sigma;
    std::vector<Matrix> matrices;
};

inline constexpr double kInfSentinel = std::numeric_limits<double>::infinity();

Matrix eval_F(const TimeDelaySystem& sys, Complex lambda);

// w on the vertical line Re(lambda) = sigma: sum_i e^{-sigma tau_i} / w_i.
double eval_w_line(const PerturbationSpec& spec, const TimeDelaySystem& sys, double sigma);

// Level-set function f(lambda) = w(Re lambda) / sigma_min(F(lambda)).
// Returns +infinity when lambda is a characteristic root.
double eval_f(const TimeDelaySystem& sys, const PerturbationSpec& spec, Complex lambda);

ShiftedSystem shift(const TimeDelaySystem& sys, double sigma);

}  // namespace tdpsa

#endif
