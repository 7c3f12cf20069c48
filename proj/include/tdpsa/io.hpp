#ifndef TDPSA_IO_HPP
#define TDPSA_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "tdpsa/corrector.hpp"
#include "tdpsa/roots.hpp"
#include "tdpsa/system.hpp"

namespace tdpsa::io {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parsed form of the JSON system description. Matrix entries are either a
// real number or an [re, im] pair; weights default to all ones; epsilon is
// optional in the document and may be overridden by a CLI flag.
struct SystemDocument {
    int n;
    std::vector<double> delays;
    std::vector<Matrix> matrices;
    std::vector<double> weights;
    std::optional<double> epsilon;

    TimeDelaySystem to_system() const { return {matrices, delays}; }
    PerturbationSpec to_spec(std::optional<double> epsilon_flag) const;
};

SystemDocument parse_system_document(const std::string& text);

struct Settings {
    double epsilon;
    int N;
    double tol;
    std::optional<double> tol_im;
    std::optional<int> Na;
    std::optional<unsigned> seed;
};

struct AbscissaOutcome {
    double alpha0;
    PredictorResult predictor;
    PsaResult corrector;
};

// Algorithm driver: spectral abscissa, then bisection predictor, then
// Gauss-Newton correction of every candidate frequency.
AbscissaOutcome run_abscissa(const TimeDelaySystem& sys, const PerturbationSpec& spec, int N,
                             double tol, std::optional<double> tol_im = std::nullopt);

// 17-significant-digit JSON; byte-identical across runs for equal inputs.
std::string result_to_json(const AbscissaOutcome& out, const Settings& settings);

std::string rootset_to_json(const RootSet& roots);

}  // namespace tdpsa::io

#endif
