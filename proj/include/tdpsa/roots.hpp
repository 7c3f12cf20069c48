#ifndef TDPSA_ROOTS_HPP
#define TDPSA_ROOTS_HPP

#include <optional>
#include <vector>

#include "tdpsa/system.hpp"

namespace tdpsa {

struct Root {
    Complex lambda;
    double residual;  // ||F(lambda) v|| for the refined eigenvector
};

struct RootSet {
    std::vector<Root> roots;
    double alpha0;
    int dropped;  // Newton-divergent candidates
};

// Characteristic roots with Re >= cutoff, from the discretized generator
// refined by Newton on the bordered system [F(lambda) v = 0; c* v = 1].
// Default cutoff is one unit left of the rightmost discretized eigenvalue.
RootSet characteristic_roots(const TimeDelaySystem& sys, int Na,
                             std::optional<double> cutoff = std::nullopt);

// alpha_0 with automatic Na escalation (doubling until the rightmost root
// moves < 1e-9, starting at 16, capped at 128).
double spectral_abscissa(const TimeDelaySystem& sys);

}  // namespace tdpsa

#endif
