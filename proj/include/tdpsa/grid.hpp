#ifndef TDPSA_GRID_HPP
#define TDPSA_GRID_HPP

#include <string>
#include <vector>

#include "tdpsa/system.hpp"

namespace tdpsa {

// log10 f sampled on a rectangular grid, for external contour plotting.
// values[j][i] belongs to the point re_axis[i] + j * im_axis[j]; roots map
// to the +infinity sentinel.
struct GridSample {
    std::vector<double> re_axis;
    std::vector<double> im_axis;
    std::vector<std::vector<double>> values;  // |im_axis| rows of |re_axis|
    double epsilon;
    std::vector<double> weights;
    std::string system_hash;
};

GridSample sample_grid(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                       std::pair<double, double> re_range, std::pair<double, double> im_range,
                       int nx, int ny);

// CSV with header "re,im,log10f", "inf" literal for the sentinel,
// 17 significant digits.
std::string grid_to_csv(const GridSample& grid);

std::string grid_to_json(const GridSample& grid);

GridSample grid_from_json(const std::string& text);

}  // namespace tdpsa

#endif
