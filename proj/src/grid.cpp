#include "tdpsa/grid.hpp"

#include <cstdint>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tdpsa/numfmt.hpp"

namespace tdpsa {

namespace {

std::string system_hash(const TimeDelaySystem& sys) {
    // FNV-1a over the exact byte representation of delays and entries.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double x) {
        std::uint64_t bits;
        static_assert(sizeof bits == sizeof x);
        std::memcpy(&bits, &x, sizeof bits);
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    for (double tau : sys.delays()) mix(tau);
    for (const auto& A : sys.matrices())
        for (int c = 0; c < A.cols(); ++c)
            for (int r = 0; r < A.rows(); ++r) {
                mix(A(r, c).real());
                mix(A(r, c).imag());
            }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

GridSample sample_grid(const TimeDelaySystem& sys, const PerturbationSpec& spec,
                       std::pair<double, double> re_range, std::pair<double, double> im_range,
                       int nx, int ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("sample_grid: nx and ny must be >= 2");
    if (!(re_range.second > re_range.first) || !(im_range.second > im_range.first))
        throw std::invalid_argument("sample_grid: ranges must be nonempty");

    GridSample g;
    g.epsilon = spec.epsilon();
    g.weights = spec.weights();
    g.system_hash = system_hash(sys);
    g.re_axis.resize(nx);
    g.im_axis.resize(ny);
    for (int i = 0; i < nx; ++i)
        g.re_axis[i] = re_range.first + (re_range.second - re_range.first) * i / (nx - 1);
    for (int j = 0; j < ny; ++j)
        g.im_axis[j] = im_range.first + (im_range.second - im_range.first) * j / (ny - 1);

    g.values.assign(ny, std::vector<double>(nx));
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double f = eval_f(sys, spec, Complex(g.re_axis[i], g.im_axis[j]));
            g.values[j][i] = f == kInfSentinel ? kInfSentinel : std::log10(f);
        }
    return g;
}

std::string grid_to_csv(const GridSample& g) {
    std::ostringstream out;
    out << "re,im,log10f\n";
    for (std::size_t j = 0; j < g.im_axis.size(); ++j)
        for (std::size_t i = 0; i < g.re_axis.size(); ++i)
            out << fmt17(g.re_axis[i]) << ',' << fmt17(g.im_axis[j]) << ','
                << fmt17(g.values[j][i]) << '\n';
    return out.str();
}

std::string grid_to_json(const GridSample& g) {
    auto arr = [](const std::vector<double>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += std::isinf(v[i]) ? "\"inf\"" : fmt17(v[i]);
        }
        return s + "]";
    };
    std::ostringstream out;
    out << "{\n  \"epsilon\": " << fmt17(g.epsilon) << ",\n  \"weights\": " << arr(g.weights)
        << ",\n  \"system_hash\": \"" << g.system_hash << "\",\n  \"re_axis\": " << arr(g.re_axis)
        << ",\n  \"im_axis\": " << arr(g.im_axis) << ",\n  \"values\": [";
    for (std::size_t j = 0; j < g.values.size(); ++j) {
        if (j) out << ",";
        out << "\n    " << arr(g.values[j]);
    }
    out << "\n  ]\n}\n";
    return out.str();
}

GridSample grid_from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    GridSample g;
    g.epsilon = doc.at("epsilon").get<double>();
    g.weights = doc.at("weights").get<std::vector<double>>();
    g.system_hash = doc.at("system_hash").get<std::string>();
    g.re_axis = doc.at("re_axis").get<std::vector<double>>();
    g.im_axis = doc.at("im_axis").get<std::vector<double>>();
    for (const auto& row : doc.at("values")) {
        std::vector<double> vals;
        for (const auto& v : row)
            vals.push_back(v.is_string() ? kInfSentinel : v.get<double>());
        g.values.push_back(std::move(vals));
    }
    return g;
}

}  // namespace tdpsa
