#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "tdpsa/grid.hpp"
#include "tdpsa/io.hpp"
#include "tdpsa/numfmt.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw tdpsa::io::ParseError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

void apply_thread_cap() {
    if (const char* env = std::getenv("TDS_PSA_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) Eigen::setNbThreads(t);
    }
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"Pseudospectral abscissa of retarded time-delay systems"};
    app.require_subcommand(1);

    std::string input, output, format = "json";
    std::optional<double> epsilon_flag, tol_im;
    std::optional<int> na_flag;
    int N = 6;
    double tol = 0.05;

    auto* abscissa = app.add_subcommand("abscissa", "Compute the pseudospectral abscissa");
    abscissa->add_option("input", input, "system JSON file, or - for stdin")->required();
    abscissa->add_option("--epsilon", epsilon_flag, "perturbation radius (overrides the document)");
    abscissa->add_option("--N", N, "discretization parameter")->capture_default_str();
    abscissa->add_option("--tol", tol, "bisection tolerance")->capture_default_str();
    abscissa->add_option("--tol-im", tol_im, "imaginary-axis detection tolerance");
    abscissa->add_option("--Na", na_flag, "generator discretization size (auto-escalated if unset)");
    abscissa->add_option("--output,-o", output, "output path (default stdout)");

    std::optional<double> cutoff;
    auto* roots = app.add_subcommand("roots", "Characteristic roots and spectral abscissa");
    roots->add_option("input", input, "system JSON file, or - for stdin")->required();
    roots->add_option("--cutoff", cutoff, "report roots with Re >= cutoff");
    roots->add_option("--Na", na_flag, "generator discretization size");
    roots->add_option("--output,-o", output, "output path (default stdout)");

    std::pair<double, double> re_range{-2.0, 0.0}, im_range{-2.0, 2.0};
    int nx = 50, ny = 50;
    auto* contour = app.add_subcommand("contour", "Sample log10 f on a rectangular grid");
    contour->add_option("input", input, "system JSON file, or - for stdin")->required();
    contour->add_option("--epsilon", epsilon_flag, "perturbation radius (overrides the document)");
    contour->add_option("--re-min", re_range.first, "grid real-axis minimum")->capture_default_str();
    contour->add_option("--re-max", re_range.second, "grid real-axis maximum")->capture_default_str();
    contour->add_option("--im-min", im_range.first, "grid imaginary-axis minimum")->capture_default_str();
    contour->add_option("--im-max", im_range.second, "grid imaginary-axis maximum")->capture_default_str();
    contour->add_option("--nx", nx, "grid columns")->capture_default_str();
    contour->add_option("--ny", ny, "grid rows")->capture_default_str();
    contour->add_option("--format", format, "json or csv")->capture_default_str()
        ->check(CLI::IsMember({"json", "csv"}));
    contour->add_option("--output,-o", output, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    tdpsa::io::SystemDocument doc{};
    try {
        doc = tdpsa::io::parse_system_document(read_input(input));
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (roots->parsed()) {
            const tdpsa::TimeDelaySystem sys = doc.to_system();
            tdpsa::RootSet rs;
            if (na_flag) {
                rs = tdpsa::characteristic_roots(sys, *na_flag, cutoff);
            } else {
                // Match the escalation the abscissa pipeline uses.
                const double a0 = tdpsa::spectral_abscissa(sys);
                rs = tdpsa::characteristic_roots(sys, sys.num_delays() ? 64 : 1, cutoff);
                rs.alpha0 = a0;
            }
            write_output(output, tdpsa::io::rootset_to_json(rs));
            return 0;
        }

        if (contour->parsed()) {
            const tdpsa::TimeDelaySystem sys = doc.to_system();
            const tdpsa::PerturbationSpec spec = doc.to_spec(epsilon_flag);
            const tdpsa::GridSample grid = tdpsa::sample_grid(sys, spec, re_range, im_range, nx, ny);
            write_output(output, format == "csv" ? tdpsa::grid_to_csv(grid)
                                                 : tdpsa::grid_to_json(grid));
            return 0;
        }

        const tdpsa::TimeDelaySystem sys = doc.to_system();
        const tdpsa::PerturbationSpec spec = doc.to_spec(epsilon_flag);

        double alpha0;
        tdpsa::PredictorResult pred;
        try {
            alpha0 = tdpsa::spectral_abscissa(sys);
            const double tau_max = sys.num_delays() > 0 ? sys.max_delay() : 1.0;
            const tdpsa::ChebyshevMesh mesh = tdpsa::build_mesh(N, tau_max);
            pred = tdpsa::predict(sys, spec, mesh, alpha0 - 1e-8, tol, tol_im);
        } catch (const std::exception& e) {
            std::cerr << "predictor failed: " << e.what() << "\n";
            return 2;
        }

        tdpsa::io::AbscissaOutcome out;
        out.alpha0 = alpha0;
        out.predictor = pred;
        try {
            out.corrector = tdpsa::correct_all(sys, spec, pred);
        } catch (const std::exception& e) {
            std::cerr << "corrector failed: " << e.what() << "\n";
            return 3;
        }

        tdpsa::io::Settings settings{spec.epsilon(), N, tol, tol_im, na_flag, std::nullopt};
        write_output(output, tdpsa::io::result_to_json(out, settings));
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
