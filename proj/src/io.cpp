#include "tdpsa/io.hpp"

#include <sstream>

#include <json.hpp>

#include "tdpsa/numfmt.hpp"
#include "tdpsa/roots.hpp"

namespace tdpsa::io {

using nlohmann::json;

namespace {

double parse_real(const json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError(path + ": expected a number");
    return j.get<double>();
}

Complex parse_entry(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ParseError(path + ": matrix entry must be a real number or an [re, im] pair");
}

}  // namespace

PerturbationSpec SystemDocument::to_spec(std::optional<double> epsilon_flag) const {
    const std::optional<double> eps = epsilon_flag ? epsilon_flag : epsilon;
    if (!eps) throw ParseError("epsilon: missing from the document and not given as a flag");
    return {weights, *eps};
}

SystemDocument parse_system_document(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("$: document must be a JSON object");

    SystemDocument out;
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<int>() < 1)
        throw ParseError("n: must be a positive integer");
    out.n = doc["n"].get<int>();

    if (!doc.contains("delays") || !doc["delays"].is_array())
        throw ParseError("delays: must be an array");
    for (std::size_t i = 0; i < doc["delays"].size(); ++i)
        out.delays.push_back(parse_real(doc["delays"][i], "delays[" + std::to_string(i) + "]"));

    if (!doc.contains("matrices") || !doc["matrices"].is_array())
        throw ParseError("matrices: must be an array of matrices");
    if (doc["matrices"].size() != out.delays.size())
        throw ParseError("matrices: count must equal the delay count");
    for (std::size_t k = 0; k < doc["matrices"].size(); ++k) {
        const json& jm = doc["matrices"][k];
        const std::string base = "matrices[" + std::to_string(k) + "]";
        if (!jm.is_array() || static_cast<int>(jm.size()) != out.n)
            throw ParseError(base + ": must have n rows");
        Matrix A(out.n, out.n);
        for (int r = 0; r < out.n; ++r) {
            const json& jr = jm[r];
            const std::string rpath = base + "[" + std::to_string(r) + "]";
            if (!jr.is_array() || static_cast<int>(jr.size()) != out.n)
                throw ParseError(rpath + ": must have n entries");
            for (int c = 0; c < out.n; ++c)
                A(r, c) = parse_entry(jr[c], rpath + "[" + std::to_string(c) + "]");
        }
        out.matrices.push_back(std::move(A));
    }

    if (doc.contains("weights")) {
        if (!doc["weights"].is_array() || doc["weights"].size() != out.delays.size())
            throw ParseError("weights: must be an array matching the delay count");
        for (std::size_t i = 0; i < doc["weights"].size(); ++i)
            out.weights.push_back(parse_real(doc["weights"][i], "weights[" + std::to_string(i) + "]"));
    } else {
        out.weights.assign(out.delays.size(), 1.0);
    }

    if (doc.contains("epsilon")) out.epsilon = parse_real(doc["epsilon"], "epsilon");

    try {
        (void)out.to_system();  // surface invariant violations with the parse diagnostics
        (void)PerturbationSpec(out.weights, out.epsilon.value_or(1.0));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return out;
}

AbscissaOutcome run_abscissa(const TimeDelaySystem& sys, const PerturbationSpec& spec, int N,
                             double tol, std::optional<double> tol_im) {
    AbscissaOutcome out;
    out.alpha0 = spectral_abscissa(sys);
    const double tau_max = sys.num_delays() > 0 ? sys.max_delay() : 1.0;
    const ChebyshevMesh mesh = build_mesh(N, tau_max);
    // Safety margin so bisection never starts right of the true alpha_0.
    out.predictor = predict(sys, spec, mesh, out.alpha0 - 1e-8, tol, tol_im);
    out.corrector = correct_all(sys, spec, out.predictor);
    return out;
}

namespace {

void emit_real_array(std::ostringstream& o, const std::vector<double>& v) {
    o << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) o << ",";
        o << fmt17(v[i]);
    }
    o << "]";
}

void emit_cvector(std::ostringstream& o, const Vector& v) {
    o << "[";
    for (int i = 0; i < v.size(); ++i) {
        if (i) o << ",";
        o << "[" << fmt17(v(i).real()) << "," << fmt17(v(i).imag()) << "]";
    }
    o << "]";
}

}  // namespace

std::string result_to_json(const AbscissaOutcome& out, const Settings& s) {
    std::ostringstream o;
    o << "{\n";
    o << "  \"alpha0\": " << fmt17(out.alpha0) << ",\n";
    o << "  \"alpha_epsilon\": " << fmt17(out.corrector.alpha_epsilon) << ",\n";
    o << "  \"omega_epsilon\": " << fmt17(out.corrector.omega_epsilon) << ",\n";
    o << "  \"predictor\": {\n";
    o << "    \"sigma_tilde\": " << fmt17(out.predictor.sigma_tilde) << ",\n";
    o << "    \"bracket\": [" << fmt17(out.predictor.bracket.first) << ","
      << fmt17(out.predictor.bracket.second) << "],\n";
    o << "    \"iterations\": " << out.predictor.iterations << ",\n";
    o << "    \"frequencies\": ";
    emit_real_array(o, out.predictor.frequencies);
    o << ",\n    \"trace\": [";
    for (std::size_t i = 0; i < out.predictor.trace.size(); ++i) {
        if (i) o << ",";
        o << "[" << fmt17(out.predictor.trace[i].first) << ","
          << (out.predictor.trace[i].second ? "true" : "false") << "]";
    }
    o << "]\n  },\n";
    o << "  \"corrector\": [";
    for (std::size_t i = 0; i < out.corrector.candidates.size(); ++i) {
        const auto& c = out.corrector.candidates[i];
        if (i) o << ",";
        o << "\n    {\"sigma\": " << fmt17(c.sigma) << ", \"omega\": " << fmt17(c.omega)
          << ", \"residual\": " << fmt17(c.residual_norm) << ", \"iterations\": " << c.iterations
          << ", \"converged\": " << (c.converged ? "true" : "false");
        if (!c.converged) o << ", \"reason\": \"" << c.reason << "\"";
        o << ", \"u\": ";
        emit_cvector(o, c.u);
        o << ", \"v\": ";
        emit_cvector(o, c.v);
        o << "}";
    }
    o << "\n  ],\n";
    o << "  \"settings\": {\"epsilon\": " << fmt17(s.epsilon) << ", \"N\": " << s.N
      << ", \"tol\": " << fmt17(s.tol) << ", \"tol_im\": "
      << (s.tol_im ? fmt17(*s.tol_im) : "null") << ", \"Na\": "
      << (s.Na ? std::to_string(*s.Na) : "null") << ", \"seed\": "
      << (s.seed ? std::to_string(*s.seed) : "null") << "}\n";
    o << "}\n";
    return o.str();
}

std::string rootset_to_json(const RootSet& roots) {
    std::ostringstream o;
    o << "{\n  \"alpha0\": " << fmt17(roots.alpha0) << ",\n  \"dropped\": " << roots.dropped
      << ",\n  \"roots\": [";
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        if (i) o << ",";
        o << "\n    {\"re\": " << fmt17(roots.roots[i].lambda.real())
          << ", \"im\": " << fmt17(roots.roots[i].lambda.imag())
          << ", \"residual\": " << fmt17(roots.roots[i].residual) << "}";
    }
    o << "\n  ]\n}\n";
    return o.str();
}

}  // namespace tdpsa::io
