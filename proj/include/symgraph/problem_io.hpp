#ifndef SYMGRAPH_PROBLEM_IO_HPP
#define SYMGRAPH_PROBLEM_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "certificate.hpp"
#include "graphs.hpp"
#include "macaulay.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "sympoly.hpp"

namespace symgraph::io {

using json = nlohmann::ordered_json;

// All scalars travel as exact fraction strings ("p/q" or "p"); exponent
// vectors as comma-joined integers. Floats are rejected by construction.

inline ExpVec parse_expvec(const std::string& key, int dim) {
    ExpVec e;
    std::stringstream ss(key);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v < 0)
            throw std::invalid_argument("bad exponent entry '" + tok + "'");
        e.push_back(v);
    }
    if (static_cast<int>(e.size()) != dim)
        throw std::invalid_argument("exponent key '" + key + "' does not match dimension " +
                                    std::to_string(dim));
    return e;
}

inline std::string expvec_key(const ExpVec& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(e[i]);
    }
    return s;
}

inline Rat rat_from_json(const json& j) {
    if (!j.is_string())
        throw std::invalid_argument("rationals must be fraction strings, got: " + j.dump());
    return rat_parse(j.get<std::string>());
}

inline SymPoly poly_from_json(const json& j, int dim, int degree) {
    if (!j.is_object()) throw std::invalid_argument("polynomial must be an object");
    SymPoly p(dim, degree);
    for (const auto& [key, val] : j.items())
        p.add_term(parse_expvec(key, dim), rat_from_json(val));
    return p;
}

inline json poly_to_json(const SymPoly& p) {
    json j = json::object();
    for (const auto& [e, c] : p.terms) j[expvec_key(e)] = rat_str(c);
    return j;
}

inline Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty array");
    std::size_t rows = j.size();
    std::size_t cols = j[0].size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw std::invalid_argument("ragged matrix rows");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = rat_from_json(j[i][k]);
    }
    return m;
}

inline json matrix_to_json(const Matrix& m) {
    json j = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rat_str(m(i, k)));
        j.push_back(row);
    }
    return j;
}

inline MultMatrix mult_from_json(const json& j) {
    MultMatrix m;
    for (const auto& row : j) m.push_back(row.get<std::vector<int>>());
    return m;
}

inline json mult_to_json(const MultMatrix& m) {
    json j = json::array();
    for (const auto& row : m) j.push_back(row);
    return j;
}

struct RunOptions {
    int m_max = 6;
    int n_max = 10;
    unsigned long seed = 0;
    bool corrupt_c_gamma = false;  // negative-control fixture knob
};

// One structured problem per file; which blocks must be present depends on
// the subcommand.
struct ProblemFile {
    int schema_version = 1;
    int r = 1;
    int d = 1;
    int e = 1;
    std::optional<Matrix> pairing;
    std::vector<SymPoly> A;
    std::vector<SymPoly> B;
    json trace;        // single trace-verify instance (or null)
    json trace_sweep;  // sweep description (or null)
    json graph;        // graph-eval payload (or null)
    json macaulay;     // macaulay payload (or null)
    std::optional<FiberModel> fiber_model;
    std::string fiber_point;
    RunOptions options;
};

inline ProblemFile parse_problem(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("problem file must be a JSON object");
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
        throw std::invalid_argument("missing or unsupported schema_version (expected 1)");
    ProblemFile p;
    p.r = j.value("r", 1);
    p.d = j.value("d", 1);
    p.e = j.value("e", p.d);
    if (p.r < 1 || p.d < 1 || p.e < 1)
        throw std::invalid_argument("r, d, e must be positive");
    if (j.contains("pairing")) p.pairing = matrix_from_json(j["pairing"]);
    if (j.contains("A"))
        for (const auto& a : j["A"]) p.A.push_back(poly_from_json(a, p.d, p.r));
    if (j.contains("B"))
        for (const auto& b : j["B"]) p.B.push_back(poly_from_json(b, p.e, p.r));
    p.trace = j.value("trace", json());
    p.trace_sweep = j.value("trace_sweep", json());
    p.graph = j.value("graph", json());
    p.macaulay = j.value("macaulay", json());
    if (j.contains("fiber_model")) {
        const auto& fm = j["fiber_model"];
        FiberModel model;
        model.points = fm.at("points").get<std::vector<std::string>>();
        model.e = fm.at("e").get<int>();
        model.f = fm.at("f").get<int>();
        model.r = fm.value("r", p.r);
        for (const auto& sec : fm.at("sections_e")) {
            std::map<std::string, SymPoly> table;
            for (const auto& [pt, poly] : sec.items())
                table.emplace(pt, poly_from_json(poly, model.e, model.r));
            model.sectionsE.push_back(std::move(table));
        }
        for (const auto& sec : fm.at("sections_f")) {
            std::map<std::string, SymPoly> table;
            for (const auto& [pt, poly] : sec.items())
                table.emplace(pt, poly_from_json(poly, model.f, model.r));
            model.sectionsF.push_back(std::move(table));
        }
        p.fiber_point = fm.value("point", model.points.empty() ? std::string() : model.points[0]);
        p.fiber_model = std::move(model);
    }
    if (j.contains("options")) {
        const auto& o = j["options"];
        p.options.m_max = o.value("m_max", 6);
        p.options.n_max = o.value("n_max", 10);
        p.options.seed = o.value("seed", 0ul);
        p.options.corrupt_c_gamma = o.value("corrupt_c_gamma", false);
    }
    return p;
}

inline ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    json j;
    in >> j;
    return parse_problem(j);
}

// Round-trip serialization of the parsed file (canonical field order).
inline json problem_to_json(const ProblemFile& p) {
    json j;
    j["schema_version"] = p.schema_version;
    j["r"] = p.r;
    j["d"] = p.d;
    j["e"] = p.e;
    if (p.pairing) j["pairing"] = matrix_to_json(*p.pairing);
    if (!p.A.empty()) {
        j["A"] = json::array();
        for (const auto& a : p.A) j["A"].push_back(poly_to_json(a));
    }
    if (!p.B.empty()) {
        j["B"] = json::array();
        for (const auto& b : p.B) j["B"].push_back(poly_to_json(b));
    }
    if (!p.trace.is_null()) j["trace"] = p.trace;
    if (!p.trace_sweep.is_null()) j["trace_sweep"] = p.trace_sweep;
    if (!p.graph.is_null()) j["graph"] = p.graph;
    if (!p.macaulay.is_null()) j["macaulay"] = p.macaulay;
    if (p.fiber_model) {
        json fm;
        fm["points"] = p.fiber_model->points;
        fm["e"] = p.fiber_model->e;
        fm["f"] = p.fiber_model->f;
        fm["r"] = p.fiber_model->r;
        fm["sections_e"] = json::array();
        for (const auto& sec : p.fiber_model->sectionsE) {
            json table;
            for (const auto& [pt, poly] : sec) table[pt] = poly_to_json(poly);
            fm["sections_e"].push_back(table);
        }
        fm["sections_f"] = json::array();
        for (const auto& sec : p.fiber_model->sectionsF) {
            json table;
            for (const auto& [pt, poly] : sec) table[pt] = poly_to_json(poly);
            fm["sections_f"].push_back(table);
        }
        fm["point"] = p.fiber_point;
        j["fiber_model"] = fm;
    }
    json o;
    o["m_max"] = p.options.m_max;
    o["n_max"] = p.options.n_max;
    o["seed"] = p.options.seed;
    o["corrupt_c_gamma"] = p.options.corrupt_c_gamma;
    j["options"] = o;
    return j;
}

inline json certificate_to_json(const Certificate& cert, const std::vector<SymPoly>& A,
                                const std::vector<SymPoly>& B) {
    json j;
    j["m"] = cert.m;
    j["coeffs_a"] = json::array();
    for (const auto& c : cert.coeffsA) {
        json row = json::array();
        for (const auto& x : c) row.push_back(rat_str(x));
        j["coeffs_a"].push_back(row);
    }
    j["coeffs_b"] = json::array();
    for (const auto& c : cert.coeffsB) {
        json row = json::array();
        for (const auto& x : c) row.push_back(rat_str(x));
        j["coeffs_b"].push_back(row);
    }
    j["mult"] = mult_to_json(cert.mult);
    j["value"] = rat_str(cert.value);
    // assembled decorations, so the certificate re-validates through graph-eval
    json graph;
    graph["mult"] = mult_to_json(cert.mult);
    graph["vdecs"] = json::array();
    graph["wdecs"] = json::array();
    for (const auto& c : cert.coeffsA) {
        SymPoly p(A[0].dim, A[0].degree);
        for (std::size_t k = 0; k < A.size(); ++k) p = p + A[k].scaled(c[k]);
        graph["vdecs"].push_back(poly_to_json(p));
    }
    for (const auto& c : cert.coeffsB) {
        SymPoly p(B[0].dim, B[0].degree);
        for (std::size_t k = 0; k < B.size(); ++k) p = p + B[k].scaled(c[k]);
        graph["wdecs"].push_back(poly_to_json(p));
    }
    j["graph"] = graph;
    return j;
}

}  // namespace symgraph::io

#endif
