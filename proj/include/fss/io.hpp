#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fss/modelcat.hpp"

namespace fss {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Fields and matrices
// ---------------------------------------------------------------------------

inline Json field_to_json(const Field& F) {
    Json j;
    if (F.is_prime_field()) {
        j["kind"] = "prime";
        j["characteristic"] = F.characteristic();
    } else {
        j["kind"] = "rationals";
    }
    return j;
}

inline Field field_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw input_error("field: expected an object with a \"kind\" string");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "rationals") return Field::rationals();
    if (kind == "prime") {
        if (!j.contains("characteristic") || !j["characteristic"].is_number_unsigned())
            throw input_error("field: prime fields need an unsigned \"characteristic\"");
        return Field::prime(j["characteristic"].get<unsigned long>());
    }
    throw input_error("field: unknown kind \"" + kind + "\"");
}

inline Json matrix_to_json(const Field& F, const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(F.to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Field& F, const Json& j, int rows, int cols,
                               const std::string& what) {
    if (!j.is_array() || int(j.size()) != rows)
        throw input_error(what + ": expected " + std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = j[size_t(i)];
        if (!row.is_array() || int(row.size()) != cols)
            throw input_error(what + ": expected " + std::to_string(cols) + " entries in row " +
                              std::to_string(i));
        for (int c = 0; c < cols; ++c) {
            const Json& cell = row[size_t(c)];
            if (!cell.is_string()) throw input_error(what + ": entries must be scalar strings");
            m.at(i, c) = F.parse(cell.get<std::string>());
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Complexes
// ---------------------------------------------------------------------------

// Canonical form: a degree appears under "degrees" iff its rank is nonzero
// and under "differentials" iff its matrix is nonzero, so storing a loaded
// document reproduces it byte for byte.
inline Json complex_to_json(const BasedFilteredComplex& A) {
    const Field& F = A.field();
    Json j;
    j["field"] = field_to_json(F);
    j["window"] = Json::array({A.n_min(), A.n_max()});
    Json degrees = Json::object();
    for (int n = A.n_min(); n <= A.n_max(); ++n) {
        if (A.rank(n) == 0) continue;
        Json d;
        d["weights"] = A.weights(n);
        degrees[std::to_string(n)] = std::move(d);
    }
    j["degrees"] = std::move(degrees);
    Json diffs = Json::object();
    for (int n = A.n_min(); n <= A.n_max(); ++n) {
        if (A.d(n).is_zero()) continue;
        diffs[std::to_string(n)] = matrix_to_json(F, A.d(n));
    }
    j["differentials"] = std::move(diffs);
    return j;
}

inline int parse_degree_key(const std::string& key) {
    try {
        size_t pos = 0;
        int n = std::stoi(key, &pos);
        if (pos != key.size()) throw input_error("");
        return n;
    } catch (...) {
        throw input_error("complex: bad degree key \"" + key + "\"");
    }
}

inline BasedFilteredComplex complex_from_json(const Json& j) {
    if (!j.is_object()) throw input_error("complex: expected an object");
    if (!j.contains("field")) throw input_error("complex: missing \"field\"");
    Field F = field_from_json(j["field"]);
    if (!j.contains("window") || !j["window"].is_array() || j["window"].size() != 2 ||
        !j["window"][0].is_number_integer() || !j["window"][1].is_number_integer())
        throw input_error("complex: \"window\" must be [n_min, n_max]");
    int n_min = j["window"][0].get<int>();
    int n_max = j["window"][1].get<int>();
    if (n_max < n_min - 1) throw input_error("complex: empty window must be [n, n-1]");

    std::map<int, std::vector<long>> weights;
    if (j.contains("degrees")) {
        if (!j["degrees"].is_object()) throw input_error("complex: \"degrees\" must be an object");
        for (const auto& [key, val] : j["degrees"].items()) {
            int n = parse_degree_key(key);
            if (n < n_min || n > n_max)
                throw input_error("complex: degree " + key + " outside the window");
            if (!val.is_object() || !val.contains("weights") || !val["weights"].is_array())
                throw input_error("complex: degree " + key + " needs a \"weights\" array");
            std::vector<long> w;
            for (const auto& x : val["weights"]) {
                if (!x.is_number_integer())
                    throw input_error("complex: weights must be integers in degree " + key);
                w.push_back(x.get<long>());
            }
            weights[n] = std::move(w);
        }
    }
    auto rank_of = [&](int n) {
        auto it = weights.find(n);
        return it == weights.end() ? 0 : int(it->second.size());
    };

    std::vector<std::vector<long>> ws;
    std::vector<Matrix> ds;
    for (int n = n_min; n <= n_max; ++n) {
        auto it = weights.find(n);
        ws.push_back(it == weights.end() ? std::vector<long>{} : it->second);
        ds.push_back(Matrix(n < n_max ? rank_of(n + 1) : 0, rank_of(n)));
    }
    if (j.contains("differentials")) {
        if (!j["differentials"].is_object())
            throw input_error("complex: \"differentials\" must be an object");
        for (const auto& [key, val] : j["differentials"].items()) {
            int n = parse_degree_key(key);
            if (n < n_min || n > n_max)
                throw input_error("complex: differential " + key + " outside the window");
            int rows = n < n_max ? rank_of(n + 1) : 0;
            ds[size_t(n - n_min)] =
                matrix_from_json(F, val, rows, rank_of(n), "differential at degree " + key);
        }
    }
    BasedFilteredComplex A(F, n_min, std::move(ws), std::move(ds));
    auto bad = validate(A);
    if (!bad.empty()) throw input_error("complex: " + bad.front());
    return A;
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

inline Json morphism_to_json(const FilteredMorphism& f) {
    const Field& F = f.field();
    Json j;
    j["source"] = complex_to_json(f.source());
    j["target"] = complex_to_json(f.target());
    Json maps = Json::object();
    for (int n = f.n_min(); n <= f.n_max(); ++n) {
        if (f.map(n).is_zero()) continue;
        maps[std::to_string(n)] = matrix_to_json(F, f.map(n));
    }
    j["maps"] = std::move(maps);
    return j;
}

inline BasedFilteredComplex load_complex(const std::string& path);

// The endpoints may be inline complex objects or strings naming complex
// files, resolved relative to base_dir.
inline BasedFilteredComplex endpoint_from_json(const Json& j, const std::string& base_dir,
                                               const std::string& what) {
    if (j.is_string()) {
        std::filesystem::path p(j.get<std::string>());
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        return load_complex(p.string());
    }
    if (j.is_object()) return complex_from_json(j);
    throw input_error(what + ": expected an inline complex or a file path");
}

inline FilteredMorphism morphism_from_json(const Json& j, const std::string& base_dir = "") {
    if (!j.is_object()) throw input_error("morphism: expected an object");
    if (!j.contains("source") || !j.contains("target"))
        throw input_error("morphism: missing \"source\" or \"target\"");
    BasedFilteredComplex src = endpoint_from_json(j["source"], base_dir, "morphism source");
    BasedFilteredComplex tgt = endpoint_from_json(j["target"], base_dir, "morphism target");
    if (!(src.field().id() == tgt.field().id()))
        throw input_error("morphism: source and target fields differ");
    std::map<int, Matrix> maps;
    if (j.contains("maps")) {
        if (!j["maps"].is_object()) throw input_error("morphism: \"maps\" must be an object");
        for (const auto& [key, val] : j["maps"].items()) {
            int n = parse_degree_key(key);
            maps[n] = matrix_from_json(src.field(), val, tgt.rank(n), src.rank(n),
                                       "map at degree " + key);
        }
    }
    FilteredMorphism f(std::move(src), std::move(tgt), std::move(maps));
    auto bad = validate_morphism(f);
    if (!bad.empty()) throw input_error("morphism: " + bad.front());
    return f;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw input_error(path + ": " + e.what());
    }
    return j;
}

inline void store_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline BasedFilteredComplex load_complex(const std::string& path) {
    return complex_from_json(load_json(path));
}

inline void store_complex(const std::string& path, const BasedFilteredComplex& A) {
    store_json(path, complex_to_json(A));
}

inline FilteredMorphism load_morphism(const std::string& path) {
    return morphism_from_json(load_json(path),
                              std::filesystem::path(path).parent_path().string());
}

inline void store_morphism(const std::string& path, const FilteredMorphism& f) {
    store_json(path, morphism_to_json(f));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline Json page_report_json(const SpectralPage& pg) {
    Json j;
    j["r"] = pg.r;
    Json entries = Json::array();
    for (const PageEntry& e : pg.entries) {
        Json row;
        row["p"] = e.p;
        row["n"] = e.n;
        row["dim"] = e.dim;
        row["d_r_rank"] = e.d_r_rank;
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
}

inline Json verdict_json(const std::string& check, const SSpec& spec, const Verdict& v) {
    Json j;
    j["check"] = check;
    Json sp;
    sp["r"] = spec.r;
    sp["S"] = std::vector<int>(spec.S.begin(), spec.S.end());
    j["spec"] = std::move(sp);
    j["result"] = v.ok;
    j["witnesses"] = v.witnesses;
    return j;
}

}  // namespace fss
