#include "hslie/structure_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace hslie {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ParseError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) fail(path + "/" + it.key(), "unknown field");
    }
}

Rational scalar(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "scalars must be strings like \"p/q\"");
    try {
        return Rational::parse(v.get<std::string>());
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

Mat matrix(const json& v, std::size_t dim, const std::string& path) {
    if (!v.is_array() || v.size() != dim) fail(path, "expected a " + std::to_string(dim) + "-row matrix");
    Mat m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const json& row = v[i];
        if (!row.is_array() || row.size() != dim)
            fail(path + "/" + std::to_string(i), "expected a row of length " + std::to_string(dim));
        for (std::size_t j = 0; j < dim; ++j)
            m(i, j) = scalar(row[j], path + "/" + std::to_string(i) + "/" + std::to_string(j));
    }
    return m;
}

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

// sparse (i, j, {k: coeff}) entries
std::vector<std::tuple<std::size_t, std::size_t, Vec>> sparse_entries(const json& v,
                                                                      std::size_t dim,
                                                                      const std::string& path,
                                                                      bool antisym_normalize) {
    if (!v.is_array()) fail(path, "expected an array of entries");
    std::vector<std::tuple<std::size_t, std::size_t, Vec>> out;
    for (std::size_t n = 0; n < v.size(); ++n) {
        std::string p = path + "/" + std::to_string(n);
        const json& e = v[n];
        check_keys(e, p, {"i", "j", "coeffs"});
        if (!e.contains("i") || !e.contains("j") || !e.contains("coeffs"))
            fail(p, "entry needs fields i, j, coeffs");
        if (!e["i"].is_number_unsigned() || !e["j"].is_number_unsigned())
            fail(p, "indices must be non-negative integers");
        std::size_t i = e["i"].get<std::size_t>(), j = e["j"].get<std::size_t>();
        if (i >= dim || j >= dim) fail(p, "index out of range");
        Vec val(dim);
        const json& coeffs = e["coeffs"];
        if (!coeffs.is_object()) fail(p + "/coeffs", "expected an object {\"k\": \"p/q\"}");
        for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
            std::size_t k = 0;
            try {
                k = static_cast<std::size_t>(std::stoul(it.key()));
            } catch (...) {
                fail(p + "/coeffs/" + it.key(), "key must be a basis index");
            }
            if (k >= dim) fail(p + "/coeffs/" + it.key(), "index out of range");
            val[k] = scalar(it.value(), p + "/coeffs/" + it.key());
        }
        if (antisym_normalize) {
            if (i == j) {
                if (!vec_is_zero(val)) fail(p, "bracket [x,x] must vanish");
                continue;
            }
            if (i > j) {
                std::swap(i, j);
                val = vec_scale(Rational(-1), val);
            }
        }
        if (!vec_is_zero(val)) out.emplace_back(i, j, std::move(val));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    for (std::size_t n = 1; n < out.size(); ++n)
        if (std::get<0>(out[n]) == std::get<0>(out[n - 1]) &&
            std::get<1>(out[n]) == std::get<1>(out[n - 1]))
            fail(path, "duplicate entry for the same index pair");
    return out;
}

json sparse_to_json(const std::vector<std::tuple<std::size_t, std::size_t, Vec>>& entries) {
    json arr = json::array();
    for (const auto& [i, j, val] : entries) {
        json coeffs = json::object();
        for (std::size_t k = 0; k < val.size(); ++k)
            if (!val[k].is_zero()) coeffs[std::to_string(k)] = val[k].str();
        arr.push_back(json{{"i", i}, {"j", j}, {"coeffs", std::move(coeffs)}});
    }
    return arr;
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') { ++line; col = 1; } else ++col;
    }
    return {line, col};
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte);
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                         ": " + e.what());
    }
}

StructureFile structure_from_json(const json& j, const std::string& path) {
    check_keys(j, path, {"schema_version", "dim", "basis", "brackets", "connection", "metric",
                         "omega", "J", "E"});
    StructureFile s;
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
        fail(path + "/schema_version", "missing or non-integer");
    s.schema_version = j["schema_version"].get<int>();
    if (s.schema_version != 1) fail(path + "/schema_version", "unsupported schema version");
    if (!j.contains("dim") || !j["dim"].is_number_unsigned())
        fail(path + "/dim", "missing or not a non-negative integer");
    s.dim = j["dim"].get<std::size_t>();
    if (s.dim == 0 || s.dim > 16) fail(path + "/dim", "dimension out of supported range");

    if (j.contains("basis")) {
        if (!j["basis"].is_array() || j["basis"].size() != s.dim)
            fail(path + "/basis", "expected " + std::to_string(s.dim) + " labels");
        for (const auto& lbl : j["basis"]) {
            if (!lbl.is_string()) fail(path + "/basis", "labels must be strings");
            s.basis.push_back(lbl.get<std::string>());
        }
    } else {
        for (std::size_t i = 0; i < s.dim; ++i) s.basis.push_back("e" + std::to_string(i + 1));
    }

    if (j.contains("brackets"))
        s.brackets = sparse_entries(j["brackets"], s.dim, path + "/brackets", true);

    if (j.contains("connection")) {
        auto entries = sparse_entries(j["connection"], s.dim, path + "/connection", false);
        std::vector<std::vector<Vec>> gamma(s.dim, std::vector<Vec>(s.dim, Vec(s.dim)));
        for (auto& [i, jj, val] : entries) gamma[i][jj] = val;
        s.connection = std::move(gamma);
    }
    if (j.contains("metric")) s.metric = matrix(j["metric"], s.dim, path + "/metric");
    if (j.contains("omega")) s.omega = matrix(j["omega"], s.dim, path + "/omega");
    if (j.contains("J")) s.J = matrix(j["J"], s.dim, path + "/J");
    if (j.contains("E")) s.E = matrix(j["E"], s.dim, path + "/E");
    return s;
}

json structure_to_json(const StructureFile& s) {
    json j;
    j["schema_version"] = s.schema_version;
    j["dim"] = s.dim;
    j["basis"] = s.basis;
    j["brackets"] = sparse_to_json(s.brackets);
    if (s.connection) {
        std::vector<std::tuple<std::size_t, std::size_t, Vec>> entries;
        for (std::size_t i = 0; i < s.dim; ++i)
            for (std::size_t jj = 0; jj < s.dim; ++jj)
                if (!vec_is_zero((*s.connection)[i][jj]))
                    entries.emplace_back(i, jj, (*s.connection)[i][jj]);
        j["connection"] = sparse_to_json(entries);
    }
    if (s.metric) j["metric"] = matrix_to_json(*s.metric);
    if (s.omega) j["omega"] = matrix_to_json(*s.omega);
    if (s.J) j["J"] = matrix_to_json(*s.J);
    if (s.E) j["E"] = matrix_to_json(*s.E);
    return j;
}

}  // namespace

LieAlgebra StructureFile::algebra() const {
    return LieAlgebra::from_brackets(dim, basis, brackets);
}

Connection StructureFile::connection_on_algebra() const {
    if (!connection) throw ParseError("structure file has no connection block");
    return Connection(algebra(), *connection);
}

StructureFile parse_structure(const std::string& json_text) {
    return structure_from_json(parse_json(json_text), "");
}

StructureFile load_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_structure(ss.str());
}

std::string serialize_structure(const StructureFile& s) {
    return structure_to_json(s).dump(2) + "\n";
}

StructureFile structure_of(const LieAlgebra& L) {
    StructureFile s;
    s.dim = L.dim();
    s.basis = L.basis_labels();
    for (std::size_t i = 0; i < s.dim; ++i)
        for (std::size_t j = i + 1; j < s.dim; ++j)
            if (!vec_is_zero(L.basis_bracket(i, j)))
                s.brackets.emplace_back(i, j, L.basis_bracket(i, j));
    return s;
}

StructureFile structure_of(const HSStructure& hs) {
    StructureFile s = structure_of(hs.algebra());
    s.metric = hs.metric().matrix();
    s.J = hs.cp().J();
    s.E = hs.cp().E();
    return s;
}

MatchedPairFile parse_matched_pair(const std::string& json_text) {
    json j = parse_json(json_text);
    check_keys(j, "", {"schema_version", "factor_u", "factor_v", "phi"});
    MatchedPairFile f;
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
        fail("/schema_version", "missing or non-integer");
    f.schema_version = j["schema_version"].get<int>();
    if (!j.contains("factor_u") || !j.contains("factor_v") || !j.contains("phi"))
        fail("", "matched-pair file needs factor_u, factor_v, phi");
    f.factor_u = structure_from_json(j["factor_u"], "/factor_u");
    f.factor_v = structure_from_json(j["factor_v"], "/factor_v");
    if (f.factor_u.dim != f.factor_v.dim) fail("/factor_v", "factor dimensions differ");
    f.phi = matrix(j["phi"], f.factor_u.dim, "/phi");
    return f;
}

MatchedPairFile load_matched_pair(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matched_pair(ss.str());
}

std::string serialize_matched_pair(const MatchedPairFile& f) {
    json j;
    j["schema_version"] = f.schema_version;
    j["factor_u"] = parse_json(serialize_structure(f.factor_u));
    j["factor_v"] = parse_json(serialize_structure(f.factor_v));
    j["phi"] = matrix_to_json(f.phi);
    return j.dump(2) + "\n";
}

MatchedPairSpec to_spec(const MatchedPairFile& f) {
    auto factor = [](const StructureFile& s, const char* which) {
        if (!s.connection) throw ParseError(std::string(which) + ": factor needs a connection");
        if (!s.omega) throw ParseError(std::string(which) + ": factor needs an omega block");
        LieAlgebra L = s.algebra();
        Connection nabla(L, *s.connection);
        return FactorData{std::move(L), std::move(nabla),
                          BilinearForm(*s.omega, Symmetry::antisymmetric)};
    };
    return {factor(f.factor_u, "factor_u"), factor(f.factor_v, "factor_v"), f.phi};
}

}  // namespace hslie
