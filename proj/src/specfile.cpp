#include "chom/specfile.hpp"

#include <fstream>

namespace chom {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw std::invalid_argument("parse error at " + path + ": " + what);
}

Rat entry(const json& j, const std::string& path) {
    if (j.is_number_integer())
        return Rat(static_cast<long>(j.get<long long>()));
    if (!j.is_string())
        bad(path, "expected a rational string like \"2/3\"");
    try {
        return parse_rat(j.get<std::string>());
    } catch (const std::exception& e) {
        bad(path, e.what());
    }
}

SparseVec vec(const json& j, int dim, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        bad(path, "expected an array of " + std::to_string(dim) + " rationals");
    SparseVec v;
    for (int i = 0; i < dim; ++i) {
        Rat r = entry(j[i], path + "[" + std::to_string(i) + "]");
        if (r != 0)
            v.ents.emplace_back(i, r);
    }
    return v;
}

SparseMatrix matrix(const json& j, int rows, int cols, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        bad(path, "expected " + std::to_string(rows) + " rows");
    SparseMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const json& row = j[r];
        std::string rp = path + "[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            bad(rp, "expected " + std::to_string(cols) + " columns");
        for (int c = 0; c < cols; ++c) {
            Rat v = entry(row[c], rp + "[" + std::to_string(c) + "]");
            if (v != 0)
                m.set(r, c, v);
        }
    }
    return m;
}

Algebra parse_algebra(const json& j, const std::string& path) {
    Algebra a;
    if (!j.contains("basis") || !j["basis"].is_array())
        bad(path + ".basis", "missing basis label list");
    for (const auto& b : j["basis"])
        a.basis_labels.push_back(b.get<std::string>());
    a.dim = static_cast<int>(a.basis_labels.size());
    if (a.dim == 0)
        bad(path + ".basis", "empty basis");
    a.name = j.value("name", "");

    if (!j.contains("table"))
        bad(path + ".table", "missing structure constant table");
    const json& t = j["table"];
    if (!t.is_array() || static_cast<int>(t.size()) != a.dim)
        bad(path + ".table", "expected " + std::to_string(a.dim) + " rows");
    a.table.assign(a.dim, std::vector<SparseVec>(a.dim));
    for (int i = 0; i < a.dim; ++i) {
        if (!t[i].is_array() || static_cast<int>(t[i].size()) != a.dim)
            bad(path + ".table[" + std::to_string(i) + "]",
                "expected " + std::to_string(a.dim) + " entries");
        for (int k = 0; k < a.dim; ++k)
            a.table[i][k] = vec(t[i][k], a.dim,
                                path + ".table[" + std::to_string(i) + "][" +
                                    std::to_string(k) + "]");
    }
    if (!j.contains("unit"))
        bad(path + ".unit", "missing unit vector");
    a.unit = vec(j["unit"], a.dim, path + ".unit");

    auto rep = validate_algebra(a);
    if (!rep.ok)
        bad(path, "algebra invalid: " + rep.what);
    return a;
}

std::map<std::string, Subspace> parse_ideals(const json& j, const Algebra& a,
                                             const std::string& path) {
    std::map<std::string, Subspace> out;
    if (!j.contains("ideals"))
        return out;
    for (const auto& [name, gens] : j["ideals"].items()) {
        std::string p = path + ".ideals." + name;
        if (!gens.is_array())
            bad(p, "expected a list of generator vectors");
        std::vector<SparseVec> gv;
        for (size_t i = 0; i < gens.size(); ++i)
            gv.push_back(vec(gens[i], a.dim, p + "[" + std::to_string(i) + "]"));
        Ideal id = ideal_from_generators(a, gv);
        auto rep = validate_ideal(id);
        if (!rep.ok)
            bad(p, "ideal invalid: " + rep.what);
        out.emplace(name, id.basis);
    }
    return out;
}

Bimodule parse_bimodule(const json& j, const Algebra& base, const std::string& path) {
    Bimodule m;
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        bad(path + ".dim", "missing bimodule dimension");
    m.dim = j["dim"].get<int>();
    auto actions = [&](const char* key, std::vector<SparseMatrix>& into) {
        if (!j.contains(key) || !j[key].is_array() ||
            static_cast<int>(j[key].size()) != base.dim)
            bad(path + "." + key,
                "expected " + std::to_string(base.dim) + " action matrices");
        for (int i = 0; i < base.dim; ++i)
            into.push_back(matrix(j[key][i], m.dim, m.dim,
                                  path + "." + key + "[" + std::to_string(i) + "]"));
    };
    actions("left", m.left);
    actions("right", m.right);
    auto rep = validate_bimodule(base, m);
    if (!rep.ok)
        bad(path, "bimodule invalid: " + rep.what);
    return m;
}

SimplicialModule parse_simplicial(const json& j, const std::string& path) {
    SimplicialModule m;
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
        bad(path + ".dims", "missing dimension list");
    for (const auto& d : j["dims"])
        m.dims.push_back(d.get<int>());
    m.D = static_cast<int>(m.dims.size()) - 1;
    m.face.resize(m.D + 1);
    m.degen.resize(m.D + 1);

    const json& f = j.value("faces", json::array());
    for (int q = 1; q <= m.D; ++q) {
        std::string p = path + ".faces[" + std::to_string(q) + "]";
        if (static_cast<int>(f.size()) <= q || !f[q].is_array() ||
            static_cast<int>(f[q].size()) != q + 1)
            bad(p, "expected " + std::to_string(q + 1) + " face matrices");
        for (int i = 0; i <= q; ++i)
            m.face[q].push_back(matrix(f[q][i], m.dims[q - 1], m.dims[q],
                                       p + "[" + std::to_string(i) + "]"));
    }
    const json& s = j.value("degeneracies", json::array());
    for (int q = 0; q < m.D; ++q) {
        std::string p = path + ".degeneracies[" + std::to_string(q) + "]";
        if (static_cast<int>(s.size()) <= q || !s[q].is_array() ||
            static_cast<int>(s[q].size()) != q + 1)
            bad(p, "expected " + std::to_string(q + 1) + " degeneracy matrices");
        for (int i = 0; i <= q; ++i)
            m.degen[q].push_back(matrix(s[q][i], m.dims[q + 1], m.dims[q],
                                        p + "[" + std::to_string(i) + "]"));
    }
    auto rep = validate_simplicial(m);
    if (!rep.ok)
        bad(path, "simplicial identities fail: " + rep.summary());
    return m;
}

} // namespace

ParsedInput parse_spec(const nlohmann::json& j) {
    ParsedInput out;
    std::string kind = j.value("kind", "algebra");
    out.name = j.value("name", "");

    if (kind == "algebra") {
        out.kind = ParsedInput::Kind::Algebra;
        out.algebra = parse_algebra(j, "$");
        out.ideals = parse_ideals(j, out.algebra, "$");
    } else if (kind == "square-zero") {
        out.kind = ParsedInput::Kind::SquareZero;
        if (!j.contains("base"))
            bad("$.base", "missing base algebra");
        out.algebra = parse_algebra(j["base"], "$.base");
        if (!j.contains("bimodule"))
            bad("$.bimodule", "missing bimodule");
        out.bimodule = parse_bimodule(j["bimodule"], out.algebra, "$.bimodule");
    } else if (kind == "system") {
        out.kind = ParsedInput::Kind::System;
        if (!j.contains("base"))
            bad("$.base", "missing base algebra");
        out.algebra = parse_algebra(j["base"], "$.base");
        if (!j.contains("bimodules") || !j["bimodules"].is_array() || j["bimodules"].empty())
            bad("$.bimodules", "expected a non-empty list of bimodules");
        for (size_t i = 0; i < j["bimodules"].size(); ++i)
            out.bimodules.push_back(parse_bimodule(
                j["bimodules"][i], out.algebra, "$.bimodules[" + std::to_string(i) + "]"));
    } else if (kind == "square") {
        out.kind = ParsedInput::Kind::Square;
        for (const char* key : {"a1", "a2", "a12"})
            if (!j.contains(key))
                bad(std::string("$.") + key, "missing corner algebra");
        Algebra a1 = parse_algebra(j["a1"], "$.a1");
        Algebra a2 = parse_algebra(j["a2"], "$.a2");
        Algebra a12 = parse_algebra(j["a12"], "$.a12");
        if (!j.contains("f1") || !j.contains("f2"))
            bad("$.f1", "missing square maps f1/f2");
        SparseMatrix f1 = matrix(j["f1"], a12.dim, a1.dim, "$.f1");
        SparseMatrix f2 = matrix(j["f2"], a12.dim, a2.dim, "$.f2");
        std::optional<SparseMatrix> s1, s2;
        if (j.contains("s1"))
            s1 = matrix(j["s1"], a1.dim, a12.dim, "$.s1");
        if (j.contains("s2"))
            s2 = matrix(j["s2"], a2.dim, a12.dim, "$.s2");
        try {
            out.square = split_square(a1, a2, a12, f1, f2, s1, s2);
        } catch (const std::exception& e) {
            bad("$", e.what());
        }
    } else if (kind == "simplicial") {
        out.kind = ParsedInput::Kind::Simplicial;
        out.simplicial = parse_simplicial(j, "$");
    } else {
        bad("$.kind", "unknown kind \"" + kind + "\"");
    }
    return out;
}

ParsedInput parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    return parse_spec(j);
}

nlohmann::json algebra_to_json(const Algebra& a,
                               const std::map<std::string, Subspace>& ideals) {
    nlohmann::json j;
    j["kind"] = "algebra";
    if (!a.name.empty())
        j["name"] = a.name;
    j["basis"] = a.basis_labels;
    auto vec_json = [&](const SparseVec& v) {
        std::vector<std::string> out(a.dim, "0");
        for (const auto& [i, c] : v.ents)
            out[i] = rat_str(c);
        return out;
    };
    j["unit"] = vec_json(a.unit);
    j["table"] = nlohmann::json::array();
    for (int i = 0; i < a.dim; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < a.dim; ++k)
            row.push_back(vec_json(a.table[i][k]));
        j["table"].push_back(row);
    }
    if (!ideals.empty()) {
        nlohmann::json id;
        for (const auto& [name, sub] : ideals) {
            nlohmann::json gens = nlohmann::json::array();
            for (int c = 0; c < sub.dim(); ++c)
                gens.push_back(vec_json(sub.basis.col(c)));
            id[name] = gens;
        }
        j["ideals"] = id;
    }
    return j;
}

} // namespace chom
