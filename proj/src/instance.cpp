#include "hopfcyclic/instance.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hopfcyclic {

using nlohmann::json;

namespace {

struct Reader {
    std::uint32_t prime = 0;

    Scalar scalar(const json& j, const std::string& where) const {
        try {
            if (j.is_string()) return Scalar::parse(j.get<std::string>(), prime);
            if (j.is_number_integer()) {
                Scalar s(j.get<long long>());
                return prime == 0 ? s : s.in_field(prime);
            }
        } catch (const std::exception& e) {
            throw ParseError(where, e.what());
        }
        throw ParseError(where, "expected an integer or a \"p/q\" string");
    }

    Idx index(const json& j, std::size_t bound, const std::string& where) const {
        if (!j.is_number_integer()) throw ParseError(where, "expected an index");
        long long v = j.get<long long>();
        if (v < 0 || static_cast<std::size_t>(v) >= bound)
            throw ParseError(where, "index " + std::to_string(v) + " out of range [0," + std::to_string(bound) + ")");
        return static_cast<Idx>(v);
    }

    // [[index, coeff], ...]
    Vec vec(const json& j, std::size_t dim, const std::string& where) const {
        if (!j.is_array()) throw ParseError(where, "expected a vector as [[index, coeff], ...]");
        Accum acc;
        for (std::size_t k = 0; k < j.size(); ++k) {
            std::string w = where + "[" + std::to_string(k) + "]";
            const json& e = j[k];
            if (!e.is_array() || e.size() != 2) throw ParseError(w, "expected [index, coeff]");
            acc.add(index(e[0], dim, w + "[0]"), scalar(e[1], w + "[1]"));
        }
        return acc.take();
    }

    const json& field(const json& obj, const std::string& key, const std::string& where) const {
        if (!obj.is_object() || !obj.contains(key)) throw ParseError(where, "missing \"" + key + "\"");
        return obj.at(key);
    }

    std::vector<std::string> labels(const json& obj, const std::string& where) const {
        const json& b = field(obj, "basis", where);
        if (!b.is_array() || b.empty()) throw ParseError(where + ".basis", "expected a non-empty list of labels");
        std::vector<std::string> out;
        for (const auto& x : b) out.push_back(x.is_string() ? x.get<std::string>() : x.dump());
        return out;
    }

    std::vector<std::vector<std::size_t>> cayley(const json& j, const std::string& where) const {
        if (!j.is_array() || j.empty()) throw ParseError(where, "expected a square table");
        std::size_t n = j.size();
        std::vector<std::vector<std::size_t>> t(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::string w = where + "[" + std::to_string(i) + "]";
            if (!j[i].is_array() || j[i].size() != n) throw ParseError(w, "row has wrong length");
            for (std::size_t k = 0; k < n; ++k) t[i].push_back(index(j[i][k], n, w + "[" + std::to_string(k) + "]"));
        }
        return t;
    }

    AlgebraData algebra(const json& obj, const std::string& where) const {
        if (obj.contains("group")) {
            const json& g = obj.at("group");
            auto t = cayley(field(g, "cayley", where + ".group"), where + ".group.cayley");
            std::vector<std::string> names;
            if (g.contains("names"))
                for (const auto& x : g.at("names")) names.push_back(x.get<std::string>());
            return group_algebra(t, prime, names);
        }
        auto names = labels(obj, where);
        std::size_t d = names.size();
        std::vector<Vec> table(d * d);
        const json& m = field(obj, "mult", where);
        if (!m.is_array()) throw ParseError(where + ".mult", "expected a list of {i, j, value}");
        for (std::size_t k = 0; k < m.size(); ++k) {
            std::string w = where + ".mult[" + std::to_string(k) + "]";
            Idx i = index(field(m[k], "i", w), d, w + ".i");
            Idx jj = index(field(m[k], "j", w), d, w + ".j");
            table[i * d + jj] = vec(field(m[k], "value", w), d, w + ".value");
        }
        Vec unit = vec(field(obj, "unit", where), d, where + ".unit");
        return make_algebra(d, std::move(table), std::move(unit), names);
    }

    HopfData hopf(const json& obj, const std::string& where) const {
        if (obj.contains("group")) {
            const json& g = obj.at("group");
            auto t = cayley(field(g, "cayley", where + ".group"), where + ".group.cayley");
            std::vector<std::string> names;
            if (g.contains("names"))
                for (const auto& x : g.at("names")) names.push_back(x.get<std::string>());
            return group_hopf(t, prime, names);
        }
        HopfData h;
        h.alg = algebra(obj, where);
        std::size_t d = h.alg.dim;
        h.coalg.dim = d;
        h.coalg.comult.resize(d);
        h.coalg.counit.assign(d, Scalar());
        const json& cm = field(obj, "comult", where);
        for (std::size_t k = 0; k < cm.size(); ++k) {
            std::string w = where + ".comult[" + std::to_string(k) + "]";
            Idx i = index(field(cm[k], "i", w), d, w + ".i");
            const json& val = field(cm[k], "value", w);
            Accum acc;
            for (std::size_t t = 0; t < val.size(); ++t) {
                std::string wt = w + ".value[" + std::to_string(t) + "]";
                if (!val[t].is_array() || val[t].size() != 3) throw ParseError(wt, "expected [left, right, coeff]");
                acc.add(index(val[t][0], d, wt + "[0]") * d + index(val[t][1], d, wt + "[1]"), scalar(val[t][2], wt + "[2]"));
            }
            h.coalg.comult[i] = acc.take();
        }
        Vec eps = vec(field(obj, "counit", where), d, where + ".counit");
        for (const auto& [i, x] : eps) h.coalg.counit[i] = x;
        h.antipode = Matrix(d, d);
        const json& s = field(obj, "antipode", where);
        for (std::size_t k = 0; k < s.size(); ++k) {
            std::string w = where + ".antipode[" + std::to_string(k) + "]";
            Idx i = index(field(s[k], "i", w), d, w + ".i");
            h.antipode.col[i] = vec(field(s[k], "value", w), d, w + ".value");
        }
        return h;
    }
};

}  // namespace

InstanceFile parse_instance_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
    if (!root.is_object()) throw ParseError("$", "instance must be a JSON object");
    InstanceFile f;
    Reader rd;
    f.id = root.value("id", std::string("unnamed"));
    if (root.contains("field")) {
        const json& fl = root.at("field");
        if (fl.is_string()) {
            std::string s = fl.get<std::string>();
            if (s == "Q")
                rd.prime = 0;
            else if (s.size() > 1 && s[0] == 'F')
                rd.prime = static_cast<std::uint32_t>(std::stoul(s.substr(1)));
            else
                throw ParseError("field", "expected \"Q\" or \"F<p>\"");
        } else if (fl.is_object() && fl.contains("prime")) {
            rd.prime = fl.at("prime").get<std::uint32_t>();
        } else {
            throw ParseError("field", "expected \"Q\", \"F<p>\" or {\"prime\": p}");
        }
        if (rd.prime == 1) throw ParseError("field", "1 is not a prime");
        for (std::uint32_t q = 2; rd.prime != 0 && q * q <= rd.prime; ++q)
            if (rd.prime % q == 0) throw ParseError("field", std::to_string(rd.prime) + " is not a prime");
    }
    f.prime = rd.prime;
    f.A = rd.algebra(rd.field(root, "A", "$"), "A");
    const json& hj = rd.field(root, "H", "$");
    f.h_is_group = hj.contains("group");
    f.H = rd.hopf(hj, "H");
    const std::size_t dA = f.A.dim, dH = f.H.dim();
    Scalar one = rd.prime == 0 ? Scalar(1) : Scalar::residue(1, rd.prime);

    const json& act = rd.field(root, "action", "$");
    f.action.assign(dH * dA, Vec{});
    if (act.is_string() && act.get<std::string>() == "trivial") {
        for (Idx h = 0; h < dH; ++h)
            for (Idx a = 0; a < dA; ++a) f.action[h * dA + a] = scaled(unit_vec(a, one), f.H.eps(h));
    } else if (act.is_array()) {
        std::vector<bool> seen(dH * dA, false);
        for (std::size_t k = 0; k < act.size(); ++k) {
            std::string w = "action[" + std::to_string(k) + "]";
            Idx h = rd.index(rd.field(act[k], "h", w), dH, w + ".h");
            Idx a = rd.index(rd.field(act[k], "a", w), dA, w + ".a");
            f.action[h * dA + a] = rd.vec(rd.field(act[k], "value", w), dA, w + ".value");
            seen[h * dA + a] = true;
        }
        // unlisted entries of the unit of H act as the identity
        if (f.H.alg.unit.size() == 1) {
            Idx u = f.H.alg.unit[0].first;
            for (Idx a = 0; a < dA; ++a)
                if (!seen[u * dA + a]) f.action[u * dA + a] = unit_vec(a, one);
        }
    } else {
        throw ParseError("action", "expected \"trivial\" or a list of {h, a, value}");
    }

    const json& coc = rd.field(root, "cocycle", "$");
    f.cocycle.assign(dH * dH, Vec{});
    if (coc.is_string() && coc.get<std::string>() == "trivial") {
        for (Idx h = 0; h < dH; ++h)
            for (Idx l = 0; l < dH; ++l) f.cocycle[h * dH + l] = scaled(f.A.unit, f.H.eps(h) * f.H.eps(l));
    } else if (coc.is_array()) {
        for (std::size_t k = 0; k < coc.size(); ++k) {
            std::string w = "cocycle[" + std::to_string(k) + "]";
            Idx h = rd.index(rd.field(coc[k], "h", w), dH, w + ".h");
            Idx l = rd.index(rd.field(coc[k], "l", w), dH, w + ".l");
            f.cocycle[h * dH + l] = rd.vec(rd.field(coc[k], "value", w), dA, w + ".value");
        }
    } else {
        throw ParseError("cocycle", "expected \"trivial\" or a list of {h, l, value}");
    }

    if (root.contains("K")) {
        const json& k = root.at("K");
        if (k.is_string() && k.get<std::string>() == "A") {
            for (Idx a = 0; a < dA; ++a) f.K_basis.push_back(unit_vec(a, one));
        } else if (k.is_array()) {
            for (std::size_t i = 0; i < k.size(); ++i)
                f.K_basis.push_back(rd.vec(k[i], dA, "K[" + std::to_string(i) + "]"));
        } else {
            throw ParseError("K", "expected \"A\" or a list of vectors");
        }
        f.K_given = true;
    } else {
        f.K_basis.push_back(f.A.unit);
    }

    if (root.contains("components")) {
        const json& c = root.at("components");
        if (c.is_string() && c.get<std::string>() == "grouplike") {
            f.components_grouplike = true;
        } else if (c.is_array()) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                std::vector<Vec> span;
                for (std::size_t j = 0; j < c[i].size(); ++j)
                    span.push_back(rd.vec(c[i][j], dH, "components[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
                f.components.push_back(span);
            }
        } else {
            throw ParseError("components", "expected \"grouplike\" or a list of spanning sets");
        }
    }
    return f;
}

InstanceFile parse_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance_text(ss.str());
}

BuildResult build_instance(const InstanceFile& f) {
    SubalgebraData k = make_subalgebra(f.A, f.K_basis);
    return build(f.A, f.H, f.action, f.cocycle, k, f.id);
}

std::vector<Subspace> instance_components(const InstanceFile& f, const CrossedData& c) {
    CommutatorQuotient q = hcheck(c.H);
    std::vector<Subspace> out;
    if (f.components_grouplike) {
        for (Idx g = 0; g < c.dH(); ++g) {
            const Vec& d = c.H.coalg.comult[g];
            if (d.size() != 1 || d[0].first != g * c.dH() + g || !d[0].second.is_one()) continue;
            Subspace s = Subspace::span(q.coalg.dim, {q.quotient.project(unit_vec(g, c.one()))});
            if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
        }
    } else if (f.components.empty()) {
        out.push_back(Subspace::full(q.coalg.dim));
    } else {
        for (const auto& span : f.components) {
            std::vector<Vec> gens;
            for (const auto& v : span) gens.push_back(q.quotient.project(v));
            out.push_back(Subspace::span(q.coalg.dim, gens));
        }
    }
    return out;
}

std::string data_dir() {
    if (const char* env = std::getenv("HOPFCYCLIC_DATA")) return env;
    return HOPFCYCLIC_DATA_DIR;
}

std::vector<std::string> bundled_fixtures() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(data_dir()))
        if (e.path().extension() == ".json") out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace hopfcyclic
