#include "hopfcyclic/report_json.hpp"

#include <stdexcept>

namespace hopfcyclic {

using nlohmann::json;

namespace {

json dims_to_json(const BigradedDims& d) {
    json out = json::array();
    for (const auto& [key, dim] : d) out.push_back({{"p", key.first}, {"q", key.second}, {"dim", dim}});
    return out;
}

BigradedDims dims_from_json(const json& j) {
    BigradedDims out;
    for (const auto& e : j) out[{e.at("p").get<int>(), e.at("q").get<int>()}] = e.at("dim").get<std::size_t>();
    return out;
}

}  // namespace

json to_json(const SuiteReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    json facts = json::array();
    for (const auto& [k, v] : r.facts) facts.push_back({{"name", k}, {"value", v}});
    json out = {{"suite", r.suite}, {"bound", r.bound}, {"ok", r.ok()}, {"checks", checks}, {"facts", facts}};
    out["seed"] = r.seed ? json(*r.seed) : json(nullptr);
    return out;
}

SuiteReport suite_report_from_json(const json& j) {
    SuiteReport r;
    r.suite = j.at("suite").get<std::string>();
    r.bound = j.at("bound").get<int>();
    if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& c : j.at("checks"))
        r.checks.push_back({c.at("name").get<std::string>(), c.at("ok").get<bool>(), c.at("detail").get<std::string>()});
    for (const auto& f : j.at("facts")) r.facts.emplace_back(f.at("name").get<std::string>(), f.at("value").get<std::string>());
    return r;
}

json to_json(const HomologyTable& t) {
    json out = {{"theory", theory_name(t.theory)},
                {"complex", complex_name(t.complex)},
                {"max_degree", t.max_degree},
                {"betti", t.betti},
                {"previous", t.previous},
                {"stable", t.stable}};
    out["window"] = t.window ? json(*t.window) : json(nullptr);
    return out;
}

HomologyTable homology_table_from_json(const json& j) {
    HomologyTable t;
    auto th = parse_theory(j.at("theory").get<std::string>());
    auto cx = parse_complex(j.at("complex").get<std::string>());
    if (!th || !cx) throw std::invalid_argument("homology table: unknown theory or complex");
    t.theory = *th;
    t.complex = *cx;
    t.max_degree = j.at("max_degree").get<int>();
    if (!j.at("window").is_null()) t.window = j.at("window").get<int>();
    t.betti = j.at("betti").get<std::vector<std::size_t>>();
    t.previous = j.at("previous").get<std::vector<std::size_t>>();
    t.stable = j.at("stable").get<bool>();
    return t;
}

json to_json(const SpectralReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    json pages = json::array();
    for (const auto& p : r.pages) pages.push_back(dims_to_json(p));
    return {{"which", r.which},
            {"bound", r.bound},
            {"ok", r.ok()},
            {"checks", checks},
            {"e2", dims_to_json(r.e2)},
            {"e2_little", dims_to_json(r.e2_little)},
            {"e_infinity", dims_to_json(r.e_infinity)},
            {"pages", pages},
            {"abutment", r.abutment},
            {"hc", r.hc}};
}

SpectralReport spectral_report_from_json(const json& j) {
    SpectralReport r;
    r.which = j.at("which").get<std::string>();
    r.bound = j.at("bound").get<int>();
    for (const auto& c : j.at("checks"))
        r.checks.push_back({c.at("name").get<std::string>(), c.at("ok").get<bool>(), c.at("detail").get<std::string>()});
    r.e2 = dims_from_json(j.at("e2"));
    r.e2_little = dims_from_json(j.at("e2_little"));
    r.e_infinity = dims_from_json(j.at("e_infinity"));
    for (const auto& p : j.at("pages")) r.pages.push_back(dims_from_json(p));
    r.abutment = j.at("abutment").get<std::vector<std::size_t>>();
    r.hc = j.at("hc").get<std::vector<std::size_t>>();
    return r;
}

}  // namespace hopfcyclic
