#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hopfcyclic/refusal.hpp"
#include "hopfcyclic/report_json.hpp"

using namespace hopfcyclic;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kRefused = 1;
constexpr int kUsage = 2;

struct Options {
    std::string command;
    std::string instance;
    std::string theory = "hh";
    std::string complex = "canonical";
    std::optional<int> max_degree;
    std::optional<int> window;
    int pages = 2;
    std::string suite = "mixed";
    std::string which = "first";
    std::uint64_t seed = Sampling{}.seed;
    std::string out;
    std::string format = "text";
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Either a path or the name of a bundled fixture.
std::string resolve_instance(const std::string& name) {
    if (std::filesystem::exists(name)) return name;
    const std::string bundled = data_dir() + "/" + name + ".json";
    if (std::filesystem::exists(bundled)) return bundled;
    throw UsageError("instance file not found: " + name);
}

int default_bound(const Options& o) {
    if (o.command == "homology") return 4;
    if (o.command == "spectral") return 3;
    if (o.suite == "congruence") return 3;
    if (o.suite == "theorem24" || o.suite == "decomposition") return 4;
    return 5;
}

std::string join(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
    return out;
}

void print_checks(std::ostream& os, const std::vector<SuiteCheck>& checks) {
    for (const auto& c : checks)
        os << "  " << (c.ok ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " [" + c.detail + "]") << "\n";
}

void print_checks(std::ostream& os, const std::vector<SpectralCheck>& checks) {
    for (const auto& c : checks)
        os << "  " << (c.ok ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " [" + c.detail + "]") << "\n";
}

void print_suite(std::ostream& os, const SuiteReport& r) {
    os << "suite " << r.suite << ", bound " << r.bound;
    if (r.seed) os << ", seed " << *r.seed;
    os << ": " << (r.ok() ? "pass" : "FAIL") << "\n";
    for (const auto& [k, v] : r.facts) os << "  " << k << ": " << v << "\n";
    print_checks(os, r.checks);
}

// Rows q from high to low, columns p.
void print_bigraded(std::ostream& os, const std::string& title, const BigradedDims& d) {
    if (d.empty()) return;
    int pmax = 0, qmin = 0, qmax = 0;
    for (const auto& [key, dim] : d) {
        pmax = std::max(pmax, key.first);
        qmin = std::min(qmin, key.second);
        qmax = std::max(qmax, key.second);
    }
    os << "  " << title << " (rows q, columns p = 0.." << pmax << ")\n";
    for (int q = qmax; q >= qmin; --q) {
        std::ostringstream row;
        row << "    q=" << q << ":";
        for (int p = 0; p <= pmax; ++p) {
            auto it = d.find({p, q});
            row << " " << (it == d.end() ? "." : std::to_string(it->second));
        }
        os << row.str() << "\n";
    }
}

void print_spectral(std::ostream& os, const SpectralReport& r, int pages) {
    os << r.which << " spectral sequence through degree " << r.bound << ": " << (r.ok() ? "pass" : "FAIL") << "\n";
    for (int k = 0; k <= pages && k < static_cast<int>(r.pages.size()); ++k)
        print_bigraded(os, "E^" + std::to_string(k), r.pages[k]);
    print_bigraded(os, "E^inf", r.e_infinity);
    print_bigraded(os, "E^2 from the little mixed complexes", r.e2_little);
    os << "  abutment: " << join(r.abutment) << "\n  HC (canonical): " << join(r.hc) << "\n";
    print_checks(os, r.checks);
}

struct Loaded {
    InstanceFile file;
    std::optional<CrossedData> data;
    Validation validation;
};

Loaded load(const Options& o) {
    Loaded l;
    l.file = parse_instance(resolve_instance(o.instance));
    BuildResult b = build_instance(l.file);
    l.data = std::move(b.data);
    l.validation = std::move(b.report);
    return l;
}

json options_json(const Options& o, int bound) {
    json j = {{"max_degree", bound}};
    if (o.command == "homology") {
        j["theory"] = o.theory;
        j["complex"] = o.complex;
        j["window"] = o.window ? json(*o.window) : json(nullptr);
    } else if (o.command == "verify") {
        j["suite"] = o.suite;
        if (o.suite == "congruence") j["seed"] = o.seed;
    } else if (o.command == "spectral") {
        j["which"] = o.which;
        j["pages"] = o.pages;
    }
    return j;
}

// Runs the command, filling the JSON envelope and the text report. Returns the exit code.
int run(const Options& o, json& env, std::ostream& text) {
    const int bound = o.max_degree.value_or(default_bound(o));
    if (bound < 0) throw UsageError("--max-degree must be >= 0");
    Loaded l = load(o);
    env["command"] = o.command;
    env["instance"] = l.file.id;
    env["field"] = l.file.prime == 0 ? "Q" : "F_" + std::to_string(l.file.prime);
    env["options"] = options_json(o, bound);
    env["refusal"] = nullptr;
    text << o.command << " " << l.file.id << " over " << env["field"].get<std::string>() << "\n";

    if (o.command == "check" || o.command == "build") {
        SuiteReport r = check_instance(l.file);
        r.suite = o.command;
        env["report"] = to_json(r);
        env["ok"] = r.ok();
        print_suite(text, r);
        return r.ok() ? kPass : kRefused;
    }
    if (!l.data) {
        std::string why = l.validation.issues.empty() ? "the instance does not build" : l.validation.issues.front();
        throw Refusal("Assume that the instance defines a crossed product: " + why);
    }
    const CrossedData& c = *l.data;

    if (o.command == "homology") {
        auto theory = parse_theory(o.theory);
        auto kind = parse_complex(o.complex);
        if (!theory) throw UsageError("--theory must be hh, hc, hn or hp");
        if (!kind) throw UsageError("--complex must be canonical, hat or bar");
        if ((*theory == Theory::HN || *theory == Theory::HP) && !o.window)
            throw UsageError(o.theory + " needs a truncation window: pass --window W (the report compares W - 1 with W)");
        if (o.window && *o.window < 1) throw UsageError("--window must be >= 1");
        if (*kind == ComplexKind::Bar && !c.f_invertible) throw Refusal("Assume that the cocycle f is invertible");
        Session s = homology_session(c, *kind, *theory, bound, o.window);
        HomologyTable t = homology_table(s, *kind, *theory, bound, o.window);
        env["report"] = to_json(t);
        env["ok"] = true;
        text << "  " << o.theory << " on the " << o.complex << " complex, degrees 0.." << bound << ": " << join(t.betti)
             << "\n";
        if (t.window) {
            text << "  window " << *t.window - 1 << ": " << join(t.previous) << "\n";
            text << "  stable between windows " << *t.window - 1 << " and " << *t.window << ": "
                 << (t.stable ? "yes" : "no") << "\n";
        }
        return kPass;
    }

    if (o.command == "verify") {
        static const std::vector<std::string> suites{"mixed", "comparison", "theta", "congruence", "theorem24", "decomposition"};
        if (std::find(suites.begin(), suites.end(), o.suite) == suites.end())
            throw UsageError("--suite must be one of mixed, comparison, theta, congruence, theorem24, decomposition");
        Session s = suite_session(c, o.suite, bound);
        SuiteReport r;
        if (o.suite == "mixed") r = suite_mixed(s, bound);
        else if (o.suite == "comparison") r = suite_comparison(s, bound);
        else if (o.suite == "theta") r = suite_theta(s, bound);
        else if (o.suite == "congruence") r = suite_congruence(s, bound, Sampling{o.seed});
        else if (o.suite == "theorem24") r = suite_perturbation(s, bound);
        else r = suite_decomposition(s, instance_components(l.file, c), bound);
        env["report"] = to_json(r);
        env["ok"] = r.ok();
        print_suite(text, r);
        return r.ok() ? kPass : kRefused;
    }

    if (o.command == "spectral") {
        if (o.which != "first" && o.which != "second") throw UsageError("--which must be first or second");
        if (o.pages < 0) throw UsageError("--pages must be >= 0");
        Session s = suite_session(c, "spectral", bound);
        SpectralReport r = o.which == "first" ? first_ss(s.bar(), bound) : second_ss(s.bar(), bound);
        bool ok = r.ok();
        env["report"] = to_json(r);
        print_spectral(text, r, o.pages);
        env["separable"] = nullptr;
        if (o.which == "first") {
            try {
                SpectralReport sep = separable_d2(s.bar(), bound);
                ok = ok && sep.ok();
                env["separable"] = to_json(sep);
                text << "separable case: " << (sep.ok() ? "pass" : "FAIL") << "\n";
                print_checks(text, sep.checks);
            } catch (const Refusal& e) {
                env["separable_skipped"] = e.what();
                text << "d^2 comparison not applicable: " << e.what() << "\n";
            }
        }
        env["ok"] = ok;
        return ok ? kPass : kRefused;
    }
    throw UsageError("unknown command " + o.command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hochschild and cyclic homology of crossed products"};
    Options o;
    app.add_option("command", o.command, "check, build, homology, verify or spectral")
        ->required()
        ->check(CLI::IsMember({"check", "build", "homology", "verify", "spectral"}));
    app.add_option("--instance", o.instance, "instance file or bundled fixture name")->required();
    app.add_option("--theory", o.theory, "hh, hc, hn or hp");
    app.add_option("--complex", o.complex, "canonical, hat or bar");
    app.add_option("--max-degree", o.max_degree, "degree bound");
    app.add_option("--window", o.window, "truncation window for hn and hp");
    app.add_option("--pages", o.pages, "highest page to print");
    app.add_option("--suite", o.suite, "mixed, comparison, theta, congruence, theorem24 or decomposition");
    app.add_option("--which", o.which, "first or second spectral sequence");
    app.add_option("--seed", o.seed, "seed for sampled congruence checks");
    app.add_option("--out", o.out, "write the report to this file instead of stdout");
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    json env;
    std::ostringstream text;
    int code = kPass;
    const auto start = std::chrono::steady_clock::now();
    try {
        code = run(o, env, text);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "malformed instance: " << e.what() << "\n";
        return kUsage;
    } catch (const Refusal& e) {
        env["ok"] = false;
        env["refusal"] = e.what();
        text << "refused: " << e.what() << "\n";
        code = kRefused;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::string body;
    if (o.format == "json") {
        body = env.dump(2) + "\n";
    } else {
        std::ostringstream t;
        t << text.str() << "elapsed " << std::fixed << std::setprecision(3) << seconds << " s\n";
        body = t.str();
    }
    if (o.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(o.out);
        if (!f) {
            std::cerr << "usage error: cannot write " << o.out << "\n";
            return kUsage;
        }
        f << body;
    }
    return code;
}
