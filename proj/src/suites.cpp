#include "hopfcyclic/suites.hpp"

#include <algorithm>
#include <stdexcept>

#include "hopfcyclic/closed_forms.hpp"
#include "hopfcyclic/congruence.hpp"
#include "hopfcyclic/hat_sdr.hpp"
#include "hopfcyclic/refusal.hpp"
#include "hopfcyclic/spectral.hpp"

namespace hopfcyclic {

const char* theory_name(Theory t) {
    switch (t) {
        case Theory::HH: return "hh";
        case Theory::HC: return "hc";
        case Theory::HN: return "hn";
        case Theory::HP: return "hp";
    }
    return "?";
}

const char* complex_name(ComplexKind k) {
    switch (k) {
        case ComplexKind::Canonical: return "canonical";
        case ComplexKind::Hat: return "hat";
        case ComplexKind::Bar: return "bar";
    }
    return "?";
}

std::optional<Theory> parse_theory(const std::string& s) {
    for (Theory t : {Theory::HH, Theory::HC, Theory::HN, Theory::HP})
        if (s == theory_name(t)) return t;
    return std::nullopt;
}

std::optional<ComplexKind> parse_complex(const std::string& s) {
    for (ComplexKind k : {ComplexKind::Canonical, ComplexKind::Hat, ComplexKind::Bar})
        if (s == complex_name(k)) return k;
    return std::nullopt;
}

Session::Session(const CrossedData& c, int top, std::optional<int> canonical_top)
    : c_(&c), res_(std::make_unique<Resolution>(c, top, canonical_top)) {}

Simplified& Session::bar() {
    if (!bar_) bar_ = std::make_unique<Simplified>(*res_);
    return *bar_;
}

const MixedComplexData& Session::complex(ComplexKind k) {
    switch (k) {
        case ComplexKind::Canonical: return res_->canonical().mixed;
        case ComplexKind::Hat:
            if (!hat_) hat_ = res_->hat_mixed();
            return *hat_;
        case ComplexKind::Bar:
            if (!bar_mixed_) bar_mixed_ = bar().mixed();
            return *bar_mixed_;
    }
    throw std::logic_error("unknown complex");
}

namespace {

// Degree the mixed complex must reach for a table through max_degree.
int required_degree(Theory t, int max_degree, std::optional<int> window) {
    int need = max_degree + 1;
    if ((t == Theory::HN || t == Theory::HP) && window) need += 2 * *window;
    return need;
}

}  // namespace

Session homology_session(const CrossedData& c, ComplexKind k, Theory t, int max_degree, std::optional<int> window) {
    const int need = std::max(1, required_degree(t, max_degree, window));
    if (k == ComplexKind::Canonical) return Session(c, need);
    return Session(c, need + 1, need);
}

HomologyTable homology_table(Session& s, ComplexKind k, Theory t, int max_degree, std::optional<int> window) {
    if (max_degree < 0) throw std::invalid_argument("max degree must be >= 0");
    if ((t == Theory::HN || t == Theory::HP) && !window)
        throw std::invalid_argument(std::string(theory_name(t)) +
                                    " needs a truncation window: pass --window W; the report compares W - 1 with W");
    HomologyTable out;
    out.theory = t;
    out.complex = k;
    out.max_degree = max_degree;
    const MixedComplexData& m = s.complex(k);
    if (m.top() < required_degree(t, max_degree, window))
        throw std::invalid_argument("resolution too short for the requested degree");
    switch (t) {
        case Theory::HH: out.betti = betti(m.hochschild(), 0, max_degree); break;
        case Theory::HC: out.betti = betti(totalize(m, Variant::BC, max_degree + 1).complex, 0, max_degree); break;
        case Theory::HN:
        case Theory::HP: {
            out.window = window;
            StabilizationReport st = windowed_homology(m, t == Theory::HN ? Variant::BN : Variant::BP, max_degree, *window);
            out.betti = st.current;
            out.previous = st.previous;
            out.stable = st.stable();
            break;
        }
    }
    return out;
}

bool SuiteReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.ok; });
}

void SuiteReport::add(std::string name, bool good, std::string detail) {
    checks.push_back({std::move(name), good, std::move(detail)});
}

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

void add_congruences(SuiteReport& rep, const CongruenceReport& cr) {
    for (const auto& c : cr.checks) {
        std::string detail = std::to_string(c.checked) + "/" + std::to_string(c.population) + " checked, " +
                             std::to_string(c.failures) + " failures";
        if (!c.witnesses.empty()) detail += "; first: " + c.witnesses.front();
        if (!c.binding) detail += " (diagnostic)";
        rep.add(c.name + " n=" + std::to_string(c.degree), !c.binding || c.failures == 0, detail);
    }
}

}  // namespace

SuiteReport check_instance(const InstanceFile& f) {
    SuiteReport rep;
    rep.suite = "check";
    rep.facts.push_back({"dim A", std::to_string(f.A.dim)});
    rep.facts.push_back({"dim H", std::to_string(f.H.dim())});
    BuildResult b = build_instance(f);
    for (const auto& issue : b.report.issues) rep.add("validation", false, issue);
    if (!b.data) {
        if (b.report.ok()) rep.add("validation", false, "the crossed product was not built");
        return rep;
    }
    const CrossedData& c = *b.data;
    rep.add("A, H, action, cocycle and K validate", true);
    rep.facts.push_back({"dim E", std::to_string(c.dE())});
    rep.facts.push_back({"dim K", std::to_string(c.K.dim())});
    rep.facts.push_back({"f invertible", yes_no(c.f_invertible)});
    rep.facts.push_back({"f takes values in K", yes_no(c.f_in_K)});
    auto integral = find_integral(c.H);
    rep.facts.push_back({"H separable", yes_no(integral.has_value())});
    CommutatorQuotient q = hcheck(c.H);
    rep.facts.push_back({"dim H/[H,H]", std::to_string(q.coalg.dim)});
    rep.facts.push_back({"H/[H,H] cocommutative", yes_no(q.cocommutative)});
    Validation dec = check_decomposition(q.coalg, instance_components(f, c));
    rep.add("components decompose H/[H,H]", dec.ok(), dec.ok() ? "" : dec.issues.front());
    return rep;
}

Session suite_session(const CrossedData& c, const std::string& suite, int bound) {
    if (suite == "mixed") return Session(c, bound + 1, bound);
    if (suite == "comparison" || suite == "theta") return Session(c, bound + 1);
    if (suite == "spectral" || suite == "decomposition") return Session(c, bound + 2, bound + 1);
    return Session(c, bound + 2);
}

SuiteReport suite_mixed(Session& s, int bound) {
    SuiteReport rep;
    rep.suite = "mixed";
    rep.bound = bound;
    std::vector<ComplexKind> kinds{ComplexKind::Canonical, ComplexKind::Hat};
    if (s.crossed().f_invertible) kinds.push_back(ComplexKind::Bar);
    else rep.facts.push_back({"bar", "skipped: Assume that the cocycle f is invertible"});
    std::vector<std::size_t> hh0, hc0;
    for (ComplexKind k : kinds) {
        const MixedComplexData& m = s.complex(k);
        Report r = verify_mixed(m, bound);
        rep.add(std::string(complex_name(k)) + ": b^2 = B^2 = bB + Bb = 0 through degree " + std::to_string(bound),
                r.ok() && m.top() >= bound, r.summary());
        if (bound < 1) continue;
        std::vector<std::size_t> hh = homology_table(s, k, Theory::HH, bound - 1, std::nullopt).betti;
        std::vector<std::size_t> hc = homology_table(s, k, Theory::HC, bound - 1, std::nullopt).betti;
        rep.facts.push_back({std::string(complex_name(k)) + " HH", join(hh)});
        rep.facts.push_back({std::string(complex_name(k)) + " HC", join(hc)});
        if (k == ComplexKind::Canonical) {
            hh0 = hh;
            hc0 = hc;
        } else {
            rep.add(std::string(complex_name(k)) + ": HH and HC agree with the canonical complex", hh == hh0 && hc == hc0);
        }
    }
    return rep;
}

SuiteReport suite_comparison(Session& s, int bound) {
    SuiteReport rep;
    rep.suite = "comparison";
    rep.bound = bound;
    Resolution& res = s.res();
    bool pp = true, chain = true, homotopy = true;
    for (int n = 0; n <= bound; ++n) {
        Matrix prod = compose(res.psi_matrix(n), res.phi_matrix(n));
        if (!(prod == Matrix::identity(prod.cols))) pp = false;
        if (n >= 1) {
            chain = chain && compose(res.bprime_matrix(n), res.phi_matrix(n)) == compose(res.phi_matrix(n - 1), res.d_matrix(n));
            chain = chain && compose(res.psi_matrix(n - 1), res.bprime_matrix(n)) == compose(res.d_matrix(n), res.psi_matrix(n));
        }
        if (n < bound) {
            Matrix lhs = compose(res.bprime_matrix(n + 1), res.omega_matrix(n));
            if (n >= 1) lhs = lhs + compose(res.omega_matrix(n - 1), res.bprime_matrix(n));
            Matrix rhs = compose(res.phi_matrix(n), res.psi_matrix(n)) - Matrix::identity(lhs.cols);
            if (!(lhs == rhs)) homotopy = false;
        }
    }
    rep.add("psi phi = id through degree " + std::to_string(bound), pp);
    rep.add("phi and psi are chain maps", chain);
    rep.add("phi psi - id = b' omega + omega b' through degree " + std::to_string(bound - 1), homotopy);
    return rep;
}

SuiteReport suite_theta(Session& s, int bound) {
    SuiteReport rep;
    rep.suite = "theta";
    rep.bound = bound;
    for (const auto& chk : compare_closed_forms(s.res(), bound))
        rep.add(chk.name + " r=" + std::to_string(chk.r) + " s=" + std::to_string(chk.s), chk.mismatches == 0,
                std::to_string(chk.mismatches) + "/" + std::to_string(chk.generators) + " mismatches");
    Simplified& sx = s.bar();
    bool iso = true, defined = true;
    for (int n = 0; n <= bound; ++n)
        for (int r = 0; r <= n; ++r) {
            defined = defined && sx.theta_well_defined(r, n - r);
            Matrix t = sx.theta(r, n - r), ti = sx.theta_inverse(r, n - r);
            iso = iso && compose(t, ti) == Matrix::identity(t.rows) && compose(ti, t) == Matrix::identity(t.cols);
        }
    rep.add("theta and its inverse are well defined", defined);
    rep.add("theta is an isomorphism through degree " + std::to_string(bound), iso);
    const MixedComplexData& hat = s.complex(ComplexKind::Hat);
    bool intertwines = true;
    for (int n = 0; n < bound; ++n) {
        intertwines = intertwines && compose(sx.D(n), sx.theta_total(n)) == compose(sx.theta_total(n + 1), hat.B[n]);
        if (n >= 1)
            intertwines = intertwines &&
                          compose(sx.d_total(n), sx.theta_total(n)) == compose(sx.theta_total(n - 1), s.res().dhat_matrix(n));
    }
    rep.add("theta intertwines (dhat, Dhat) with (dbar, Dbar)", intertwines);
    for (const auto& chk : compare_bar_closed_forms(sx, bound))
        rep.add(chk.name + " r=" + std::to_string(chk.r) + " s=" + std::to_string(chk.s), chk.mismatches == 0,
                std::to_string(chk.mismatches) + "/" + std::to_string(chk.generators) + " mismatches");
    for (int i = 0; i <= std::min(bound, 2); ++i) {
        UTData u = ut_maps(sx, i);
        rep.add("U is coinvariant and factorizes, arity " + std::to_string(i), u.ok(),
                std::to_string(u.coinvariant) + "/" + std::to_string(u.tuples) + " coinvariant, " +
                    std::to_string(u.factorizes) + "/" + std::to_string(u.tuples) + " factorize");
    }
    rep.add("eta and t_H are well defined", bar_aux_maps_well_defined(sx, bound));
    return rep;
}

SuiteReport suite_congruence(Session& s, int bound, const Sampling& sampling) {
    SuiteReport rep;
    rep.suite = "congruence";
    rep.bound = bound;
    rep.seed = sampling.seed;
    rep.add("auxiliary maps on hat X are well defined", aux_maps_well_defined(s.res(), bound));
    add_congruences(rep, hat_congruences(s.res(), bound, sampling));
    add_congruences(rep, higher_differential_ranges(s.res(), bound, sampling));
    if (s.crossed().f_invertible) add_congruences(rep, bar_congruence_check(s.bar(), bound, sampling));
    else rep.facts.push_back({"Dbar congruence", "skipped: Assume that the cocycle f is invertible"});
    return rep;
}

SuiteReport suite_perturbation(Session& s, int bound) {
    SuiteReport rep;
    rep.suite = "theorem24";
    rep.bound = bound;
    HatSdrReport h = perturbed_hat_sdr(s.res(), bound);
    rep.add("zero perturbation returns the input", h.zero_delta_identity);
    rep.add("engine reproduces Phi, Psi, Omega and the differentials", h.mismatches.empty(),
            h.mismatches.empty() ? "" : h.mismatches.front());
    rep.add("perturbed datum is a deformation retract", h.engine.deformation.ok(), h.engine.deformation.summary());
    rep.add("perturbed datum satisfies the special identities", h.engine.special.ok(), h.engine.special.summary());
    rep.add("closed formulas form a special deformation retract", h.closed.ok());
    rep.add("Psi Phi = id", h.psi_phi_identity);
    for (std::size_t i = 0; i < h.connes_degrees.size(); ++i)
        rep.add("B omegahat B phihat = 0 in degree " + std::to_string(h.connes_degrees[i]), h.connes_zero[i]);
    rep.add("B omegahat B phihat checked through degree " + std::to_string(bound),
            !h.connes_degrees.empty() && h.connes_degrees.back() == bound);
    std::vector<std::size_t> depth(h.nilpotency.begin(), h.nilpotency.end());
    rep.facts.push_back({"perturbation depth per degree", join(depth)});
    rep.facts.push_back({"perturbed degree bound", std::to_string(h.top)});
    return rep;
}

SuiteReport suite_decomposition(Session& s, const std::vector<Subspace>& components, int bound) {
    SuiteReport rep;
    rep.suite = "decomposition";
    rep.bound = bound;
    DecompositionReport d = decomposition(s.bar(), components, bound);
    rep.facts.push_back({"components", std::to_string(d.components)});
    rep.facts.push_back({"H/[H,H] cocommutative", yes_no(d.cocommutative)});
    for (const auto& chk : d.checks) rep.add(chk.name, chk.ok, chk.detail);
    for (const auto& cx : d.complexes)
        for (std::size_t i = 0; i < cx.hh.size(); ++i) {
            rep.facts.push_back({cx.complex + " HH component " + std::to_string(i), join(cx.hh[i])});
            rep.facts.push_back({cx.complex + " HC component " + std::to_string(i), join(cx.hc[i])});
        }
    return rep;
}

}  // namespace hopfcyclic
