#include "hopfcyclic/congruence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "hopfcyclic/closed_forms.hpp"

namespace hopfcyclic {

namespace {

constexpr std::size_t kWitnesses = 5;

std::optional<Idx> basis_index_of(const Vec& v) {
    if (v.size() == 1 && v[0].second.is_one()) return v[0].first;
    return std::nullopt;
}

// Vector of slot vectors tensored in `shape`.
Vec tensor(const Shape& shape, const std::vector<Vec>& slots) {
    Accum acc;
    add_tensor(acc, shape, slots, Scalar(1));
    return acc.take();
}

std::string describe(const std::string& what, const std::vector<Idx>& t) {
    std::string s = what + " (";
    for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + std::to_string(t[k]);
    return s + ")";
}

// Everything the statements share: projections, spans and adapted bases.
class Context {
public:
    Context(Resolution& res) : res(res), c(res.crossed()) {
        dHb = res.hbar().dim();
        dAb = res.abar().dim();
        dEb = res.ebar().dim();
        h_unit = basis_index_of(c.H.unit());
        std::vector<Vec> pa, ph, ke;
        for (Idx a = 0; a < c.dA(); ++a) pa.push_back(res.ebar().project(c.embed_a(unit_vec(a))));
        for (Idx h = 0; h < c.dH(); ++h) ph.push_back(res.ebar().project(c.gamma_basis(h)));
        for (const auto& k : c.K.basis()) ke.push_back(c.embed_a(k));
        in_ebar_A = Subspace::span(dEb, pa);
        in_ebar_H = Subspace::span(dEb, ph);
        e_slot_K = std::make_shared<SlotBasis>(adapted_basis(c.dE(), {Subspace::span(c.dE(), ke)}));
        e_plain = std::make_shared<SlotBasis>(single_category(c.dE()));
        hbar_plain = std::make_shared<SlotBasis>(single_category(dHb));
        ebar_AH = std::make_shared<SlotBasis>(adapted_basis(dEb, {in_ebar_A, in_ebar_H}));
        Subspace scalars_A = Subspace::span(c.dA(), {c.A.unit});
        for (Idx a = 0; a < c.dA(); ++a)
            for (Idx h = 0; h < c.dH(); ++h)
                if (h_unit && h != *h_unit && !scalars_A.contains(unit_vec(a))) general.push_back(c.e_index(a, h));
    }

    Resolution& res;
    const CrossedData& c;
    std::size_t dHb = 0, dAb = 0, dEb = 0;
    std::optional<Idx> h_unit;
    Subspace in_ebar_A, in_ebar_H;
    std::shared_ptr<const SlotBasis> e_slot_K, e_plain, hbar_plain, ebar_AH;
    std::vector<Idx> general;  // E basis elements a # h outside A and the image of H

    Idx h_of(Idx q) const { return res.hbar().lift_index(q); }
    Idx a_of(Idx q) const { return res.abar().lift_index(q); }

    static std::vector<Idx> key(std::vector<Idx> hs) {
        std::sort(hs.begin(), hs.end());
        hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
        return hs;
    }
    static std::vector<Vec> units(const std::vector<Idx>& hs) {
        std::vector<Vec> out;
        for (Idx h : hs) out.push_back(unit_vec(h));
        return out;
    }

    const Subspace& f_span(const std::vector<Idx>& hs) {
        auto k = key(hs);
        auto it = f_.find(k);
        if (it == f_.end()) it = f_.emplace(k, cocycle_span(c, units(k))).first;
        return it->second;
    }
    // closure under the weak action of all of H, or of the Hopf subalgebra <hs>
    const Subspace& f_closure(const std::vector<Idx>& hs, bool whole_H) {
        auto k = key(hs);
        auto& m = whole_H ? ft_H_ : ft_sub_;
        auto it = m.find(k);
        if (it == m.end()) {
            Subspace acting = whole_H ? Subspace::full(c.dH()) : hopf_subalgebra(c.H, units(k));
            it = m.emplace(k, cocycle_closure(c, units(k), acting)).first;
        }
        return it->second;
    }

    Subspace to_abar(const Subspace& s) const {
        std::vector<Vec> g;
        for (const auto& v : s.basis()) g.push_back(res.abar().project(v));
        return Subspace::span(dAb, g);
    }
    Subspace to_ebar(const Subspace& s) const {
        std::vector<Vec> g;
        for (const auto& v : s.basis()) g.push_back(res.ebar().project(c.embed_a(v)));
        return Subspace::span(dEb, g);
    }

    std::shared_ptr<const SlotBasis> abar_basis(const std::vector<Subspace>& pieces) {
        std::string sig;
        for (const auto& p : pieces) {
            sig += "|";
            for (const auto& v : p.basis())
                for (const auto& [i, x] : v) sig += std::to_string(i) + ":" + x.str() + ",";
        }
        auto it = abar_cache_.find(sig);
        if (it == abar_cache_.end()) {
            std::vector<Subspace> in;
            for (const auto& p : pieces) in.push_back(to_abar(p));
            it = abar_cache_.emplace(sig, std::make_shared<SlotBasis>(adapted_basis(dAb, in))).first;
        }
        return it->second;
    }
    std::shared_ptr<const SlotBasis> ebar_closure_basis(const std::vector<Idx>& hs) {
        auto k = key(hs);
        auto it = ebar_cache_.find(k);
        if (it == ebar_cache_.end()) {
            auto b = std::make_shared<SlotBasis>(adapted_basis(dEb, {to_ebar(f_closure(k, true)), in_ebar_A, in_ebar_H}));
            it = ebar_cache_.emplace(k, b).first;
        }
        return it->second;
    }

    // Lifted hat X_rs vector [E][Hbar^s][Abar^r] from an E element, the
    // factors modulo A and lifted A factors.
    Vec hat_lifted(const Vec& e, const std::vector<Vec>& xs, const Vec& a_tensor_lifted, int r) const {
        return kron(res.normalize(e, xs, false), project_abar_tensor(res, a_tensor_lifted, r), ipow(dAb, r));
    }
    Vec hat_coords(int n, int s, const Vec& lifted) {
        Vec q = res.xhat_space(n - s, s).project(lifted);
        std::size_t off = res.xhat_offsets(n)[s];
        for (auto& [i, x] : q) i += off;
        return q;
    }
    Vec chat_coords(int n, const Vec& e, const std::vector<Vec>& xs) const {
        std::vector<Vec> slots;
        for (const auto& x : xs) slots.push_back(res.ebar().project(x));
        Vec mid = tensor(Shape(std::vector<std::size_t>(n, dEb)), slots);
        return res.chat_space(n).project(kron(e, mid, ipow(dEb, n)));
    }
    std::vector<Vec> hat_blocks(int n, const Vec& q) {
        auto off = res.xhat_offsets(n);
        std::vector<Vec> out(n + 1);
        for (const auto& [i, x] : q) {
            int s = static_cast<int>(std::upper_bound(off.begin(), off.end(), i) - off.begin()) - 1;
            out[s].emplace_back(i - off[s], x);
        }
        return out;
    }

    std::vector<Vec> gammas(const std::vector<Idx>& hs) const {
        std::vector<Vec> out;
        for (Idx h : hs) out.push_back(c.gamma_basis(h));
        return out;
    }
    Vec a_tuple(const std::vector<Idx>& as) const {
        Idx code = 0;
        for (Idx a : as) code = code * c.dA() + a;
        return unit_vec(code);
    }

    // Whether each block l of q (hat X_n) is zero for l > max_block and, for
    // l <= max_block, has some Abar slot in `piece`.
    bool in_hat_family(int n, const Vec& q, int max_block, const Subspace& piece) {
        auto blocks = hat_blocks(n, q);
        auto ab = abar_basis({piece});
        for (int l = 0; l <= n; ++l) {
            if (blocks[l].empty()) continue;
            if (l > max_block) return false;
            std::vector<std::shared_ptr<const SlotBasis>> slots{e_plain};
            for (int k = 0; k < l; ++k) slots.push_back(hbar_plain);
            for (int k = l; k < n; ++k) slots.push_back(ab);
            const std::size_t first_a = 1 + l;
            MonomialFamily fam(res.xhat_space(n - l, l), slots, [first_a](const Categories& cats) {
                for (std::size_t k = first_a; k < cats.size(); ++k)
                    if (cats[k] == 0) return true;
                return false;
            });
            if (!fam.contains(blocks[l])) return false;
        }
        return true;
    }

private:
    std::map<std::vector<Idx>, Subspace> f_, ft_H_, ft_sub_;
    std::map<std::string, std::shared_ptr<const SlotBasis>> abar_cache_;
    std::map<std::vector<Idx>, std::shared_ptr<const SlotBasis>> ebar_cache_;
};

void run_check(CongruenceReport& rep, CongruenceCheck chk, const Sampling& sampling, std::uint64_t stream,
               const std::function<std::optional<std::string>(std::size_t)>& test) {
    for (std::size_t k : sampling.pick(chk.population, stream)) {
        ++chk.checked;
        if (auto w = test(k)) {
            ++chk.failures;
            if (chk.witnesses.size() < kWitnesses) chk.witnesses.push_back(*w);
        }
    }
    rep.checks.push_back(std::move(chk));
}

std::uint64_t stream_id(int statement, int n, int extra = 0) {
    return (static_cast<std::uint64_t>(statement) << 32) | (static_cast<std::uint64_t>(n) << 16) |
           static_cast<std::uint64_t>(extra);
}

// Hat generator (e0; h-slots; a-slots) decoded from a flat index.
struct HatGen {
    Idx e0 = 0;
    std::vector<Idx> hq, aq;  // quotient indices of Hbar and Abar
    Idx lifted = 0;           // index in [E][Hbar^s][Abar^r]
};

HatGen hat_generator(Context& ctx, int r, int s, std::size_t k) {
    Shape mid = ctx.res.mid_shape(r, s);
    HatGen g;
    g.lifted = k;
    g.e0 = k / mid.total();
    auto t = mid.decode(k % mid.total());
    g.hq.assign(t.begin(), t.begin() + s);
    g.aq.assign(t.begin() + s, t.end());
    return g;
}

using LiftedMap = std::function<Vec(int r, int s, Idx e0, const std::vector<Idx>& t)>;

Matrix hat_map(Resolution& res, int n, int target_n, const LiftedMap& fn) {
    auto off = res.xhat_offsets(n);
    auto toff = res.xhat_offsets(target_n);
    Matrix m(toff.back(), off.back());
    for (int s = 0; s <= n; ++s) {
        const int r = n - s;
        const QuotientSpace& q = res.xhat_space(r, s);
        Shape mid = res.mid_shape(r, s);
        for (std::size_t j = 0; j < q.dim(); ++j) {
            Idx idx = q.lift_index(j);
            m.col[off[s] + j] = fn(r, s, idx / mid.total(), mid.decode(idx % mid.total()));
        }
    }
    return m;
}

bool hat_map_respects_relations(Resolution& res, int n, const LiftedMap& fn) {
    for (int s = 0; s <= n; ++s) {
        const int r = n - s;
        Shape mid = res.mid_shape(r, s);
        for (const auto& rel : res.xhat_space(r, s).relations().basis()) {
            Accum acc;
            for (const auto& [idx, x] : rel) acc.add(fn(r, s, idx / mid.total(), mid.decode(idx % mid.total())), x);
            if (!acc.take().empty()) return false;
        }
    }
    return true;
}

LiftedMap eta_fn(Context& ctx, int n) {
    return [&ctx, n](int r, int s, Idx e0, const std::vector<Idx>& t) {
        const CrossedData& c = ctx.c;
        Idx a0 = e0 / c.dH(), h0 = e0 % c.dH();
        std::vector<Idx> hs;
        for (int k = 0; k < s; ++k) hs.push_back(ctx.h_of(t[k]));
        Idx acode = 0;
        for (int k = 0; k < r; ++k) acode = acode * ctx.dAb + t[s + k];
        Vec lifted = kron(kron(ctx.res.normalize(c.gamma_basis(h0), ctx.gammas(hs), false), unit_vec(acode), ipow(ctx.dAb, r)),
                          ctx.res.abar().project(unit_vec(a0)), ctx.dAb);
        return ctx.hat_coords(n + 1, s, lifted);
    };
}

LiftedMap tH_fn(Context& ctx, int n) {
    return [&ctx, n](int r, int s, Idx e0, const std::vector<Idx>& t) -> Vec {
        if (s == 0) return {};
        const CrossedData& c = ctx.c;
        std::vector<Vec> xs{unit_vec(e0)};
        for (int k = 0; k + 1 < s; ++k) xs.push_back(c.gamma_basis(ctx.h_of(t[k])));
        std::vector<Idx> as;
        for (int k = 0; k < r; ++k) as.push_back(ctx.a_of(t[s + k]));
        Accum acc;
        for (const auto& term : c.H.sweedler_basis(ctx.h_of(t[s - 1]), 2)) {
            Vec acted = act_on_tensor(c, ctx.a_tuple(as), r, term.factors[0]);
            acc.add(ctx.hat_lifted(c.gamma_basis(term.factors[1]), xs, acted, r), term.coeff);
        }
        return ctx.hat_coords(n, s, acc.take());
    };
}

LiftedMap tA_fn(Context& ctx, int n) {
    return [&ctx, n](int r, int s, Idx e0, const std::vector<Idx>& t) -> Vec {
        if (r == 0) return {};
        const CrossedData& c = ctx.c;
        Idx a0 = e0 / c.dH(), h0 = e0 % c.dH();
        std::vector<Idx> hs{h0};
        for (int k = 0; k < s; ++k) hs.push_back(ctx.h_of(t[k]));
        Idx rest = 0;
        for (int k = 1; k < r; ++k) rest = rest * ctx.dAb + t[s + k];
        Vec a1 = unit_vec(ctx.a_of(t[s]));
        Accum acc;
        // run over the Sweedler splittings of h0, h_1, ..., h_s
        std::vector<const std::vector<SweedlerTerm>*> sw;
        for (Idx h : hs) sw.push_back(&c.H.sweedler_basis(h, 2));
        std::vector<std::size_t> pos(hs.size(), 0);
        while (true) {
            Scalar coef(1);
            std::vector<Vec> firsts, seconds;
            for (std::size_t k = 0; k < hs.size(); ++k) {
                const auto& term = (*sw[k])[pos[k]];
                coef *= term.coeff;
                firsts.push_back(unit_vec(term.factors[0]));
                seconds.push_back(c.gamma_basis(term.factors[1]));
            }
            Vec e = seconds[0];
            std::vector<Vec> xs(seconds.begin() + 1, seconds.end());
            Vec last = c.A.mul(unit_vec(a0), act_iterated(c, a1, firsts));
            Vec lifted = kron(kron(ctx.res.normalize(e, xs, false), unit_vec(rest), ipow(ctx.dAb, r - 1)),
                              ctx.res.abar().project(last), ctx.dAb);
            acc.add(lifted, coef);
            std::size_t k = 0;
            while (k < hs.size() && ++pos[k] == sw[k]->size()) pos[k++] = 0;
            if (k == hs.size()) break;
        }
        return ctx.hat_coords(n, s, acc.take());
    };
}

LiftedMap prepend_fn(Context& ctx, int n) {
    return [&ctx, n](int r, int s, Idx e0, const std::vector<Idx>& t) {
        const CrossedData& c = ctx.c;
        std::vector<Vec> xs{unit_vec(e0)};
        for (int k = 0; k < s; ++k) xs.push_back(c.gamma_basis(ctx.h_of(t[k])));
        Idx acode = 0;
        for (int k = 0; k < r; ++k) acode = acode * ctx.dAb + t[s + k];
        Vec lifted = kron(ctx.res.normalize(c.E.unit, xs, false), unit_vec(acode), ipow(ctx.dAb, r));
        return ctx.hat_coords(n + 1, s + 1, lifted);
    };
}

// Slot kinds for the canonical-complex generators built from A, the image of
// H and the general elements.
enum class Kind { A, H, G };

struct Word {
    std::vector<Kind> kinds;
    std::vector<Idx> picks;  // Abar / Hbar quotient index, or E basis index for G
};

std::vector<Word> words(const Context& ctx, int n, bool allow_general) {
    std::vector<Word> out{Word{}};
    for (int k = 0; k < n; ++k) {
        std::vector<Word> next;
        for (const auto& w : out) {
            bool has_g = std::count(w.kinds.begin(), w.kinds.end(), Kind::G) > 0;
            auto extend = [&](Kind kind, Idx pick) {
                Word v = w;
                v.kinds.push_back(kind);
                v.picks.push_back(pick);
                next.push_back(std::move(v));
            };
            for (Idx q = 0; q < ctx.dAb; ++q) extend(Kind::A, q);
            for (Idx q = 0; q < ctx.dHb; ++q) extend(Kind::H, q);
            if (allow_general && !has_g)
                for (Idx e : ctx.general) extend(Kind::G, e);
        }
        out.swap(next);
    }
    return out;
}

std::vector<Vec> word_elements(const Context& ctx, const Word& w) {
    std::vector<Vec> xs;
    for (std::size_t k = 0; k < w.kinds.size(); ++k) {
        switch (w.kinds[k]) {
            case Kind::A: xs.push_back(ctx.c.embed_a(unit_vec(ctx.a_of(w.picks[k])))); break;
            case Kind::H: xs.push_back(ctx.c.gamma_basis(ctx.h_of(w.picks[k]))); break;
            case Kind::G: xs.push_back(unit_vec(w.picks[k])); break;
        }
    }
    return xs;
}

bool a_before_h(const Word& w) {
    bool seen_a = false;
    for (Kind k : w.kinds) {
        if (k == Kind::A) seen_a = true;
        if (k == Kind::H && seen_a) return true;
    }
    return false;
}

std::string word_name(const Word& w) {
    std::string s;
    for (std::size_t k = 0; k < w.kinds.size(); ++k)
        s += std::string(w.kinds[k] == Kind::A ? "A" : w.kinds[k] == Kind::H ? "H" : "G") + std::to_string(w.picks[k]);
    return s;
}

std::size_t count_kind(const Word& w, Kind k) { return static_cast<std::size_t>(std::count(w.kinds.begin(), w.kinds.end(), k)); }

// Flat index over a list of radices.
std::vector<Idx> digits(const std::vector<std::size_t>& radices, std::size_t k) { return Shape(radices).decode(k); }
std::size_t product(const std::vector<std::size_t>& radices) { return Shape(radices).total(); }

}  // namespace

Vec star_product(const Resolution& res, const std::vector<Idx>& hs, const std::vector<Vec>& as) {
    const CrossedData& c = res.crossed();
    const std::size_t s = hs.size(), r = as.size(), dEb = res.ebar().dim();
    Shape shape(std::vector<std::size_t>(r + s, dEb));
    if (s == 0 || r == 0) {
        std::vector<Vec> slots;
        for (Idx h : hs) slots.push_back(res.ebar().project(c.gamma_basis(h)));
        for (const auto& a : as) slots.push_back(res.ebar().project(c.embed_a(a)));
        return tensor(shape, slots);
    }
    std::vector<Idx> front(hs.begin(), hs.end() - 1);
    Accum acc;
    for (std::size_t i = 0; i <= r; ++i) {
        std::vector<Vec> tail_slots;
        for (std::size_t k = i; k < r; ++k) tail_slots.push_back(res.ebar().project(c.embed_a(as[k])));
        Vec tail = tensor(Shape(std::vector<std::size_t>(r - i, dEb)), tail_slots);
        for (const auto& term : c.H.sweedler_basis(hs[s - 1], 2)) {
            std::vector<Vec> head(as.begin(), as.begin() + i);
            Vec acted = act_tuple(c, head, unit_vec(term.factors[0]));
            Shape ashape(std::vector<std::size_t>(i, c.dA()));
            Vec mid = res.ebar().project(c.gamma_basis(term.factors[1]));
            for (const auto& [code, x] : acted) {
                std::vector<Vec> simple;
                for (Idx a : ashape.decode(code)) simple.push_back(unit_vec(a));
                Vec inner = star_product(res, front, simple);
                Vec v = kron(kron(inner, mid, dEb), tail, ipow(dEb, static_cast<int>(r - i)));
                acc.add(v, x * term.coeff * sign(static_cast<long>(i)));
            }
        }
    }
    return acc.take();
}

Matrix eta_hat_matrix(Resolution& res, int n) {
    Context ctx(res);
    return hat_map(res, n, n + 1, eta_fn(ctx, n));
}
Matrix tH_hat_matrix(Resolution& res, int n) {
    Context ctx(res);
    return hat_map(res, n, n, tH_fn(ctx, n));
}
Matrix tA_hat_matrix(Resolution& res, int n) {
    Context ctx(res);
    return hat_map(res, n, n, tA_fn(ctx, n));
}
Matrix prepend_one_matrix(Resolution& res, int n) {
    Context ctx(res);
    return hat_map(res, n, n + 1, prepend_fn(ctx, n));
}

bool aux_maps_well_defined(Resolution& res, int n) {
    Context ctx(res);
    for (int m = 0; m <= n; ++m)
        for (const auto& fn : {eta_fn(ctx, m), tH_fn(ctx, m), tA_fn(ctx, m), prepend_fn(ctx, m)})
            if (!hat_map_respects_relations(res, m, fn)) return false;
    return true;
}

bool CongruenceReport::ok() const {
    for (const auto& c : checks)
        if (c.binding && c.failures) return false;
    return true;
}

CongruenceReport hat_congruences(Resolution& res, int bound, const Sampling& sampling) {
    Context ctx(res);
    const CrossedData& c = ctx.c;
    CongruenceReport rep;
    rep.seed = sampling.seed;
    const std::size_t dE = c.dE();

    // phihat against the star product
    for (int n = 0; n <= bound; ++n)
        for (int s = 0; s <= n; ++s) {
            const int r = n - s;
            Matrix phi = res.phihat_matrix(n);
            CongruenceCheck chk{"phihat leading term", n, 0, 0, 0, {}};
            chk.population = dE * res.mid_shape(r, s).total();
            run_check(rep, chk, sampling, stream_id(1, n, s), [&](std::size_t k) -> std::optional<std::string> {
                HatGen g = hat_generator(ctx, r, s, k);
                std::vector<Idx> hs;
                for (Idx q : g.hq) hs.push_back(ctx.h_of(q));
                std::vector<Vec> as;
                for (Idx q : g.aq) as.push_back(unit_vec(ctx.a_of(q)));
                Vec x = ctx.hat_coords(n, s, unit_vec(g.lifted));
                Vec lead = res.chat_space(n).project(kron(unit_vec(g.e0), star_product(res, hs, as), ipow(ctx.dEb, n)));
                Vec diff = sub(phi.apply(x), lead);
                if (diff.empty()) return std::nullopt;
                std::vector<std::shared_ptr<const SlotBasis>> slots{ctx.e_plain};
                for (int k2 = 0; k2 < n; ++k2) slots.push_back(ctx.ebar_closure_basis(hs));
                const std::size_t need_a = static_cast<std::size_t>(n - s + 1);
                MonomialFamily fam(res.chat_space(n), slots, [need_a, s](const Categories& cats) {
                    if (s == 0) return false;
                    std::size_t in_a = 0;
                    bool closure = false;
                    for (std::size_t j = 1; j < cats.size(); ++j) {
                        if (cats[j] == 3) return false;
                        if (cats[j] <= 1) ++in_a;
                        if (cats[j] == 0) closure = true;
                    }
                    return closure && in_a >= need_a;
                });
                if (fam.contains(diff)) return std::nullopt;
                std::vector<Idx> t{g.e0};
                t.insert(t.end(), g.hq.begin(), g.hq.end());
                t.insert(t.end(), g.aq.begin(), g.aq.end());
                return describe("s=" + std::to_string(s), t);
            });
        }

    // omegahat on K-free words with at most one general factor
    for (int n = 0; n + 1 <= res.top() && n <= bound; ++n) {
        Matrix omega = res.omegahat_matrix(n);
        auto ws = words(ctx, n, true);
        CongruenceCheck chk{"omegahat range", n, 0, 0, 0, {}};
        chk.population = ws.size();
        run_check(rep, chk, sampling, stream_id(2, n), [&](std::size_t k) -> std::optional<std::string> {
            const Word& w = ws[k];
            Vec x = ctx.chat_coords(n, c.E.unit, word_elements(ctx, w));
            Vec y = omega.apply(x);
            const std::size_t i = n - count_kind(w, Kind::A);
            std::vector<std::shared_ptr<const SlotBasis>> slots{ctx.e_slot_K};
            for (int j = 0; j <= n; ++j) slots.push_back(ctx.ebar_AH);
            const std::size_t need_a = n + 1 - i;
            MonomialFamily fam(res.chat_space(n + 1), slots, [need_a](const Categories& cats) {
                if (cats[0] != 0) return false;
                std::size_t in_a = 0;
                for (std::size_t j = 1; j < cats.size(); ++j) {
                    if (cats[j] == 2) return false;
                    if (cats[j] == 0) ++in_a;
                }
                return in_a >= need_a;
            });
            if (fam.contains(y)) return std::nullopt;
            return word_name(w);
        });
    }

    for (int n = 1; n <= bound; ++n) {
        Matrix psi = res.psihat_matrix(n);
        // exact value on [e0 (x) g(h_1..h_s) (x) a_{s+1..n}]
        for (int s = 0; s <= n; ++s) {
            const int r = n - s;
            CongruenceCheck chk{"psihat on H-prefixed words", n, 0, 0, 0, {}};
            chk.population = dE * res.mid_shape(r, s).total();
            run_check(rep, chk, sampling, stream_id(3, n, s), [&](std::size_t k) -> std::optional<std::string> {
                HatGen g = hat_generator(ctx, r, s, k);
                std::vector<Vec> xs;
                for (Idx q : g.hq) xs.push_back(c.gamma_basis(ctx.h_of(q)));
                for (Idx q : g.aq) xs.push_back(c.embed_a(unit_vec(ctx.a_of(q))));
                Vec got = psi.apply(ctx.chat_coords(n, unit_vec(g.e0), xs));
                if (got == ctx.hat_coords(n, s, unit_vec(g.lifted))) return std::nullopt;
                std::vector<Idx> t{g.e0};
                t.insert(t.end(), g.hq.begin(), g.hq.end());
                t.insert(t.end(), g.aq.begin(), g.aq.end());
                return describe("s=" + std::to_string(s), t);
            });
        }
        // vanishing when an A factor precedes an H factor, modulo the blocks
        // s <= i - 2 with some a_j in f<h>; the exact vanishing is recorded
        // alongside without gating
        for (bool general : {false, true})
            for (bool exact : {false, true}) {
                std::vector<Word> ws;
                for (auto& w : words(ctx, n, general))
                    if (a_before_h(w) && (count_kind(w, Kind::G) == (general ? 1u : 0u))) ws.push_back(std::move(w));
                std::string name = general ? "psihat kills A-before-H words with one general factor"
                                           : "psihat kills A-before-H words";
                CongruenceCheck chk{exact ? name + " (exactly)" : name, n, 0, 0, 0, {}};
                chk.binding = !exact;
                chk.population = ws.size() * dE;
                run_check(rep, chk, sampling, stream_id(4, n, general * 2 + exact),
                          [&](std::size_t k) -> std::optional<std::string> {
                              const Word& w = ws[k / dE];
                              Vec got = psi.apply(ctx.chat_coords(n, unit_vec(k % dE), word_elements(ctx, w)));
                              if (got.empty()) return std::nullopt;
                              if (!exact) {
                                  std::vector<Idx> hs;
                                  for (std::size_t j = 0; j < w.kinds.size(); ++j) {
                                      if (w.kinds[j] == Kind::H) hs.push_back(ctx.h_of(w.picks[j]));
                                      if (w.kinds[j] == Kind::G) hs.push_back(w.picks[j] % c.dH());
                                  }
                                  const int i = n - static_cast<int>(count_kind(w, Kind::A));
                                  if (ctx.in_hat_family(n, got, i - 2, ctx.f_span(hs))) return std::nullopt;
                              }
                              return "e0=" + std::to_string(k % dE) + " " + word_name(w);
                          });
            }
        // a mixed factor a_i g(h_i) right after the H-prefix
        for (int s = 1; s <= n; ++s) {
            std::vector<std::size_t> rad{dE};
            for (int k = 1; k < s; ++k) rad.push_back(ctx.dHb);
            rad.push_back(c.dA());
            rad.push_back(ctx.dHb);
            for (int k = s; k < n; ++k) rad.push_back(ctx.dAb);
            CongruenceCheck chk{"psihat mixed factor closing the H-prefix", n, 0, 0, 0, {}};
            chk.population = product(rad);
            run_check(rep, chk, sampling, stream_id(5, n, s), [&](std::size_t k) -> std::optional<std::string> {
                auto t = digits(rad, k);
                Idx e0 = t[0];
                std::vector<Idx> hs;
                for (int j = 1; j < s; ++j) hs.push_back(ctx.h_of(t[j]));
                Idx ai = t[s], hi = ctx.h_of(t[s + 1]);
                std::vector<Idx> as;
                for (int j = s + 2; j < static_cast<int>(t.size()); ++j) as.push_back(ctx.a_of(t[j]));
                Vec mixed = c.E.mul(c.embed_a(unit_vec(ai)), c.gamma_basis(hi));
                std::vector<Vec> xs = ctx.gammas(hs);
                xs.push_back(mixed);
                for (Idx a : as) xs.push_back(c.embed_a(unit_vec(a)));
                Vec got = psi.apply(ctx.chat_coords(n, unit_vec(e0), xs));
                std::vector<Vec> pre = ctx.gammas(hs);
                pre.push_back(mixed);
                const int r = n - s;
                Accum expect;
                expect.add(ctx.hat_coords(n, s, ctx.hat_lifted(unit_vec(e0), pre, ctx.a_tuple(as), r)));
                for (const auto& term : c.H.sweedler_basis(hi, 2)) {
                    Vec e = c.E.mul(c.gamma_basis(term.factors[1]), unit_vec(e0));
                    std::vector<Idx> tail_a{ai};
                    Vec acted = kron(unit_vec(ai), act_on_tensor(c, ctx.a_tuple(as), r, term.factors[0]), ipow(c.dA(), r));
                    expect.add(ctx.hat_coords(n, s - 1, ctx.hat_lifted(e, ctx.gammas(hs), acted, r + 1)), term.coeff);
                }
                Vec diff = sub(got, expect.take());
                std::vector<Idx> all_h = hs;
                all_h.push_back(hi);
                if (ctx.in_hat_family(n, diff, s - 2, ctx.f_span(all_h))) return std::nullopt;
                return describe("s=" + std::to_string(s), t);
            });
        }
        // a mixed factor inside the H-prefix
        for (int s = 2; s <= n; ++s)
            for (int j = 1; j < s; ++j) {
                std::vector<std::size_t> rad{dE};
                for (int k = 1; k <= s; ++k) rad.push_back(ctx.dHb);
                rad.push_back(c.dA());
                for (int k = s; k < n; ++k) rad.push_back(ctx.dAb);
                CongruenceCheck chk{"psihat mixed factor inside the H-prefix", n, 0, 0, 0, {}};
                chk.population = product(rad);
                run_check(rep, chk, sampling, stream_id(6, n, s * 16 + j), [&](std::size_t k) -> std::optional<std::string> {
                    auto t = digits(rad, k);
                    std::vector<Idx> hs;
                    for (int m = 1; m <= s; ++m) hs.push_back(ctx.h_of(t[m]));
                    Idx aj = t[s + 1];
                    std::vector<Idx> as;
                    for (int m = s + 2; m < static_cast<int>(t.size()); ++m) as.push_back(ctx.a_of(t[m]));
                    std::vector<Vec> pre = ctx.gammas(hs);
                    pre[j - 1] = c.E.mul(c.embed_a(unit_vec(aj)), pre[j - 1]);
                    std::vector<Vec> xs = pre;
                    for (Idx a : as) xs.push_back(c.embed_a(unit_vec(a)));
                    Vec got = psi.apply(ctx.chat_coords(n, unit_vec(t[0]), xs));
                    Vec expect = ctx.hat_coords(n, s, ctx.hat_lifted(unit_vec(t[0]), pre, ctx.a_tuple(as), n - s));
                    Vec diff = sub(got, expect);
                    if (ctx.in_hat_family(n, diff, s - 2, ctx.f_span(hs))) return std::nullopt;
                    return describe("s=" + std::to_string(s) + " j=" + std::to_string(j), t);
                });
            }
        // a mixed factor after some A factors
        for (int s = 1; s < n; ++s)
            for (int j = s + 1; j <= n; ++j) {
                std::vector<std::size_t> rad{dE};
                for (int k = 1; k < s; ++k) rad.push_back(ctx.dHb);
                for (int k = s; k < j; ++k) rad.push_back(ctx.dAb);
                rad.push_back(c.dA());
                rad.push_back(ctx.dHb);
                for (int k = j; k < n; ++k) rad.push_back(ctx.dAb);
                CongruenceCheck chk{"psihat mixed factor after A factors", n, 0, 0, 0, {}};
                chk.population = product(rad);
                run_check(rep, chk, sampling, stream_id(7, n, s * 16 + j), [&](std::size_t k) -> std::optional<std::string> {
                    auto t = digits(rad, k);
                    std::size_t p = 1;
                    std::vector<Idx> hs;
                    for (int m = 1; m < s; ++m) hs.push_back(ctx.h_of(t[p++]));
                    std::vector<Idx> mid_a;
                    for (int m = s; m < j; ++m) mid_a.push_back(ctx.a_of(t[p++]));
                    Idx aj = t[p++];
                    Idx hj = ctx.h_of(t[p++]);
                    std::vector<Idx> tail;
                    while (p < t.size()) tail.push_back(ctx.a_of(t[p++]));
                    std::vector<Vec> xs = ctx.gammas(hs);
                    for (Idx a : mid_a) xs.push_back(c.embed_a(unit_vec(a)));
                    xs.push_back(c.E.mul(c.embed_a(unit_vec(aj)), c.gamma_basis(hj)));
                    for (Idx a : tail) xs.push_back(c.embed_a(unit_vec(a)));
                    Vec got = psi.apply(ctx.chat_coords(n, unit_vec(t[0]), xs));
                    std::vector<Idx> head = mid_a;
                    head.push_back(aj);
                    const int rt = static_cast<int>(tail.size());
                    const int r = n - s + 1;
                    Accum expect;
                    for (const auto& term : c.H.sweedler_basis(hj, 2)) {
                        Vec e = c.E.mul(c.gamma_basis(term.factors[1]), unit_vec(t[0]));
                        Vec acted = kron(ctx.a_tuple(head), act_on_tensor(c, ctx.a_tuple(tail), rt, term.factors[0]),
                                         ipow(c.dA(), rt));
                        expect.add(ctx.hat_coords(n, s - 1, ctx.hat_lifted(e, ctx.gammas(hs), acted, r)), term.coeff);
                    }
                    Vec diff = sub(got, expect.take());
                    std::vector<Idx> gen = hs;
                    gen.push_back(hj);
                    if (ctx.in_hat_family(n, diff, s - 2, ctx.f_span(gen))) return std::nullopt;
                    return describe("s=" + std::to_string(s) + " j=" + std::to_string(j), t);
                });
            }
    }

    // Dhat against the rotations
    const MixedComplexData& hm = res.hat_mixed();
    for (int n = 0; n <= bound && n + 1 < static_cast<int>(hm.dims.size()); ++n) {
        Matrix D = hm.B[n];
        Matrix eta = hat_map(res, n, n + 1, eta_fn(ctx, n));
        Matrix tA = hat_map(res, n + 1, n + 1, tA_fn(ctx, n + 1));
        Matrix tH = hat_map(res, n, n, tH_fn(ctx, n));
        Matrix pre = hat_map(res, n, n + 1, prepend_fn(ctx, n));
        for (bool in_A : {true, false}) {
            if (!ctx.h_unit) continue;
            for (int s = 0; s <= n; ++s) {
                const int r = n - s;
                std::vector<Idx> e_choices;
                for (Idx a = 0; a < c.dA(); ++a)
                    for (Idx h = 0; h < c.dH(); ++h)
                        if ((h == *ctx.h_unit) == in_A) e_choices.push_back(c.e_index(a, h));
                const std::size_t mids = res.mid_shape(r, s).total();
                CongruenceCheck chk{in_A ? "Dhat with a0 in A" : "Dhat with a0 g(h0) outside A", n, 0, 0, 0, {}};
                chk.population = e_choices.size() * mids;
                run_check(rep, chk, sampling, stream_id(8, n, s * 2 + in_A), [&](std::size_t k) -> std::optional<std::string> {
                    Idx e0 = e_choices[k / mids];
                    HatGen g = hat_generator(ctx, r, s, e0 * mids + k % mids);
                    Vec x = ctx.hat_coords(n, s, unit_vec(g.lifted));
                    Accum expect;
                    Vec rot = eta.apply(x);
                    for (int j = 0; j <= r; ++j) {
                        expect.add(rot, sign(static_cast<long>(j) * r + n));
                        rot = tA.apply(rot);
                    }
                    if (!in_A) {
                        Vec y = x;
                        for (int j = 0; j <= s; ++j) {
                            expect.add(pre.apply(y), sign(static_cast<long>(j) * s));
                            y = tH.apply(y);
                        }
                    }
                    Vec diff = sub(D.apply(x), expect.take());
                    std::vector<Idx> hs;
                    for (Idx q : g.hq) hs.push_back(ctx.h_of(q));
                    if (ctx.in_hat_family(n + 1, diff, in_A ? s - 1 : s, ctx.f_closure(hs, true))) return std::nullopt;
                    std::vector<Idx> t{e0};
                    t.insert(t.end(), g.hq.begin(), g.hq.end());
                    t.insert(t.end(), g.aq.begin(), g.aq.end());
                    return describe("s=" + std::to_string(s), t);
                });
            }
        }
    }
    return rep;
}

CongruenceReport higher_differential_ranges(Resolution& res, int bound, const Sampling& sampling) {
    Context ctx(res);
    CongruenceReport rep;
    rep.seed = sampling.seed;
    for (int n = 2; n <= bound; ++n)
        for (int s = 2; s <= n; ++s) {
            const int r = n - s;
            for (int l = 2; l <= s; ++l) {
                CongruenceCheck chk{"d^" + std::to_string(l) + " range", n, 0, 0, 0, {}};
                chk.population = res.mid_shape(r, s).total();
                const QuotientSpace& dst = res.x_space(r + l - 1, s - l);
                run_check(rep, chk, sampling, stream_id(9, n, s * 16 + l), [&](std::size_t k) -> std::optional<std::string> {
                    Vec y = dst.project(res.d_generator(l, r, s, k));
                    if (y.empty()) return std::nullopt;
                    auto t = res.mid_shape(r, s).decode(k);
                    std::vector<Idx> hs;
                    for (int m = 0; m < s; ++m) hs.push_back(ctx.h_of(t[m]));
                    auto ab = ctx.abar_basis({ctx.f_span(hs), ctx.f_closure(hs, false)});
                    std::vector<std::shared_ptr<const SlotBasis>> slots{ctx.e_plain};
                    for (int m = 0; m < s - l; ++m) slots.push_back(ctx.hbar_plain);
                    for (int m = 0; m < r + l - 1; ++m) slots.push_back(ab);
                    slots.push_back(ctx.e_plain);
                    const std::size_t first = 1 + s - l, last = first + r + l - 1;
                    const std::size_t need = l - 1;
                    MonomialFamily fam(dst, slots, [first, last, need](const Categories& cats) {
                        std::size_t in_f = 0, in_closure = 0;
                        for (std::size_t j = first; j < last; ++j) {
                            if (cats[j] == 0) ++in_f;
                            if (cats[j] <= 1) ++in_closure;
                        }
                        return in_f >= 1 && in_closure >= need;
                    });
                    if (fam.contains(y)) return std::nullopt;
                    return describe("s=" + std::to_string(s), t);
                });
            }
        }
    return rep;
}

}  // namespace hopfcyclic
