#include "hopfcyclic/simplified.hpp"

#include <stdexcept>

#include "hopfcyclic/families.hpp"
#include "map_helpers.hpp"

namespace hopfcyclic {

using detail::block_diagonal;
using detail::lifted_map;
using detail::respects_relations;

namespace {

Vec tensor(const Shape& shape, const std::vector<Vec>& slots) {
    Accum acc;
    add_tensor(acc, shape, slots, Scalar(1));
    return acc.take();
}

// A lifted basis vector of bar X_rs: e in E, Abar and Hbar quotient indices.
struct BarGen {
    Idx e = 0;
    std::vector<Idx> a;
    std::vector<Idx> h;
};

BarGen decode_bar(const Simplified& sx, int r, int s, Idx idx) {
    std::vector<Idx> t = sx.lifted_shape(r, s).decode(idx);
    BarGen g;
    g.e = t[0];
    g.a.assign(t.begin() + 1, t.begin() + 1 + r);
    g.h.assign(t.begin() + 1 + r, t.end());
    return g;
}

std::vector<Vec> lift_as(const Resolution& res, const std::vector<Idx>& aq, std::size_t from, std::size_t to) {
    std::vector<Vec> out;
    for (std::size_t k = from; k < to; ++k) out.push_back(unit_vec(res.abar().lift_index(aq[k])));
    return out;
}

std::vector<Idx> lift_hs(const Resolution& res, const std::vector<Idx>& hq) {
    std::vector<Idx> out;
    for (Idx q : hq) out.push_back(res.hbar().lift_index(q));
    return out;
}

// Abar^{(x) n} coordinates of a tensor of A elements.
Vec abar_of(const Resolution& res, const std::vector<Vec>& as) {
    std::vector<Vec> slots;
    for (const auto& a : as) slots.push_back(res.abar().project(a));
    return tensor(Shape(std::vector<std::size_t>(as.size(), res.abar().dim())), slots);
}

Vec abar_indices(const Resolution& res, const std::vector<Idx>& aq, std::size_t from, std::size_t to) {
    std::vector<Idx> t(aq.begin() + from, aq.begin() + to);
    return unit_vec(Shape(std::vector<std::size_t>(t.size(), res.abar().dim())).encode(t));
}

Vec hbar_indices(const Resolution& res, const std::vector<Idx>& hq, std::size_t from, std::size_t to) {
    std::vector<Idx> t(hq.begin() + from, hq.begin() + to);
    return unit_vec(Shape(std::vector<std::size_t>(t.size(), res.hbar().dim())).encode(t));
}

Vec hbar_of(const Resolution& res, const std::vector<Vec>& hs) {
    std::vector<Vec> slots;
    for (const auto& h : hs) slots.push_back(res.hbar().project(h));
    return tensor(Shape(std::vector<std::size_t>(hs.size(), res.hbar().dim())), slots);
}

// [e (x) abar] (x) hbar in lifted bar coordinates.
Vec bar_vec(const Resolution& res, int r, int s, const Vec& e, const Vec& abar, const Vec& hbar) {
    return kron(kron(e, abar, ipow(res.abar().dim(), r)), hbar, ipow(res.hbar().dim(), s));
}

// (a_1, ..., a_r)^h for an element h of H, in A^{(x) r} coordinates.
Vec act_tuple_tensor(const CrossedData& c, const Vec& t, int r, const Vec& h) {
    Accum acc;
    for (const auto& [k, x] : h) acc.add(act_on_tensor(c, t, r, k), x);
    return acc.take();
}

Vec a_tensor(const CrossedData& c, const std::vector<Vec>& as) {
    return tensor(Shape(std::vector<std::size_t>(as.size(), c.dA())), as);
}

Vec h_product(const HopfData& H, const std::vector<Idx>& hs) {
    Vec p = H.unit();
    for (Idx h : hs) p = H.alg.mul(p, unit_vec(h));
    return p;
}

}  // namespace

void for_each_split(const HopfData& H, const std::vector<Idx>& hs, std::size_t n,
                    const std::function<void(const std::vector<std::vector<Idx>>&, const Scalar&)>& fn) {
    std::vector<std::vector<Idx>> legs(hs.size());
    std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t k, const Scalar& coeff) {
        if (k == hs.size()) {
            fn(legs, coeff);
            return;
        }
        for (const auto& t : H.sweedler_basis(hs[k], n)) {
            legs[k] = t.factors;
            rec(k + 1, coeff * t.coeff);
        }
    };
    rec(0, Scalar(1));
}

Simplified::Simplified(Resolution& res) : res_(&res) {
    const CrossedData& c = res.crossed();
    if (!c.f_invertible) throw Refusal("Assume that the cocycle f is invertible");
    for (Idx h = 0; h < c.dH(); ++h) gamma_inv_.push_back(c.gamma_inverse(unit_vec(h, c.one())));
}

Vec Simplified::gamma_inv(Idx h) const { return gamma_inv_[h]; }

Shape Simplified::lifted_shape(int r, int s) const {
    std::vector<std::size_t> dims{crossed().dE()};
    dims.insert(dims.end(), r, res_->abar().dim());
    dims.insert(dims.end(), s, res_->hbar().dim());
    return Shape(dims);
}

const QuotientSpace& Simplified::space(int r, int s) {
    auto key = std::make_pair(r, s);
    auto it = spaces_.find(key);
    if (it != spaces_.end()) return it->second;
    const CrossedData& c = crossed();
    std::vector<Vec> kb = c.K.basis();
    std::vector<KAction> factors;
    KAction fe;
    fe.dim = c.dE();
    fe.left = [&c, kb](std::size_t lam, Idx m) { return c.E.mul(c.embed_a(kb[lam]), unit_vec(m)); };
    fe.right = [&c, kb](std::size_t lam, Idx m) { return c.E.mul(unit_vec(m), c.embed_a(kb[lam])); };
    factors.push_back(fe);
    for (int i = 0; i < r; ++i) factors.push_back(quotient_action(c.A, c.K, res_->abar()));
    QuotientSpace natural = relative_tensor(factors, kb.size(), true, c.K.is_scalars(c.A));
    const std::size_t mh = ipow(res_->hbar().dim(), s);
    std::vector<Vec> rels;
    for (const auto& rel : natural.relations().basis())
        for (Idx j = 0; j < mh; ++j) rels.push_back(kron(rel, unit_vec(j), mh));
    const std::size_t ambient = natural.ambient() * mh;
    return spaces_.emplace(key, QuotientSpace(ambient, Subspace::span(ambient, rels))).first->second;
}

std::vector<std::size_t> Simplified::offsets(int n) {
    std::vector<std::size_t> off{0};
    for (int s = 0; s <= n; ++s) off.push_back(off.back() + space(n - s, s).dim());
    return off;
}

Vec Simplified::theta_lifted(int r, int s, Idx hat_index) const {
    const CrossedData& c = crossed();
    const Resolution& res = *res_;
    const std::size_t ma = ipow(res.abar().dim(), r), mh = ipow(res.hbar().dim(), s);
    const Idx aidx = hat_index % ma;
    const Idx hidx = (hat_index / ma) % mh;
    const Idx e = hat_index / ma / mh;
    std::vector<Idx> hq = Shape(std::vector<std::size_t>(s, res.hbar().dim())).decode(hidx);
    Accum acc;
    for_each_split(c.H, lift_hs(res, hq), 2, [&](const std::vector<std::vector<Idx>>& legs, const Scalar& k) {
        Vec ev = unit_vec(e);
        std::vector<Vec> tail;
        for (const auto& l : legs) {
            ev = c.E.mul(ev, c.gamma_basis(l[0]));
            tail.push_back(unit_vec(l[1]));
        }
        acc.add(bar_vec(res, r, s, ev, unit_vec(aidx), hbar_of(res, tail)), k * sign(r * s));
    });
    return acc.take();
}

Vec Simplified::theta_inverse_lifted(int r, int s, Idx bar_index) const {
    const CrossedData& c = crossed();
    const Resolution& res = *res_;
    BarGen g = decode_bar(*this, r, s, bar_index);
    const std::size_t ma = ipow(res.abar().dim(), r);
    Vec aidx = abar_indices(res, g.a, 0, g.a.size());
    Accum acc;
    for_each_split(c.H, lift_hs(res, g.h), 2, [&](const std::vector<std::vector<Idx>>& legs, const Scalar& k) {
        Vec ev = unit_vec(g.e);
        for (int i = s - 1; i >= 0; --i) ev = c.E.mul(ev, gamma_inv_[legs[i][0]]);
        std::vector<Vec> xs;
        for (const auto& l : legs) xs.push_back(c.gamma_basis(l[1]));
        acc.add(kron(res.normalize(ev, xs, false), aidx, ma), k * sign(r * s));
    });
    return acc.take();
}

Matrix Simplified::theta(int r, int s) {
    auto key = std::make_pair(r, s);
    auto it = theta_.find(key);
    if (it != theta_.end()) return it->second;
    Matrix m = lifted_map(res_->xhat_space(r, s), space(r, s), [&](Idx i) { return theta_lifted(r, s, i); });
    return theta_.emplace(key, m).first->second;
}

Matrix Simplified::theta_inverse(int r, int s) {
    auto key = std::make_pair(r, s);
    auto it = theta_inv_.find(key);
    if (it != theta_inv_.end()) return it->second;
    Matrix m = lifted_map(space(r, s), res_->xhat_space(r, s), [&](Idx i) { return theta_inverse_lifted(r, s, i); });
    return theta_inv_.emplace(key, m).first->second;
}

bool Simplified::theta_well_defined(int r, int s) {
    return respects_relations(res_->xhat_space(r, s), space(r, s), [&](Idx i) { return theta_lifted(r, s, i); }) &&
           respects_relations(space(r, s), res_->xhat_space(r, s), [&](Idx i) { return theta_inverse_lifted(r, s, i); });
}

Matrix Simplified::theta_total(int n) {
    std::vector<Matrix> blocks;
    for (int s = 0; s <= n; ++s) blocks.push_back(theta(n - s, s));
    return block_diagonal(blocks);
}

Matrix Simplified::theta_inverse_total(int n) {
    std::vector<Matrix> blocks;
    for (int s = 0; s <= n; ++s) blocks.push_back(theta_inverse(n - s, s));
    return block_diagonal(blocks);
}

Matrix Simplified::d(int l, int r, int s) {
    if (l > s) throw std::invalid_argument("dbar^l needs l <= s");
    if (l == 0 && r == 0) throw std::invalid_argument("dbar^0 needs r >= 1");
    return compose(theta(r + l - 1, s - l), compose(res_->dhat_component(l, r, s), theta_inverse(r, s)));
}

Matrix Simplified::d_total(int n) {
    if (n == 0) return Matrix(0, offsets(0).back());
    return compose(theta_total(n - 1), compose(res_->dhat_matrix(n), theta_inverse_total(n)));
}

Matrix Simplified::D(int n) {
    auto it = hat_connes_.find(n);
    if (it == hat_connes_.end()) it = hat_connes_.emplace(n, res_->hat_connes(n)).first;
    return compose(theta_total(n + 1), compose(it->second, theta_inverse_total(n)));
}

MixedComplexData Simplified::mixed() {
    MixedComplexData m;
    for (int n = 0; n <= top(); ++n) {
        m.dims.push_back(offsets(n).back());
        m.b.push_back(d_total(n));
    }
    for (int n = 0; n < top(); ++n) m.B.push_back(D(n));
    return m;
}

Vec closed_dbar(const Simplified& sx, int l, int r, int s, Idx lifted) {
    const CrossedData& c = sx.crossed();
    const Resolution& res = sx.hat();
    BarGen g = decode_bar(sx, r, s, lifted);
    const Vec e0 = unit_vec(g.e);
    const std::vector<Idx> hs = lift_hs(res, g.h);
    Accum acc;
    if (l == 0) {
        if (r < 1) throw std::invalid_argument("dbar^0 needs r >= 1");
        std::vector<Vec> as = lift_as(res, g.a, 0, r);
        Vec hb = hbar_indices(res, g.h, 0, s);
        acc.add(bar_vec(res, r - 1, s, c.E.mul(e0, c.embed_a(as[0])), abar_indices(res, g.a, 1, r), hb));
        for (int i = 1; i < r; ++i) {
            std::vector<Vec> t(as.begin(), as.end());
            t[i - 1] = c.A.mul(as[i - 1], as[i]);
            t.erase(t.begin() + i);
            acc.add(bar_vec(res, r - 1, s, e0, abar_of(res, t), hb), sign(i));
        }
        acc.add(bar_vec(res, r - 1, s, c.E.mul(c.embed_a(as[r - 1]), e0), abar_indices(res, g.a, 0, r - 1), hb),
                sign(r));
        return acc.take();
    }
    if (l == 1) {
        if (s < 1) throw std::invalid_argument("dbar^1 needs s >= 1");
        Vec at = a_tensor(c, lift_as(res, g.a, 0, r));
        Vec ab = abar_indices(res, g.a, 0, r);
        Vec front = hbar_indices(res, g.h, 0, s - 1);
        for (const auto& t : c.H.sweedler_basis(hs[s - 1], 3)) {
            Vec ev = c.E.mul(c.E.mul(c.gamma_basis(t.factors[2]), e0), sx.gamma_inv(t.factors[0]));
            Vec acted = project_abar_tensor(res, act_on_tensor(c, at, r, t.factors[1]), r);
            acc.add(bar_vec(res, r, s - 1, ev, acted, front), t.coeff * sign(r + s));
        }
        for (int i = 1; i < s; ++i) {
            std::vector<Vec> hv;
            for (int k = 0; k < s; ++k) hv.push_back(unit_vec(hs[k]));
            hv[i - 1] = c.H.alg.mul(hv[i - 1], hv[i]);
            hv.erase(hv.begin() + i);
            acc.add(bar_vec(res, r, s - 1, e0, ab, hbar_of(res, hv)), sign(r + i));
        }
        acc.add(bar_vec(res, r, s - 1, e0, ab, hbar_indices(res, g.h, 1, s)), c.H.eps(hs[0]) * sign(r));
        return acc.take();
    }
    if (l == 2) {
        if (s < 2) throw std::invalid_argument("dbar^2 needs s >= 2");
        std::vector<Vec> as = lift_as(res, g.a, 0, r);
        Vec front = hbar_indices(res, g.h, 0, s - 2);
        for_each_split(c.H, {hs[s - 2], hs[s - 1]}, 5, [&](const std::vector<std::vector<Idx>>& legs, const Scalar& k) {
            const auto& u = legs[0];
            const auto& v = legs[1];
            Vec ev = c.E.mul(c.gamma(c.H.alg.prod(u[4], v[4])), e0);
            ev = c.E.mul(c.E.mul(ev, sx.gamma_inv(v[0])), sx.gamma_inv(u[0]));
            Vec uv3 = c.H.alg.prod(u[3], v[3]);
            for (int i = 0; i <= r; ++i) {
                std::vector<Vec> head(as.begin(), as.begin() + i), tail(as.begin() + i, as.end());
                Vec first = act_on_tensor(c, act_on_tensor(c, a_tensor(c, head), i, v[1]), i, u[1]);
                Vec rest = act_tuple_tensor(c, a_tensor(c, tail), r - i, uv3);
                Vec tuple = kron(kron(first, c.f(u[2], v[2]), c.dA()), rest, ipow(c.dA(), r - i));
                acc.add(bar_vec(res, r + 1, s - 2, ev, project_abar_tensor(res, tuple, r + 1), front), k * sign(i - 1));
            }
        });
        return acc.take();
    }
    throw std::invalid_argument("closed dbar is known for l <= 2");
}

std::vector<ClosedFormCheck> compare_bar_closed_forms(Simplified& sx, int bound) {
    std::vector<ClosedFormCheck> out;
    for (int n = 0; n <= bound; ++n)
        for (int s = 0; s <= n; ++s) {
            const int r = n - s;
            for (int l = 0; l <= std::min(2, s); ++l) {
                if (l == 0 && r == 0) continue;
                ClosedFormCheck chk{"dbar" + std::to_string(l), r, s, 0, 0};
                const QuotientSpace& src = sx.space(r, s);
                const QuotientSpace& dst = sx.space(r + l - 1, s - l);
                Matrix conj = sx.d(l, r, s);
                for (Idx j = 0; j < src.dim(); ++j) {
                    ++chk.generators;
                    if (dst.project(closed_dbar(sx, l, r, s, src.lift_index(j))) != conj.col[j]) ++chk.mismatches;
                }
                out.push_back(chk);
            }
        }
    return out;
}

Vec u_in_E(const Simplified& sx, const std::vector<Idx>& hs) {
    const CrossedData& c = sx.crossed();
    const std::size_t i = hs.size() - 1;
    Accum acc;
    for_each_split(c.H, hs, 2, [&](const std::vector<std::vector<Idx>>& legs, const Scalar& k) {
        Vec ev = c.gamma_basis(legs[0][0]);
        for (std::size_t j = i; j >= 1; --j) ev = c.E.mul(ev, sx.gamma_inv(legs[j][1]));
        std::vector<Idx> firsts;
        for (std::size_t j = 1; j <= i; ++j) firsts.push_back(legs[j][0]);
        Vec tail = c.H.alg.mul(unit_vec(legs[0][1]), c.H.antipode.apply(h_product(c.H, firsts)));
        acc.add(c.E.mul(ev, c.gamma_inverse(tail)), k);
    });
    return acc.take();
}

namespace {

// The reading of U with gamma^-1(h0(2)) and gamma(S(h_1(1) ... h_i(1))) as separate factors.
Vec u_literal(const Simplified& sx, const std::vector<Idx>& hs) {
    const CrossedData& c = sx.crossed();
    const std::size_t i = hs.size() - 1;
    Accum acc;
    for_each_split(c.H, hs, 2, [&](const std::vector<std::vector<Idx>>& legs, const Scalar& k) {
        Vec ev = c.gamma_basis(legs[0][0]);
        for (std::size_t j = i; j >= 1; --j) ev = c.E.mul(ev, sx.gamma_inv(legs[j][1]));
        ev = c.E.mul(ev, sx.gamma_inv(legs[0][1]));
        std::vector<Idx> firsts;
        for (std::size_t j = 1; j <= i; ++j) firsts.push_back(legs[j][0]);
        acc.add(c.E.mul(ev, c.gamma(c.H.antipode.apply(h_product(c.H, firsts)))), k);
    });
    return acc.take();
}

// nu = id (x) Delta on E, in [E][H] coordinates.
Vec coaction(const CrossedData& c, const Vec& e) {
    Accum acc;
    for (const auto& [idx, x] : e) {
        Idx a = idx / c.dH(), h = idx % c.dH();
        for (const auto& t : c.H.sweedler_basis(h, 2)) acc.add(c.e_index(a, t.factors[0]) * c.dH() + t.factors[1], x * t.coeff);
    }
    return acc.take();
}

bool coinvariant(const CrossedData& c, const Vec& e) {
    return coaction(c, e) == kron(e, c.H.unit(), c.dH());
}

// (id (x) eps)(e), the A-part of a coinvariant element.
Vec a_part(const CrossedData& c, const Vec& e) {
    Accum acc;
    for (const auto& [idx, x] : e) acc.add(idx / c.dH(), x * c.H.eps(idx % c.dH()));
    return acc.take();
}

// a0 gamma(h0) gamma^-1(h_i) ... gamma^-1(h_1) == a0 U(h0(1), h(2)) gamma(h0(2) S(h(1))) with U given by `u`.
bool factorizes(const Simplified& sx, const std::vector<Idx>& hs, const std::function<Vec(const std::vector<Idx>&)>& u) {
    const CrossedData& c = sx.crossed();
    const std::size_t i = hs.size() - 1;
    Vec lhs = c.gamma_basis(hs[0]);
    for (std::size_t j = i; j >= 1; --j) lhs = c.E.mul(lhs, sx.gamma_inv(hs[j]));
    Accum rhs;
    for_each_split(c.H, hs, 2, [&](const std::vector<std::vector<Idx>>& legs, const Scalar& k) {
        std::vector<Idx> args{legs[0][0]}, firsts;
        for (std::size_t j = 1; j <= i; ++j) {
            args.push_back(legs[j][1]);
            firsts.push_back(legs[j][0]);
        }
        Vec tail = c.H.alg.mul(unit_vec(legs[0][1]), c.H.antipode.apply(h_product(c.H, firsts)));
        rhs.add(c.E.mul(u(args), c.gamma(tail)), k);
    });
    return rhs.take() == lhs;
}

}  // namespace

Vec u_map(const Simplified& sx, const std::vector<Idx>& hs) {
    Vec e = u_in_E(sx, hs);
    if (!coinvariant(sx.crossed(), e)) throw std::logic_error("U is not coinvariant");
    return a_part(sx.crossed(), e);
}

UTData ut_maps(const Simplified& sx, int arity) {
    const CrossedData& c = sx.crossed();
    if (!c.antipode_invertible) throw Refusal("Assume that the antipode S of H is invertible");
    UTData d;
    d.arity = arity;
    d.zeta = Matrix(c.dE(), c.dH());
    bool ok = true;
    for (Idx h = 0; h < c.dH(); ++h) {
        d.zeta.col[h] = c.gamma_inverse(c.antipode_inverse.col[h]);
    }
    for (Idx h = 0; h < c.dH(); ++h) ok = ok && d.zeta.apply(c.H.antipode.col[h]) == sx.gamma_inv(h);
    d.zeta_ok = ok;
    Shape sh(std::vector<std::size_t>(arity + 1, c.dH()));
    for (Idx code = 0; code < sh.total(); ++code) {
        std::vector<Idx> hs = sh.decode(code);
        ++d.tuples;
        if (coinvariant(c, u_in_E(sx, hs))) ++d.coinvariant;
        if (factorizes(sx, hs, [&](const std::vector<Idx>& t) { return u_in_E(sx, t); })) ++d.factorizes;
        if (coinvariant(c, u_literal(sx, hs))) ++d.literal_coinvariant;
        if (factorizes(sx, hs, [&](const std::vector<Idx>& t) { return u_literal(sx, t); })) ++d.literal_factorizes;
    }
    return d;
}

namespace {

Vec eta_lifted(const Simplified& sx, int r, int s, Idx idx) {
    const CrossedData& c = sx.crossed();
    const Resolution& res = sx.hat();
    BarGen g = decode_bar(sx, r, s, idx);
    const Idx a0 = g.e / c.dH(), h0 = g.e % c.dH();
    std::vector<Idx> hs{h0};
    for (Idx h : lift_hs(res, g.h)) hs.push_back(h);
    Vec ab = abar_indices(res, g.a, 0, r);
    Accum acc;
    for_each_split(c.H, hs, 2, [&](const std::vector<std::vector<Idx>>& legs, const Scalar& k) {
        std::vector<Idx> firsts;
        std::vector<Vec> slots{Vec{}};
        for (int j = 1; j <= s; ++j) {
            firsts.push_back(legs[j][0]);
            slots.push_back(unit_vec(legs[j][1]));
        }
        slots[0] = c.H.alg.mul(unit_vec(legs[0][1]), c.H.antipode.apply(h_product(c.H, firsts)));
        acc.add(bar_vec(res, r, s + 1, unit_vec(c.e_index(a0, legs[0][0])), ab, hbar_of(res, slots)), k);
    });
    return acc.take();
}

Vec tH_lifted(const Simplified& sx, int r, int s, Idx idx) {
    const CrossedData& c = sx.crossed();
    const Resolution& res = sx.hat();
    BarGen g = decode_bar(sx, r, s, idx);
    Vec at = a_tensor(c, lift_as(res, g.a, 0, r));
    Vec rest = hbar_indices(res, g.h, 0, s - 1);
    Accum acc;
    for (const auto& t : c.H.sweedler_basis(res.hbar().lift_index(g.h[s - 1]), 4)) {
        Vec ev = c.E.mul(c.E.mul(c.gamma_basis(t.factors[2]), unit_vec(g.e)), sx.gamma_inv(t.factors[0]));
        Vec acted = project_abar_tensor(res, act_on_tensor(c, at, r, t.factors[1]), r);
        Vec hb = kron(res.hbar().project(unit_vec(t.factors[3])), rest, ipow(res.hbar().dim(), s - 1));
        acc.add(bar_vec(res, r, s, ev, acted, hb), t.coeff);
    }
    return acc.take();
}

}  // namespace

Matrix eta_bar(Simplified& sx, int r, int s) {
    return lifted_map(sx.space(r, s), sx.space(r, s + 1), [&](Idx i) { return eta_lifted(sx, r, s, i); });
}

Matrix tH_bar(Simplified& sx, int r, int s) {
    if (s < 1) throw std::invalid_argument("t_H needs s >= 1");
    return lifted_map(sx.space(r, s), sx.space(r, s), [&](Idx i) { return tH_lifted(sx, r, s, i); });
}

bool bar_aux_maps_well_defined(Simplified& sx, int n) {
    for (int m = 0; m <= n; ++m)
        for (int s = 0; s <= m; ++s) {
            const int r = m - s;
            if (!respects_relations(sx.space(r, s), sx.space(r, s + 1), [&](Idx i) { return eta_lifted(sx, r, s, i); }))
                return false;
            if (s >= 1 &&
                !respects_relations(sx.space(r, s), sx.space(r, s), [&](Idx i) { return tH_lifted(sx, r, s, i); }))
                return false;
        }
    return true;
}

namespace {

// The second sum of the closed formula for Dbar on a lifted generator of bar
// X_{r,i}, in lifted bar X_{r+1,i} coordinates.
Vec rotation_terms(const Simplified& sx, int r, int i, const BarGen& g) {
    const CrossedData& c = sx.crossed();
    const Resolution& res = sx.hat();
    const Idx a0 = g.e / c.dH(), h0 = g.e % c.dH();
    const std::vector<Idx> hs = lift_hs(res, g.h);
    const std::vector<Vec> as = lift_as(res, g.a, 0, r);
    Accum acc;
    for (const auto& t0 : c.H.sweedler_basis(h0, 3))
        for_each_split(c.H, hs, 6, [&](const std::vector<std::vector<Idx>>& legs, const Scalar& k) {
            std::vector<Idx> l1, l2, uargs{t0.factors[0]};
            std::vector<Vec> outer;
            for (const auto& l : legs) {
                l1.push_back(l[0]);
                l2.push_back(l[1]);
                uargs.push_back(l[2]);
                outer.push_back(unit_vec(l[5]));
            }
            Vec ev = c.gamma(c.H.alg.mul(unit_vec(t0.factors[2]), c.H.antipode.apply(h_product(c.H, l1))));
            for (const auto& l : legs) ev = c.E.mul(ev, c.gamma_basis(l[4]));
            Vec twist = c.H.alg.mul(unit_vec(t0.factors[1]), c.H.antipode.apply(h_product(c.H, l2)));
            Vec au = c.A.mul(unit_vec(a0), u_map(sx, uargs));
            Vec hb = hbar_of(res, outer);
            for (int j = 0; j <= r; ++j) {
                std::vector<Vec> head(as.begin(), as.begin() + j), tail(as.begin() + j, as.end());
                Vec acted = a_tensor(c, head);
                for (int m = i - 1; m >= 0; --m) acted = act_on_tensor(c, acted, j, legs[m][3]);
                acted = act_tuple_tensor(c, acted, j, twist);
                Vec tuple = kron(kron(a_tensor(c, tail), au, c.dA()), acted, ipow(c.dA(), j));
                acc.add(bar_vec(res, r + 1, i, ev, project_abar_tensor(res, tuple, r + 1), hb),
                        k * t0.coeff * sign((j + 1) * r));
            }
        });
    return acc.take();
}

Vec place(const std::vector<std::size_t>& off, int s, const Vec& v) {
    Vec out;
    for (const auto& [i, x] : v) out.emplace_back(i + off[s], x);
    return out;
}

Vec block(const std::vector<std::size_t>& off, int s, const Vec& v) {
    Vec out;
    for (const auto& [i, x] : v)
        if (i >= off[s] && i < off[s + 1]) out.emplace_back(i - off[s], x);
    return out;
}

std::string describe(const std::vector<Idx>& t) {
    std::string out = "(";
    for (std::size_t k = 0; k < t.size(); ++k) out += (k ? "," : "") + std::to_string(t[k]);
    return out + ")";
}

}  // namespace

Matrix eta_sum(Simplified& sx, int r, int s) {
    Matrix eta = eta_bar(sx, r, s);
    Matrix tH = tH_bar(sx, r, s + 1);
    Matrix out = eta, power = eta;
    out = sign(r) * out;
    for (int j = 1; j <= s; ++j) {
        power = compose(tH, power);
        out = out + sign(j * s + r) * power;
    }
    return out;
}

Matrix rotation_matrix(Simplified& sx, int r, int s) {
    return lifted_map(sx.space(r, s), sx.space(r + 1, s),
                      [&](Idx i) { return rotation_terms(sx, r, s, decode_bar(sx, r, s, i)); });
}

CongruenceReport bar_congruence_check(Simplified& sx, int bound, const Sampling& sampling) {
    const CrossedData& c = sx.crossed();
    Resolution& res = sx.hat();
    if (bound + 1 > res.top()) throw std::invalid_argument("bar_congruence_check: resolution degree bound too small");
    CongruenceReport rep;
    rep.seed = sampling.seed;
    const Subspace all_h = Subspace::full(c.dH());
    std::map<std::vector<Idx>, std::shared_ptr<const SlotBasis>> abar_bases;
    auto abar_basis = [&](const std::vector<Idx>& hs) {
        auto& slot = abar_bases[hs];
        if (!slot) {
            std::vector<Vec> hv;
            for (Idx h : hs) hv.push_back(unit_vec(h));
            Subspace closure = cocycle_closure(c, hv, all_h);
            std::vector<Vec> proj;
            for (const auto& v : closure.basis()) proj.push_back(res.abar().project(v));
            slot = std::make_shared<const SlotBasis>(
                adapted_basis(res.abar().dim(), {Subspace::span(res.abar().dim(), proj)}));
        }
        return slot;
    };
    auto e_slot = std::make_shared<const SlotBasis>(single_category(c.dE()));
    auto h_slot = std::make_shared<const SlotBasis>(single_category(res.hbar().dim()));

    for (int n = 0; n <= bound; ++n) {
        Matrix Dn = sx.D(n);
        std::vector<std::size_t> off_n = sx.offsets(n), off_up = sx.offsets(n + 1);
        for (int i = 0; i <= n; ++i) {
            const int r = n - i;
            CongruenceCheck chk{"Dbar closed formula", n, 0, 0, 0, {}};
            const Shape shape = sx.lifted_shape(r, i);
            chk.population = shape.total();
            const QuotientSpace& src = sx.space(r, i);
            Matrix eta = eta_bar(sx, r, i);
            Matrix tH = tH_bar(sx, r, i + 1);
            for (std::size_t k : sampling.pick(shape.total(), static_cast<std::uint64_t>(1000 + 64 * n + i))) {
                ++chk.checked;
                BarGen g = decode_bar(sx, r, i, k);
                Vec x = src.project(unit_vec(k));
                Vec dx = Dn.apply(place(off_n, i, x));
                Accum expect;
                Vec y = eta.apply(x);
                for (int j = 0; j <= i; ++j) {
                    expect.add(place(off_up, i + 1, y), sign(j * i + n - i));
                    y = tH.apply(y);
                }
                expect.add(place(off_up, i, sx.space(r + 1, i).project(rotation_terms(sx, r, i, g))));
                Vec diff = sub(dx, expect.take());
                bool good = block(off_up, i + 1, diff).empty();
                std::vector<Idx> hs = lift_hs(res, g.h);
                for (int s = 0; good && s <= i; ++s) {
                    Vec part = block(off_up, s, diff);
                    if (part.empty()) continue;
                    const int rr = n + 1 - s;
                    std::vector<std::shared_ptr<const SlotBasis>> slots{e_slot};
                    for (int m = 0; m < rr; ++m) slots.push_back(abar_basis(hs));
                    for (int m = 0; m < s; ++m) slots.push_back(h_slot);
                    MonomialFamily fam(sx.space(rr, s), slots, [rr](const Categories& cat) {
                        for (int m = 1; m <= rr; ++m)
                            if (cat[m] == 0) return true;
                        return false;
                    });
                    good = fam.contains(part);
                }
                if (!good) {
                    ++chk.failures;
                    if (chk.witnesses.size() < 5) chk.witnesses.push_back("s=" + std::to_string(i) + " " + describe(shape.decode(k)));
                }
            }
            rep.checks.push_back(chk);
        }
    }
    return rep;
}

}  // namespace hopfcyclic
