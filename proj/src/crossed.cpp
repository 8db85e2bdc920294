#include "hopfcyclic/crossed.hpp"

namespace hopfcyclic {

Scalar CrossedData::one() const {
    std::uint32_t p = A.unit.empty() ? 0 : A.unit.front().second.prime();
    return p == 0 ? Scalar(1) : Scalar::residue(1, p);
}

Vec CrossedData::act(Idx h, const Vec& a) const {
    Accum acc;
    for (const auto& [i, x] : a) acc.add(action[h * dA() + i], x);
    return acc.take();
}

Vec CrossedData::act(const Vec& h, const Vec& a) const {
    Accum acc;
    for (const auto& [j, y] : h) acc.add(act(j, a), y);
    return acc.take();
}

Vec CrossedData::f(const Vec& h, const Vec& l) const {
    Accum acc;
    for (const auto& [i, x] : h)
        for (const auto& [j, y] : l) acc.add(f(i, j), x * y);
    return acc.take();
}

Vec CrossedData::f_inv(const Vec& h, const Vec& l) const {
    Accum acc;
    for (const auto& [i, x] : h)
        for (const auto& [j, y] : l) acc.add(cocycle_inverse[i * dH() + j], x * y);
    return acc.take();
}

Vec CrossedData::embed_a(const Vec& a) const {
    Accum acc;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : H.alg.unit) acc.add(e_index(i, j), x * y);
    return acc.take();
}

Vec CrossedData::gamma(const Vec& h) const {
    Accum acc;
    for (const auto& [i, x] : A.unit)
        for (const auto& [j, y] : h) acc.add(e_index(i, j), x * y);
    return acc.take();
}

Vec CrossedData::gamma_basis(Idx h) const { return gamma(unit_vec(h, one())); }

Vec CrossedData::gamma_inverse(const Vec& h) const {
    if (!f_invertible) throw std::domain_error("gamma inverse needs an invertible cocycle");
    Accum acc;
    for (const auto& [hi, x] : h)
        for (const auto& t : H.sweedler_basis(hi, 3)) {
            Vec s1 = H.antipode.col[t.factors[0]];
            Vec s2 = H.antipode.col[t.factors[1]];
            Vec coef = f_inv(s2, unit_vec(t.factors[2], one()));
            for (const auto& [a, y] : coef)
                for (const auto& [b, z] : s1) acc.add(e_index(a, b), x * t.coeff * y * z);
        }
    return acc.take();
}

namespace {

AlgebraData crossed_table(const CrossedData& c) {
    const std::size_t dA = c.dA(), dH = c.dH(), dE = dA * dH;
    std::vector<Vec> table(dE * dE);
    for (Idx a = 0; a < dA; ++a)
        for (Idx h = 0; h < dH; ++h)
            for (Idx b = 0; b < dA; ++b)
                for (Idx l = 0; l < dH; ++l) {
                    Accum acc;
                    for (const auto& th : c.H.sweedler_basis(h, 3)) {
                        Vec bh = c.act(th.factors[0], unit_vec(b, c.one()));
                        Vec abh = c.A.mul(unit_vec(a, c.one()), bh);
                        for (const auto& tl : c.H.sweedler_basis(l, 2)) {
                            Vec coef = c.A.mul(abh, c.f(th.factors[1], tl.factors[0]));
                            if (coef.empty()) continue;
                            const Vec& hl = c.H.alg.prod(th.factors[2], tl.factors[1]);
                            for (const auto& [i, x] : coef)
                                for (const auto& [j, y] : hl) acc.add(i * dH + j, th.coeff * tl.coeff * x * y);
                        }
                    }
                    table[(a * dH + h) * dE + (b * dH + l)] = acc.take();
                }
    std::vector<std::string> labels;
    for (Idx a = 0; a < dA; ++a)
        for (Idx h = 0; h < dH; ++h) labels.push_back(c.A.label(a) + "#" + c.H.alg.label(h));
    Accum unit;
    for (const auto& [i, x] : c.A.unit)
        for (const auto& [j, y] : c.H.alg.unit) unit.add(i * dH + j, x * y);
    return make_algebra(dE, std::move(table), unit.take(), labels);
}

}  // namespace

Validation check_weak_action(const CrossedData& c) {
    Validation v;
    const std::size_t dA = c.dA(), dH = c.dH();
    for (Idx h = 0; h < dH; ++h) {
        const auto& sw = c.H.sweedler_basis(h, 2);
        for (Idx a = 0; a < dA; ++a)
            for (Idx b = 0; b < dA; ++b) {
                Vec lhs = c.act(h, c.A.prod(a, b));
                Accum rhs;
                for (const auto& t : sw)
                    rhs.add(c.A.mul(c.act(t.factors[0], unit_vec(a)), c.act(t.factors[1], unit_vec(b))), t.coeff);
                if (!vec_is_zero(sub(lhs, rhs.take())))
                    v.fail("condition (1) fails for h=" + c.H.alg.label(h) + ", a=" + c.A.label(a) + ", b=" + c.A.label(b));
            }
        if (!vec_is_zero(sub(c.act(h, c.A.unit), scaled(c.A.unit, c.H.eps(h)))))
            v.fail("condition (2) fails for h=" + c.H.alg.label(h));
    }
    for (Idx a = 0; a < dA; ++a)
        if (!vec_is_zero(sub(c.act(c.H.alg.unit, unit_vec(a)), unit_vec(a))))
            v.fail("condition (3) fails for a=" + c.A.label(a));
    return v;
}

Validation check_cocycle(const CrossedData& c) {
    Validation v;
    const std::size_t dA = c.dA(), dH = c.dH();
    const Vec& one = c.H.alg.unit;
    for (Idx h = 0; h < dH; ++h) {
        Vec target = scaled(c.A.unit, c.H.eps(h));
        if (!vec_is_zero(sub(c.f(unit_vec(h), one), target)) || !vec_is_zero(sub(c.f(one, unit_vec(h)), target)))
            v.fail("condition (i) fails for h=" + c.H.alg.label(h));
    }
    for (Idx h = 0; h < dH; ++h)
        for (Idx l = 0; l < dH; ++l) {
            const auto& sh = c.H.sweedler_basis(h, 2);
            const auto& sl = c.H.sweedler_basis(l, 2);
            for (Idx m = 0; m < dH; ++m) {
                const auto& sm = c.H.sweedler_basis(m, 2);
                Accum lhs, rhs;
                for (const auto& th : sh)
                    for (const auto& tl : sl) {
                        for (const auto& tm : sm) {
                            Vec inner = c.act(th.factors[0], c.f(tl.factors[0], tm.factors[0]));
                            Vec lm = c.H.alg.prod(tl.factors[1], tm.factors[1]);
                            lhs.add(c.A.mul(inner, c.f(unit_vec(th.factors[1]), lm)), th.coeff * tl.coeff * tm.coeff);
                        }
                        Vec hl = c.H.alg.prod(th.factors[1], tl.factors[1]);
                        rhs.add(c.A.mul(c.f(th.factors[0], tl.factors[0]), c.f(hl, unit_vec(m))), th.coeff * tl.coeff);
                    }
                if (!vec_is_zero(sub(lhs.take(), rhs.take())))
                    v.fail("condition (ii) fails for (h,l,m)=(" + c.H.alg.label(h) + "," + c.H.alg.label(l) + "," +
                           c.H.alg.label(m) + ")");
            }
            for (Idx a = 0; a < dA; ++a) {
                Accum lhs, rhs;
                for (const auto& th : sh)
                    for (const auto& tl : sl) {
                        Vec al = c.act(tl.factors[0], unit_vec(a));
                        lhs.add(c.A.mul(c.act(th.factors[0], al), c.f(th.factors[1], tl.factors[1])), th.coeff * tl.coeff);
                        Vec hl = c.H.alg.prod(th.factors[1], tl.factors[1]);
                        rhs.add(c.A.mul(c.f(th.factors[0], tl.factors[0]), c.act(hl, unit_vec(a))), th.coeff * tl.coeff);
                    }
                if (!vec_is_zero(sub(lhs.take(), rhs.take())))
                    v.fail("condition (iii) fails for (h,l,a)=(" + c.H.alg.label(h) + "," + c.H.alg.label(l) + "," +
                           c.A.label(a) + ")");
            }
        }
    return v;
}

Validation check_associative_direct(const CrossedData& c) {
    Validation v;
    v.merge(check_algebra(c.E), "crossed product: ");
    return v;
}

Validation check_K_stable(const CrossedData& c) {
    Validation v;
    v.merge(check_subalgebra(c.A, c.K), "K: ");
    for (Idx h = 0; h < c.dH(); ++h)
        for (const auto& k : c.K.basis())
            if (!c.K.span.contains(c.act(h, k))) {
                v.fail("K is not stable under the weak action of " + c.H.alg.label(h));
                break;
            }
    return v;
}

BuildResult build(AlgebraData A, HopfData H, std::vector<Vec> action, std::vector<Vec> cocycle, SubalgebraData K,
                  std::string name) {
    BuildResult out;
    Validation& rep = out.report;
    rep.merge(check_algebra(A), "A: ");
    rep.merge(check_hopf(H), "H: ");
    if (action.size() != A.dim * H.dim()) rep.fail("action table has wrong size");
    if (cocycle.size() != H.dim() * H.dim()) rep.fail("cocycle table has wrong size");
    if (!rep.ok()) return out;

    CrossedData c;
    c.A = std::move(A);
    c.H = std::move(H);
    c.action = std::move(action);
    c.cocycle = std::move(cocycle);
    c.K = std::move(K);
    c.name = std::move(name);

    Validation weak = check_weak_action(c);
    rep.merge(weak);
    if (!weak.ok()) return out;
    Validation coc = check_cocycle(c);
    c.E = crossed_table(c);
    Validation assoc = check_associative_direct(c);
    rep.merge(coc);
    rep.merge(assoc);
    if (coc.ok() != assoc.ok())
        rep.fail("validators disagree: cocycle conditions " + std::string(coc.ok() ? "pass" : "fail") +
                 " while direct associativity " + std::string(assoc.ok() ? "passes" : "fails"));
    rep.merge(check_K_stable(c));
    if (!rep.ok()) return out;

    c.f_in_K = true;
    for (const auto& v : c.cocycle)
        if (!c.K.span.contains(v)) c.f_in_K = false;

    Matrix fm(c.dA(), c.dH() * c.dH());
    for (std::size_t j = 0; j < fm.cols; ++j) fm.col[j] = c.cocycle[j];
    CoalgebraData hh = tensor_coalgebra(c.H.coalg, c.H.coalg);
    if (auto inv = convolution_inverse(fm, hh, c.A)) {
        c.f_invertible = true;
        c.cocycle_inverse = inv->col;
    }
    if (auto s = inverse(c.H.antipode)) {
        c.antipode_invertible = true;
        c.antipode_inverse = *s;
    }
    out.data = std::move(c);
    return out;
}

std::optional<Matrix> gamma_inverse_solver(const CrossedData& c) {
    Matrix g(c.dE(), c.dH());
    for (Idx h = 0; h < c.dH(); ++h) g.col[h] = c.gamma_basis(h);
    return convolution_inverse(g, c.H.coalg, c.E);
}

Vec act_tuple(const CrossedData& c, const std::vector<Vec>& as, const Vec& h) {
    const std::size_t r = as.size();
    Accum acc;
    if (r == 0) {
        Scalar e = c.H.coalg.eps(h);
        if (!e.is_zero()) acc.add(0, e);
        return acc.take();
    }
    for (const auto& [hi, x] : h)
        for (const auto& t : c.H.sweedler_basis(hi, r)) {
            // expand the tensor product of the acted factors
            std::vector<std::pair<Idx, Scalar>> cur{{0, x * t.coeff}};
            for (std::size_t i = 0; i < r; ++i) {
                Vec ai = c.act(t.factors[i], as[i]);
                std::vector<std::pair<Idx, Scalar>> next;
                for (const auto& [idx, y] : cur)
                    for (const auto& [j, z] : ai) next.emplace_back(idx * c.dA() + j, y * z);
                cur.swap(next);
            }
            for (const auto& [idx, y] : cur) acc.add(idx, y);
        }
    return acc.take();
}

Vec act_iterated(const CrossedData& c, const Vec& a, const std::vector<Vec>& hs) {
    Vec x = a;
    for (std::size_t j = hs.size(); j-- > 0;) x = c.act(hs[j], x);
    return x;
}

Subspace hopf_image(const CrossedData& c) {
    std::vector<Vec> gens;
    for (Idx h = 0; h < c.dH(); ++h) gens.push_back(c.gamma_basis(h));
    return Subspace::span(c.dE(), gens);
}

}  // namespace hopfcyclic
