#include "hopfcyclic/closed_forms.hpp"

#include <stdexcept>

namespace hopfcyclic {

namespace {

// A generator of X_rs split into lifts: h_1..h_s in H and a_1..a_r in A,
// plus the untouched Abar-part of mid.
struct Gen {
    std::vector<Idx> h;
    std::vector<Idx> a;
    Idx amid = 0;
};

Gen decode(const Resolution& res, int r, int s, Idx mid) {
    Gen g;
    std::vector<Idx> t = res.mid_shape(r, s).decode(mid);
    for (int i = 0; i < s; ++i) g.h.push_back(res.hbar().lift_index(t[i]));
    for (int i = 0; i < r; ++i) g.a.push_back(res.abar().lift_index(t[s + i]));
    g.amid = mid % ipow(res.abar().dim(), r);
    return g;
}

Vec a_tensor(const CrossedData& c, const std::vector<Idx>& as, std::size_t from, std::size_t to) {
    Idx code = 0;
    for (std::size_t k = from; k < to; ++k) code = code * c.dA() + as[k];
    return unit_vec(code);
}

std::vector<Vec> gammas(const CrossedData& c, const std::vector<Idx>& hs, std::size_t count) {
    std::vector<Vec> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(c.gamma_basis(hs[k]));
    return out;
}

// gamma(h_1) ... with the factors i-1 and i merged into gamma(h_i) gamma(h_{i+1})
std::vector<Vec> merged(const CrossedData& c, const std::vector<Idx>& hs, int i) {
    std::vector<Vec> xs;
    for (int k = 0; k < static_cast<int>(hs.size()); ++k) {
        if (k == i - 1) {
            xs.push_back(c.E.mul(c.gamma_basis(hs[k]), c.gamma_basis(hs[k + 1])));
            ++k;
        } else {
            xs.push_back(c.gamma_basis(hs[k]));
        }
    }
    return xs;
}

}  // namespace

Vec act_on_tensor(const CrossedData& c, const Vec& t, int r, Idx h) {
    Shape sh(std::vector<std::size_t>(r, c.dA()));
    Accum acc;
    for (const auto& [idx, x] : t) {
        std::vector<Vec> as;
        for (Idx k : sh.decode(idx)) as.push_back(unit_vec(k));
        acc.add(act_tuple(c, as, unit_vec(h)), x);
    }
    return acc.take();
}

Vec project_abar_tensor(const Resolution& res, const Vec& t, int r) {
    Shape src(std::vector<std::size_t>(r, res.crossed().dA()));
    Shape dst(std::vector<std::size_t>(r, res.abar().dim()));
    Accum acc;
    for (const auto& [idx, x] : t) {
        std::vector<Vec> slots;
        for (Idx k : src.decode(idx)) slots.push_back(res.abar().project(unit_vec(k)));
        add_tensor(acc, dst, slots, x);
    }
    return acc.take();
}

std::vector<TwistedTerm> twisted_insert(const Resolution& res, const std::vector<Idx>& as, Idx h, Idx l) {
    const CrossedData& c = res.crossed();
    const int r = static_cast<int>(as.size());
    std::vector<TwistedTerm> out;
    for (const auto& th : c.H.sweedler_basis(h, 4))
        for (const auto& tl : c.H.sweedler_basis(l, 4)) {
            Scalar k = th.coeff * tl.coeff;
            const Vec& fv = c.f(th.factors[1], tl.factors[1]);
            const Vec& hl3 = c.H.alg.prod(th.factors[2], tl.factors[2]);
            Vec tail = c.H.alg.prod(th.factors[3], tl.factors[3]);
            for (int i = 0; i <= r; ++i) {
                Vec first = act_on_tensor(c, act_on_tensor(c, a_tensor(c, as, 0, i), i, tl.factors[0]), i, th.factors[0]);
                Vec rest0 = a_tensor(c, as, i, r);
                Accum rest;
                for (const auto& [hk, y] : hl3) rest.add(act_on_tensor(c, rest0, r - i, hk), y);
                Vec tuple = kron(kron(first, fv, c.dA()), rest.take(), ipow(c.dA(), r - i));
                tuple = scaled(project_abar_tensor(res, tuple, r + 1), k * sign(i));
                if (!tuple.empty()) out.push_back({std::move(tuple), tail});
            }
        }
    return out;
}

Vec closed_d1(Resolution& res, int r, int s, Idx mid) {
    if (s < 1) throw std::invalid_argument("closed_d1 needs s >= 1");
    const CrossedData& c = res.crossed();
    const std::size_t ma = ipow(res.abar().dim(), r), dE = c.dE();
    Gen g = decode(res, r, s, mid);
    Vec amid = unit_vec(g.amid);
    Vec one = c.E.unit;
    Accum acc;
    {
        std::vector<Vec> all = gammas(c, g.h, s);
        std::vector<Vec> rest(all.begin() + 1, all.end());
        acc.add(kron(kron(res.normalize(all[0], rest, false), amid, ma), one, dE));
    }
    for (int i = 1; i < s; ++i)
        acc.add(kron(kron(res.normalize(one, merged(c, g.h, i), false), amid, ma), one, dE), sign(i));
    Vec prefix = res.normalize(one, gammas(c, g.h, s - 1), false);
    Vec as = a_tensor(c, g.a, 0, r);
    for (const auto& t : c.H.sweedler_basis(g.h[s - 1], 2)) {
        Vec tuple = project_abar_tensor(res, act_on_tensor(c, as, r, t.factors[0]), r);
        acc.add(kron(kron(prefix, tuple, ma), c.gamma_basis(t.factors[1]), dE), t.coeff * sign(s));
    }
    return acc.take();
}

Vec closed_d2(Resolution& res, int r, int s, Idx mid) {
    if (s < 2) throw std::invalid_argument("closed_d2 needs s >= 2");
    const CrossedData& c = res.crossed();
    const std::size_t ma = ipow(res.abar().dim(), r + 1);
    Gen g = decode(res, r, s, mid);
    Vec prefix = res.normalize(c.E.unit, gammas(c, g.h, s - 2), false);
    Accum acc;
    for (const auto& tt : twisted_insert(res, g.a, g.h[s - 2], g.h[s - 1]))
        acc.add(kron(kron(prefix, tt.tuple, ma), c.gamma(tt.tail), c.dE()), sign(s - 1));
    return acc.take();
}

Vec closed_dhat0(Resolution& res, int r, int s, Idx e0, Idx mid) {
    if (r < 1) throw std::invalid_argument("closed_dhat0 needs r >= 1");
    const CrossedData& c = res.crossed();
    const std::size_t da = res.abar().dim(), mh = ipow(res.hbar().dim(), s);
    Gen g = decode(res, r, s, mid);
    std::vector<Idx> t = res.mid_shape(r, s).decode(mid);
    Idx hmid = mid / ipow(da, r);
    Idx pre = e0 * mh + hmid;
    auto tail = [&](std::size_t from, std::size_t to) {
        Vec v = unit_vec(0);
        for (std::size_t k = from; k < to; ++k) v = kron(v, unit_vec(t[s + k]), da);
        return v;
    };
    Accum acc;
    acc.add(kron(res.prefix_times(s, pre, unit_vec(g.a[0])), tail(1, r), ipow(da, r - 1)));
    for (int i = 1; i < r; ++i) {
        Vec v = unit_vec(pre);
        for (int k = 0; k < r; ++k) {
            if (k == i - 1) {
                v = kron(v, res.abar().project(c.A.prod(g.a[k], g.a[k + 1])), da);
                ++k;
            } else {
                v = kron(v, unit_vec(t[s + k]), da);
            }
        }
        acc.add(v, sign(i));
    }
    {
        Vec left = c.E.mul(c.embed_a(unit_vec(g.a[r - 1])), unit_vec(e0));
        Vec v;
        for (const auto& [e, x] : left) v.emplace_back(e * mh + hmid, x);
        acc.add(kron(v, tail(0, r - 1), ipow(da, r - 1)), sign(r));
    }
    return scaled(acc.take(), sign(s));
}

Vec closed_dhat1(Resolution& res, int r, int s, Idx e0, Idx mid) {
    if (s < 1) throw std::invalid_argument("closed_dhat1 needs s >= 1");
    const CrossedData& c = res.crossed();
    const std::size_t ma = ipow(res.abar().dim(), r);
    Gen g = decode(res, r, s, mid);
    Vec amid = unit_vec(g.amid);
    Vec ev = unit_vec(e0);
    Accum acc;
    {
        std::vector<Vec> all = gammas(c, g.h, s);
        std::vector<Vec> rest(all.begin() + 1, all.end());
        acc.add(kron(res.normalize(c.E.mul(ev, all[0]), rest, false), amid, ma));
    }
    for (int i = 1; i < s; ++i) acc.add(kron(res.normalize(ev, merged(c, g.h, i), false), amid, ma), sign(i));
    std::vector<Vec> front = gammas(c, g.h, s - 1);
    Vec as = a_tensor(c, g.a, 0, r);
    for (const auto& t : c.H.sweedler_basis(g.h[s - 1], 2)) {
        Vec tuple = project_abar_tensor(res, act_on_tensor(c, as, r, t.factors[0]), r);
        Vec e = c.E.mul(c.gamma_basis(t.factors[1]), ev);
        acc.add(kron(res.normalize(e, front, false), tuple, ma), t.coeff * sign(s));
    }
    return acc.take();
}

Vec closed_dhat2(Resolution& res, int r, int s, Idx e0, Idx mid) {
    if (s < 2) throw std::invalid_argument("closed_dhat2 needs s >= 2");
    const CrossedData& c = res.crossed();
    const std::size_t ma = ipow(res.abar().dim(), r + 1);
    Gen g = decode(res, r, s, mid);
    std::vector<Vec> front = gammas(c, g.h, s - 2);
    Accum acc;
    for (const auto& tt : twisted_insert(res, g.a, g.h[s - 2], g.h[s - 1])) {
        Vec e = c.E.mul(c.gamma(tt.tail), unit_vec(e0));
        acc.add(kron(res.normalize(e, front, false), tt.tuple, ma), sign(s - 1));
    }
    return acc.take();
}

std::vector<ClosedFormCheck> compare_closed_forms(Resolution& res, int bound) {
    std::vector<ClosedFormCheck> out;
    for (int n = 1; n <= bound; ++n)
        for (int s = 0; s <= n; ++s) {
            const int r = n - s;
            const std::size_t mids = res.mid_shape(r, s).total();
            for (int l = 1; l <= 2 && l <= s; ++l) {
                ClosedFormCheck chk{l == 1 ? "d1" : "d2", r, s, 0, 0};
                const QuotientSpace& dst = res.x_space(r + l - 1, s - l);
                for (Idx m = 0; m < mids; ++m) {
                    Vec closed = l == 1 ? closed_d1(res, r, s, m) : closed_d2(res, r, s, m);
                    ++chk.generators;
                    if (dst.project(closed) != dst.project(res.d_generator(l, r, s, m))) ++chk.mismatches;
                }
                out.push_back(chk);
            }
            const QuotientSpace& src = res.xhat_space(r, s);
            for (int l = 0; l <= 2 && l <= s; ++l) {
                if (l == 0 && r == 0) continue;
                ClosedFormCheck chk{l == 0 ? "dhat0" : l == 1 ? "dhat1" : "dhat2", r, s, 0, 0};
                Matrix induced = res.dhat_component(l, r, s);
                const QuotientSpace& dst = res.xhat_space(r + l - 1, s - l);
                const std::size_t mid_dim = res.xhat_outer(r, s).mid;
                for (std::size_t j = 0; j < src.dim(); ++j) {
                    Idx idx = src.lift_index(j);
                    Idx e0 = idx / mid_dim, m = idx % mid_dim;
                    Vec closed = l == 0   ? closed_dhat0(res, r, s, e0, m)
                                 : l == 1 ? closed_dhat1(res, r, s, e0, m)
                                          : closed_dhat2(res, r, s, e0, m);
                    ++chk.generators;
                    if (dst.project(closed) != induced.col[j]) ++chk.mismatches;
                }
                out.push_back(chk);
            }
        }
    return out;
}

}  // namespace hopfcyclic
