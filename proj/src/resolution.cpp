#include "hopfcyclic/resolution.hpp"

#include <algorithm>
#include <stdexcept>

namespace hopfcyclic {

Resolution::Resolution(const CrossedData& c, int top, std::optional<int> canonical_top) : c_(&c), top_(top) {
    if (top < 1) throw std::invalid_argument("resolution: degree bound must be >= 1");
    if (canonical_top && (*canonical_top < top - 1 || *canonical_top > top))
        throw std::invalid_argument("resolution: the canonical complex must reach degree top - 1");
    hbar_ = QuotientSpace(c.dH(), Subspace::span(c.dH(), {c.one_H()}));
    abar_ = QuotientSpace(c.dA(), c.K.span);
    std::vector<Vec> kg;
    for (const auto& b : c.K.basis()) kg.push_back(c.embed_a(b));
    kE_ = make_subalgebra(c.E, kg);
    canon_ = canonical_mixed(c.E, kE_, canonical_top.value_or(top));
    unit_E_ = c.E.unit;
}

Shape Resolution::mid_shape(int r, int s) const {
    std::vector<std::size_t> dims(s, hbar_.dim());
    dims.insert(dims.end(), r, abar_.dim());
    return Shape(dims);
}

Shape Resolution::bar_mid_shape(int n) const { return Shape(std::vector<std::size_t>(n, ebar().dim())); }

Outer Resolution::x_outer(int r, int s) const {
    return {c_->dE(), ipow(hbar_.dim(), s) * ipow(abar_.dim(), r), c_->dE()};
}
Outer Resolution::y_outer(int s) const { return {c_->dE(), ipow(hbar_.dim(), s), c_->dH()}; }
Outer Resolution::b_outer(int n) const { return {c_->dE(), ipow(ebar().dim(), n), c_->dE()}; }
Outer Resolution::xhat_outer(int r, int s) const {
    return {c_->dE(), ipow(hbar_.dim(), s) * ipow(abar_.dim(), r), 1};
}
Outer Resolution::chat_outer(int n) const { return {c_->dE(), ipow(ebar().dim(), n), 1}; }

const QuotientSpace& Resolution::x_space(int r, int s) {
    auto key = std::make_pair(r, s);
    auto it = x_spaces_.find(key);
    if (it != x_spaces_.end()) return it->second;
    const CrossedData& c = *c_;
    bool scalars = c.K.is_scalars(c.A);
    std::vector<Vec> kb = c.K.basis();
    std::vector<KAction> factors;
    KAction f0;
    f0.dim = c.dE() * ipow(hbar_.dim(), s);
    f0.right = [this, s, kb](std::size_t lam, Idx m) { return prefix_times(s, m, kb[lam]); };
    f0.left = [](std::size_t, Idx) -> Vec { return {}; };
    factors.push_back(f0);
    for (int i = 0; i < r; ++i) factors.push_back(quotient_action(c.A, c.K, abar_));
    KAction fe;
    fe.dim = c.dE();
    fe.left = [&c, kb](std::size_t lam, Idx m) { return c.E.mul(c.embed_a(kb[lam]), unit_vec(m)); };
    fe.right = [&c, kb](std::size_t lam, Idx m) { return c.E.mul(unit_vec(m), c.embed_a(kb[lam])); };
    factors.push_back(fe);
    return x_spaces_.emplace(key, relative_tensor(factors, kb.size(), false, scalars)).first->second;
}

const QuotientSpace& Resolution::xhat_space(int r, int s) {
    auto key = std::make_pair(r, s);
    auto it = xhat_spaces_.find(key);
    if (it != xhat_spaces_.end()) return it->second;
    const CrossedData& c = *c_;
    bool scalars = c.K.is_scalars(c.A);
    std::vector<Vec> kb = c.K.basis();
    std::size_t mh = ipow(hbar_.dim(), s);
    std::vector<KAction> factors;
    KAction f0;
    f0.dim = c.dE() * mh;
    f0.right = [this, s, kb](std::size_t lam, Idx m) { return prefix_times(s, m, kb[lam]); };
    f0.left = [&c, kb, mh](std::size_t lam, Idx m) {
        Vec e = c.E.mul(c.embed_a(kb[lam]), unit_vec(m / mh));
        Vec out;
        for (const auto& [i, x] : e) out.emplace_back(i * mh + m % mh, x);
        return out;
    };
    factors.push_back(f0);
    for (int i = 0; i < r; ++i) factors.push_back(quotient_action(c.A, c.K, abar_));
    return xhat_spaces_.emplace(key, relative_tensor(factors, kb.size(), true, scalars)).first->second;
}

const QuotientSpace& Resolution::b_space(int n) {
    auto it = b_spaces_.find(n);
    if (it != b_spaces_.end()) return it->second;
    const CrossedData& c = *c_;
    std::vector<KAction> factors{regular_action(c.E, kE_)};
    for (int i = 0; i < n; ++i) factors.push_back(quotient_action(c.E, kE_, ebar()));
    factors.push_back(regular_action(c.E, kE_));
    return b_spaces_.emplace(n, relative_tensor(factors, kE_.dim(), false, kE_.is_scalars(c.E))).first->second;
}

std::vector<std::size_t> Resolution::x_offsets(int n) {
    std::vector<std::size_t> off{0};
    for (int s = 0; s <= n; ++s) off.push_back(off.back() + x_space(n - s, s).dim());
    return off;
}

std::vector<std::size_t> Resolution::xhat_offsets(int n) {
    std::vector<std::size_t> off{0};
    for (int s = 0; s <= n; ++s) off.push_back(off.back() + xhat_space(n - s, s).dim());
    return off;
}

Vec Resolution::normalize(const Vec& e0, const std::vector<Vec>& xs, bool last_full) const {
    const CrossedData& c = *c_;
    const std::size_t dH = c.dH();
    const std::size_t m = xs.size();
    std::map<std::vector<Idx>, Vec> states;
    states[{}] = c.one_A();
    for (std::size_t i = m; i-- > 0;) {
        bool full = last_full && i + 1 == m;
        std::map<std::vector<Idx>, Accum> next;
        for (const auto& [suffix, carry] : states) {
            Vec y = c.E.mul(xs[i], c.embed_a(carry));
            std::map<Idx, Accum> by_h;
            for (const auto& [idx, v] : y) by_h[idx % dH].add(idx / dH, v);
            for (auto& [h, acc] : by_h) {
                Vec a = acc.take();
                if (a.empty()) continue;
                Vec slot = full ? unit_vec(h) : hbar_.project(unit_vec(h));
                for (const auto& [q, coef] : slot) {
                    std::vector<Idx> ns;
                    ns.reserve(suffix.size() + 1);
                    ns.push_back(q);
                    ns.insert(ns.end(), suffix.begin(), suffix.end());
                    next[ns].add(a, coef);
                }
            }
        }
        states.clear();
        for (auto& [k, acc] : next) {
            Vec v = acc.take();
            if (!v.empty()) states.emplace(k, std::move(v));
        }
    }
    std::size_t span = 1;
    for (std::size_t k = 0; k < m; ++k) span *= (last_full && k + 1 == m) ? dH : hbar_.dim();
    Accum out;
    for (const auto& [suffix, carry] : states) {
        Idx code = 0;
        for (std::size_t k = 0; k < suffix.size(); ++k)
            code = code * ((last_full && k + 1 == m) ? dH : hbar_.dim()) + suffix[k];
        Vec e = c.E.mul(e0, c.embed_a(carry));
        for (const auto& [ei, v] : e) out.add(ei * span + code, v);
    }
    return out.take();
}

Vec Resolution::lift_h(Idx q) const { return c_->gamma_basis(hbar_.lift_index(q)); }
Vec Resolution::lift_a(Idx q) const { return unit_vec(abar_.lift_index(q)); }
Vec Resolution::lift_e(Idx q) const { return unit_vec(ebar().lift_index(q)); }

Vec Resolution::prefix_times(int s, Idx prefix, const Vec& a) const {
    const CrossedData& c = *c_;
    std::size_t mh = ipow(hbar_.dim(), s);
    Idx e0 = prefix / mh;
    if (s == 0) return c.E.mul(unit_vec(e0), c.embed_a(a));
    std::vector<Idx> q = Shape(std::vector<std::size_t>(s, hbar_.dim())).decode(prefix % mh);
    std::vector<Vec> xs;
    for (int i = 0; i < s; ++i) xs.push_back(lift_h(q[i]));
    xs.back() = c.E.mul(xs.back(), c.embed_a(a));
    return normalize(unit_vec(e0), xs, false);
}

Vec Resolution::generator(int r, int s, Idx mid) const {
    Outer o = x_outer(r, s);
    Vec out;
    for (const auto& [u, x] : unit_E_)
        for (const auto& [v, y] : unit_E_) out.emplace_back(o.join(u, mid, v), x * y);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Vec Resolution::mu(int s, const Vec& x) const {
    Outer o = x_outer(0, s);
    Shape ms = mid_shape(0, s);
    Accum acc;
    for (const auto& [idx, c] : x) {
        Idx e0, m, e1;
        o.split(idx, e0, m, e1);
        std::vector<Idx> q = ms.decode(m);
        std::vector<Vec> xs;
        for (Idx t : q) xs.push_back(lift_h(t));
        xs.push_back(unit_vec(e1));
        acc.add(normalize(unit_vec(e0), xs, true), c);
    }
    return acc.take();
}

Vec Resolution::partial(int s, const Vec& y) const {
    if (s < 1) throw std::invalid_argument("partial: degree must be >= 1");
    const CrossedData& c = *c_;
    Outer o = y_outer(s);
    Shape ms = mid_shape(0, s);
    Accum acc;
    for (const auto& [idx, coef] : y) {
        Idx e0, m, h;
        o.split(idx, e0, m, h);
        std::vector<Idx> q = ms.decode(m);
        std::vector<Vec> x;  // x_1 .. x_{s+1}
        for (Idx t : q) x.push_back(lift_h(t));
        x.push_back(c.gamma_basis(h));
        Vec e0v = unit_vec(e0);
        {
            std::vector<Vec> rest(x.begin() + 1, x.end());
            acc.add(normalize(c.E.mul(e0v, x[0]), rest, true), coef);
        }
        for (int i = 1; i <= s; ++i) {
            std::vector<Vec> xs;
            for (int k = 1; k <= s + 1; ++k) {
                if (k == i) {
                    xs.push_back(c.E.mul(x[i - 1], x[i]));
                    ++k;
                } else {
                    xs.push_back(x[k - 1]);
                }
            }
            acc.add(normalize(e0v, xs, true), coef * sign(i));
        }
    }
    return acc.take();
}

Vec Resolution::sigma_minus(int s, const Vec& y) const {
    const CrossedData& c = *c_;
    if (s == 0) return scaled(normalize(y, {unit_E_}, true), Scalar(-1));
    Outer o = y_outer(s - 1);
    Shape ms = mid_shape(0, s - 1);
    Accum acc;
    for (const auto& [idx, coef] : y) {
        Idx e0, m, h;
        o.split(idx, e0, m, h);
        std::vector<Vec> xs;
        for (Idx t : ms.decode(m)) xs.push_back(lift_h(t));
        xs.push_back(c.gamma_basis(h));
        xs.push_back(unit_E_);
        acc.add(normalize(unit_vec(e0), xs, true), coef * sign(s - 1));
    }
    return acc.take();
}

Vec Resolution::mu_tilde(const Vec& y) const {
    const CrossedData& c = *c_;
    Accum acc;
    for (const auto& [idx, coef] : y) {
        Idx e0 = idx / c.dH(), h = idx % c.dH();
        acc.add(c.E.mul(unit_vec(e0), c.gamma_basis(h)), coef);
    }
    return acc.take();
}

Vec Resolution::sigma0_y(int s, const Vec& y) const {
    const CrossedData& c = *c_;
    Outer yo = y_outer(s), xo = x_outer(0, s);
    Accum acc;
    for (const auto& [idx, coef] : y) {
        Idx e0, m, h;
        yo.split(idx, e0, m, h);
        for (const auto& [g, x] : c.gamma_basis(h)) acc.add(xo.join(e0, m, g), coef * x);
    }
    return acc.take();
}

Vec Resolution::sigma0(int r, int s, const Vec& x) const {
    const CrossedData& c = *c_;
    Outer o = x_outer(r, s);
    const std::size_t da = abar_.dim(), dE = c.dE();
    Scalar sg = sign(r + s + 1);
    Accum acc;
    for (const auto& [idx, coef] : x) {
        Idx e0, m, e1;
        o.split(idx, e0, m, e1);
        Idx a = e1 / c.dH(), h = e1 % c.dH();
        Vec abar = abar_.project(unit_vec(a));
        if (abar.empty()) continue;
        Vec g = c.gamma_basis(h);
        Idx base = (e0 * o.mid + m) * da;
        for (const auto& [q, y] : abar)
            for (const auto& [gi, z] : g) acc.add((base + q) * dE + gi, coef * sg * y * z);
    }
    return acc.take();
}

Vec Resolution::d0(int r, int s, const Vec& x) const {
    if (r < 1) throw std::invalid_argument("d0 needs r >= 1");
    const CrossedData& c = *c_;
    Outer o = x_outer(r, s);
    Shape ms = mid_shape(r, s);
    const std::size_t da = abar_.dim(), dE = c.dE();
    const std::size_t mh = ipow(hbar_.dim(), s);
    Scalar sg = sign(s);
    Accum acc;
    auto emit = [&](const Vec& prefix, const std::vector<Vec>& as, const Vec& last, const Scalar& k) {
        Vec v = prefix;
        for (const auto& a : as) v = kron(v, a, da);
        v = kron(v, last, dE);
        acc.add(v, k);
    };
    for (const auto& [idx, coef] : x) {
        Idx e0, m, e1;
        o.split(idx, e0, m, e1);
        std::vector<Idx> t = ms.decode(m);
        Idx hmid = 0;
        for (int k = 0; k < s; ++k) hmid = hmid * hbar_.dim() + t[k];
        std::vector<Idx> a(t.begin() + s, t.end());
        Vec prefix = unit_vec(e0 * mh + hmid);
        Vec last = unit_vec(e1);
        Scalar k0 = coef * sg;
        {
            std::vector<Vec> as;
            for (int k = 1; k < r; ++k) as.push_back(unit_vec(a[k]));
            emit(prefix_times(s, e0 * mh + hmid, lift_a(a[0])), as, last, k0);
        }
        for (int i = 1; i < r; ++i) {
            std::vector<Vec> as;
            for (int k = 0; k < r; ++k) {
                if (k == i - 1) {
                    as.push_back(abar_.project(c.A.mul(lift_a(a[k]), lift_a(a[k + 1]))));
                    ++k;
                } else {
                    as.push_back(unit_vec(a[k]));
                }
            }
            emit(prefix, as, last, k0 * sign(i));
        }
        {
            std::vector<Vec> as;
            for (int k = 0; k + 1 < r; ++k) as.push_back(unit_vec(a[k]));
            emit(prefix, as, c.E.mul(c.embed_a(lift_a(a[r - 1])), last), k0 * sign(r));
        }
    }
    return acc.take();
}

Vec Resolution::extend(const Outer& src, const Outer& dst, const Vec& v,
                       const std::function<const Vec&(Idx)>& gen) const {
    const AlgebraData& E = c_->E;
    Accum acc;
    for (const auto& [idx, coef] : v) {
        Idx l, m, r;
        src.split(idx, l, m, r);
        const Vec& G = gen(m);
        for (const auto& [gi, gc] : G) {
            Idx f0, gm, f1;
            dst.split(gi, f0, gm, f1);
            const Vec& left = E.prod(l, f0);
            const Vec& right = E.prod(f1, r);
            for (const auto& [a, x] : left)
                for (const auto& [b, y] : right) acc.add(dst.join(a, gm, b), coef * gc * x * y);
        }
    }
    return acc.take();
}

Vec Resolution::extend_left(const Outer& src, const Outer& dst, const Vec& v,
                            const std::function<const Vec&(Idx, Idx)>& gen) const {
    const AlgebraData& E = c_->E;
    Accum acc;
    for (const auto& [idx, coef] : v) {
        Idx l, m, r;
        src.split(idx, l, m, r);
        const Vec& G = gen(m, r);
        for (const auto& [gi, gc] : G) {
            Idx f0, gm, f1;
            dst.split(gi, f0, gm, f1);
            for (const auto& [a, x] : E.prod(l, f0)) acc.add(dst.join(a, gm, f1), coef * gc * x);
        }
    }
    return acc.take();
}

Vec Resolution::hat_of(const Outer& src, const Outer& dst, const Vec& v,
                       const std::function<const Vec&(Idx)>& gen) const {
    const AlgebraData& E = c_->E;
    Accum acc;
    for (const auto& [idx, coef] : v) {
        Idx e = idx / src.mid, m = idx % src.mid;
        const Vec& G = gen(m);
        for (const auto& [gi, gc] : G) {
            Idx f0, gm, f1;
            dst.split(gi, f0, gm, f1);
            Vec p = E.mul_basis_right(E.prod(f1, e), f0);
            for (const auto& [a, x] : p) acc.add(a * dst.mid + gm, coef * gc * x);
        }
    }
    return acc.take();
}

Vec Resolution::sandwich(const Outer& o, const Vec& eL, const Vec& v, const Vec& eR) const {
    const AlgebraData& E = c_->E;
    Accum acc;
    for (const auto& [idx, coef] : v) {
        Idx l, m, r;
        o.split(idx, l, m, r);
        Vec left = E.mul(eL, unit_vec(l));
        Vec right = E.mul(unit_vec(r), eR);
        for (const auto& [a, x] : left)
            for (const auto& [b, y] : right) acc.add(o.join(a, m, b), coef * x * y);
    }
    return acc.take();
}

const Vec& Resolution::d_generator(int l, int r, int s, Idx mid) {
    auto& memo = d_memo_[{l, r, s}];
    auto it = memo.find(mid);
    if (it != memo.end()) return it->second;
    if (l > s || (l == 0 && r == 0)) throw std::invalid_argument("d: bidegree out of range");
    Vec g = generator(r, s, mid);
    Vec v;
    if (l == 0) {
        v = d0(r, s, g);
    } else if (l == 1 && r == 0) {
        v = sigma0_y(s - 1, partial(s, mu(s, g)));
    } else if (l == 1) {
        v = scaled(sigma0(r - 1, s - 1, d(1, r - 1, s, d0(r, s, g))), Scalar(-1));
    } else {
        Accum acc;
        for (int j = r == 0 ? 1 : 0; j < l; ++j)
            acc.add(sigma0(r + l - 2, s - l, d(l - j, r + j - 1, s - j, d(j, r, s, g))), Scalar(-1));
        v = acc.take();
    }
    return memo.emplace(mid, std::move(v)).first->second;
}

Vec Resolution::d(int l, int r, int s, const Vec& x) {
    if (x.empty()) return {};
    if (l == 0) return d0(r, s, x);
    if (l > s) return {};
    return extend(x_outer(r, s), x_outer(r + l - 1, s - l), x,
                  [&](Idx m) -> const Vec& { return d_generator(l, r, s, m); });
}

Vec Resolution::sigma(int l, int r, int s, const Vec& x) {
    if (x.empty() || l > s) return {};
    if (l == 0) return r == -1 ? sigma0_y(s, x) : sigma0(r, s, x);
    Outer src = r == -1 ? y_outer(s) : x_outer(r, s);
    Outer dst = x_outer(r + l + 1, s - l);
    auto& memo = sigma_memo_[{l, r, s}];
    auto gen = [&](Idx m, Idx e1) -> const Vec& {
        Idx key = m * src.right + e1;
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Vec g;
        for (const auto& [u, c] : unit_E_) g.emplace_back(src.join(u, m, e1), c);
        Accum acc;
        for (int i = 0; i < l; ++i)
            acc.add(sigma0(r + l, s - l, d(l - i, r + i + 1, s - i, sigma(i, r, s, g))), Scalar(-1));
        return memo.emplace(key, acc.take()).first->second;
    };
    return extend_left(src, dst, x, gen);
}

Graded Resolution::d_total(int n, const Graded& x) {
    Graded out(n);
    if (n < 1) return out;
    std::vector<Accum> acc(n);
    for (int s = 0; s <= n; ++s) {
        if (x[s].empty()) continue;
        int r = n - s;
        for (int l = r >= 1 ? 0 : 1; l <= s; ++l) acc[s - l].add(d(l, r, s, x[s]));
    }
    for (int s = 0; s < n; ++s) out[s] = acc[s].take();
    return out;
}

Graded Resolution::sigma_bar(int n, const Graded& x, bool short_form) {
    if (n < 1) throw std::invalid_argument("sigma_bar: degree must be >= 1");
    const int m = n - 1;
    std::vector<Accum> acc(n + 1);
    Vec y = sigma_minus(n, mu(m, x[m]));
    int lmax = short_form ? 0 : n;
    for (int l = 0; l <= lmax; ++l) acc[n - l].add(sigma(l, -1, n, y), Scalar(-1));
    for (int s = 0; s <= m; ++s) {
        if (x[s].empty()) continue;
        int r = m - s;
        for (int l = 0; l <= s; ++l) acc[s - l].add(sigma(l, r, s, x[s]));
    }
    Graded out(n + 1);
    for (int s = 0; s <= n; ++s) out[s] = acc[s].take();
    return out;
}

Graded Resolution::sigma_bar0(const Vec& e) const { return {sigma0_y(0, sigma_minus(0, e))}; }

Vec Resolution::mu_total(const Graded& x) const {
    const AlgebraData& E = c_->E;
    Accum acc;
    for (const auto& [idx, c] : x[0]) acc.add(E.prod(idx / E.dim, idx % E.dim), c);
    return acc.take();
}

Vec Resolution::bprime(int n, const Vec& x) const {
    if (n < 1) throw std::invalid_argument("bprime: degree must be >= 1");
    const AlgebraData& E = c_->E;
    Outer o = b_outer(n);
    Shape ms = bar_mid_shape(n);
    const std::size_t db = ebar().dim();
    Accum acc;
    for (const auto& [idx, coef] : x) {
        Idx e0, m, e1;
        o.split(idx, e0, m, e1);
        std::vector<Idx> t = ms.decode(m);
        std::vector<Vec> slot;  // 0 .. n+1
        slot.push_back(unit_vec(e0));
        for (Idx q : t) slot.push_back(lift_e(q));
        slot.push_back(unit_vec(e1));
        for (int i = 0; i <= n; ++i) {
            std::vector<Vec> parts;
            for (int k = 0; k <= n + 1; ++k) {
                if (k == i) {
                    parts.push_back(E.mul(slot[k], slot[k + 1]));
                    ++k;
                } else {
                    parts.push_back(slot[k]);
                }
            }
            Vec v = parts[0];
            for (int k = 1; k < n; ++k) v = kron(v, ebar().project(parts[k]), db);
            v = kron(v, parts[n], E.dim);
            acc.add(v, coef * sign(i));
        }
    }
    return acc.take();
}

Vec Resolution::xi(int n, const Vec& x) const {
    const AlgebraData& E = c_->E;
    if (n == 0) return kron(x, unit_E_, E.dim);
    Outer o = b_outer(n - 1);
    const std::size_t db = ebar().dim();
    Accum acc;
    for (const auto& [idx, coef] : x) {
        Idx e0, m, e1;
        o.split(idx, e0, m, e1);
        Vec q = ebar().project(unit_vec(e1));
        for (const auto& [qi, y] : q)
            for (const auto& [u, z] : unit_E_) acc.add(((e0 * o.mid + m) * db + qi) * E.dim + u, coef * sign(n) * y * z);
    }
    return acc.take();
}

Vec Resolution::mu_bar(const Vec& x) const {
    const AlgebraData& E = c_->E;
    Accum acc;
    for (const auto& [idx, c] : x) acc.add(E.prod(idx / E.dim, idx % E.dim), c);
    return acc.take();
}

const Vec& Resolution::phi_generator(int r, int s, Idx mid) {
    auto& memo = phi_memo_[{r, s}];
    auto it = memo.find(mid);
    if (it != memo.end()) return it->second;
    const int n = r + s;
    Vec g = generator(r, s, mid);
    Vec v;
    if (n == 0) {
        v = g;
    } else {
        Graded x(n + 1);
        x[s] = g;
        v = xi(n, phi(n - 1, d_total(n, x)));
    }
    return memo.emplace(mid, std::move(v)).first->second;
}

Vec Resolution::phi(int n, const Graded& x) {
    Accum acc;
    Outer dst = b_outer(n);
    for (int s = 0; s <= n; ++s) {
        if (x[s].empty()) continue;
        int r = n - s;
        acc.add(extend(x_outer(r, s), dst, x[s], [&](Idx m) -> const Vec& { return phi_generator(r, s, m); }));
    }
    return acc.take();
}

const Graded& Resolution::psi_generator(int n, Idx mid) {
    auto& memo = psi_memo_[n];
    auto it = memo.find(mid);
    if (it != memo.end()) return it->second;
    Outer o = b_outer(n);
    Vec y;
    for (const auto& [u, x] : unit_E_)
        for (const auto& [w, z] : unit_E_) y.emplace_back(o.join(u, mid, w), x * z);
    std::sort(y.begin(), y.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Graded v;
    if (n == 0)
        v = {y};
    else
        v = sigma_bar(n, psi(n - 1, bprime(n, y)));
    return memo.emplace(mid, std::move(v)).first->second;
}

Graded Resolution::psi(int n, const Vec& y) {
    Graded out(n + 1);
    if (y.empty()) return out;
    Outer src = b_outer(n);
    for (int s = 0; s <= n; ++s)
        out[s] = extend(src, x_outer(n - s, s), y, [&](Idx m) -> const Vec& { return psi_generator(n, m)[s]; });
    return out;
}

const Vec& Resolution::omega_generator(int n, Idx mid) {
    auto& memo = omega_memo_[n];
    auto it = memo.find(mid);
    if (it != memo.end()) return it->second;
    Vec v;
    if (n > 0) {
        Outer o = b_outer(n);
        Vec x;
        for (const auto& [u, a] : unit_E_)
            for (const auto& [w, b] : unit_E_) x.emplace_back(o.join(u, mid, w), a * b);
        std::sort(x.begin(), x.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        Accum acc;
        acc.add(phi(n, psi(n, x)));
        acc.add(x, Scalar(-1));
        acc.add(omega(n - 1, bprime(n, x)), Scalar(-1));
        v = xi(n + 1, acc.take());
    }
    return memo.emplace(mid, std::move(v)).first->second;
}

Vec Resolution::omega(int n, const Vec& y) {
    if (y.empty()) return {};
    return extend(b_outer(n), b_outer(n + 1), y, [&](Idx m) -> const Vec& { return omega_generator(n, m); });
}

Vec project_graded(Resolution& res, int n, const Graded& x) {
    std::vector<std::size_t> off = res.x_offsets(n);
    Vec out;
    for (int s = 0; s <= n; ++s) {
        if (s >= static_cast<int>(x.size()) || x[s].empty()) continue;
        for (const auto& [i, c] : res.x_space(n - s, s).project(x[s])) out.emplace_back(i + off[s], c);
    }
    return out;
}

Graded lift_graded(Resolution& res, int n, const Vec& q) {
    std::vector<std::size_t> off = res.x_offsets(n);
    std::vector<Accum> acc(n + 1);
    for (const auto& [i, c] : q) {
        int s = 0;
        while (i >= off[s + 1]) ++s;
        acc[s].add(res.x_space(n - s, s).lift_index(i - off[s]), c);
    }
    Graded out(n + 1);
    for (int s = 0; s <= n; ++s) out[s] = acc[s].take();
    return out;
}

namespace {

Graded single_block(Resolution& res, int n, Idx q) { return lift_graded(res, n, unit_vec(q)); }

}  // namespace

Matrix Resolution::d_matrix(int n) {
    std::vector<std::size_t> off = x_offsets(n);
    Matrix m(x_offsets(n - 1).back(), off.back());
    for (std::size_t j = 0; j < off.back(); ++j) m.col[j] = project_graded(*this, n - 1, d_total(n, single_block(*this, n, j)));
    return m;
}

Matrix Resolution::sigma_bar_matrix(int n, bool short_form) {
    std::size_t cols = x_offsets(n - 1).back();
    Matrix m(x_offsets(n).back(), cols);
    for (std::size_t j = 0; j < cols; ++j)
        m.col[j] = project_graded(*this, n, sigma_bar(n, single_block(*this, n - 1, j), short_form));
    return m;
}

Matrix Resolution::bprime_matrix(int n) {
    const QuotientSpace& src = b_space(n);
    const QuotientSpace& dst = b_space(n - 1);
    Matrix m(dst.dim(), src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j) m.col[j] = dst.project(bprime(n, unit_vec(src.lift_index(j))));
    return m;
}

Matrix Resolution::phi_matrix(int n) {
    std::size_t cols = x_offsets(n).back();
    const QuotientSpace& dst = b_space(n);
    Matrix m(dst.dim(), cols);
    for (std::size_t j = 0; j < cols; ++j) m.col[j] = dst.project(phi(n, single_block(*this, n, j)));
    return m;
}

Matrix Resolution::psi_matrix(int n) {
    const QuotientSpace& src = b_space(n);
    Matrix m(x_offsets(n).back(), src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j)
        m.col[j] = project_graded(*this, n, psi(n, unit_vec(src.lift_index(j))));
    return m;
}

Matrix Resolution::omega_matrix(int n) {
    const QuotientSpace& src = b_space(n);
    const QuotientSpace& dst = b_space(n + 1);
    Matrix m(dst.dim(), src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j) m.col[j] = dst.project(omega(n, unit_vec(src.lift_index(j))));
    return m;
}

Vec Resolution::hat_x(int r, int s, const Vec& x) const {
    Outer o = x_outer(r, s);
    const AlgebraData& E = c_->E;
    Accum acc;
    for (const auto& [idx, c] : x) {
        Idx l, m, rr;
        o.split(idx, l, m, rr);
        for (const auto& [a, y] : E.prod(rr, l)) acc.add(a * o.mid + m, c * y);
    }
    return acc.take();
}

Vec Resolution::hat_b(int n, const Vec& y) const {
    Outer o = b_outer(n);
    const AlgebraData& E = c_->E;
    Accum acc;
    for (const auto& [idx, c] : y) {
        Idx l, m, rr;
        o.split(idx, l, m, rr);
        for (const auto& [a, z] : E.prod(rr, l)) acc.add(a * o.mid + m, c * z);
    }
    return acc.take();
}

Matrix Resolution::dhat_component(int l, int r, int s) {
    const QuotientSpace& src = xhat_space(r, s);
    const QuotientSpace& dst = xhat_space(r + l - 1, s - l);
    Matrix m(dst.dim(), src.dim());
    Outer so = xhat_outer(r, s), to = x_outer(r + l - 1, s - l);
    for (std::size_t j = 0; j < src.dim(); ++j)
        m.col[j] = dst.project(hat_of(so, to, unit_vec(src.lift_index(j)),
                                      [&](Idx mid) -> const Vec& { return d_generator(l, r, s, mid); }));
    return m;
}

Matrix Resolution::dhat_matrix(int n) {
    auto it = dhat_cache_.find(n);
    if (it != dhat_cache_.end()) return it->second;
    std::vector<std::size_t> so = xhat_offsets(n);
    if (n == 0) return dhat_cache_[n] = Matrix(0, so.back());
    std::vector<std::size_t> to = xhat_offsets(n - 1);
    Matrix m(to.back(), so.back());
    for (int s = 0; s <= n; ++s) {
        int r = n - s;
        for (int l = r >= 1 ? 0 : 1; l <= s; ++l) {
            Matrix blk = dhat_component(l, r, s);
            m = m + block_embed(blk, to.back(), so.back(), to[s - l], so[s]);
        }
    }
    return dhat_cache_[n] = m;
}

Matrix Resolution::phihat_matrix(int n) {
    auto it = phihat_cache_.find(n);
    if (it != phihat_cache_.end()) return it->second;
    std::vector<std::size_t> so = xhat_offsets(n);
    const QuotientSpace& dst = chat_space(n);
    Matrix m(dst.dim(), so.back());
    Outer bo = b_outer(n);
    for (int s = 0; s <= n; ++s) {
        int r = n - s;
        const QuotientSpace& src = xhat_space(r, s);
        Outer xo = xhat_outer(r, s);
        for (std::size_t j = 0; j < src.dim(); ++j)
            m.col[so[s] + j] = dst.project(hat_of(xo, bo, unit_vec(src.lift_index(j)),
                                                  [&](Idx mid) -> const Vec& { return phi_generator(r, s, mid); }));
    }
    return phihat_cache_[n] = m;
}

Matrix Resolution::psihat_matrix(int n) {
    auto it = psihat_cache_.find(n);
    if (it != psihat_cache_.end()) return it->second;
    std::vector<std::size_t> to = xhat_offsets(n);
    const QuotientSpace& src = chat_space(n);
    Matrix m(to.back(), src.dim());
    Outer co = chat_outer(n);
    for (std::size_t j = 0; j < src.dim(); ++j) {
        Vec col;
        for (int s = 0; s <= n; ++s) {
            Vec part = xhat_space(n - s, s).project(hat_of(co, x_outer(n - s, s), unit_vec(src.lift_index(j)),
                                                           [&](Idx mid) -> const Vec& { return psi_generator(n, mid)[s]; }));
            for (const auto& [i, c] : part) col.emplace_back(i + to[s], c);
        }
        m.col[j] = std::move(col);
    }
    return psihat_cache_[n] = m;
}

Matrix Resolution::omegahat_matrix(int n) {
    auto it = omegahat_cache_.find(n);
    if (it != omegahat_cache_.end()) return it->second;
    const QuotientSpace& src = chat_space(n);
    const QuotientSpace& dst = chat_space(n + 1);
    Matrix m(dst.dim(), src.dim());
    Outer co = chat_outer(n), bo = b_outer(n + 1);
    for (std::size_t j = 0; j < src.dim(); ++j)
        m.col[j] = dst.project(hat_of(co, bo, unit_vec(src.lift_index(j)),
                                      [&](Idx mid) -> const Vec& { return omega_generator(n, mid); }));
    return omegahat_cache_[n] = m;
}

Matrix Resolution::hat_connes(int n) {
    return compose(psihat_matrix(n + 1), compose(canon_.mixed.B.at(n), phihat_matrix(n)));
}

MixedComplexData Resolution::hat_mixed() {
    MixedComplexData m;
    const int top = std::min(top_, canon_.mixed.top());
    for (int n = 0; n <= top; ++n) {
        m.dims.push_back(xhat_offsets(n).back());
        m.b.push_back(dhat_matrix(n));
    }
    for (int n = 0; n < top; ++n) m.B.push_back(hat_connes(n));
    return m;
}

}  // namespace hopfcyclic
