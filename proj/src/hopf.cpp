#include "hopfcyclic/hopf.hpp"

#include <stdexcept>

namespace hopfcyclic {

Vec CoalgebraData::delta(const Vec& x) const {
    Accum acc;
    for (const auto& [i, c] : x) acc.add(comult[i], c);
    return acc.take();
}

Scalar CoalgebraData::eps(const Vec& x) const {
    Scalar s;
    for (const auto& [i, c] : x) s += c * counit[i];
    return s;
}

namespace {

// (Delta (x) id) and (id (x) Delta) applied to a vector over C (x) C.
Vec delta_left(const CoalgebraData& c, const Vec& v) {
    Accum acc;
    std::size_t d = c.dim;
    for (const auto& [idx, x] : v) {
        Idx l = idx / d, r = idx % d;
        for (const auto& [lr, y] : c.comult[l]) acc.add(lr * d + r, x * y);
    }
    return acc.take();
}

Vec delta_right(const CoalgebraData& c, const Vec& v) {
    Accum acc;
    std::size_t d = c.dim;
    for (const auto& [idx, x] : v) {
        Idx l = idx / d, r = idx % d;
        for (const auto& [rr, y] : c.comult[r]) acc.add(l * d * d + rr, x * y);
    }
    return acc.take();
}

Scalar one_like(const Vec& v) {
    if (!v.empty() && v.front().second.prime() != 0) return Scalar::residue(1, v.front().second.prime());
    return Scalar(1);
}

}  // namespace

Validation check_coalgebra(const CoalgebraData& c) {
    Validation v;
    if (c.comult.size() != c.dim || c.counit.size() != c.dim) {
        v.fail("comultiplication or counit has wrong size");
        return v;
    }
    for (Idx i = 0; i < c.dim; ++i) {
        if (!vec_is_zero(sub(delta_left(c, c.comult[i]), delta_right(c, c.comult[i]))))
            v.fail("coassociativity fails on basis " + std::to_string(i));
        Accum l, r;
        for (const auto& [idx, x] : c.comult[i]) {
            Idx a = idx / c.dim, b = idx % c.dim;
            l.add(b, x * c.counit[a]);
            r.add(a, x * c.counit[b]);
        }
        if (!vec_is_zero(sub(l.take(), unit_vec(i)))) v.fail("left counit fails on basis " + std::to_string(i));
        if (!vec_is_zero(sub(r.take(), unit_vec(i)))) v.fail("right counit fails on basis " + std::to_string(i));
    }
    return v;
}

CoalgebraData tensor_coalgebra(const CoalgebraData& c, const CoalgebraData& d) {
    CoalgebraData t;
    t.dim = c.dim * d.dim;
    t.comult.resize(t.dim);
    t.counit.resize(t.dim);
    for (Idx i = 0; i < c.dim; ++i)
        for (Idx j = 0; j < d.dim; ++j) {
            Idx ij = i * d.dim + j;
            t.counit[ij] = c.counit[i] * d.counit[j];
            Accum acc;
            for (const auto& [ci, x] : c.comult[i])
                for (const auto& [dj, y] : d.comult[j]) {
                    Idx c1 = ci / c.dim, c2 = ci % c.dim, d1 = dj / d.dim, d2 = dj % d.dim;
                    acc.add((c1 * d.dim + d1) * t.dim + (c2 * d.dim + d2), x * y);
                }
            t.comult[ij] = acc.take();
        }
    return t;
}

std::vector<SweedlerTerm> sweedler(const CoalgebraData& c, const Vec& h, std::size_t n) {
    if (n == 0) throw std::invalid_argument("sweedler needs n >= 1");
    std::vector<SweedlerTerm> cur;
    for (const auto& [i, x] : h) cur.push_back({{i}, x});
    for (std::size_t k = 1; k < n; ++k) {
        std::map<std::vector<Idx>, Scalar> next;
        for (const auto& t : cur) {
            Idx last = t.factors.back();
            for (const auto& [lr, y] : c.comult[last]) {
                std::vector<Idx> f = t.factors;
                f.back() = lr / c.dim;
                f.push_back(lr % c.dim);
                next[f] += t.coeff * y;
            }
        }
        cur.clear();
        for (auto& [f, x] : next)
            if (!x.is_zero()) cur.push_back({f, x});
    }
    return cur;
}

const std::vector<SweedlerTerm>& HopfData::sweedler_basis(Idx i, std::size_t n) const {
    auto key = std::make_pair(i, n);
    auto it = sweedler_cache_.find(key);
    if (it != sweedler_cache_.end()) return it->second;
    return sweedler_cache_.emplace(key, sweedler(coalg, unit_vec(i, one_like(alg.unit)), n)).first->second;
}

HopfData group_hopf(const std::vector<std::vector<std::size_t>>& cayley, std::uint32_t p, const std::vector<std::string>& names) {
    HopfData h;
    h.alg = group_algebra(cayley, p, names);
    std::size_t n = cayley.size();
    Scalar one = p == 0 ? Scalar(1) : Scalar::residue(1, p);
    h.coalg.dim = n;
    h.coalg.comult.resize(n);
    h.coalg.counit.assign(n, one);
    h.antipode = Matrix(n, n);
    Idx e = h.alg.unit.front().first;
    for (Idx g = 0; g < n; ++g) {
        h.coalg.comult[g] = unit_vec(g * n + g, one);
        for (Idx x = 0; x < n; ++x)
            if (cayley[g][x] == e) h.antipode.col[g] = unit_vec(x, one);
    }
    return h;
}

HopfData trivial_hopf(std::uint32_t p) { return group_hopf({{0}}, p, {"1"}); }

Validation check_hopf(const HopfData& h) {
    Validation v;
    v.merge(check_algebra(h.alg), "algebra: ");
    v.merge(check_coalgebra(h.coalg), "coalgebra: ");
    if (!v.ok()) return v;
    const std::size_t d = h.dim();
    auto mul2 = [&](const Vec& x, const Vec& y) {  // product in H (x) H
        Accum acc;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) {
                Vec l = h.alg.prod(i / d, j / d), r = h.alg.prod(i % d, j % d);
                for (const auto& [p, c] : l)
                    for (const auto& [q, e] : r) acc.add(p * d + q, a * b * c * e);
            }
        return acc.take();
    };
    for (Idx i = 0; i < d; ++i)
        for (Idx j = 0; j < d; ++j) {
            Vec lhs = h.coalg.delta(h.alg.prod(i, j));
            Vec rhs = mul2(h.coalg.comult[i], h.coalg.comult[j]);
            if (!vec_is_zero(sub(lhs, rhs)))
                v.fail("comultiplication not multiplicative on (" + h.alg.label(i) + "," + h.alg.label(j) + ")");
            if (h.coalg.eps(h.alg.prod(i, j)) != h.eps(i) * h.eps(j))
                v.fail("counit not multiplicative on (" + h.alg.label(i) + "," + h.alg.label(j) + ")");
        }
    Accum uu;
    for (const auto& [i, a] : h.alg.unit)
        for (const auto& [j, b] : h.alg.unit) uu.add(i * d + j, a * b);
    if (!vec_is_zero(sub(h.coalg.delta(h.alg.unit), uu.take()))) v.fail("comultiplication does not preserve the unit");
    if (h.coalg.eps(h.alg.unit) != one_like(h.alg.unit))
        v.fail("counit of the unit is not 1");
    if (h.antipode.rows != d || h.antipode.cols != d) {
        v.fail("antipode has wrong shape");
        return v;
    }
    for (Idx i = 0; i < d; ++i) {
        Accum l, r;
        for (const auto& [idx, x] : h.coalg.comult[i]) {
            Idx a = idx / d, b = idx % d;
            l.add(h.alg.mul(h.antipode.col[a], unit_vec(b)), x);
            r.add(h.alg.mul(unit_vec(a), h.antipode.col[b]), x);
        }
        Vec target = scaled(h.alg.unit, h.eps(i));
        if (!vec_is_zero(sub(l.take(), target))) v.fail("antipode axiom m(S (x) id)Delta fails on " + h.alg.label(i));
        if (!vec_is_zero(sub(r.take(), target))) v.fail("antipode axiom m(id (x) S)Delta fails on " + h.alg.label(i));
    }
    return v;
}

Matrix convolution(const Matrix& phi, const Matrix& psi, const CoalgebraData& c, const AlgebraData& a) {
    Matrix out(a.dim, c.dim);
    for (Idx i = 0; i < c.dim; ++i) {
        Accum acc;
        for (const auto& [idx, x] : c.comult[i]) acc.add(a.mul(phi.col[idx / c.dim], psi.col[idx % c.dim]), x);
        out.col[i] = acc.take();
    }
    return out;
}

Matrix convolution_unit(const CoalgebraData& c, const AlgebraData& a) {
    Matrix out(a.dim, c.dim);
    for (Idx i = 0; i < c.dim; ++i) out.col[i] = scaled(a.unit, c.counit[i]);
    return out;
}

std::optional<Matrix> convolution_inverse(const Matrix& phi, const CoalgebraData& c, const AlgebraData& a) {
    const std::size_t da = a.dim, dc = c.dim;
    // Unknown psi entry (row o, column j) is variable j * da + o.
    Matrix sys(2 * dc * da, dc * da);
    std::vector<Accum> cols(dc * da);
    for (Idx i = 0; i < dc; ++i)
        for (const auto& [idx, x] : c.comult[i]) {
            Idx c1 = idx / dc, c2 = idx % dc;
            for (Idx o = 0; o < da; ++o) {
                // phi * psi: phi(c1) e_o contributes to variable (o, c2)
                for (const auto& [r, y] : a.mul(phi.col[c1], unit_vec(o))) cols[c2 * da + o].add(i * da + r, x * y);
                // psi * phi: e_o phi(c2) contributes to variable (o, c1)
                for (const auto& [r, y] : a.mul(unit_vec(o), phi.col[c2]))
                    cols[c1 * da + o].add(dc * da + i * da + r, x * y);
            }
        }
    for (std::size_t j = 0; j < cols.size(); ++j) sys.col[j] = cols[j].take();
    Accum rhs;
    for (Idx i = 0; i < dc; ++i)
        for (const auto& [r, y] : a.unit) {
            rhs.add(i * da + r, y * c.counit[i]);
            rhs.add(dc * da + i * da + r, y * c.counit[i]);
        }
    auto sol = solve(sys, rhs.take());
    if (!sol) return std::nullopt;
    Matrix psi(da, dc);
    std::vector<Accum> pc(dc);
    for (const auto& [var, x] : *sol) pc[var / da].add(var % da, x);
    for (Idx j = 0; j < dc; ++j) psi.col[j] = pc[j].take();
    return psi;
}

std::optional<IntegralElement> find_integral(const HopfData& h) {
    const std::size_t d = h.dim();
    // Unknown t; equations x t - eps(x) t = 0 for basis x, eps(t) = 1.
    Matrix sys(d * d + 1, d);
    for (Idx j = 0; j < d; ++j) {
        Accum col;
        for (Idx x = 0; x < d; ++x) {
            for (const auto& [r, y] : h.alg.prod(x, j)) col.add(x * d + r, y);
            col.add(x * d + j, -h.eps(x));
        }
        col.add(d * d, h.eps(j));
        sys.col[j] = col.take();
    }
    auto sol = solve(sys, unit_vec(d * d, one_like(h.alg.unit)));
    if (!sol) return std::nullopt;
    IntegralElement t;
    t.t = *sol;
    t.two_sided = true;
    for (Idx x = 0; x < d && t.two_sided; ++x)
        if (!vec_is_zero(sub(h.alg.mul(t.t, unit_vec(x)), scaled(t.t, h.eps(x))))) t.two_sided = false;
    return t;
}

CommutatorQuotient hcheck(const HopfData& h) {
    const std::size_t d = h.dim();
    Subspace comm(d);
    for (Idx i = 0; i < d; ++i)
        for (Idx j = i + 1; j < d; ++j) comm.insert(sub(h.alg.prod(i, j), h.alg.prod(j, i)));
    CommutatorQuotient out;
    out.quotient = QuotientSpace(d, comm);
    const QuotientSpace& q = out.quotient;
    out.projection = q.projection();
    // coideal: Delta[H,H] in [H,H] (x) H + H (x) [H,H]; eps[H,H] = 0
    for (const auto& r : comm.basis()) {
        if (!h.coalg.eps(r).is_zero()) throw std::logic_error("commutator span is not killed by the counit");
        Accum acc;
        for (const auto& [idx, x] : h.coalg.delta(r)) {
            for (const auto& [a, y] : q.project(unit_vec(idx / d)))
                for (const auto& [b, z] : q.project(unit_vec(idx % d))) acc.add(a * q.dim() + b, x * y * z);
        }
        if (!acc.empty() && !vec_is_zero(acc.take())) throw std::logic_error("commutator span is not a coideal");
    }
    CoalgebraData& c = out.coalg;
    c.dim = q.dim();
    c.comult.resize(c.dim);
    c.counit.resize(c.dim);
    for (Idx j = 0; j < c.dim; ++j) {
        Vec lifted = q.lift(unit_vec(j, one_like(h.alg.unit)));
        c.counit[j] = h.coalg.eps(lifted);
        Accum acc;
        for (const auto& [idx, x] : h.coalg.delta(lifted))
            for (const auto& [a, y] : q.project(unit_vec(idx / d)))
                for (const auto& [b, z] : q.project(unit_vec(idx % d))) acc.add(a * c.dim + b, x * y * z);
        c.comult[j] = acc.take();
    }
    out.cocommutative = true;
    for (Idx j = 0; j < c.dim && out.cocommutative; ++j) {
        Accum tw;
        for (const auto& [idx, x] : c.comult[j]) tw.add((idx % c.dim) * c.dim + idx / c.dim, x);
        if (!vec_is_zero(sub(tw.take(), c.comult[j]))) out.cocommutative = false;
    }
    return out;
}

bool is_subcoalgebra(const CoalgebraData& c, const Subspace& sub) {
    QuotientSpace q(c.dim, sub);
    for (const auto& v : sub.basis()) {
        // Delta(v) in C' (x) C' iff both one-sided projections vanish
        Accum l, r;
        for (const auto& [idx, x] : c.delta(v)) {
            for (const auto& [a, y] : q.project(unit_vec(idx / c.dim))) l.add(a * c.dim + idx % c.dim, x * y);
            for (const auto& [b, y] : q.project(unit_vec(idx % c.dim))) r.add((idx / c.dim) * q.dim() + b, x * y);
        }
        if (!vec_is_zero(l.take()) || !vec_is_zero(r.take())) return false;
    }
    return true;
}

Validation check_coaction(std::size_t n_dim, const Matrix& rho, const CoalgebraData& c) {
    Validation v;
    for (Idx n = 0; n < n_dim; ++n) {
        Accum counit;
        Accum l, r;
        for (const auto& [idx, x] : rho.col[n]) {
            Idx m = idx / c.dim, k = idx % c.dim;
            counit.add(m, x * c.counit[k]);
            for (const auto& [kk, y] : c.comult[k]) r.add(m * c.dim * c.dim + kk, x * y);
            for (const auto& [idx2, y] : rho.col[m]) l.add((idx2 / c.dim) * c.dim * c.dim + (idx2 % c.dim) * c.dim + k, x * y);
        }
        if (!vec_is_zero(sub(counit.take(), unit_vec(n)))) v.fail("coaction not counital at " + std::to_string(n));
        if (!vec_is_zero(sub(l.take(), r.take()))) v.fail("coaction not coassociative at " + std::to_string(n));
    }
    return v;
}

Subspace comodule_component(std::size_t n_dim, const Matrix& rho, const CoalgebraData& c, const Subspace& sub) {
    if (!is_subcoalgebra(c, sub)) throw std::invalid_argument("comodule_component: not a subcoalgebra");
    QuotientSpace q(c.dim, sub);
    Matrix m(n_dim * q.dim(), n_dim);
    for (Idx n = 0; n < n_dim; ++n) {
        Accum acc;
        for (const auto& [idx, x] : rho.col[n])
            for (const auto& [b, y] : q.project(unit_vec(idx % c.dim))) acc.add((idx / c.dim) * q.dim() + b, x * y);
        m.col[n] = acc.take();
    }
    return kernel(m);
}

Validation check_decomposition(const CoalgebraData& c, const std::vector<Subspace>& parts) {
    Validation v;
    Subspace total(c.dim);
    std::size_t dims = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!is_subcoalgebra(c, parts[i])) v.fail("component " + std::to_string(i) + " is not a subcoalgebra");
        dims += parts[i].dim();
        total = sum(total, parts[i]);
    }
    if (total.dim() != c.dim || dims != c.dim) v.fail("components do not form a direct sum decomposition");
    return v;
}

}  // namespace hopfcyclic
