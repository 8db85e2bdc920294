#include "hopfcyclic/algebra.hpp"

#include <stdexcept>

namespace hopfcyclic {

void Validation::merge(const Validation& o, const std::string& prefix) {
    for (const auto& s : o.issues) issues.push_back(prefix + s);
}

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

Vec kron(const Vec& a, const Vec& b, std::size_t db) {
    Vec out;
    out.reserve(a.size() * b.size());
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) out.emplace_back(i * db + j, x * y);
    return out;
}

std::size_t Shape::total() const {
    std::size_t t = 1;
    for (auto d : dims) t *= d;
    return t;
}

Idx Shape::encode(const std::vector<Idx>& t) const {
    Idx i = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) i = i * dims[k] + t[k];
    return i;
}

std::vector<Idx> Shape::decode(Idx i) const {
    std::vector<Idx> t(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        t[k] = i % dims[k];
        i /= dims[k];
    }
    return t;
}

void add_tensor(Accum& acc, const Shape& shape, const std::vector<Vec>& slots, const Scalar& c) {
    std::vector<std::pair<Idx, Scalar>> cur{{0, c}};
    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (slots[k].empty()) return;
        std::vector<std::pair<Idx, Scalar>> next;
        next.reserve(cur.size() * slots[k].size());
        for (const auto& [i, x] : cur)
            for (const auto& [j, y] : slots[k]) next.emplace_back(i * shape.dims[k] + j, x * y);
        cur.swap(next);
    }
    for (const auto& [i, x] : cur) acc.add(i, x);
}

Vec AlgebraData::mul(const Vec& x, const Vec& y) const {
    Accum acc;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) acc.add(prod(i, j), a * b);
    return acc.take();
}

Vec AlgebraData::mul_basis_left(Idx i, const Vec& y) const {
    Accum acc;
    for (const auto& [j, b] : y) acc.add(prod(i, j), b);
    return acc.take();
}

Vec AlgebraData::mul_basis_right(const Vec& x, Idx j) const {
    Accum acc;
    for (const auto& [i, a] : x) acc.add(prod(i, j), a);
    return acc.take();
}

std::string AlgebraData::label(Idx i) const {
    if (i < labels.size()) return labels[i];
    return "e" + std::to_string(i);
}

AlgebraData make_algebra(std::size_t dim, std::vector<Vec> table, Vec unit, std::vector<std::string> labels) {
    if (table.size() != dim * dim) throw std::invalid_argument("multiplication table must have dim^2 entries");
    AlgebraData a;
    a.dim = dim;
    a.table = std::move(table);
    a.unit = std::move(unit);
    a.labels = std::move(labels);
    return a;
}

namespace {
Scalar one_in(std::uint32_t p) { return p == 0 ? Scalar(1) : Scalar::residue(1, p); }
}  // namespace

AlgebraData group_algebra(const std::vector<std::vector<std::size_t>>& cayley, std::uint32_t p,
                          const std::vector<std::string>& names) {
    std::size_t n = cayley.size();
    std::vector<Vec> table(n * n);
    std::size_t identity = n;
    for (std::size_t i = 0; i < n; ++i) {
        bool is_id = true;
        for (std::size_t j = 0; j < n; ++j) {
            table[i * n + j] = unit_vec(cayley[i][j], one_in(p));
            if (cayley[i][j] != j) is_id = false;
        }
        if (is_id && identity == n) identity = i;
    }
    if (identity == n) throw std::invalid_argument("group table has no identity");
    return make_algebra(n, std::move(table), unit_vec(identity, one_in(p)), names);
}

AlgebraData matrix_algebra(std::size_t n, std::uint32_t p) {
    std::size_t d = n * n;
    std::vector<Vec> table(d * d);
    std::vector<std::string> names;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) names.push_back("E" + std::to_string(a) + std::to_string(b));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (i % n == j / n) table[i * d + j] = unit_vec((i / n) * n + (j % n), one_in(p));
    Accum u;
    for (std::size_t a = 0; a < n; ++a) u.add(a * n + a, one_in(p));
    return make_algebra(d, std::move(table), u.take(), names);
}

AlgebraData ground_field(std::uint32_t p) {
    return make_algebra(1, {unit_vec(0, one_in(p))}, unit_vec(0, one_in(p)), {"1"});
}

Validation check_algebra(const AlgebraData& a) {
    Validation v;
    if (a.table.size() != a.dim * a.dim) {
        v.fail("multiplication table has wrong size");
        return v;
    }
    for (Idx i = 0; i < a.dim; ++i) {
        if (!vec_is_zero(sub(a.mul(a.unit, unit_vec(i)), unit_vec(i))))
            v.fail("unit fails on the left for " + a.label(i));
        if (!vec_is_zero(sub(a.mul(unit_vec(i), a.unit), unit_vec(i)))) v.fail("unit fails on the right for " + a.label(i));
    }
    for (Idx i = 0; i < a.dim; ++i)
        for (Idx j = 0; j < a.dim; ++j)
            for (Idx k = 0; k < a.dim; ++k) {
                Vec l = a.mul_basis_right(a.prod(i, j), k);
                Vec r = a.mul_basis_left(i, a.prod(j, k));
                if (!vec_is_zero(sub(l, r)))
                    v.fail("associativity fails on (" + a.label(i) + "," + a.label(j) + "," + a.label(k) + ")");
            }
    return v;
}

bool SubalgebraData::is_scalars(const AlgebraData& parent) const {
    return span.dim() == 1 && span.contains(parent.unit);
}

SubalgebraData make_subalgebra(const AlgebraData& parent, const std::vector<Vec>& gens) {
    SubalgebraData k;
    k.span = Subspace::span(parent.dim, gens);
    return k;
}

SubalgebraData scalars(const AlgebraData& parent) { return make_subalgebra(parent, {parent.unit}); }

Validation check_subalgebra(const AlgebraData& parent, const SubalgebraData& k) {
    Validation v;
    if (!k.span.contains(parent.unit)) v.fail("subalgebra does not contain the unit");
    const auto& b = k.basis();
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!k.span.contains(parent.mul(b[i], b[j]))) {
                v.fail("subalgebra is not closed under multiplication");
                return v;
            }
    return v;
}

KAction regular_action(const AlgebraData& b, const SubalgebraData& k) {
    KAction act;
    act.dim = b.dim;
    const AlgebraData* bp = &b;
    std::vector<Vec> basis = k.basis();
    act.left = [bp, basis](std::size_t lam, Idx m) { return bp->mul(basis[lam], unit_vec(m)); };
    act.right = [bp, basis](std::size_t lam, Idx m) { return bp->mul(unit_vec(m), basis[lam]); };
    return act;
}

KAction quotient_action(const AlgebraData& b, const SubalgebraData& k, const QuotientSpace& bbar) {
    KAction act;
    act.dim = bbar.dim();
    const AlgebraData* bp = &b;
    const QuotientSpace* qp = &bbar;
    std::vector<Vec> basis = k.basis();
    act.left = [bp, qp, basis](std::size_t lam, Idx m) {
        return qp->project(bp->mul(basis[lam], unit_vec(qp->lift_index(m))));
    };
    act.right = [bp, qp, basis](std::size_t lam, Idx m) {
        return qp->project(bp->mul(unit_vec(qp->lift_index(m)), basis[lam]));
    };
    return act;
}

namespace {

// Places v in slot `slot` of the tuple t and encodes.
void add_slot(Accum& acc, const Shape& shape, std::vector<Idx>& t, std::size_t slot, const Vec& v, const Scalar& c) {
    Idx keep = t[slot];
    for (const auto& [i, x] : v) {
        t[slot] = i;
        acc.add(shape.encode(t), c * x);
    }
    t[slot] = keep;
}

}  // namespace

QuotientSpace relative_tensor(const std::vector<KAction>& factors, std::size_t kdim, bool cyclic, bool k_is_scalars) {
    std::vector<std::size_t> dims;
    for (const auto& f : factors) dims.push_back(f.dim);
    Shape shape(dims);
    std::size_t total = shape.total();
    if (k_is_scalars || total == 0) return QuotientSpace::trivial(total);
    Subspace rel(total);
    std::size_t n = factors.size();
    for (Idx idx = 0; idx < total; ++idx) {
        std::vector<Idx> t = shape.decode(idx);
        for (std::size_t lam = 0; lam < kdim; ++lam) {
            for (std::size_t b = 0; b + 1 < n; ++b) {
                Accum acc;
                add_slot(acc, shape, t, b, factors[b].right(lam, t[b]), Scalar(1));
                add_slot(acc, shape, t, b + 1, factors[b + 1].left(lam, t[b + 1]), Scalar(-1));
                rel.insert(acc.take());
            }
            if (cyclic) {
                Accum acc;
                add_slot(acc, shape, t, 0, factors[0].left(lam, t[0]), Scalar(1));
                add_slot(acc, shape, t, n - 1, factors[n - 1].right(lam, t[n - 1]), Scalar(-1));
                rel.insert(acc.take());
            }
        }
    }
    return QuotientSpace(total, std::move(rel));
}

BimoduleData regular_bimodule(const AlgebraData& a) {
    BimoduleData m;
    m.dim = m.left_dim = m.right_dim = a.dim;
    m.left.resize(a.dim * a.dim);
    m.right.resize(a.dim * a.dim);
    for (Idx i = 0; i < a.dim; ++i)
        for (Idx x = 0; x < a.dim; ++x) {
            m.left[i * a.dim + x] = a.prod(i, x);
            m.right[i * a.dim + x] = a.prod(x, i);
        }
    return m;
}

Validation check_bimodule(const BimoduleData& m, const AlgebraData& l, const AlgebraData& r) {
    Validation v;
    auto left_vec = [&](Idx i, const Vec& x) {
        Accum acc;
        for (const auto& [j, c] : x) acc.add(m.act_left(i, j), c);
        return acc.take();
    };
    auto right_vec = [&](const Vec& x, Idx i) {
        Accum acc;
        for (const auto& [j, c] : x) acc.add(m.act_right(j, i), c);
        return acc.take();
    };
    for (Idx x = 0; x < m.dim; ++x) {
        Accum lu, ru;
        for (const auto& [i, c] : l.unit) lu.add(m.act_left(i, x), c);
        for (const auto& [i, c] : r.unit) ru.add(m.act_right(x, i), c);
        if (lu.take() != unit_vec(x)) v.fail("left unit acts nontrivially");
        if (ru.take() != unit_vec(x)) v.fail("right unit acts nontrivially");
        for (Idx i = 0; i < l.dim; ++i)
            for (Idx j = 0; j < l.dim; ++j) {
                Accum acc;
                for (const auto& [k, c] : l.prod(i, j)) acc.add(m.act_left(k, x), c);
                if (!vec_is_zero(sub(acc.take(), left_vec(i, m.act_left(j, x))))) v.fail("left action not associative");
            }
        for (Idx i = 0; i < r.dim; ++i)
            for (Idx j = 0; j < r.dim; ++j) {
                Accum acc;
                for (const auto& [k, c] : r.prod(i, j)) acc.add(m.act_right(x, k), c);
                if (!vec_is_zero(sub(acc.take(), right_vec(m.act_right(x, i), j)))) v.fail("right action not associative");
            }
        for (Idx i = 0; i < l.dim; ++i)
            for (Idx j = 0; j < r.dim; ++j)
                if (!vec_is_zero(sub(right_vec(m.act_left(i, x), j), left_vec(i, m.act_right(x, j)))))
                    v.fail("actions do not commute");
        if (v.issues.size() > 8) break;
    }
    return v;
}

QuotientSpace tensor_over(const BimoduleData& m, const BimoduleData& n) {
    if (m.right_dim != n.left_dim) throw std::invalid_argument("tensor_over: acting algebras differ");
    KAction a, b;
    a.dim = m.dim;
    b.dim = n.dim;
    a.right = [&m](std::size_t lam, Idx x) { return m.act_right(x, lam); };
    a.left = [](std::size_t, Idx) { return Vec{}; };
    b.left = [&n](std::size_t lam, Idx x) { return n.act_left(lam, x); };
    b.right = [](std::size_t, Idx) { return Vec{}; };
    return relative_tensor({a, b}, m.right_dim, false, false);
}

QuotientSpace natural_quotient(const BimoduleData& m) {
    if (m.left_dim != m.right_dim) throw std::invalid_argument("natural_quotient: needs a bimodule over one algebra");
    KAction a;
    a.dim = m.dim;
    a.left = [&m](std::size_t lam, Idx x) { return m.act_left(lam, x); };
    a.right = [&m](std::size_t lam, Idx x) { return m.act_right(x, lam); };
    return relative_tensor({a}, m.left_dim, true, false);
}

BarSpace bar_space(const AlgebraData& b, const SubalgebraData& k, std::size_t l) {
    QuotientSpace bbar(b.dim, k.span);
    std::vector<KAction> factors;
    factors.push_back(regular_action(b, k));
    for (std::size_t i = 0; i < l; ++i) factors.push_back(quotient_action(b, k, bbar));
    factors.push_back(regular_action(b, k));
    BarSpace out;
    out.carrier = relative_tensor(factors, k.dim(), false, k.is_scalars(b));
    std::vector<std::size_t> dims;
    for (const auto& f : factors) dims.push_back(f.dim);
    Shape shape(dims);
    BimoduleData& m = out.bimodule;
    m.dim = out.carrier.dim();
    m.left_dim = m.right_dim = b.dim;
    m.left.resize(b.dim * m.dim);
    m.right.resize(b.dim * m.dim);
    for (Idx q = 0; q < m.dim; ++q) {
        std::vector<Idx> t = shape.decode(out.carrier.lift_index(q));
        for (Idx i = 0; i < b.dim; ++i) {
            Accum la, ra;
            add_slot(la, shape, t, 0, b.prod(i, t[0]), Scalar(1));
            add_slot(ra, shape, t, l + 1, b.prod(t[l + 1], i), Scalar(1));
            m.left[i * m.dim + q] = out.carrier.project(la.take());
            m.right[i * m.dim + q] = out.carrier.project(ra.take());
        }
    }
    return out;
}

}  // namespace hopfcyclic
