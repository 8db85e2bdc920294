#include "hopfcyclic/families.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace hopfcyclic {

namespace {

// Inserts every vector produced by `grow` from the current basis until the
// span stops growing.
void close_under(Subspace& s, const std::function<std::vector<Vec>(const Vec&)>& grow) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Vec> current = s.basis();
        for (const auto& x : current)
            for (const auto& y : grow(x))
                if (s.insert(y)) changed = true;
    }
}

}  // namespace

Subspace hopf_subalgebra(const HopfData& H, const std::vector<Vec>& gens) {
    const std::size_t n = H.dim();
    std::vector<Vec> start = gens;
    start.push_back(H.unit());
    Subspace s = Subspace::span(n, start);
    close_under(s, [&](const Vec& x) {
        std::vector<Vec> out;
        out.push_back(H.antipode.apply(x));
        for (const auto& y : s.basis()) out.push_back(H.alg.mul(x, y));
        // the subcoalgebra generated by x: middle legs of the double coproduct
        std::map<std::pair<Idx, Idx>, Accum> legs;
        for (const auto& t : sweedler(H.coalg, x, 3)) legs[{t.factors[0], t.factors[2]}].add(t.factors[1], t.coeff);
        for (auto& [k, acc] : legs) out.push_back(acc.take());
        return out;
    });
    return s;
}

Subspace cocycle_span(const CrossedData& c, const std::vector<Vec>& hs) {
    Subspace sub = hopf_subalgebra(c.H, hs);
    Subspace out(c.dA());
    for (const auto& u : sub.basis())
        for (const auto& v : sub.basis()) out.insert(c.f(u, v));
    return out;
}

Subspace cocycle_closure(const CrossedData& c, const std::vector<Vec>& hs, const Subspace& acting) {
    Subspace s = cocycle_span(c, hs);
    close_under(s, [&](const Vec& x) {
        std::vector<Vec> out;
        for (const auto& k : c.K.basis()) {
            out.push_back(c.A.mul(k, x));
            out.push_back(c.A.mul(x, k));
        }
        for (const auto& h : acting.basis()) out.push_back(c.act(h, x));
        return out;
    });
    return s;
}

SlotBasis adapted_basis(std::size_t dim, const std::vector<Subspace>& pieces) {
    SlotBasis b;
    b.dim = dim;
    b.basis = Matrix(dim, 0);
    Subspace span(dim);
    std::size_t total = 0;
    auto push = [&](const Vec& v, int cat) {
        if (!span.insert(v)) return;
        b.basis.col.push_back(v);
        b.basis.cols++;
        b.category.push_back(cat);
    };
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        total += pieces[k].dim();
        for (const auto& v : pieces[k].basis()) push(v, static_cast<int>(k));
    }
    b.direct = span.dim() == total;
    for (std::size_t j = 0; j < dim; ++j) push(unit_vec(j), static_cast<int>(pieces.size()));
    auto inv = inverse(b.basis);
    if (!inv) throw std::logic_error("adapted basis is singular");
    b.inverse = *inv;
    return b;
}

SlotBasis single_category(std::size_t dim) { return adapted_basis(dim, {}); }

MonomialFamily::MonomialFamily(const QuotientSpace& q, std::vector<std::shared_ptr<const SlotBasis>> slots,
                               std::function<bool(const Categories&)> pred)
    : q_(&q), slots_(std::move(slots)), pred_(std::move(pred)) {
    std::vector<std::size_t> dims;
    for (const auto& s : slots_) dims.push_back(s->dim);
    shape_ = Shape(dims);
    if (shape_.total() != q.ambient()) throw std::invalid_argument("monomial family shape does not match its space");
}

Vec MonomialFamily::adapted(const Vec& lifted) const {
    Vec v = lifted;
    for (std::size_t k = 0; k < slots_.size(); ++k) {
        const Matrix& inv = slots_[k]->inverse;
        if (inv == Matrix::identity(inv.rows)) continue;
        Accum acc;
        for (const auto& [i, c] : v) {
            std::vector<Idx> t = shape_.decode(i);
            for (const auto& [j, cj] : inv.col[t[k]]) {
                t[k] = j;
                acc.add(shape_.encode(t), c * cj);
            }
        }
        v = acc.take();
    }
    return v;
}

namespace {

Vec outside(const Vec& v, const Shape& shape, const std::vector<std::shared_ptr<const SlotBasis>>& slots,
            const std::function<bool(const Categories&)>& pred) {
    Vec out;
    Categories cats(slots.size());
    for (const auto& [i, c] : v) {
        std::vector<Idx> t = shape.decode(i);
        for (std::size_t k = 0; k < t.size(); ++k) cats[k] = slots[k]->category[t[k]];
        if (!pred(cats)) out.emplace_back(i, c);
    }
    return out;
}

}  // namespace

const Subspace& MonomialFamily::explicit_span() const {
    // the coordinates outside the family of the relations
    if (!span_) {
        std::vector<Vec> gens;
        for (const auto& r : q_->relations().basis()) gens.push_back(outside(adapted(r), shape_, slots_, pred_));
        span_ = Subspace::span(shape_.total(), gens);
    }
    return *span_;
}

bool MonomialFamily::contains(const Vec& quotient_vector) const {
    Vec rest = outside(adapted(q_->lift(quotient_vector)), shape_, slots_, pred_);
    if (q_->is_identity()) return vec_is_zero(rest);
    return explicit_span().contains(rest);
}

std::vector<std::size_t> Sampling::pick(std::size_t count, std::uint64_t stream) const {
    std::vector<std::size_t> all(count);
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (count <= exhaustive) return all;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 gen(seq);
    for (std::size_t k = 0; k < sample; ++k) std::swap(all[k], all[k + gen() % (count - k)]);
    all.resize(sample);
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace hopfcyclic
