#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "hopfcyclic/crossed.hpp"

namespace hopfcyclic {

// The Hopf subalgebra of H generated by the given elements: closed under
// products, the antipode and the subcoalgebra generated by each element.
Subspace hopf_subalgebra(const HopfData& H, const std::vector<Vec>& gens);

// span{f(u, v) : u, v in the Hopf subalgebra generated by hs}, inside A.
Subspace cocycle_span(const CrossedData& c, const std::vector<Vec>& hs);
// The smallest K-subbimodule of A containing cocycle_span(hs) and closed
// under the weak action of `acting` (a subspace of H).
Subspace cocycle_closure(const CrossedData& c, const std::vector<Vec>& hs, const Subspace& acting);

// A basis of a vector space adapted to a list of subspaces: the vectors
// extending the span of pieces[0..k) inside pieces[k] get category k, and
// standard vectors completing the basis get category pieces.size().
struct SlotBasis {
    std::size_t dim = 0;
    Matrix basis;               // adapted vectors as columns
    Matrix inverse;             // standard -> adapted coordinates
    std::vector<int> category;
    bool direct = true;         // false when some piece overlaps the earlier ones
};
SlotBasis adapted_basis(std::size_t dim, const std::vector<Subspace>& pieces);
SlotBasis single_category(std::size_t dim);

using Categories = std::vector<int>;

// The span of the adapted monomials of a tensor space whose category tuple
// satisfies a predicate, seen inside a quotient of the tensor space.
class MonomialFamily {
public:
    MonomialFamily(const QuotientSpace& q, std::vector<std::shared_ptr<const SlotBasis>> slots,
                   std::function<bool(const Categories&)> pred);

    bool contains(const Vec& quotient_vector) const;
    // The vector in adapted monomial coordinates of the lifted space.
    Vec adapted(const Vec& lifted) const;

private:
    const Subspace& explicit_span() const;

    const QuotientSpace* q_;
    std::vector<std::shared_ptr<const SlotBasis>> slots_;
    Shape shape_;
    std::function<bool(const Categories&)> pred_;
    mutable std::optional<Subspace> span_;
};

// Deterministic choice of generator indices: all of them up to `exhaustive`,
// otherwise `sample` distinct indices drawn from a seeded engine.
struct Sampling {
    std::uint64_t seed = 1;
    std::size_t exhaustive = 2000;
    std::size_t sample = 200;

    std::vector<std::size_t> pick(std::size_t count, std::uint64_t stream) const;
};

}  // namespace hopfcyclic
