#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hopfcyclic/algebra.hpp"

namespace hopfcyclic {

struct CoalgebraData {
    std::size_t dim = 0;
    std::vector<Vec> comult;       // comult[i] over index l * dim + r
    std::vector<Scalar> counit;

    Vec delta(const Vec& x) const;
    Scalar eps(const Vec& x) const;
};

Validation check_coalgebra(const CoalgebraData& c);
CoalgebraData tensor_coalgebra(const CoalgebraData& c, const CoalgebraData& d);

// One term of an iterated coproduct: factors are basis indices.
struct SweedlerTerm {
    std::vector<Idx> factors;
    Scalar coeff;
};

struct HopfData {
    AlgebraData alg;
    CoalgebraData coalg;
    Matrix antipode;

    std::size_t dim() const { return alg.dim; }
    // Delta^{(n-1)} of a basis element, cached.
    const std::vector<SweedlerTerm>& sweedler_basis(Idx i, std::size_t n) const;
    Scalar eps(Idx i) const { return coalg.counit[i]; }
    Vec unit() const { return alg.unit; }

private:
    mutable std::map<std::pair<Idx, std::size_t>, std::vector<SweedlerTerm>> sweedler_cache_;
};

HopfData group_hopf(const std::vector<std::vector<std::size_t>>& cayley, std::uint32_t p, const std::vector<std::string>& names);
HopfData trivial_hopf(std::uint32_t p);
Validation check_hopf(const HopfData& h);

std::vector<SweedlerTerm> sweedler(const CoalgebraData& c, const Vec& h, std::size_t n);

// Convolution inverse of phi: C -> A (columns indexed by C), or nothing.
std::optional<Matrix> convolution_inverse(const Matrix& phi, const CoalgebraData& c, const AlgebraData& a);
Matrix convolution(const Matrix& phi, const Matrix& psi, const CoalgebraData& c, const AlgebraData& a);
Matrix convolution_unit(const CoalgebraData& c, const AlgebraData& a);

struct IntegralElement {
    Vec t;
    bool two_sided = false;
};
std::optional<IntegralElement> find_integral(const HopfData& h);

struct CommutatorQuotient {
    CoalgebraData coalg;     // the quotient coalgebra H / [H, H]
    QuotientSpace quotient;  // carries the projection from H
    Matrix projection;
    bool cocommutative = false;
};
CommutatorQuotient hcheck(const HopfData& h);

bool is_subcoalgebra(const CoalgebraData& c, const Subspace& sub);
// rho maps N into N (x) C with index n * dim C + c.
Subspace comodule_component(std::size_t n_dim, const Matrix& rho, const CoalgebraData& c, const Subspace& sub);
Validation check_coaction(std::size_t n_dim, const Matrix& rho, const CoalgebraData& c);
// Validates that the subspaces form a direct-sum decomposition into subcoalgebras.
Validation check_decomposition(const CoalgebraData& c, const std::vector<Subspace>& parts);

}  // namespace hopfcyclic
