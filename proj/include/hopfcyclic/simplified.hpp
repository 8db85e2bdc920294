#pragma once

#include <map>
#include <string>
#include <vector>

#include "hopfcyclic/closed_forms.hpp"
#include "hopfcyclic/congruence.hpp"
#include "hopfcyclic/refusal.hpp"
#include "hopfcyclic/resolution.hpp"

namespace hopfcyclic {

// The complex bar X_rs = (E (x) Abar^r)nat (x)_k Hbar^s for an invertible
// cocycle, with lifted coordinates [E][Abar^r][Hbar^s], and its isomorphism
// theta with hat X.
class Simplified {
public:
    // Refuses unless the cocycle is invertible.
    explicit Simplified(Resolution& res);

    Resolution& hat() const { return *res_; }
    const CrossedData& crossed() const { return res_->crossed(); }
    int top() const { return res_->top() - 1; }

    Shape lifted_shape(int r, int s) const;
    const QuotientSpace& space(int r, int s);
    std::vector<std::size_t> offsets(int n);

    // Lifted formulas on one lifted basis vector.
    Vec theta_lifted(int r, int s, Idx hat_index) const;        // hat X_rs -> bar X_rs
    Vec theta_inverse_lifted(int r, int s, Idx bar_index) const;  // bar X_rs -> hat X_rs

    Matrix theta(int r, int s);
    Matrix theta_inverse(int r, int s);
    Matrix theta_total(int n);
    Matrix theta_inverse_total(int n);
    // Whether both lifted formulas send relations to zero in bidegree (r, s).
    bool theta_well_defined(int r, int s);

    Matrix d(int l, int r, int s);  // theta dhat^l theta^-1: bar X_rs -> bar X_{r+l-1,s-l}
    Matrix d_total(int n);          // bar X_n -> bar X_{n-1}
    Matrix D(int n);                // theta Dhat theta^-1: bar X_n -> bar X_{n+1}
    // (bar X, dbar, Dbar) through degree top().
    MixedComplexData mixed();

    Vec gamma_inv(Idx h) const;
    Vec lift_h_index(Idx q) const { return unit_vec(res_->hbar().lift_index(q)); }

private:
    Resolution* res_;
    std::map<std::pair<int, int>, QuotientSpace> spaces_;
    std::map<std::pair<int, int>, Matrix> theta_, theta_inv_;
    std::vector<Vec> gamma_inv_;
    std::map<int, Matrix> hat_connes_;
};

// Closed expressions for dbar^0, dbar^1, dbar^2 on a lifted generator of bar X_rs.
Vec closed_dbar(const Simplified& sx, int l, int r, int s, Idx lifted);
std::vector<ClosedFormCheck> compare_bar_closed_forms(Simplified& sx, int bound);

// Runs fn over every term of the tensor product of the n-fold coproducts of
// hs; legs[k][m] is the m-th leg of hs[k].
void for_each_split(const HopfData& H, const std::vector<Idx>& hs, std::size_t n,
                    const std::function<void(const std::vector<std::vector<Idx>>& legs, const Scalar& coeff)>& fn);

// U(h_0, ..., h_i) with values in A, and the checks that pin it down.
struct UTData {
    int arity = 0;                 // i
    Matrix zeta;                   // gamma^-1 S^-1: H -> E
    bool zeta_ok = false;          // zeta S = gamma^-1
    std::size_t tuples = 0;
    std::size_t coinvariant = 0;   // tuples whose U passes nu(U) = U (x) 1
    std::size_t factorizes = 0;    // tuples satisfying the factorization through U
    std::size_t literal_coinvariant = 0;  // same checks for the reading gamma^-1(h0) S(..) as a product
    std::size_t literal_factorizes = 0;
    bool ok() const { return zeta_ok && coinvariant == tuples && factorizes == tuples; }
};
// gamma(h0(1)) gamma^-1(h_i(2)) ... gamma^-1(h_1(2)) gamma^-1(h0(2) S(h_1(1) ... h_i(1))) in E.
Vec u_in_E(const Simplified& sx, const std::vector<Idx>& hs);
// The same element read in A; throws if it is not coinvariant.
Vec u_map(const Simplified& sx, const std::vector<Idx>& hs);
// Refuses unless the antipode is invertible.
UTData ut_maps(const Simplified& sx, int arity);

// eta: bar X_{r,s} -> bar X_{r,s+1} and t_H: bar X_{r,s} -> bar X_{r,s} (s >= 1).
Matrix eta_bar(Simplified& sx, int r, int s);
Matrix tH_bar(Simplified& sx, int r, int s);
bool bar_aux_maps_well_defined(Simplified& sx, int n);
// sum_j (-1)^{js+r} t_H^j eta: bar X_{r,s} -> bar X_{r,s+1}, the part of Dbar raising s.
Matrix eta_sum(Simplified& sx, int r, int s);
// The rotation part of Dbar: bar X_{r,s} -> bar X_{r+1,s}.
Matrix rotation_matrix(Simplified& sx, int r, int s);

// Dbar against the closed formula modulo the filtration and cocycle span,
// through degree `bound`.
CongruenceReport bar_congruence_check(Simplified& sx, int bound, const Sampling& sampling);

}  // namespace hopfcyclic
