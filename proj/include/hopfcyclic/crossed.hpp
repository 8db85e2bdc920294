#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfcyclic/hopf.hpp"

namespace hopfcyclic {

struct CrossedData {
    AlgebraData A;
    HopfData H;
    std::vector<Vec> action;    // action[h * dim A + a] = a^h
    std::vector<Vec> cocycle;   // cocycle[h * dim H + l] = f(h, l)
    SubalgebraData K;
    AlgebraData E;              // basis a # h at index a * dim H + h
    std::string name;

    // capability flags, computed by build
    bool f_invertible = false;
    bool f_in_K = false;
    bool antipode_invertible = false;
    std::vector<Vec> cocycle_inverse;  // same layout as cocycle
    Matrix antipode_inverse;

    std::size_t dA() const { return A.dim; }
    std::size_t dH() const { return H.dim(); }
    std::size_t dE() const { return E.dim; }
    Idx e_index(Idx a, Idx h) const { return a * dH() + h; }

    Vec act(Idx h, const Vec& a) const;
    Vec act(const Vec& h, const Vec& a) const;
    const Vec& f(Idx h, Idx l) const { return cocycle[h * dH() + l]; }
    Vec f(const Vec& h, const Vec& l) const;
    Vec f_inv(const Vec& h, const Vec& l) const;

    // a # 1 and 1 # h as elements of E
    Vec embed_a(const Vec& a) const;
    Vec gamma(const Vec& h) const;
    Vec gamma_basis(Idx h) const;
    Vec gamma_inverse(const Vec& h) const;
    Vec multiply(const Vec& x, const Vec& y) const { return E.mul(x, y); }
    Vec one_H() const { return H.alg.unit; }
    Vec one_A() const { return A.unit; }
    Scalar one() const;
};

struct BuildResult {
    std::optional<CrossedData> data;
    Validation report;
};

// Validates the inputs and the crossed-product conditions, then builds E.
BuildResult build(AlgebraData A, HopfData H, std::vector<Vec> action, std::vector<Vec> cocycle, SubalgebraData K,
                  std::string name = "");

Validation check_weak_action(const CrossedData& c);
Validation check_cocycle(const CrossedData& c);
Validation check_associative_direct(const CrossedData& c);
Validation check_K_stable(const CrossedData& c);

// gamma^{-1} through the convolution solver, for cross-checking the closed formula.
std::optional<Matrix> gamma_inverse_solver(const CrossedData& c);

// Diagonal action (a_1, ..., a_r)^h over the lifted index of A^{(x) r}.
Vec act_tuple(const CrossedData& c, const std::vector<Vec>& as, const Vec& h);
// a^{h_1 ... h_j} = (...(a^{h_j})^{h_{j-1}}...)^{h_1}
Vec act_iterated(const CrossedData& c, const Vec& a, const std::vector<Vec>& hs);

// Span of gamma(H) inside E.
Subspace hopf_image(const CrossedData& c);

}  // namespace hopfcyclic
