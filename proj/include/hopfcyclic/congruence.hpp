#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hopfcyclic/families.hpp"
#include "hopfcyclic/resolution.hpp"

namespace hopfcyclic {

// gamma(h_1..h_s) * a_1..a_r in lifted [Ebar^{r+s}] coordinates.
Vec star_product(const Resolution& res, const std::vector<Idx>& hs, const std::vector<Vec>& as);

// Auxiliary maps on hat X in quotient coordinates.
//   eta:     [a0 g(h0) (x)_A g(h_1..h_i) (x) a] -> [g(h0) (x)_A g(h_1..h_i) (x) a (x) a0]
//   t_H:     [e0 (x)_A g(h_1..h_i) (x) a]       -> [g(h_i(2)) (x)_A e0 (x)_A g(h_1..h_{i-1}) (x) a^{h_i(1)}]
//   t_A:     [a0 g(h0) (x)_A g(h_1..h_i) (x) a] -> [g(h0(2)) (x)_A g(h_1(2)..h_i(2)) (x) a_2.. (x) a0 a_1^{h0(1)..h_i(1)}]
//   prepend: x -> 1 (x)_A x, raising s by one
Matrix eta_hat_matrix(Resolution& res, int n);      // hat X_n -> hat X_{n+1}
Matrix tH_hat_matrix(Resolution& res, int n);       // hat X_n -> hat X_n, zero on s = 0
Matrix tA_hat_matrix(Resolution& res, int n);       // hat X_n -> hat X_n, zero on r = 0
Matrix prepend_one_matrix(Resolution& res, int n);  // hat X_n -> hat X_{n+1}
// Whether the lifted formulas of the four maps send relations of the hat
// spaces to zero through degree n.
bool aux_maps_well_defined(Resolution& res, int n);

struct CongruenceCheck {
    std::string name;
    int degree = 0;
    std::size_t population = 0;
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::vector<std::string> witnesses;  // first failing generators
    bool binding = true;                 // false for diagnostics that do not gate ok()
};

struct CongruenceReport {
    std::uint64_t seed = 0;
    std::vector<CongruenceCheck> checks;
    bool ok() const;
};

// The statements about phihat, omegahat, psihat and Dhat through degree
// `bound`, each checked on the chosen generators.
CongruenceReport hat_congruences(Resolution& res, int bound, const Sampling& sampling);
// d^l (l >= 2) of each generator of X_rs, r + s <= bound, lies in the span
// with one a_j in f<h> and l - 2 further a_j in the closure of f<h>.
CongruenceReport higher_differential_ranges(Resolution& res, int bound, const Sampling& sampling);

}  // namespace hopfcyclic
