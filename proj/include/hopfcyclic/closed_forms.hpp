#pragma once

#include <string>
#include <vector>

#include "hopfcyclic/resolution.hpp"

namespace hopfcyclic {

// Closed expressions for the low differentials, evaluated on generators and
// returned in lifted coordinates.
//   X:    generator 1 (x) mid (x) 1 of X_rs
//   hat:  generator (e0; mid) of hat X_rs
Vec closed_d1(Resolution& res, int r, int s, Idx mid);            // X_{r,s-1}
Vec closed_d2(Resolution& res, int r, int s, Idx mid);            // X_{r+1,s-2}
Vec closed_dhat0(Resolution& res, int r, int s, Idx e0, Idx mid);  // hat X_{r-1,s}
Vec closed_dhat1(Resolution& res, int r, int s, Idx e0, Idx mid);  // hat X_{r,s-1}
Vec closed_dhat2(Resolution& res, int r, int s, Idx e0, Idx mid);  // hat X_{r+1,s-2}

// Diagonal action of a basis element of H on a lifted A^{(x) r} vector.
Vec act_on_tensor(const CrossedData& c, const Vec& t, int r, Idx h);
// Slotwise projection A^{(x) r} -> Abar^{(x) r}.
Vec project_abar_tensor(const Resolution& res, const Vec& t, int r);

// sum_i (-1)^i (a_{1i}^{l(1)})^{h(1)} (x) f(h(2), l(2)) (x) a_{i+1,r}^{h(3) l(3)}
// paired with h(4) l(4); the tuple lands in Abar^{(x) r+1}.
struct TwistedTerm {
    Vec tuple;
    Vec tail;  // element of H
};
std::vector<TwistedTerm> twisted_insert(const Resolution& res, const std::vector<Idx>& as, Idx h, Idx l);

struct ClosedFormCheck {
    std::string name;
    int r = 0, s = 0;
    std::size_t generators = 0;
    std::size_t mismatches = 0;
};
// Compares every closed expression with the recursive one for r + s <= bound.
std::vector<ClosedFormCheck> compare_closed_forms(Resolution& res, int bound);

}  // namespace hopfcyclic
