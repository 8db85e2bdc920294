#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hopfcyclic/linalg.hpp"

namespace hopfcyclic {

struct Validation {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
    void fail(std::string what) { issues.push_back(std::move(what)); }
    void merge(const Validation& o, const std::string& prefix = "");
};

// Mixed-radix index over a list of factor dimensions; first factor most
// significant.
struct Shape {
    std::vector<std::size_t> dims;

    Shape() = default;
    explicit Shape(std::vector<std::size_t> d) : dims(std::move(d)) {}
    std::size_t total() const;
    std::size_t size() const { return dims.size(); }
    Idx encode(const std::vector<Idx>& t) const;
    std::vector<Idx> decode(Idx i) const;
};

std::size_t ipow(std::size_t b, int e);
// sum a_i b_j at index i * db + j
Vec kron(const Vec& a, const Vec& b, std::size_t db);

// acc += c * (slots[0] (x) slots[1] (x) ...) in the index of `shape`.
void add_tensor(Accum& acc, const Shape& shape, const std::vector<Vec>& slots, const Scalar& c);

struct AlgebraData {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<Vec> table;  // table[i * dim + j] = e_i e_j
    Vec unit;

    const Vec& prod(Idx i, Idx j) const { return table[i * dim + j]; }
    Vec mul(const Vec& x, const Vec& y) const;
    Vec mul_basis_left(Idx i, const Vec& y) const;
    Vec mul_basis_right(const Vec& x, Idx j) const;
    std::string label(Idx i) const;
};

AlgebraData make_algebra(std::size_t dim, std::vector<Vec> table, Vec unit, std::vector<std::string> labels = {});
AlgebraData group_algebra(const std::vector<std::vector<std::size_t>>& cayley, std::uint32_t p, const std::vector<std::string>& names);
AlgebraData matrix_algebra(std::size_t n, std::uint32_t p);
AlgebraData ground_field(std::uint32_t p);
Validation check_algebra(const AlgebraData& a);

struct SubalgebraData {
    Subspace span;  // inside the parent, echelonized

    std::size_t dim() const { return span.dim(); }
    const std::vector<Vec>& basis() const { return span.basis(); }
    bool is_scalars(const AlgebraData& parent) const;
};

SubalgebraData make_subalgebra(const AlgebraData& parent, const std::vector<Vec>& gens);
SubalgebraData scalars(const AlgebraData& parent);
Validation check_subalgebra(const AlgebraData& parent, const SubalgebraData& k);

// A K-bimodule given by action callbacks on its own basis; lam ranges over
// a basis of K.
struct KAction {
    std::size_t dim = 0;
    std::function<Vec(std::size_t lam, Idx m)> left;
    std::function<Vec(std::size_t lam, Idx m)> right;
};

KAction regular_action(const AlgebraData& b, const SubalgebraData& k);
KAction quotient_action(const AlgebraData& b, const SubalgebraData& k, const QuotientSpace& bbar);

// M_0 (x)_K M_1 (x)_K ... as a quotient of the k-tensor product; cyclic adds
// the commutators lam.m - m.lam of the natural quotient.
QuotientSpace relative_tensor(const std::vector<KAction>& factors, std::size_t kdim, bool cyclic, bool k_is_scalars);

struct BimoduleData {
    std::size_t dim = 0;
    std::size_t left_dim = 0;   // dimension of the left acting algebra
    std::size_t right_dim = 0;  // dimension of the right acting algebra
    std::vector<Vec> left;      // left[i * dim + m] = e_i . m
    std::vector<Vec> right;     // right[j * dim + m] = m . e_j

    Vec act_left(Idx i, Idx m) const { return left[i * dim + m]; }
    Vec act_right(Idx m, Idx j) const { return right[j * dim + m]; }
};

BimoduleData regular_bimodule(const AlgebraData& a);
Validation check_bimodule(const BimoduleData& m, const AlgebraData& l, const AlgebraData& r);

// M (x)_R N for M a right R-module and N a left R-module.
QuotientSpace tensor_over(const BimoduleData& m, const BimoduleData& n);
// M / [M, K] for a K-bimodule M.
QuotientSpace natural_quotient(const BimoduleData& m);

struct BarSpace {
    QuotientSpace carrier;    // over B (x)_k Dbar^l (x)_k B
    BimoduleData bimodule;    // outer B-actions in quotient coordinates
};
// B (x)_K Dbar^{(x)_K l} (x)_K B with Dbar = B/K.
BarSpace bar_space(const AlgebraData& b, const SubalgebraData& k, std::size_t l);

}  // namespace hopfcyclic
