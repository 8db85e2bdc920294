#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hopfcyclic/scalar.hpp"

namespace hopfcyclic {

using Idx = std::uint64_t;

// Sorted by index, no stored zeros.
using Vec = std::vector<std::pair<Idx, Scalar>>;

Vec unit_vec(Idx i, const Scalar& c = Scalar(1));
Vec dense_to_vec(const std::vector<Scalar>& d);
std::vector<Scalar> vec_to_dense(const Vec& v, std::size_t dim);
Scalar coeff(const Vec& v, Idx i);
Vec scaled(const Vec& v, const Scalar& c);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
void axpy(Vec& acc, const Scalar& c, const Vec& v);  // acc += c*v
bool vec_is_zero(const Vec& v);

// Unordered accumulator for building vectors term by term.
class Accum {
public:
    void add(Idx i, const Scalar& c);
    void add(const Vec& v, const Scalar& c = Scalar(1));
    Vec take();
    bool empty() const { return m_.empty(); }

private:
    std::unordered_map<Idx, Scalar> m_;
};

// Column-major sparse matrix: cols[j] is the image of basis vector j.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Vec> col;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), col(c) {}

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t r, std::size_t c) { return Matrix(r, c); }
    static Matrix from_rows(std::size_t cols, const std::vector<std::vector<Scalar>>& rows);

    Vec apply(const Vec& v) const;
    Scalar at(std::size_t i, std::size_t j) const { return coeff(col[j], i); }
    void set_col(std::size_t j, Vec v) { col[j] = std::move(v); }
    bool is_zero() const;
    std::size_t nnz() const;
    std::vector<Vec> row_vectors() const;
    Matrix transpose() const;
    friend bool operator==(const Matrix& a, const Matrix& b);
};

Matrix compose(const Matrix& a, const Matrix& b);  // a after b
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Scalar& c, const Matrix& a);

// Reduced echelon basis of a span. Rows are kept fully reduced and sorted by
// pivot, so the basis is unique for a given span.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
    static Subspace span(std::size_t ambient, const std::vector<Vec>& gens);
    static Subspace full(std::size_t ambient);

    // Returns true when v enlarged the span.
    bool insert(const Vec& v);
    Vec reduce(const Vec& v) const;
    bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }
    // Fully reduced rows in increasing pivot order.
    const std::vector<Vec>& basis() const;
    std::vector<Idx> pivots() const;
    bool is_pivot(Idx c) const { return pivot_row_.count(c) != 0; }
    friend bool operator==(const Subspace& a, const Subspace& b);

private:
    void finalize() const;

    std::size_t ambient_ = 0;
    std::vector<Vec> rows_;               // leading entry 1 at the pivot
    std::map<Idx, std::size_t> pivot_row_;
    mutable std::vector<Vec> reduced_;
    mutable std::unordered_map<Idx, std::size_t> reduced_pos_;
    mutable bool reduced_valid_ = true;
};

bool member(const Vec& v, const Subspace& s);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

struct RrefResult {
    Matrix echelon;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};
RrefResult rref(const Matrix& m);

struct KernelImage {
    Subspace kernel;
    Subspace image;
};
KernelImage kernel_image(const Matrix& m);
Subspace kernel(const Matrix& m);
Subspace image(const Matrix& m);
std::size_t rank(const Matrix& m);

// Some x with m x = b, or nothing.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
std::optional<Matrix> inverse(const Matrix& m);

class QuotientSpace {
public:
    QuotientSpace() = default;
    QuotientSpace(std::size_t ambient, Subspace relations);
    static QuotientSpace trivial(std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return ambient_ - relations_.dim(); }
    const Subspace& relations() const { return relations_; }
    bool is_identity() const { return relations_.dim() == 0; }

    Vec project(const Vec& v) const;
    Vec lift(const Vec& q) const;
    Idx lift_index(Idx q) const { return is_identity() ? q : free_[q]; }
    Matrix projection() const;
    Matrix section() const;

private:
    std::size_t ambient_ = 0;
    Subspace relations_;
    std::vector<Idx> free_;                   // ambient index of quotient coordinate
    std::unordered_map<Idx, Idx> free_pos_;  // inverse of free_
};

}  // namespace hopfcyclic
