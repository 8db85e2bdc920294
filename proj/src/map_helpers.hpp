#pragma once

#include <functional>
#include <vector>

#include "hopfcyclic/homcore.hpp"

namespace hopfcyclic::detail {

// The matrix between quotients induced by a formula on lifted basis vectors.
inline Matrix lifted_map(const QuotientSpace& src, const QuotientSpace& dst, const std::function<Vec(Idx)>& fn) {
    Matrix m(dst.dim(), src.dim());
    for (Idx j = 0; j < src.dim(); ++j) m.col[j] = dst.project(fn(src.lift_index(j)));
    return m;
}

// Whether the lifted formula sends every relation of src into the relations of dst.
inline bool respects_relations(const QuotientSpace& src, const QuotientSpace& dst, const std::function<Vec(Idx)>& fn) {
    for (const auto& rel : src.relations().basis()) {
        Accum acc;
        for (const auto& [i, x] : rel) acc.add(fn(i), x);
        if (!dst.project(acc.take()).empty()) return false;
    }
    return true;
}

inline Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows;
        cols += b.cols;
    }
    Matrix out(rows, cols);
    std::size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        out = out + block_embed(b, rows, cols, ro, co);
        ro += b.rows;
        co += b.cols;
    }
    return out;
}

}  // namespace hopfcyclic::detail
