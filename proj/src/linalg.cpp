#include "hopfcyclic/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace hopfcyclic {

Vec unit_vec(Idx i, const Scalar& c) {
    if (c.is_zero()) return {};
    return {{i, c}};
}

Vec dense_to_vec(const std::vector<Scalar>& d) {
    Vec v;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!d[i].is_zero()) v.emplace_back(i, d[i]);
    return v;
}

std::vector<Scalar> vec_to_dense(const Vec& v, std::size_t dim) {
    std::vector<Scalar> d(dim);
    for (const auto& [i, c] : v) {
        if (i >= dim) throw std::out_of_range("vector index beyond dimension");
        d[i] = c;
    }
    return d;
}

Scalar coeff(const Vec& v, Idx i) {
    auto it = std::lower_bound(v.begin(), v.end(), i, [](const auto& e, Idx k) { return e.first < k; });
    if (it != v.end() && it->first == i) return it->second;
    return Scalar();
}

Vec scaled(const Vec& v, const Scalar& c) {
    if (c.is_zero()) return {};
    Vec out;
    out.reserve(v.size());
    for (const auto& [i, x] : v) {
        Scalar y = x * c;
        if (!y.is_zero()) out.emplace_back(i, y);
    }
    return out;
}

namespace {

Vec merge(const Vec& a, const Vec& b, const Scalar& cb) {
    Vec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Scalar y = b[j].second * cb;
            if (!y.is_zero()) out.emplace_back(b[j].first, y);
            ++j;
        } else {
            Scalar y = a[i].second + b[j].second * cb;
            if (!y.is_zero()) out.emplace_back(a[i].first, y);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Vec add(const Vec& a, const Vec& b) { return merge(a, b, Scalar(1)); }
Vec sub(const Vec& a, const Vec& b) { return merge(a, b, Scalar(-1)); }

void axpy(Vec& acc, const Scalar& c, const Vec& v) {
    if (c.is_zero() || v.empty()) return;
    acc = merge(acc, v, c);
}

bool vec_is_zero(const Vec& v) { return v.empty(); }

void Accum::add(Idx i, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = m_.try_emplace(i, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) m_.erase(it);
    }
}

void Accum::add(const Vec& v, const Scalar& c) {
    if (c.is_zero()) return;
    for (const auto& [i, x] : v) add(i, x * c);
}

Vec Accum::take() {
    Vec out(m_.begin(), m_.end());
    m_.clear();
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.col[i] = unit_vec(i);
    return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<std::vector<Scalar>>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (!rows[i].at(j).is_zero()) m.col[j].emplace_back(i, rows[i][j]);
    return m;
}

Vec Matrix::apply(const Vec& v) const {
    Accum acc;
    for (const auto& [j, c] : v) {
        if (j >= cols) throw std::out_of_range("matrix apply: index beyond column count");
        acc.add(col[j], c);
    }
    return acc.take();
}

bool Matrix::is_zero() const {
    for (const auto& c : col)
        if (!c.empty()) return false;
    return true;
}

std::size_t Matrix::nnz() const {
    std::size_t n = 0;
    for (const auto& c : col) n += c.size();
    return n;
}

std::vector<Vec> Matrix::row_vectors() const {
    std::vector<Vec> r(rows);
    for (std::size_t j = 0; j < cols; ++j)
        for (const auto& [i, c] : col[j]) r[i].emplace_back(j, c);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix t(cols, rows);
    t.col = row_vectors();
    return t;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.col == b.col;
}

Matrix compose(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("compose: dimension mismatch");
    Matrix m(a.rows, b.cols);
    for (std::size_t j = 0; j < b.cols; ++j) m.col[j] = a.apply(b.col[j]);
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("matrix sum: dimension mismatch");
    Matrix m(a.rows, a.cols);
    for (std::size_t j = 0; j < a.cols; ++j) m.col[j] = add(a.col[j], b.col[j]);
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("matrix difference: dimension mismatch");
    Matrix m(a.rows, a.cols);
    for (std::size_t j = 0; j < a.cols; ++j) m.col[j] = sub(a.col[j], b.col[j]);
    return m;
}

Matrix operator*(const Scalar& c, const Matrix& a) {
    Matrix m(a.rows, a.cols);
    for (std::size_t j = 0; j < a.cols; ++j) m.col[j] = scaled(a.col[j], c);
    return m;
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::span(std::size_t ambient, const std::vector<Vec>& gens) {
    Subspace s(ambient);
    for (const auto& g : gens) s.insert(g);
    return s;
}

Subspace Subspace::full(std::size_t ambient) {
    Subspace s(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.insert(unit_vec(i));
    return s;
}

namespace {

// Eliminates pivot columns in increasing order; rows lead with 1 at the pivot
// and carry only larger columns.
Vec sweep(const Vec& v, const std::vector<Vec>& rows, const std::map<Idx, std::size_t>& piv) {
    std::map<Idx, Scalar> work(v.begin(), v.end());
    Vec out;
    while (!work.empty()) {
        auto it = work.begin();
        Idx c = it->first;
        Scalar x = it->second;
        work.erase(it);
        auto p = piv.find(c);
        if (p == piv.end()) {
            out.emplace_back(c, x);
            continue;
        }
        const Vec& row = rows[p->second];
        for (std::size_t k = 1; k < row.size(); ++k) {
            auto [w, fresh] = work.try_emplace(row[k].first, Scalar());
            w->second -= x * row[k].second;
            if (w->second.is_zero()) work.erase(w);
        }
    }
    return out;
}

}  // namespace

bool Subspace::insert(const Vec& v) {
    for (const auto& e : v)
        if (e.first >= ambient_) throw std::out_of_range("subspace insert: index beyond ambient dimension");
    Vec r = sweep(v, rows_, pivot_row_);
    if (r.empty()) return false;
    Scalar inv = r.front().second.inverse();
    r = scaled(r, inv);
    pivot_row_[r.front().first] = rows_.size();
    rows_.push_back(std::move(r));
    reduced_valid_ = false;
    return true;
}

void Subspace::finalize() const {
    if (reduced_valid_) return;
    // Walk pivots right to left; each row only sees rows with larger pivots.
    std::map<Idx, Vec> done;
    for (auto it = pivot_row_.rbegin(); it != pivot_row_.rend(); ++it) {
        const Vec& row = rows_[it->second];
        Accum acc;
        acc.add(row);
        for (std::size_t k = 1; k < row.size(); ++k) {
            auto d = done.find(row[k].first);
            if (d == done.end()) continue;
            // remove the pivot entry and add its reduced replacement
            acc.add(d->second, -row[k].second);
        }
        done.emplace(it->first, acc.take());
    }
    reduced_.clear();
    reduced_pos_.clear();
    reduced_.reserve(done.size());
    for (auto& [p, r] : done) {
        reduced_pos_[p] = reduced_.size();
        reduced_.push_back(std::move(r));
    }
    reduced_valid_ = true;
}

const std::vector<Vec>& Subspace::basis() const {
    finalize();
    return reduced_;
}

std::vector<Idx> Subspace::pivots() const {
    std::vector<Idx> p;
    for (const auto& [c, r] : pivot_row_) p.push_back(c);
    return p;
}

Vec Subspace::reduce(const Vec& v) const {
    for (const auto& e : v)
        if (e.first >= ambient_) throw std::out_of_range("subspace reduce: index beyond ambient dimension");
    if (!reduced_valid_) return sweep(v, rows_, pivot_row_);
    Accum acc;
    acc.add(v);
    for (const auto& [c, x] : v) {
        auto p = reduced_pos_.find(c);
        if (p == reduced_pos_.end()) continue;
        acc.add(reduced_[p->second], -x);
    }
    return acc.take();
}

bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis() == b.basis();
}

bool member(const Vec& v, const Subspace& s) { return s.contains(v); }

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("subspace sum: ambient mismatch");
    Subspace s(a.ambient());
    for (const auto& r : a.basis()) s.insert(r);
    for (const auto& r : b.basis()) s.insert(r);
    return s;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("subspace intersection: ambient mismatch");
    const Idx n = a.ambient();
    // Zassenhaus: rows (x | x) for x in a, (y | 0) for y in b.
    Subspace z(2 * n);
    for (const auto& r : a.basis()) {
        Vec w = r;
        for (const auto& [i, c] : r) w.emplace_back(i + n, c);
        z.insert(w);
    }
    for (const auto& r : b.basis()) z.insert(r);
    Subspace out(n);
    for (const auto& r : z.basis()) {
        if (r.front().first < n) continue;
        Vec w;
        for (const auto& [i, c] : r) w.emplace_back(i - n, c);
        out.insert(w);
    }
    return out;
}

// ---------------------------------------------------------------- rref etc.

RrefResult rref(const Matrix& m) {
    Subspace s(m.cols);
    for (const auto& r : m.row_vectors()) s.insert(r);
    RrefResult res;
    res.echelon = Matrix(m.rows, m.cols);
    const auto& basis = s.basis();
    std::vector<Vec> rows(m.rows);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        rows[i] = basis[i];
        res.pivots.push_back(basis[i].front().first);
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [j, c] : rows[i]) res.echelon.col[j].emplace_back(i, c);
    res.rank = basis.size();
    return res;
}

Subspace image(const Matrix& m) { return Subspace::span(m.rows, m.col); }

std::size_t rank(const Matrix& m) {
    // Echelonize along the shorter side.
    if (m.cols <= m.rows) return image(m).dim();
    return Subspace::span(m.cols, m.row_vectors()).dim();
}

Subspace kernel(const Matrix& m) {
    Subspace rows = Subspace::span(m.cols, m.row_vectors());
    const auto& basis = rows.basis();
    std::map<Idx, Vec> extra;  // free column -> entries at pivot columns
    for (const auto& r : basis) {
        Idx p = r.front().first;
        for (std::size_t k = 1; k < r.size(); ++k) extra[r[k].first].emplace_back(p, -r[k].second);
    }
    Subspace ker(m.cols);
    for (Idx j = 0; j < m.cols; ++j) {
        if (rows.is_pivot(j)) continue;
        Vec v;
        auto it = extra.find(j);
        if (it != extra.end()) v = it->second;
        v.emplace_back(j, Scalar(1));
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        ker.insert(v);
    }
    return ker;
}

KernelImage kernel_image(const Matrix& m) { return {kernel(m), image(m)}; }

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    auto rows = m.row_vectors();
    for (const auto& [i, c] : b) {
        if (i >= m.rows) throw std::out_of_range("solve: right-hand side too long");
        rows[i].emplace_back(m.cols, c);
    }
    Subspace s = Subspace::span(m.cols + 1, rows);
    if (s.is_pivot(m.cols)) return std::nullopt;
    Vec x;
    for (const auto& r : s.basis()) {
        Scalar c = coeff(r, m.cols);
        if (!c.is_zero()) x.emplace_back(r.front().first, c);
    }
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows != m.cols) return std::nullopt;
    const std::size_t n = m.rows;
    auto rows = m.row_vectors();
    for (std::size_t i = 0; i < n; ++i) rows[i].emplace_back(n + i, Scalar(1));
    Subspace s = Subspace::span(2 * n, rows);
    const auto& basis = s.basis();
    if (basis.size() < n) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (basis[i].front().first != i) return std::nullopt;
        for (const auto& [j, c] : basis[i])
            if (j >= n) inv.col[j - n].emplace_back(i, c);
    }
    return inv;
}

// ---------------------------------------------------------------- quotient

QuotientSpace::QuotientSpace(std::size_t ambient, Subspace relations)
    : ambient_(ambient), relations_(std::move(relations)) {
    if (relations_.ambient() != ambient) throw std::invalid_argument("quotient: relations live in a different ambient space");
    relations_.basis();
    if (relations_.dim() == 0) return;
    for (Idx i = 0; i < ambient; ++i)
        if (!relations_.is_pivot(i)) {
            free_pos_[i] = free_.size();
            free_.push_back(i);
        }
}

QuotientSpace QuotientSpace::trivial(std::size_t ambient) { return QuotientSpace(ambient, Subspace(ambient)); }

Vec QuotientSpace::project(const Vec& v) const {
    if (is_identity()) return v;
    Vec r = relations_.reduce(v);
    Vec out;
    out.reserve(r.size());
    for (const auto& [i, c] : r) out.emplace_back(free_pos_.at(i), c);
    return out;  // free_ is increasing, so order is preserved
}

Vec QuotientSpace::lift(const Vec& q) const {
    if (is_identity()) return q;
    Vec out;
    out.reserve(q.size());
    for (const auto& [i, c] : q) out.emplace_back(free_.at(i), c);
    return out;
}

Matrix QuotientSpace::projection() const {
    Matrix p(dim(), ambient_);
    for (Idx i = 0; i < ambient_; ++i) p.col[i] = project(unit_vec(i));
    return p;
}

Matrix QuotientSpace::section() const {
    Matrix s(ambient_, dim());
    for (Idx j = 0; j < dim(); ++j) s.col[j] = unit_vec(lift_index(j));
    return s;
}

}  // namespace hopfcyclic
