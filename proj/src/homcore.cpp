#include "hopfcyclic/homcore.hpp"

#include <sstream>
#include <stdexcept>

namespace hopfcyclic {

std::size_t ChainComplex::dim(int n) const {
    if (n < lo || n > hi()) return 0;
    return dims[n - lo];
}

Matrix ChainComplex::diff(int n) const {
    if (n <= lo || n > hi()) return Matrix(dim(n - 1), dim(n));
    return d[n - lo];
}

ChainComplex MixedComplexData::hochschild() const {
    ChainComplex c;
    c.lo = 0;
    c.dims = dims;
    c.d = b;
    return c;
}

std::string Report::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    os << failures.size() << " failure(s); first: " << failures[0].identity << " in degree " << failures[0].degree;
    return os.str();
}

namespace {

// First column where m is nonzero, as a witness.
std::optional<Vec> nonzero_witness(const Matrix& m) {
    for (std::size_t j = 0; j < m.cols; ++j)
        if (!vec_is_zero(m.col[j])) return unit_vec(j);
    return std::nullopt;
}

void expect_zero(Report& r, int n, const std::string& what, const Matrix& m) {
    if (auto w = nonzero_witness(m)) r.fail(n, what, *w);
}

void expect_equal(Report& r, int n, const std::string& what, const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        r.fail(n, what + " (shape mismatch)");
        return;
    }
    expect_zero(r, n, what, a - b);
}

}  // namespace

Report verify_complex(const ChainComplex& c) {
    Report r;
    for (int n = c.lo + 2; n <= c.hi(); ++n) expect_zero(r, n, "d o d = 0", compose(c.diff(n - 1), c.diff(n)));
    return r;
}

Report verify_mixed(const MixedComplexData& m, int through) {
    Report r;
    int top = m.top();
    int T = through < 0 ? top : std::min(through, top);
    for (int n = 2; n <= T; ++n) expect_zero(r, n, "b o b = 0", compose(m.b[n - 1], m.b[n]));
    for (int n = 0; n <= T && n + 2 <= top; ++n) expect_zero(r, n, "B o B = 0", compose(m.B[n + 1], m.B[n]));
    for (int n = 0; n <= T && n + 1 <= top; ++n) {
        Matrix s = compose(m.b[n + 1], m.B[n]);
        if (n >= 1) s = s + compose(m.B[n - 1], m.b[n]);
        expect_zero(r, n, "B o b + b o B = 0", s);
    }
    return r;
}

Vec CanonicalComplex::b_lifted(int n, Idx idx) const {
    Accum acc;
    if (n == 0) return {};
    const Shape& src = shapes[n];
    const Shape& dst = shapes[n - 1];
    std::vector<Idx> t = src.decode(idx);
    auto lift = [&](Idx q) { return unit_vec(cbar.lift_index(q)); };
    std::vector<Vec> slots(n);
    auto bar_slot = [&](Idx q) { return unit_vec(q); };
    // x0 x1 (x) x2 ...
    slots[0] = C->mul(unit_vec(t[0]), lift(t[1]));
    for (int k = 2; k <= n; ++k) slots[k - 1] = bar_slot(t[k]);
    add_tensor(acc, dst, slots, Scalar(1));
    for (int i = 1; i < n; ++i) {
        slots[0] = unit_vec(t[0]);
        for (int k = 1; k < i; ++k) slots[k] = bar_slot(t[k]);
        slots[i] = cbar.project(C->mul(lift(t[i]), lift(t[i + 1])));
        for (int k = i + 2; k <= n; ++k) slots[k - 1] = bar_slot(t[k]);
        add_tensor(acc, dst, slots, sign(i));
    }
    slots[0] = C->mul(lift(t[n]), unit_vec(t[0]));
    for (int k = 1; k < n; ++k) slots[k] = bar_slot(t[k]);
    add_tensor(acc, dst, slots, sign(n));
    return acc.take();
}

Vec CanonicalComplex::B_lifted(int n, Idx idx) const {
    Accum acc;
    const Shape& src = shapes[n];
    const Shape& dst = shapes[n + 1];
    std::vector<Idx> t = src.decode(idx);
    std::vector<Vec> entries(n + 1);
    entries[0] = cbar.project(unit_vec(t[0]));
    for (int k = 1; k <= n; ++k) entries[k] = unit_vec(t[k]);
    std::vector<Vec> slots(n + 2);
    slots[0] = C->unit;
    for (int i = 0; i <= n; ++i) {
        for (int k = 0; k <= n; ++k) slots[k + 1] = entries[(i + k) % (n + 1)];
        add_tensor(acc, dst, slots, sign(static_cast<long>(i) * n));
    }
    return acc.take();
}

CanonicalComplex canonical_mixed(const AlgebraData& C, const SubalgebraData& K, int N) {
    if (N < 0) throw std::invalid_argument("degree bound must be >= 0");
    CanonicalComplex cc;
    cc.C = &C;
    cc.K = K;
    cc.cbar = QuotientSpace(C.dim, K.span);
    bool scalars = K.is_scalars(C);
    for (int n = 0; n <= N; ++n) {
        std::vector<std::size_t> dims{C.dim};
        std::vector<KAction> factors{regular_action(C, K)};
        for (int k = 0; k < n; ++k) {
            dims.push_back(cc.cbar.dim());
            factors.push_back(quotient_action(C, K, cc.cbar));
        }
        cc.shapes.emplace_back(dims);
        cc.spaces.push_back(relative_tensor(factors, K.dim(), true, scalars));
    }
    MixedComplexData& m = cc.mixed;
    for (int n = 0; n <= N; ++n) m.dims.push_back(cc.spaces[n].dim());
    m.b.resize(N + 1);
    m.B.resize(N);
    m.b[0] = Matrix(0, m.dims[0]);
    for (int n = 1; n <= N; ++n) {
        Matrix b(m.dims[n - 1], m.dims[n]);
        for (std::size_t q = 0; q < m.dims[n]; ++q)
            b.col[q] = cc.spaces[n - 1].project(cc.b_lifted(n, cc.spaces[n].lift_index(q)));
        m.b[n] = std::move(b);
    }
    for (int n = 0; n < N; ++n) {
        Matrix B(m.dims[n + 1], m.dims[n]);
        for (std::size_t q = 0; q < m.dims[n]; ++q)
            B.col[q] = cc.spaces[n + 1].project(cc.B_lifted(n, cc.spaces[n].lift_index(q)));
        m.B[n] = std::move(B);
    }
    return cc;
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::BC: return "BC";
        case Variant::BN: return "BN";
        case Variant::BP: return "BP";
    }
    return "?";
}

Matrix block_embed(const Matrix& m, std::size_t rows, std::size_t cols, std::size_t row_off, std::size_t col_off) {
    Matrix out(rows, cols);
    for (std::size_t j = 0; j < m.cols; ++j) {
        Vec v;
        v.reserve(m.col[j].size());
        for (const auto& [i, x] : m.col[j]) v.emplace_back(i + row_off, x);
        out.col[j + col_off] = std::move(v);
    }
    return out;
}

TotalComplex totalize(const MixedComplexData& m, Variant v, int max_degree, std::optional<int> window) {
    if (v != Variant::BC && (!window || *window < 1)) throw std::invalid_argument("BN and BP need a window W >= 1");
    TotalComplex t;
    t.variant = v;
    t.window = window.value_or(0);
    const int top = m.top();
    const int W = t.window;
    int lo = v == Variant::BC ? 0 : -1;
    auto allowed = [&](int j) {
        switch (v) {
            case Variant::BC: return j >= 0;
            case Variant::BN: return j <= 0 && j >= -W;
            case Variant::BP: return j >= -W;
        }
        return false;
    };
    t.complex.lo = lo;
    for (int n = lo; n <= max_degree; ++n) {
        std::vector<Column> cols;
        std::size_t off = 0;
        // columns ordered by decreasing x-degree, i.e. increasing power
        int jmin = v == Variant::BC ? 0 : -W;
        for (int j = jmin; n - 2 * j >= 0; ++j) {
            if (!allowed(j)) continue;
            int x = n - 2 * j;
            if (x > top) throw std::invalid_argument("mixed complex too short for the requested degree and window");
            cols.push_back({j, x, off});
            off += m.dims[x];
        }
        t.columns.push_back(cols);
        t.complex.dims.push_back(off);
    }
    for (int n = lo; n <= max_degree; ++n) {
        Matrix d(t.complex.dim(n - 1), t.complex.dim(n));
        if (n > lo) {
            const auto& src = t.cols(n);
            const auto& dst = t.cols(n - 1);
            auto find = [&](int power, int xdeg) -> const Column* {
                for (const auto& c : dst)
                    if (c.power == power && c.xdeg == xdeg) return &c;
                return nullptr;
            };
            for (const auto& c : src) {
                for (std::size_t q = 0; q < m.dims[c.xdeg]; ++q) {
                    Accum acc;
                    if (c.xdeg >= 1)
                        if (const Column* tc = find(c.power, c.xdeg - 1))
                            for (const auto& [i, x] : m.b[c.xdeg].col[q]) acc.add(tc->offset + i, x);
                    if (c.xdeg < top)
                        if (const Column* tc = find(c.power - 1, c.xdeg + 1))
                            for (const auto& [i, x] : m.B[c.xdeg].col[q]) acc.add(tc->offset + i, x);
                    d.col[c.offset + q] = acc.take();
                }
            }
        }
        t.complex.d.push_back(std::move(d));
    }
    return t;
}

Homology homology(const ChainComplex& c, int n, bool with_representatives) {
    if (n < c.lo || n + 1 > c.hi()) throw std::invalid_argument("homology: degree outside the built range");
    Matrix dn = c.diff(n), dn1 = c.diff(n + 1);
    if (!compose(dn, dn1).is_zero()) throw std::logic_error("homology: d o d != 0 in degree " + std::to_string(n + 1));
    Homology h;
    if (!with_representatives) {
        h.dim = c.dim(n) - rank(dn) - rank(dn1);
        return h;
    }
    Subspace im = image(dn1);
    Subspace ker = kernel(dn);
    for (const auto& v : ker.basis())
        if (im.insert(v)) h.representatives.push_back(v);
    h.dim = h.representatives.size();
    return h;
}

std::vector<std::size_t> betti(const ChainComplex& c, int from, int to) {
    std::vector<std::size_t> out;
    std::vector<std::size_t> ranks(c.dims.size() + 1, 0);
    for (int n = c.lo; n <= c.hi(); ++n) ranks[n - c.lo] = rank(c.diff(n));
    for (int n = from; n <= to; ++n) {
        if (n < c.lo || n + 1 > c.hi()) throw std::invalid_argument("betti: degree outside the built range");
        out.push_back(c.dim(n) - ranks[n - c.lo] - ranks[n + 1 - c.lo]);
    }
    return out;
}

StabilizationReport windowed_homology(const MixedComplexData& m, Variant v, int max_degree, int window) {
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    StabilizationReport rep;
    rep.window = window;
    for (int n = 0; n <= max_degree; ++n) rep.degrees.push_back(n);
    auto run = [&](int w) {
        if (w < 1) return std::vector<std::size_t>(max_degree + 1, 0);
        TotalComplex t = totalize(m, v, max_degree + 1, w);
        return betti(t.complex, 0, max_degree);
    };
    rep.previous = run(window - 1);
    rep.current = run(window);
    return rep;
}

SDRReport verify_sdr(const SDRData& s) {
    SDRReport r;
    const int top = s.top();
    for (int n = 0; n <= top; ++n) {
        expect_equal(r.deformation, n, "p o i = id", compose(s.p[n], s.i[n]), Matrix::identity(s.Y.dim(n)));
        if (n >= 1) {
            expect_equal(r.deformation, n, "d o i = i o d", compose(s.X.diff(n), s.i[n]), compose(s.i[n - 1], s.Y.diff(n)));
            expect_equal(r.deformation, n, "d o p = p o d", compose(s.Y.diff(n), s.p[n]), compose(s.p[n - 1], s.X.diff(n)));
        }
    }
    for (int n = 0; n < top; ++n) {
        Matrix lhs = compose(s.X.diff(n + 1), s.h[n]);
        if (n >= 1) lhs = lhs + compose(s.h[n - 1], s.X.diff(n));
        Matrix rhs = compose(s.i[n], s.p[n]) - Matrix::identity(s.X.dim(n));
        expect_equal(r.deformation, n, "d o h + h o d = i o p - id", lhs, rhs);
        expect_zero(r.special, n, "h o i = 0", compose(s.h[n], s.i[n]));
        expect_zero(r.special, n, "p o h = 0", compose(s.p[n + 1], s.h[n]));
        if (n + 1 < top) expect_zero(r.special, n, "h o h = 0", compose(s.h[n + 1], s.h[n]));
    }
    return r;
}

PerturbResult perturb(const SDRData& s, const std::vector<Matrix>& delta, int cap) {
    const int top = s.top();
    if (static_cast<int>(delta.size()) < top + 1) throw std::invalid_argument("perturb: delta must cover degrees 0..top");
    // (d + delta)^2 = 0
    for (int n = 1; n <= top; ++n) {
        Matrix dn = s.X.diff(n) + delta[n];
        Matrix dn1 = n + 1 <= top ? s.X.diff(n + 1) + delta[n + 1] : Matrix(s.X.dim(n), 0);
        if (n + 1 <= top && !compose(dn, dn1).is_zero())
            throw std::invalid_argument("perturbation is not square-zero in degree " + std::to_string(n + 1));
    }
    PerturbResult out;
    std::vector<Matrix> A(top + 1);
    for (int n = 0; n <= top; ++n) {
        int limit = cap < 0 ? n + 2 : cap;
        Matrix term = delta[n];
        Matrix acc = term;
        int depth = 0;
        if (n >= 1) {
            Matrix dh = compose(delta[n], s.h[n - 1]);  // endomorphism of X_{n-1}
            while (!term.is_zero()) {
                term = compose(dh, term);
                if (term.is_zero()) break;
                if (++depth > limit)
                    throw std::runtime_error("delta o h is not nilpotent within the cap in degree " + std::to_string(n - 1));
                acc = acc + term;
            }
        }
        out.nilpotency.push_back(depth);
        A[n] = std::move(acc);
    }
    SDRData& r = out.sdr;
    const int nt = top - 1;
    r.Y.lo = r.X.lo = 0;
    for (int n = 0; n <= nt; ++n) {
        r.Y.dims.push_back(s.Y.dim(n));
        r.X.dims.push_back(s.X.dim(n));
        Matrix dy = s.Y.diff(n);
        if (n >= 1) dy = dy + compose(s.p[n - 1], compose(A[n], s.i[n]));
        r.Y.d.push_back(std::move(dy));
        r.X.d.push_back(s.X.diff(n) + (n >= 1 ? delta[n] : Matrix(0, s.X.dim(0))));
        Matrix in = s.i[n];
        if (n >= 1) in = in + compose(s.h[n - 1], compose(A[n], s.i[n]));
        r.i.push_back(std::move(in));
        r.p.push_back(s.p[n] + compose(s.p[n], compose(A[n + 1], s.h[n])));
        if (n < nt) r.h.push_back(s.h[n] + compose(s.h[n], compose(A[n + 1], s.h[n])));
    }
    return out;
}

}  // namespace hopfcyclic
