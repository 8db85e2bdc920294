#include "hopfcyclic/spectral.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "hopfcyclic/closed_forms.hpp"
#include "map_helpers.hpp"

namespace hopfcyclic {

using detail::lifted_map;
using detail::respects_relations;

// ---------------------------------------------------------------- subquotients

Subquotient::Subquotient(const Subspace& cycles, const Subspace& boundaries)
    : cycles_(cycles), quotient_(cycles.ambient(), boundaries) {
    image_ = Subspace(quotient_.dim());
    for (const auto& v : cycles_.basis()) image_.insert(quotient_.project(v));
    pivots_ = image_.pivots();
    for (const auto& v : image_.basis()) reps_.push_back(quotient_.lift(v));
}

Vec Subquotient::coordinates(const Vec& z) const {
    Vec q = quotient_.project(z);
    Vec out;
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
        Scalar x = coeff(q, pivots_[k]);
        if (!x.is_zero()) out.emplace_back(k, x);
    }
    return out;
}

std::optional<Matrix> induced_map(const Subquotient& src, const Subquotient& dst, const Matrix& f,
                                  bool check_boundaries) {
    if (f.cols != src.ambient() || f.rows != dst.ambient()) throw std::invalid_argument("induced_map: shape mismatch");
    for (const auto& v : src.cycles().basis())
        if (!dst.cycles().contains(f.apply(v))) return std::nullopt;
    if (check_boundaries)
        for (const auto& v : src.boundaries().basis())
            if (!dst.boundaries().contains(f.apply(v))) return std::nullopt;
    Matrix m(dst.dim(), src.dim());
    for (std::size_t k = 0; k < src.dim(); ++k) m.col[k] = dst.coordinates(f.apply(src.representatives()[k]));
    return m;
}

namespace {

Matrix basis_matrix(const Subspace& s) {
    Matrix m(s.ambient(), s.dim());
    for (std::size_t k = 0; k < s.dim(); ++k) m.col[k] = s.basis()[k];
    return m;
}

std::string dims_text(const std::vector<std::size_t>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
    os << ")";
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------- filtrations

Subspace FilteredComplex::F(int p, int n) const {
    const std::size_t dim = complex.dim(n);
    if (n < complex.lo || n > complex.hi() || p < pmin) return Subspace(dim);
    const auto& st = steps[n - complex.lo];
    if (p - pmin >= static_cast<int>(st.size())) return Subspace::full(dim);
    return st[p - pmin];
}

FilteredComplex coordinate_filtration(ChainComplex c, const std::vector<std::vector<int>>& level) {
    if (level.size() != c.dims.size()) throw std::invalid_argument("coordinate_filtration: one level list per degree");
    FilteredComplex fc;
    int lo = 0;
    bool any = false;
    for (const auto& l : level)
        for (int x : l) {
            lo = any ? std::min(lo, x) : x;
            any = true;
        }
    fc.pmin = lo;
    for (std::size_t k = 0; k < level.size(); ++k) {
        if (level[k].size() != c.dims[k]) throw std::invalid_argument("coordinate_filtration: level size mismatch");
        int hi = lo;
        for (int x : level[k]) hi = std::max(hi, x);
        std::vector<Subspace> st;
        for (int p = lo; p <= hi; ++p) {
            Subspace s(c.dims[k]);
            for (std::size_t i = 0; i < level[k].size(); ++i)
                if (level[k][i] <= p) s.insert(unit_vec(i));
            st.push_back(std::move(s));
        }
        fc.steps.push_back(std::move(st));
    }
    fc.complex = std::move(c);
    return fc;
}

Report validate_filtration(const FilteredComplex& fc) {
    Report rep;
    const ChainComplex& c = fc.complex;
    for (int n = c.lo; n <= c.hi(); ++n) {
        const int top = fc.pmax(n);
        if (fc.F(top, n).dim() != c.dim(n)) rep.fail(n, "filtration not exhaustive");
        for (int p = fc.pmin; p <= top; ++p) {
            const Subspace fp = fc.F(p, n);
            const Subspace prev = fc.F(p - 1, n);
            if (p > fc.pmin)
                for (const auto& v : prev.basis())
                    if (!fp.contains(v)) rep.fail(n, "filtration not increasing at p = " + std::to_string(p), v);
            if (n > c.lo) {
                const Subspace target = fc.F(p, n - 1);
                const Matrix d = c.diff(n);
                for (const auto& v : fp.basis())
                    if (!target.contains(d.apply(v))) {
                        rep.fail(n, "d does not preserve F^" + std::to_string(p), v);
                        break;
                    }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------- pages

std::size_t SpectralPage::dim(int p, int n) const {
    auto it = cells.find({p, n});
    return it == cells.end() ? 0 : it->second.space.dim();
}

namespace {

class PageBuilder {
public:
    explicit PageBuilder(const FilteredComplex& fc) : fc_(fc) {}

    // {x in F^p_n : dx in F^{p-r}_{n-1}}
    const Subspace& Z(int r, int p, int n) {
        auto key = std::make_tuple(r, p, n);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const ChainComplex& c = fc_.complex;
        Subspace fp = fc_.F(p, n);
        Subspace out(c.dim(n));
        if (r <= 0 || n == c.lo || fp.dim() == 0) {
            out = fp;
        } else {
            QuotientSpace q(c.dim(n - 1), fc_.F(p - r, n - 1));
            Matrix M = basis_matrix(fp);
            Matrix A = compose(q.projection(), compose(c.diff(n), M));
            const Subspace k = kernel(A);
            for (const auto& v : k.basis()) out.insert(M.apply(v));
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

    SpectralCell cell(int r, int p, int n) {
        const ChainComplex& c = fc_.complex;
        Subspace den = Z(r - 1, p - 1, n);
        if (n + 1 <= c.hi()) {
            Matrix d = c.diff(n + 1);
            for (const auto& v : Z(r - 1, p + r - 1, n + 1).basis()) den.insert(d.apply(v));
        }
        return SpectralCell{Subquotient(Z(r, p, n), den), n < c.hi()};
    }

private:
    const FilteredComplex& fc_;
    std::map<std::tuple<int, int, int>, Subspace> memo_;
};

}  // namespace

std::vector<SpectralPage> pages(const FilteredComplex& fc, int r_max) {
    Report valid = validate_filtration(fc);
    if (!valid.ok()) throw std::invalid_argument("pages: " + valid.summary());
    const ChainComplex& c = fc.complex;
    PageBuilder pb(fc);
    std::vector<SpectralPage> out;
    for (int r = 0; r <= r_max; ++r) {
        SpectralPage page;
        page.r = r;
        for (int n = c.lo; n <= c.hi(); ++n)
            for (int p = fc.pmin; p <= fc.pmax(n); ++p) page.cells.emplace(std::make_pair(p, n), pb.cell(r, p, n));
        for (const auto& [key, cell] : page.cells) {
            const auto [p, n] = key;
            if (n == c.lo) continue;
            auto target = page.cells.find({p - r, n - 1});
            Matrix m(target == page.cells.end() ? 0 : target->second.space.dim(), cell.space.dim());
            if (target != page.cells.end()) {
                const Matrix d = c.diff(n);
                for (std::size_t k = 0; k < cell.space.dim(); ++k)
                    m.col[k] = target->second.space.coordinates(d.apply(cell.space.representatives()[k]));
            }
            page.d.emplace(key, std::move(m));
        }
        out.push_back(std::move(page));
    }
    return out;
}

Report verify_pages(const FilteredComplex& fc, const std::vector<SpectralPage>& ps) {
    Report rep;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const SpectralPage& page = ps[k];
        const int r = page.r;
        for (const auto& [key, cell] : page.cells) {
            if (!cell.reliable) continue;
            const auto [p, n] = key;
            auto out = page.d.find(key);
            auto after = page.d.find({p - r, n - 1});
            if (out != page.d.end() && after != page.d.end() && !compose(after->second, out->second).is_zero())
                rep.fail(n, "d^" + std::to_string(r) + " d^" + std::to_string(r) + " != 0 at p = " + std::to_string(p));
            if (k + 1 == ps.size()) continue;
            std::size_t expect = cell.space.dim();
            if (out != page.d.end()) expect -= rank(out->second);
            auto in = page.d.find({p + r, n + 1});
            if (in != page.d.end()) expect -= rank(in->second);
            if (ps[k + 1].dim(p, n) != expect)
                rep.fail(n, "E^" + std::to_string(r + 1) + " is not the homology of E^" + std::to_string(r) +
                                " at p = " + std::to_string(p));
        }
    }
    (void)fc;
    return rep;
}

std::map<std::pair<int, int>, std::size_t> graded_homology(const FilteredComplex& fc) {
    std::map<std::pair<int, int>, std::size_t> out;
    const ChainComplex& c = fc.complex;
    for (int n = c.lo; n < c.hi(); ++n) {
        Subspace z = kernel(c.diff(n));
        Subspace b = image(c.diff(n + 1));
        std::size_t below = 0;
        for (int p = fc.pmin; p <= fc.pmax(n); ++p) {
            const std::size_t here = sum(intersect(z, fc.F(p, n)), b).dim() - b.dim();
            out[{p, n}] = here - below;
            below = here;
        }
    }
    return out;
}

std::optional<Vec> page_differential(const FilteredComplex& fc, const SpectralPage& page, int p, int n, const Vec& z,
                                     const Subspace& corrections) {
    const ChainComplex& c = fc.complex;
    const int r = page.r;
    const Matrix d = c.diff(n);
    QuotientSpace q(c.dim(n - 1), fc.F(p - r, n - 1));
    Matrix M = basis_matrix(corrections);
    Matrix A = compose(q.projection(), compose(d, M));
    auto w = solve(A, scaled(q.project(d.apply(z)), Scalar(-1)));
    if (!w) return std::nullopt;
    return d.apply(add(z, M.apply(*w)));
}

// ---------------------------------------------------------------- reports

bool SpectralReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const SpectralCheck& c) { return c.ok; });
}

void SpectralReport::add(std::string name, bool good, std::string detail) {
    checks.push_back({std::move(name), good, std::move(detail)});
}

bool DecompositionReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const SpectralCheck& c) { return c.ok; });
}

// ---------------------------------------------------------------- the H-action on (E (x) Abar^r)nat

namespace {

Vec theta_lifted(const Simplified& sx, int r, Idx h, Idx idx) {
    const CrossedData& c = sx.crossed();
    const Resolution& res = sx.hat();
    const std::size_t ma = ipow(res.abar().dim(), r);
    const Idx e = idx / ma;
    std::vector<Idx> aq = Shape(std::vector<std::size_t>(r, res.abar().dim())).decode(idx % ma);
    std::vector<Vec> as;
    for (Idx q : aq) as.push_back(unit_vec(res.abar().lift_index(q)));
    Accum tuple;
    add_tensor(tuple, Shape(std::vector<std::size_t>(r, c.dA())), as, Scalar(1));
    const Vec at = tuple.take();
    Accum acc;
    for (const auto& t : c.H.sweedler_basis(h, 3)) {
        Vec ev = c.E.mul(c.E.mul(c.gamma_basis(t.factors[2]), unit_vec(e)), sx.gamma_inv(t.factors[0]));
        Vec acted = project_abar_tensor(res, act_on_tensor(c, at, r, t.factors[1]), r);
        acc.add(kron(ev, acted, ma), t.coeff);
    }
    return acc.take();
}

}  // namespace

Matrix theta_action(Simplified& sx, int r, const Vec& h) {
    const QuotientSpace& sp = sx.space(r, 0);
    Matrix out(sp.dim(), sp.dim());
    for (const auto& [k, x] : h)
        out = out + x * lifted_map(sp, sp, [&](Idx i) { return theta_lifted(sx, r, k, i); });
    return out;
}

bool theta_action_well_defined(Simplified& sx, int r, Idx h) {
    const QuotientSpace& sp = sx.space(r, 0);
    return respects_relations(sp, sp, [&](Idx i) { return theta_lifted(sx, r, h, i); });
}

Report validate_module(const HopfData& H, const HModuleData& M) {
    Report rep;
    if (M.action.size() != H.dim()) {
        rep.fail(0, "one action matrix per basis element of H is required");
        return rep;
    }
    auto act = [&](const Vec& h) {
        Matrix out(M.dim, M.dim);
        for (const auto& [k, x] : h) out = out + x * M.action[k];
        return out;
    };
    if (!(act(H.unit()) == Matrix::identity(M.dim))) rep.fail(0, "the unit does not act as the identity");
    for (Idx h = 0; h < H.dim(); ++h)
        for (Idx l = 0; l < H.dim(); ++l)
            if (!(compose(M.action[l], M.action[h]) == act(H.alg.prod(l, h))))
                rep.fail(0, "(lh).x != l.(h.x) for l = " + std::to_string(l) + ", h = " + std::to_string(h));
    return rep;
}

std::vector<Homology> h_homology(const HopfData& H, const HModuleData& M, int s_max) {
    const std::size_t dH = H.dim();
    QuotientSpace hbar(dH, Subspace::span(dH, {H.unit()}));
    const std::size_t db = hbar.dim();
    ChainComplex c;
    c.lo = 0;
    for (int s = 0; s <= s_max + 1; ++s) c.dims.push_back(ipow(db, s) * M.dim);
    c.d.push_back(Matrix(0, c.dims[0]));
    for (int s = 1; s <= s_max + 1; ++s) {
        const Shape src(std::vector<std::size_t>(s, db));
        const Shape dst(std::vector<std::size_t>(s - 1, db));
        Matrix d(c.dims[s - 1], c.dims[s]);
        for (Idx code = 0; code < src.total(); ++code) {
            std::vector<Idx> hq = src.decode(code);
            std::vector<Idx> hl;
            for (Idx q : hq) hl.push_back(hbar.lift_index(q));
            for (Idx m = 0; m < M.dim; ++m) {
                Accum acc;
                const Scalar e1 = H.eps(hl[0]);
                if (!e1.is_zero()) {
                    std::vector<Idx> rest(hq.begin() + 1, hq.end());
                    acc.add(dst.encode(rest) * M.dim + m, e1);
                }
                for (int i = 1; i < s; ++i) {
                    Vec prod = hbar.project(H.alg.prod(hl[i - 1], hl[i]));
                    for (const auto& [q, x] : prod) {
                        std::vector<Idx> t(hq.begin(), hq.end());
                        t[i - 1] = q;
                        t.erase(t.begin() + i);
                        acc.add(dst.encode(t) * M.dim + m, x * sign(i));
                    }
                }
                std::vector<Idx> head(hq.begin(), hq.end() - 1);
                const Idx base = dst.encode(head) * M.dim;
                for (const auto& [mm, x] : M.action[hl[s - 1]].col[m]) acc.add(base + mm, x * sign(s));
                d.col[code * M.dim + m] = acc.take();
            }
        }
        c.d.push_back(std::move(d));
    }
    std::vector<Homology> out;
    for (int s = 0; s <= s_max; ++s) out.push_back(homology(c, s));
    return out;
}

// ---------------------------------------------------------------- bar X machinery

namespace {

std::vector<std::size_t> hc_dims(const MixedComplexData& m, int upto) {
    if (upto < 0) return {};
    TotalComplex t = totalize(m, Variant::BC, upto + 1);
    return betti(t.complex, 0, upto);
}

std::vector<std::size_t> hh_dims(const MixedComplexData& m, int upto) {
    if (upto < 0) return {};
    return betti(m.hochschild(), 0, upto);
}

// Matrices of bar X, computed once per spectral run.
class BarMaps {
public:
    explicit BarMaps(Simplified& sx) : sx_(sx) {}

    Simplified& sx() { return sx_; }
    std::size_t dim(int r, int s) { return sx_.space(r, s).dim(); }
    const Matrix& d(int l, int r, int s) { return get(d_, {l, r, s}, [&] { return sx_.d(l, r, s); }); }
    const Matrix& eta(int r, int s) { return get(eta_, {0, r, s}, [&] { return eta_sum(sx_, r, s); }); }
    const Matrix& rotation(int r, int s) { return get(rot_, {0, r, s}, [&] { return rotation_matrix(sx_, r, s); }); }
    // theta^h for a basis element h on bar X_{r,0}
    const Matrix& theta(int r, Idx h) {
        return get(theta_, {0, r, static_cast<int>(h)}, [&] { return theta_action(sx_, r, unit_vec(h)); });
    }
    Matrix theta(int r, const Vec& h) {
        Matrix out(dim(r, 0), dim(r, 0));
        for (const auto& [k, x] : h) out = out + x * theta(r, k);
        return out;
    }

private:
    using Key = std::tuple<int, int, int>;
    const Matrix& get(std::map<Key, Matrix>& memo, Key k, const std::function<Matrix()>& make) {
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        return memo.emplace(k, make()).first->second;
    }

    Simplified& sx_;
    std::map<Key, Matrix> d_, eta_, rot_, theta_;
};

// Tot BC of bar X through degree N with its filtration by s (by_r false) or by r.
struct BarTotal {
    MixedComplexData mixed;
    TotalComplex tot;
    FilteredComplex fc;
};

std::vector<std::vector<int>> bar_levels(const TotalComplex& tot, const std::vector<std::vector<std::size_t>>& offsets,
                                         bool by_r) {
    std::vector<std::vector<int>> level;
    for (int n = tot.complex.lo; n <= tot.complex.hi(); ++n) {
        std::vector<int> l(tot.complex.dim(n));
        for (const auto& col : tot.cols(n)) {
            const auto& off = offsets[col.xdeg];
            for (int s = 0; s <= col.xdeg; ++s)
                for (std::size_t i = off[s]; i < off[s + 1]; ++i)
                    l[col.offset + i] = (by_r ? col.xdeg - s : s) + 2 * col.power;
        }
        level.push_back(std::move(l));
    }
    return level;
}

BarTotal bar_total(Simplified& sx, int N, bool by_r) {
    BarTotal bt;
    bt.mixed = sx.mixed();
    bt.tot = totalize(bt.mixed, Variant::BC, N);
    std::vector<std::vector<std::size_t>> offsets;
    for (int m = 0; m <= N; ++m) offsets.push_back(sx.offsets(m));
    bt.fc = coordinate_filtration(bt.tot.complex, bar_levels(bt.tot, offsets, by_r));
    return bt;
}

// Engine checks shared by both spectral sequences; fills e2 and e_infinity.
std::vector<SpectralPage> run_engine(SpectralReport& rep, const BarTotal& bt, int bound) {
    Report valid = validate_filtration(bt.fc);
    rep.add("filtration is preserved by the total differential", valid.ok(), valid.summary());
    if (!valid.ok()) return {};
    std::vector<SpectralPage> ps = pages(bt.fc, bound + 2);
    Report pr = verify_pages(bt.fc, ps);
    rep.add("every page is the homology of the previous one", pr.ok(), pr.summary());
    const SpectralPage& last = ps.back();
    auto gr = graded_homology(bt.fc);
    bool converged = true;
    rep.abutment.assign(bound + 1, 0);
    for (int n = 0; n <= bound; ++n)
        for (int p = 0; p <= bt.fc.pmax(n); ++p) {
            rep.e2[{p, n - p}] = ps[2].dim(p, n);
            rep.e_infinity[{p, n - p}] = last.dim(p, n);
            rep.abutment[n] += last.dim(p, n);
            if (gr[{p, n}] != last.dim(p, n)) converged = false;
        }
    rep.add("last page equals the graded homology of the filtration", converged);
    for (const auto& page : ps) {
        BigradedDims dims;
        for (int n = 0; n <= bound; ++n)
            for (int p = 0; p <= bt.fc.pmax(n); ++p) dims[{p, n - p}] = page.dim(p, n);
        rep.pages.push_back(std::move(dims));
    }
    std::vector<std::size_t> tot = betti(bt.tot.complex, 0, bound);
    rep.add("abutment equals HC of the bar complex", tot == rep.abutment,
            "abutment " + dims_text(rep.abutment) + ", HC " + dims_text(tot));
    return ps;
}

void compare_hc(SpectralReport& rep, Simplified& sx, int bound) {
    rep.hc = hc_dims(sx.hat().canonical().mixed, bound);
    rep.add("abutment equals HC of the canonical complex", rep.abutment == rep.hc,
            "abutment " + dims_text(rep.abutment) + ", canonical " + dims_text(rep.hc));
}

// A mixed complex of homology modules: module[k] in degree k, b and B induced.
// The top module lacks its boundaries, so it only serves as the source of b;
// homology is meaningful below the top degree.
struct Little {
    std::vector<Subquotient> modules;
    MixedComplexData mixed;
    bool well_defined = true;

    // The mixed identities that avoid B into the top module.
    Report verify() const {
        const int top = mixed.top();
        const auto& b = mixed.b;
        const auto& B = mixed.B;
        Report rep;
        for (int n = 2; n <= top; ++n)
            if (!compose(b[n - 1], b[n]).is_zero()) rep.fail(n, "b o b = 0");
        for (int n = 0; n + 3 <= top; ++n)
            if (!compose(B[n + 1], B[n]).is_zero()) rep.fail(n, "B o B = 0");
        for (int n = 0; n + 2 <= top; ++n) {
            Matrix s = compose(b[n + 1], B[n]);
            if (n >= 1) s = s + compose(B[n - 1], b[n]);
            if (!s.is_zero()) rep.fail(n, "B o b + b o B = 0");
        }
        return rep;
    }
};

Little build_little(std::vector<Subquotient> modules, const std::function<Matrix(int)>& b,
                    const std::function<Matrix(int)>& B) {
    Little L;
    L.modules = std::move(modules);
    const int top = static_cast<int>(L.modules.size()) - 1;
    for (int k = 0; k <= top; ++k) {
        L.mixed.dims.push_back(L.modules[k].dim());
        if (k == 0) {
            L.mixed.b.push_back(Matrix(0, L.modules[0].dim()));
        } else {
            auto m = induced_map(L.modules[k], L.modules[k - 1], b(k));
            if (!m) L.well_defined = false;
            L.mixed.b.push_back(m ? *m : Matrix(L.modules[k - 1].dim(), L.modules[k].dim()));
        }
    }
    for (int k = 0; k < top; ++k) {
        auto m = induced_map(L.modules[k], L.modules[k + 1], B(k), k + 1 < top);
        if (!m) L.well_defined = false;
        L.mixed.B.push_back(m ? *m : Matrix(L.modules[k + 1].dim(), L.modules[k].dim()));
    }
    return L;
}

// H_r of the column (bar X_{*,s}, dbar^0); the top degree N is cut off.
Subquotient column_homology(BarMaps& bm, int r, int s, int N) {
    Subspace z = r == 0 ? Subspace::full(bm.dim(0, s)) : kernel(bm.d(0, r, s));
    Subspace b = r + 1 + s <= N ? image(bm.d(0, r + 1, s)) : Subspace(bm.dim(r, s));
    return Subquotient(z, b);
}

// H_s of the row (bar X_{r,*}, dbar^1).
Subquotient row_homology(BarMaps& bm, int r, int s, int N) {
    Subspace z = s == 0 ? Subspace::full(bm.dim(r, 0)) : kernel(bm.d(1, r, s));
    Subspace b = r + s + 1 <= N ? image(bm.d(1, r, s + 1)) : Subspace(bm.dim(r, s));
    return Subquotient(z, b);
}

void require_depth(Simplified& sx, int bound, const char* who) {
    if (bound < 0) throw std::invalid_argument(std::string(who) + ": negative bound");
    if (sx.top() < bound + 1)
        throw std::invalid_argument(std::string(who) + ": build the resolution through degree bound + 2");
}

}  // namespace

// ---------------------------------------------------------------- first spectral sequence

SpectralReport first_ss(Simplified& sx, int bound) {
    require_depth(sx, bound, "first_ss");
    const int N = bound + 1;
    SpectralReport rep;
    rep.which = "first";
    rep.bound = bound;
    BarMaps bm(sx);
    const CrossedData& c = sx.crossed();

    BarTotal bt = bar_total(sx, N, false);
    run_engine(rep, bt, bound);
    compare_hc(rep, sx, bound);

    // theta^h on (E (x) Abar^*)nat
    bool well_defined = true, chain = true, unital = true, on_homology = true;
    for (int r = 0; r <= bound; ++r) {
        for (Idx h = 0; h < c.dH(); ++h) well_defined = well_defined && theta_action_well_defined(sx, r, h);
        unital = unital && bm.theta(r, c.H.unit()) == Matrix::identity(bm.dim(r, 0));
        if (r >= 1)
            for (Idx h = 0; h < c.dH(); ++h)
                chain = chain && compose(bm.d(0, r, 0), bm.theta(r, h)) == compose(bm.theta(r - 1, h), bm.d(0, r, 0));
    }
    rep.add("theta^h is well defined on the invariants quotient", well_defined);
    rep.add("theta^1 is the identity", unital);
    rep.add("theta^h commutes with the Hochschild boundary", chain);
    for (int r = 0; r <= bound && chain; ++r) {
        Subquotient hr = column_homology(bm, r, 0, N);
        std::vector<Matrix> induced;
        for (Idx h = 0; h < c.dH(); ++h) induced.push_back(*induced_map(hr, hr, bm.theta(r, h)));
        for (Idx h = 0; h < c.dH(); ++h)
            for (Idx l = 0; l < c.dH(); ++l) {
                Matrix hl(hr.dim(), hr.dim());
                for (const auto& [k, x] : c.H.alg.prod(h, l)) hl = hl + x * induced[k];
                if (!(compose(induced[h], induced[l]) == hl)) on_homology = false;
            }
    }
    rep.add("theta^h theta^l and theta^{hl} agree on homology", on_homology);

    // the little mixed complexes H_r(A, E) (x) Hbar^*
    bool little_ok = true, little_defined = true;
    std::vector<std::size_t> higher_rows;
    std::vector<std::size_t> row0_hc;
    for (int r = 0; r <= bound; ++r) {
        std::vector<Subquotient> mods;
        for (int s = 0; s <= N - r; ++s) mods.push_back(column_homology(bm, r, s, N));
        Little L = build_little(
            std::move(mods), [&](int s) { return bm.d(1, r, s); }, [&](int s) { return bm.eta(r, s); });
        little_defined = little_defined && L.well_defined;
        if (!L.well_defined) continue;
        little_ok = little_ok && L.verify().ok();
        std::vector<std::size_t> hc = hc_dims(L.mixed, bound - r);
        for (int s = 0; s <= bound - r; ++s) rep.e2_little[{s, r}] = hc[s];
        if (r == 0) row0_hc = hc;
        if (r >= 1)
            for (int s = 0; s <= N - r - 1; ++s) higher_rows.push_back(L.modules[s].dim());
    }
    rep.add("dtilde and Dtilde are well defined on homology", little_defined);
    rep.add("the little complexes are mixed complexes", little_ok);
    bool match = little_defined;
    for (const auto& [k, v] : rep.e2_little) match = match && rep.e2[k] == v;
    rep.add("E^2 equals HC of the little mixed complexes", match);
    if (std::all_of(higher_rows.begin(), higher_rows.end(), [](std::size_t d) { return d == 0; }))
        rep.add("HC equals HC of the row r = 0 when the higher rows vanish", row0_hc == rep.hc,
                dims_text(row0_hc) + " vs " + dims_text(rep.hc));
    return rep;
}

// ---------------------------------------------------------------- second spectral sequence

SpectralReport second_ss(Simplified& sx, int bound) {
    const CrossedData& c = sx.crossed();
    if (!c.f_in_K) throw Refusal("Assume that the cocycle f takes its values in K");
    require_depth(sx, bound, "second_ss");
    const int N = bound + 1;
    SpectralReport rep;
    rep.which = "second";
    rep.bound = bound;
    BarMaps bm(sx);

    bool higher_zero = true;
    for (int n = 2; n <= N; ++n)
        for (int s = 2; s <= n; ++s)
            for (int l = 2; l <= s; ++l) higher_zero = higher_zero && bm.d(l, n - s, s).is_zero();
    rep.add("dbar^l vanishes for l >= 2", higher_zero);

    BarTotal bt = bar_total(sx, N, true);
    run_engine(rep, bt, bound);
    compare_hc(rep, sx, bound);

    // the action on M_r and H_s(H, M_r)
    auto integral = find_integral(c.H);
    bool module_ok = true, bar_match = true, vanish = true;
    for (int r = 0; r <= bound; ++r) {
        HModuleData M;
        M.dim = bm.dim(r, 0);
        for (Idx h = 0; h < c.dH(); ++h) M.action.push_back(bm.theta(r, h));
        Report mr = validate_module(c.H, M);
        module_ok = module_ok && mr.ok();
        if (!mr.ok()) continue;
        std::vector<Homology> hs = h_homology(c.H, M, bound - r);
        for (int s = 0; s <= bound - r; ++s) {
            if (hs[s].dim != row_homology(bm, r, s, N).dim()) bar_match = false;
            if (integral && s >= 1 && hs[s].dim != 0) vanish = false;
        }
    }
    rep.add("the action on (E (x) Abar^r)nat is unital and associative", module_ok);
    rep.add("H_s(H, M_r) from the bar resolution matches the rows of bar X", bar_match);
    if (integral) rep.add("H_s(H, M_r) vanishes for s >= 1", vanish);

    bool little_ok = true, little_defined = true;
    std::vector<std::size_t> col0_hc;
    for (int s = 0; s <= bound; ++s) {
        std::vector<Subquotient> mods;
        for (int r = 0; r <= N - s; ++r) mods.push_back(row_homology(bm, r, s, N));
        Little L = build_little(
            std::move(mods), [&](int r) { return bm.d(0, r, s); }, [&](int r) { return bm.rotation(r, s); });
        little_defined = little_defined && L.well_defined;
        if (!L.well_defined) continue;
        little_ok = little_ok && L.verify().ok();
        std::vector<std::size_t> hc = hc_dims(L.mixed, bound - s);
        for (int r = 0; r <= bound - s; ++r) rep.e2_little[{r, s}] = hc[r];
        if (s == 0) col0_hc = hc;
    }
    rep.add("the boundary and the rotation are well defined on H_s(H, M_*)", little_defined);
    rep.add("the little complexes are mixed complexes", little_ok);
    bool match = little_defined;
    for (const auto& [k, v] : rep.e2_little) match = match && rep.e2[k] == v;
    rep.add("E^2 equals HC of the little mixed complexes", match);
    if (integral)
        rep.add("HC equals HC of the row s = 0 for separable H", col0_hc == rep.hc,
                dims_text(col0_hc) + " vs " + dims_text(rep.hc));
    return rep;
}

// ---------------------------------------------------------------- d^2 for separable H

namespace {

// The closed d^2 of a lifted generator of bar X_{r,0}, in lifted bar X_{r+1,0} coordinates.
Vec closed_d2(const Simplified& sx, int r, const Vec& t, Idx idx) {
    const CrossedData& c = sx.crossed();
    const Resolution& res = sx.hat();
    const std::size_t da = res.abar().dim();
    const std::size_t ma = ipow(da, r);
    const Idx e = idx / ma;
    const Idx a0 = e / c.dH(), h = e % c.dH();
    std::vector<Idx> aq = Shape(std::vector<std::size_t>(r, da)).decode(idx % ma);
    std::vector<Vec> as;
    for (Idx q : aq) as.push_back(unit_vec(res.abar().lift_index(q)));
    auto tuple = [&](const std::vector<Vec>& v) {
        Accum acc;
        add_tensor(acc, Shape(std::vector<std::size_t>(v.size(), c.dA())), v, Scalar(1));
        return acc.take();
    };
    const std::size_t m1 = ipow(da, r + 1);
    Accum acc;
    // rotation of a_0 into the tuple
    for (const auto& s2 : c.H.sweedler_basis(h, 2))
        for (int j = 0; j <= r; ++j) {
            std::vector<Vec> head(as.begin(), as.begin() + j), tail(as.begin() + j, as.end());
            Vec acted = act_on_tensor(c, tuple(head), j, s2.factors[0]);
            Vec rest = kron(tuple(tail), unit_vec(a0), c.dA());
            Vec full = kron(rest, acted, ipow(c.dA(), j));
            acc.add(kron(c.gamma_basis(s2.factors[1]), project_abar_tensor(res, full, r + 1), m1),
                    s2.coeff * sign((j + 1) * r));
        }
    // the cocycle term
    for (const auto& [ti, tc] : t)
        for (const auto& s4 : c.H.sweedler_basis(h, 4))
            for (const auto& t5 : c.H.sweedler_basis(ti, 5)) {
                const auto& hl = s4.factors;
                const auto& tl = t5.factors;
                Vec ev = c.gamma(c.H.alg.prod(tl[4], hl[3]));
                ev = c.E.mul(c.E.mul(ev, c.embed_a(unit_vec(a0))), sx.gamma_inv(tl[0]));
                Vec th = c.H.alg.prod(tl[3], hl[2]);
                for (int j = 0; j <= r; ++j) {
                    std::vector<Vec> head(as.begin(), as.begin() + j), tail(as.begin() + j, as.end());
                    Vec first = act_on_tensor(c, act_on_tensor(c, tuple(head), j, hl[0]), j, tl[1]);
                    Vec last;
                    {
                        Accum a;
                        Vec tt = tuple(tail);
                        for (const auto& [k, x] : th) a.add(act_on_tensor(c, tt, r - j, k), x);
                        last = a.take();
                    }
                    Vec mid = kron(first, c.f(tl[2], hl[1]), c.dA());
                    Vec full = kron(mid, last, ipow(c.dA(), r - j));
                    acc.add(kron(ev, project_abar_tensor(res, full, r + 1), m1), tc * s4.coeff * t5.coeff * sign(j));
                }
            }
    return acc.take();
}

}  // namespace

SpectralReport separable_d2(Simplified& sx, int bound) {
    const CrossedData& c = sx.crossed();
    auto integral = find_integral(c.H);
    if (!integral) throw Refusal("Assume that H is separable, with an integral t such that eps(t) = 1");
    require_depth(sx, bound, "separable_d2");
    const int N = bound + 1;
    SpectralReport rep;
    rep.which = "separable";
    rep.bound = bound;
    rep.add("integral is two-sided", integral->two_sided);
    BarMaps bm(sx);

    BarTotal bt = bar_total(sx, N, false);
    std::vector<SpectralPage> ps = run_engine(rep, bt, bound);
    if (ps.size() < 3) return rep;

    // E^2 rows: zero for odd s, coinvariants of H_r(A, E) for even s
    std::vector<Subquotient> hr;
    std::vector<Subspace> coinv_rel;  // boundaries + (h - eps(h)) cycles in bar X_{r,0}
    for (int r = 0; r <= N; ++r) {
        hr.push_back(column_homology(bm, r, 0, N));
        Subspace rel = hr[r].boundaries();
        for (Idx h = 0; h < c.dH(); ++h) {
            const Matrix& th = bm.theta(r, h);
            for (const auto& z : hr[r].cycles().basis()) rel.insert(sub(th.apply(z), scaled(z, c.H.eps(h))));
        }
        coinv_rel.push_back(std::move(rel));
    }
    bool odd = true, even = true;
    for (const auto& [key, dim] : rep.e2) {
        const auto [s, r] = key;
        if (s % 2 == 1) odd = odd && dim == 0;
        else if (r + s <= bound)
            even = even && dim == hr[r].cycles().dim() - coinv_rel[r].dim();
    }
    rep.add("odd rows of E^2 vanish", odd);
    rep.add("even rows of E^2 are the coinvariants H_0(H, H_r(A, E))", even);

    // d^2 against the closed formula on representatives
    const SpectralPage& p2 = ps[2];
    std::size_t tried = 0, agree = 0, nonzero = 0;
    bool cycles_ok = true;
    for (int r = 0; r + 2 <= bound; ++r)
        for (int j = 1; r + 2 * j <= bound; ++j) {
            const int n = r + 2 * j;
            const auto& cols = bt.tot.cols(n);
            const auto& below = bt.tot.cols(n - 1);
            auto col_of = [](const std::vector<Column>& cs, int power) -> const Column& {
                for (const auto& col : cs)
                    if (col.power == power) return col;
                throw std::logic_error("missing column");
            };
            const Column& src = col_of(cols, j);
            const Column& dst = col_of(below, j - 1);
            Subspace corr(bt.tot.complex.dim(n));
            const Subspace f = bt.fc.F(2 * j, n);
            for (const auto& col : cols)
                if (col.power < j) {
                    for (std::size_t i = col.offset; i < col.offset + bt.mixed.dims[col.xdeg]; ++i)
                        if (f.contains(unit_vec(i))) corr.insert(unit_vec(i));
                }
            const QuotientSpace& sp = sx.space(r, 0);
            const QuotientSpace& sp1 = sx.space(r + 1, 0);
            Matrix formula = lifted_map(sp, sp1, [&](Idx i) { return closed_d2(sx, r, integral->t, i); });
            for (const auto& x : hr[r].representatives()) {
                Vec z;
                for (const auto& [i, v] : x) z.emplace_back(src.offset + i, v);
                auto image = page_differential(bt.fc, p2, 2 * j, n, z, corr);
                ++tried;
                if (!image) continue;
                Vec top;
                for (const auto& [i, v] : *image)
                    if (i >= dst.offset && i < dst.offset + sp1.dim()) top.emplace_back(i - dst.offset, v);
                Vec y = formula.apply(x);
                if (!bm.d(0, r + 1, 0).apply(y).empty()) cycles_ok = false;
                if (coinv_rel[r + 1].contains(sub(top, y))) ++agree;
                if (!coinv_rel[r + 1].contains(y)) ++nonzero;
            }
        }
    rep.add("closed d^2 gives cycles", cycles_ok);
    rep.add("closed d^2 matches the engine on representatives", agree == tried,
            std::to_string(agree) + "/" + std::to_string(tried) + ", " + std::to_string(nonzero) + " nonzero");

    // t_H eta(x) - (-1)^r dbar^1(x(1) (x) t (x) h(2)) lies in the image of dbar^0
    std::size_t helper_tried = 0, helper_ok = 0;
    for (int r = 0; r + 2 <= N; ++r) {
        const QuotientSpace& sp = sx.space(r, 0);
        const QuotientSpace& sp2 = sx.space(r, 2);
        const Resolution& res = sx.hat();
        const std::size_t ma = ipow(res.abar().dim(), r);
        const std::size_t mh2 = ipow(res.hbar().dim(), 2);
        Matrix lift2 = lifted_map(sp, sp2, [&](Idx idx) {
            const Idx e = idx / ma, a0 = e / c.dH(), h = e % c.dH();
            Accum acc;
            for (const auto& s2 : c.H.sweedler_basis(h, 2)) {
                Vec hb = kron(res.hbar().project(integral->t), res.hbar().project(unit_vec(s2.factors[1])),
                              res.hbar().dim());
                Vec left = unit_vec(c.e_index(a0, s2.factors[0]) * ma + idx % ma);
                acc.add(kron(left, hb, mh2), s2.coeff);
            }
            return acc.take();
        });
        Matrix lhs = compose(tH_bar(sx, r, 1), eta_bar(sx, r, 0));
        Matrix diff = lhs - sign(r) * compose(bm.d(1, r, 2), lift2);
        Subspace target = image(bm.d(0, r + 1, 1));
        for (const auto& x : hr[r].cycles().basis()) {
            ++helper_tried;
            if (target.contains(diff.apply(x))) ++helper_ok;
        }
    }
    rep.add("the helper congruence holds on cycles", helper_ok == helper_tried,
            std::to_string(helper_ok) + "/" + std::to_string(helper_tried));
    return rep;
}

// ---------------------------------------------------------------- decompositions

namespace {

// Splits a vector over (dst lifted index) * dc + c by c and projects each part.
Vec project_coaction(const QuotientSpace& dst, std::size_t dc, const Vec& v) {
    std::map<Idx, Accum> parts;
    for (const auto& [i, x] : v) parts[i % dc].add(i / dc, x);
    Accum out;
    for (auto& [cc, acc] : parts)
        for (const auto& [q, x] : dst.project(acc.take())) out.add(q * dc + cc, x);
    return out.take();
}

Matrix coaction_matrix(const QuotientSpace& src, const QuotientSpace& dst, std::size_t dc,
                       const std::function<Vec(Idx)>& fn, bool& well_defined) {
    Matrix m(dst.dim() * dc, src.dim());
    for (Idx j = 0; j < src.dim(); ++j) m.col[j] = project_coaction(dst, dc, fn(src.lift_index(j)));
    for (const auto& rel : src.relations().basis()) {
        Accum acc;
        for (const auto& [i, x] : rel) acc.add(fn(i), x);
        if (!project_coaction(dst, dc, acc.take()).empty()) well_defined = false;
    }
    return m;
}

Matrix tensor_id(const Matrix& m, std::size_t dc) {
    Matrix out(m.rows * dc, m.cols * dc);
    for (std::size_t j = 0; j < m.cols; ++j)
        for (std::size_t c = 0; c < dc; ++c) {
            Vec v;
            for (const auto& [i, x] : m.col[j]) v.emplace_back(i * dc + c, x);
            out.col[j * dc + c] = std::move(v);
        }
    return out;
}

Matrix block_matrix(const std::vector<Matrix>& blocks, const std::vector<std::size_t>& off, std::size_t dc) {
    Matrix out(off.back() * dc, off.back());
    for (std::size_t s = 0; s < blocks.size(); ++s)
        out = out + block_embed(blocks[s], off.back() * dc, off.back(), off[s] * dc, off[s]);
    return out;
}

struct Coaction {
    std::vector<Matrix> rho;  // per degree
    bool well_defined = true;
};

Coaction canonical_coaction(Resolution& res, const CommutatorQuotient& q, int top) {
    const CrossedData& c = res.crossed();
    const CanonicalComplex& can = res.canonical();
    const std::size_t dc = q.coalg.dim;
    Coaction out;
    for (int n = 0; n <= top; ++n) {
        const Shape& shape = can.shapes.at(n);
        const QuotientSpace& sp = can.spaces.at(n);
        out.rho.push_back(coaction_matrix(sp, sp, dc, [&](Idx idx) {
            std::vector<Idx> t = shape.decode(idx);
            std::vector<Idx> as, hs;
            for (int k = 0; k <= n; ++k) {
                const Idx e = k == 0 ? t[0] : res.ebar().lift_index(t[k]);
                as.push_back(e / c.dH());
                hs.push_back(e % c.dH());
            }
            Accum acc;
            for_each_split(c.H, hs, 2, [&](const std::vector<std::vector<Idx>>& legs, const Scalar& k) {
                std::vector<Vec> slots;
                Vec prod = c.H.unit();
                for (int m = 0; m <= n; ++m) {
                    Vec e = unit_vec(c.e_index(as[m], legs[m][0]));
                    slots.push_back(m == 0 ? e : res.ebar().project(e));
                    prod = c.H.alg.mul(prod, unit_vec(legs[m][1]));
                }
                Accum lifted;
                add_tensor(lifted, shape, slots, Scalar(1));
                acc.add(kron(lifted.take(), q.quotient.project(prod), dc), k);
            });
            return acc.take();
        }, out.well_defined));
    }
    return out;
}

Coaction hat_coaction(Resolution& res, const CommutatorQuotient& q, int top) {
    const CrossedData& c = res.crossed();
    const std::size_t dc = q.coalg.dim, dh = res.hbar().dim(), da = res.abar().dim();
    Coaction out;
    for (int n = 0; n <= top; ++n) {
        std::vector<Matrix> blocks;
        for (int s = 0; s <= n; ++s) {
            const int r = n - s;
            const QuotientSpace& sp = res.xhat_space(r, s);
            const std::size_t mh = ipow(dh, s), ma = ipow(da, r);
            blocks.push_back(coaction_matrix(sp, sp, dc, [&](Idx idx) {
                const Idx e = idx / (mh * ma), hcode = (idx / ma) % mh, acode = idx % ma;
                std::vector<Idx> hs{e % c.dH()};
                for (Idx hq : Shape(std::vector<std::size_t>(s, dh)).decode(hcode)) hs.push_back(res.hbar().lift_index(hq));
                Accum acc;
                for_each_split(c.H, hs, 2, [&](const std::vector<std::vector<Idx>>& legs, const Scalar& k) {
                    std::vector<Vec> slots;
                    Vec prod = unit_vec(legs[0][1]);
                    for (int m = 1; m <= s; ++m) {
                        slots.push_back(res.hbar().project(unit_vec(legs[m][0])));
                        prod = c.H.alg.mul(prod, unit_vec(legs[m][1]));
                    }
                    Accum hb;
                    add_tensor(hb, Shape(std::vector<std::size_t>(s, dh)), slots, Scalar(1));
                    Vec left = kron(unit_vec(c.e_index(e / c.dH(), legs[0][0])), hb.take(), mh);
                    acc.add(kron(kron(left, unit_vec(acode), ma), q.quotient.project(prod), dc), k);
                });
                return acc.take();
            }, out.well_defined));
        }
        out.rho.push_back(block_matrix(blocks, res.xhat_offsets(n), dc));
    }
    return out;
}

Coaction bar_coaction(Simplified& sx, const CommutatorQuotient& q, int top) {
    const CrossedData& c = sx.crossed();
    const Resolution& res = sx.hat();
    const std::size_t dc = q.coalg.dim, dh = res.hbar().dim(), da = res.abar().dim();
    Coaction out;
    for (int n = 0; n <= top; ++n) {
        std::vector<Matrix> blocks;
        for (int s = 0; s <= n; ++s) {
            const int r = n - s;
            const QuotientSpace& sp = sx.space(r, s);
            const std::size_t mh = ipow(dh, s), ma = ipow(da, r);
            blocks.push_back(coaction_matrix(sp, sp, dc, [&](Idx idx) {
                const Idx e = idx / (mh * ma), acode = (idx / mh) % ma, hcode = idx % mh;
                std::vector<Idx> hs;
                for (Idx hq : Shape(std::vector<std::size_t>(s, dh)).decode(hcode)) hs.push_back(res.hbar().lift_index(hq));
                Accum acc;
                for (const auto& t0 : c.H.sweedler_basis(e % c.dH(), 2))
                    for_each_split(c.H, hs, 3, [&](const std::vector<std::vector<Idx>>& legs, const Scalar& k) {
                        std::vector<Vec> slots;
                        Vec firsts = c.H.unit(), thirds = c.H.unit();
                        for (const auto& l : legs) {
                            slots.push_back(res.hbar().project(unit_vec(l[1])));
                            firsts = c.H.alg.mul(firsts, unit_vec(l[0]));
                            thirds = c.H.alg.mul(thirds, unit_vec(l[2]));
                        }
                        Vec prod = c.H.alg.mul(c.H.alg.mul(unit_vec(t0.factors[1]), c.H.antipode.apply(firsts)), thirds);
                        Accum hb;
                        add_tensor(hb, Shape(std::vector<std::size_t>(s, dh)), slots, Scalar(1));
                        Vec left = kron(unit_vec(c.e_index(e / c.dH(), t0.factors[0]) * ma + acode), hb.take(), mh);
                        acc.add(kron(left, q.quotient.project(prod), dc), k * t0.coeff);
                    });
                return acc.take();
            }, out.well_defined));
        }
        out.rho.push_back(block_matrix(blocks, sx.offsets(n), dc));
    }
    return out;
}

struct SplitResult {
    ComponentHomology homology;
    std::vector<std::vector<Subquotient>> parts;  // per component, per degree
    std::vector<MixedComplexData> mixed;          // per component
    bool preserved = true;
    bool direct = true;
    bool morphism = true;
    bool coaction = true;
};

SplitResult split(const std::string& name, const MixedComplexData& m, const Coaction& co, const CommutatorQuotient& q,
                  const std::vector<Subspace>& comps, int bound) {
    SplitResult out;
    out.homology.complex = name;
    const int top = bound + 1;
    const std::size_t dc = q.coalg.dim;
    for (int n = 0; n <= top; ++n) {
        out.coaction = out.coaction && check_coaction(m.dims[n], co.rho[n], q.coalg).ok();
        if (n >= 1 && !(compose(tensor_id(m.b[n], dc), co.rho[n]) == compose(co.rho[n - 1], m.b[n]))) out.morphism = false;
        if (n < top && !(compose(tensor_id(m.B[n], dc), co.rho[n]) == compose(co.rho[n + 1], m.B[n]))) out.morphism = false;
    }
    for (const auto& C : comps) {
        std::vector<Subquotient> parts;
        for (int n = 0; n <= top; ++n) {
            Subspace nc = comodule_component(m.dims[n], co.rho[n], q.coalg, C);
            parts.emplace_back(nc, Subspace(m.dims[n]));
        }
        MixedComplexData mc;
        for (int n = 0; n <= top; ++n) {
            mc.dims.push_back(parts[n].dim());
            if (n == 0) {
                mc.b.push_back(Matrix(0, parts[0].dim()));
            } else {
                auto b = induced_map(parts[n], parts[n - 1], m.b[n]);
                if (!b) out.preserved = false;
                mc.b.push_back(b ? *b : Matrix(parts[n - 1].dim(), parts[n].dim()));
            }
            if (n < top) {
                auto B = induced_map(parts[n], parts[n + 1], m.B[n]);
                if (!B) out.preserved = false;
                mc.B.push_back(B ? *B : Matrix(parts[n + 1].dim(), parts[n].dim()));
            }
        }
        out.parts.push_back(std::move(parts));
        out.mixed.push_back(std::move(mc));
    }
    for (int n = 0; n <= top; ++n) {
        Subspace total(m.dims[n]);
        std::size_t dims = 0;
        for (const auto& parts : out.parts) {
            dims += parts[n].dim();
            for (const auto& v : parts[n].cycles().basis()) total.insert(v);
        }
        if (dims != m.dims[n] || total.dim() != m.dims[n]) out.direct = false;
    }
    out.homology.hh_total = hh_dims(m, bound);
    out.homology.hc_total = hc_dims(m, bound);
    if (out.preserved)
        for (const auto& mc : out.mixed) {
            out.homology.hh.push_back(hh_dims(mc, bound));
            out.homology.hc.push_back(hc_dims(mc, bound));
        }
    return out;
}

MixedComplexData truncate(const MixedComplexData& m, int top) {
    MixedComplexData out;
    out.dims.assign(m.dims.begin(), m.dims.begin() + top + 1);
    out.b.assign(m.b.begin(), m.b.begin() + top + 1);
    out.B.assign(m.B.begin(), m.B.begin() + top);
    return out;
}

bool sums_match(const ComponentHomology& h) {
    std::vector<std::size_t> hh(h.hh_total.size(), 0), hc(h.hc_total.size(), 0);
    for (const auto& v : h.hh)
        for (std::size_t k = 0; k < v.size(); ++k) hh[k] += v[k];
    for (const auto& v : h.hc)
        for (std::size_t k = 0; k < v.size(); ++k) hc[k] += v[k];
    return hh == h.hh_total && hc == h.hc_total;
}

}  // namespace

DecompositionReport decomposition(Simplified& sx, const std::vector<Subspace>& components, int bound) {
    require_depth(sx, bound, "decomposition");
    Resolution& res = sx.hat();
    const CrossedData& c = sx.crossed();
    CommutatorQuotient q = hcheck(c.H);
    Validation valid = check_decomposition(q.coalg, components);
    if (!valid.ok()) throw Refusal("Assume that H/[H,H] is the direct sum of the given subcoalgebras: " + valid.issues[0]);
    DecompositionReport rep;
    rep.bound = bound;
    rep.components = components.size();
    rep.cocommutative = q.cocommutative;
    const int top = bound + 1;
    auto add = [&](std::string name, bool good, std::string detail = "") {
        rep.checks.push_back({std::move(name), good, std::move(detail)});
    };

    MixedComplexData can = truncate(res.canonical().mixed, top);
    MixedComplexData hat = truncate(res.hat_mixed(), top);
    MixedComplexData bar = truncate(sx.mixed(), top);
    Coaction co_can = canonical_coaction(res, q, top);
    Coaction co_hat = hat_coaction(res, q, top);
    Coaction co_bar = bar_coaction(sx, q, top);

    bool transported = true;
    for (int n = 0; n <= top; ++n)
        if (!(compose(tensor_id(sx.theta_total(n), q.coalg.dim), co_hat.rho[n]) ==
              compose(co_bar.rho[n], sx.theta_total(n))))
            transported = false;
    add("the coaction on bar X is the one of hat X transported by theta", transported);

    std::vector<SplitResult> splits;
    splits.push_back(split("canonical", can, co_can, q, components, bound));
    splits.push_back(split("hat", hat, co_hat, q, components, bound));
    splits.push_back(split("bar", bar, co_bar, q, components, bound));
    const std::vector<const Coaction*> coactions{&co_can, &co_hat, &co_bar};
    for (std::size_t k = 0; k < splits.size(); ++k) {
        const auto& sp = splits[k];
        const std::string& name = sp.homology.complex;
        add(name + ": coaction is well defined", coactions[k]->well_defined);
        add(name + ": coaction is counital and coassociative", sp.coaction);
        add(name + ": coaction is a morphism of mixed complexes", sp.morphism);
        add(name + ": components are preserved by both differentials", sp.preserved);
        add(name + ": components form a direct sum", sp.direct);
        add(name + ": component homology sums to the total", sp.preserved && sums_match(sp.homology));
        rep.complexes.push_back(sp.homology);
    }
    bool agree = true;
    for (std::size_t i = 0; i < components.size() && splits[0].preserved && splits[1].preserved && splits[2].preserved;
         ++i)
        for (std::size_t k = 1; k < splits.size(); ++k)
            agree = agree && splits[k].homology.hh[i] == splits[0].homology.hh[i] &&
                    splits[k].homology.hc[i] == splits[0].homology.hc[i];
    add("component homology agrees across the three complexes", agree);

    // bidegree splitting of the bar components and their spectral sequences
    if (q.cocommutative && splits[2].preserved) {
        const SplitResult& sb = splits[2];
        bool bidegree = true;
        std::vector<std::vector<std::size_t>> offsets;
        for (int m = 0; m <= top; ++m) offsets.push_back(sx.offsets(m));
        auto block_of = [&](int m, Idx i) {
            int s = 0;
            while (offsets[m][s + 1] <= i) ++s;
            return s;
        };
        for (const auto& parts : sb.parts)
            for (int m = 0; m <= top; ++m)
                for (const auto& v : parts[m].representatives())
                    if (block_of(m, v.front().first) != block_of(m, v.back().first)) bidegree = false;
        add("bar components split by bidegree", bidegree);
        if (bidegree) {
            std::vector<bool> by_r{false};
            if (c.f_in_K) by_r.push_back(true);
            for (bool second : by_r) {
                BarTotal full;
                full.mixed = bar;
                full.tot = totalize(bar, Variant::BC, top);
                full.fc = coordinate_filtration(full.tot.complex, bar_levels(full.tot, offsets, second));
                std::vector<SpectralPage> fp = pages(full.fc, bound + 2);
                std::map<std::pair<int, int>, std::size_t> e2sum;
                bool each_ok = true;
                for (std::size_t i = 0; i < sb.parts.size(); ++i) {
                    const MixedComplexData& mc = sb.mixed[i];
                    TotalComplex tot = totalize(mc, Variant::BC, top);
                    std::vector<std::vector<int>> level;
                    for (int n = 0; n <= top; ++n) {
                        std::vector<int> l;
                        for (const auto& col : tot.cols(n))
                            for (const auto& v : sb.parts[i][col.xdeg].representatives()) {
                                const int s = block_of(col.xdeg, v.front().first);
                                l.push_back((second ? col.xdeg - s : s) + 2 * col.power);
                            }
                        level.push_back(std::move(l));
                    }
                    FilteredComplex fc = coordinate_filtration(tot.complex, level);
                    if (!validate_filtration(fc).ok()) {
                        each_ok = false;
                        continue;
                    }
                    std::vector<SpectralPage> ps = pages(fc, bound + 2);
                    each_ok = each_ok && verify_pages(fc, ps).ok();
                    std::vector<std::size_t> ab(bound + 1, 0);
                    for (int n = 0; n <= bound; ++n)
                        for (int p = 0; p <= fc.pmax(n); ++p) {
                            e2sum[{p, n}] += ps[2].dim(p, n);
                            ab[n] += ps.back().dim(p, n);
                        }
                    each_ok = each_ok && ab == sb.homology.hc[i];
                }
                bool sums = true;
                for (int n = 0; n <= bound; ++n)
                    for (int p = 0; p <= full.fc.pmax(n); ++p) sums = sums && e2sum[{p, n}] == fp[2].dim(p, n);
                const std::string tag = second ? "second" : "first";
                add("component " + tag + " spectral sequences converge to component HC", each_ok);
                add("component " + tag + " E^2 pages sum to the full E^2", sums);
            }
        }
    }
    return rep;
}

}  // namespace hopfcyclic
