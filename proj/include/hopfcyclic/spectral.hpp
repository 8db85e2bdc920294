#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfcyclic/hopf.hpp"
#include "hopfcyclic/simplified.hpp"

namespace hopfcyclic {

// Z / B for subspaces B of Z of one ambient space, with representatives of a
// basis of the quotient.
class Subquotient {
public:
    Subquotient() = default;
    Subquotient(const Subspace& cycles, const Subspace& boundaries);

    std::size_t dim() const { return reps_.size(); }
    std::size_t ambient() const { return cycles_.ambient(); }
    const std::vector<Vec>& representatives() const { return reps_; }
    const Subspace& cycles() const { return cycles_; }
    const Subspace& boundaries() const { return quotient_.relations(); }
    // Coordinates of the class of z; z must lie in the cycles.
    Vec coordinates(const Vec& z) const;

private:
    Subspace cycles_;
    QuotientSpace quotient_;
    Subspace image_;  // cycles in quotient coordinates
    std::vector<Idx> pivots_;
    std::vector<Vec> reps_;
};

// The map between subquotients induced by f, or nothing when f does not send
// cycles to cycles and boundaries to boundaries. Without the boundary check
// the result depends on the chosen representatives.
std::optional<Matrix> induced_map(const Subquotient& src, const Subquotient& dst, const Matrix& f,
                                  bool check_boundaries = true);

// An increasing filtration of a chain complex by subspaces. steps[n - lo][k]
// is F^{pmin + k} in degree n; below pmin it is zero, past the last step it
// is everything.
struct FilteredComplex {
    ChainComplex complex;
    int pmin = 0;
    std::vector<std::vector<Subspace>> steps;

    Subspace F(int p, int n) const;
    int pmax(int n) const { return pmin + static_cast<int>(steps[n - complex.lo].size()) - 1; }
};

// Filtration where each basis vector of degree n sits in level[n - lo][i] and above.
FilteredComplex coordinate_filtration(ChainComplex c, const std::vector<std::vector<int>>& level);
// Nested, exhaustive and preserved by the differential.
Report validate_filtration(const FilteredComplex& fc);

// E^r_{p,q}, n = p + q, with d^r: E^r_{p,q} -> E^r_{p-r,q+r-1}.
struct SpectralCell {
    Subquotient space;  // Z^r_p / (Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1}) in degree n
    bool reliable = true;  // false in the top degree, whose boundaries are cut off
};

struct SpectralPage {
    int r = 0;
    std::map<std::pair<int, int>, SpectralCell> cells;  // keyed by (p, n)
    std::map<std::pair<int, int>, Matrix> d;          // keyed by source (p, n)

    std::size_t dim(int p, int n) const;
};

std::vector<SpectralPage> pages(const FilteredComplex& fc, int r_max);
// d^r d^r = 0 and dim E^{r+1} = dim H(E^r) on every reliable cell.
Report verify_pages(const FilteredComplex& fc, const std::vector<SpectralPage>& ps);
// dim F^p H_n / F^{p-1} H_n, keyed by (p, n), for reliable degrees.
std::map<std::pair<int, int>, std::size_t> graded_homology(const FilteredComplex& fc);
// d^r of the class of z + w for some w in `corrections` making z + w a
// member of Z^r_p; coordinates in E^r_{p-r} of degree n - 1.
std::optional<Vec> page_differential(const FilteredComplex& fc, const SpectralPage& page, int p, int n, const Vec& z,
                                     const Subspace& corrections);

struct SpectralCheck {
    std::string name;
    bool ok = true;
    std::string detail;

    bool operator==(const SpectralCheck&) const = default;
};

using BigradedDims = std::map<std::pair<int, int>, std::size_t>;  // (filtration index, complementary index)

struct SpectralReport {
    std::string which;
    int bound = 0;
    std::vector<SpectralCheck> checks;
    BigradedDims e2;          // engine
    BigradedDims e2_little;   // HC of the little mixed complexes
    BigradedDims e_infinity;  // engine, last page
    std::vector<BigradedDims> pages;  // engine, page r at index r
    std::vector<std::size_t> abutment;  // per total degree
    std::vector<std::size_t> hc;        // HC^K_n(E) from the canonical complex

    bool ok() const;
    void add(std::string name, bool ok, std::string detail = "");
    bool operator==(const SpectralReport&) const = default;
};

// The H-action on bar X_{r,0} = (E (x) Abar^r)nat given by
// [a g(u) (x) a] -> [g(h(3)) a g(u) g^-1(h(1)) (x) a^{h(2)}].
Matrix theta_action(Simplified& sx, int r, const Vec& h);
bool theta_action_well_defined(Simplified& sx, int r, Idx h);

struct HModuleData {
    std::size_t dim = 0;
    std::vector<Matrix> action;  // one matrix per basis element of H
};
// Unital and associative on basis triples.
Report validate_module(const HopfData& H, const HModuleData& M);
// H_s(H, M) for s = 0..s_max via the normalized bar complex Hbar^{(x) s} (x) M.
std::vector<Homology> h_homology(const HopfData& H, const HModuleData& M, int s_max);

// Filtration by s (first) or by r (second) of Tot BC of bar X, through total degree `bound`.
SpectralReport first_ss(Simplified& sx, int bound);
// Refuses unless the cocycle takes values in K.
SpectralReport second_ss(Simplified& sx, int bound);
// Refuses without an integral of augmentation one.
SpectralReport separable_d2(Simplified& sx, int bound);

struct ComponentHomology {
    std::string complex;  // canonical, hat or bar
    std::vector<std::vector<std::size_t>> hh;  // per component
    std::vector<std::vector<std::size_t>> hc;
    std::vector<std::size_t> hh_total;
    std::vector<std::size_t> hc_total;
};

struct DecompositionReport {
    int bound = 0;
    std::size_t components = 0;
    bool cocommutative = false;
    std::vector<ComponentHomology> complexes;
    std::vector<SpectralCheck> checks;
    bool ok() const;
};

// Splits the canonical, hat and bar mixed complexes along a decomposition of
// H / [H, H] into subcoalgebras and compares homology through `bound`.
DecompositionReport decomposition(Simplified& sx, const std::vector<Subspace>& components, int bound);

}  // namespace hopfcyclic
