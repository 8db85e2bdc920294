#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfcyclic/algebra.hpp"

namespace hopfcyclic {

// Degrees lo .. lo + dims.size() - 1. d[k] maps degree lo + k to lo + k - 1;
// d[0] has no rows.
struct ChainComplex {
    int lo = 0;
    std::vector<std::size_t> dims;
    std::vector<Matrix> d;

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
    std::size_t dim(int n) const;
    Matrix diff(int n) const;  // zero of the right shape outside the range
};

struct MixedComplexData {
    std::vector<std::size_t> dims;  // degrees 0 .. top
    std::vector<Matrix> b;          // b[n]: X_n -> X_{n-1}
    std::vector<Matrix> B;          // B[n]: X_n -> X_{n+1}, n < top

    int top() const { return static_cast<int>(dims.size()) - 1; }
    ChainComplex hochschild() const;
};

struct Witness {
    int degree = 0;
    std::string identity;
    Vec vector;  // a basis vector on which it fails
};

struct Report {
    std::vector<Witness> failures;
    bool ok() const { return failures.empty(); }
    void fail(int degree, std::string identity, Vec v = {}) {
        failures.push_back({degree, std::move(identity), std::move(v)});
    }
    std::string summary() const;
};

Report verify_complex(const ChainComplex& c);
Report verify_mixed(const MixedComplexData& m, int through = -1);

// The relative canonical mixed complex of a K-algebra C on C (x) Cbar^{(x) n} modulo K-relations.
struct CanonicalComplex {
    const AlgebraData* C = nullptr;
    SubalgebraData K;
    QuotientSpace cbar;                // C / K
    std::vector<Shape> shapes;         // lifted shape in degree n
    std::vector<QuotientSpace> spaces; // quotient in degree n
    MixedComplexData mixed;

    // b and B on a lifted basis element, returned in lifted coordinates.
    Vec b_lifted(int n, Idx idx) const;
    Vec B_lifted(int n, Idx idx) const;
};

CanonicalComplex canonical_mixed(const AlgebraData& C, const SubalgebraData& K, int N);

enum class Variant { BC, BN, BP };
const char* variant_name(Variant v);

struct Column {
    int power = 0;      // exponent of u
    int xdeg = 0;       // degree in the mixed complex
    std::size_t offset = 0;
};

struct TotalComplex {
    ChainComplex complex;
    std::vector<std::vector<Column>> columns;  // per degree, index n - complex.lo
    Variant variant = Variant::BC;
    int window = 0;

    const std::vector<Column>& cols(int n) const { return columns[n - complex.lo]; }
};

// BC needs no window; BN and BP keep the columns |power| <= window.
TotalComplex totalize(const MixedComplexData& m, Variant v, int max_degree, std::optional<int> window = std::nullopt);

struct Homology {
    std::size_t dim = 0;
    std::vector<Vec> representatives;
};
Homology homology(const ChainComplex& c, int n, bool with_representatives = true);
std::vector<std::size_t> betti(const ChainComplex& c, int from, int to);

struct StabilizationReport {
    int window = 0;
    std::vector<int> degrees;
    std::vector<std::size_t> previous;  // window - 1
    std::vector<std::size_t> current;   // window
    bool stable() const { return previous == current; }
};
// HN/HP dimensions for degrees 0..max_degree at windows W-1 and W.
StabilizationReport windowed_homology(const MixedComplexData& m, Variant v, int max_degree, int window);

// (Y, dY) <-p,i-> (X, dX) with h: X_n -> X_{n+1}. Complexes and i, p cover
// degrees 0..top; h covers 0..top-1.
struct SDRData {
    ChainComplex Y;
    ChainComplex X;
    std::vector<Matrix> i;
    std::vector<Matrix> p;
    std::vector<Matrix> h;

    int top() const { return X.hi(); }
};

struct SDRReport {
    Report deformation;  // chain maps, p i = id, homotopy
    Report special;      // h i = 0, p h = 0, h h = 0
    bool ok() const { return deformation.ok() && special.ok(); }
};
// Homotopy convention: dX h + h dX = i p - id.
SDRReport verify_sdr(const SDRData& s);

struct PerturbResult {
    SDRData sdr;         // valid through top - 1
    std::vector<int> nilpotency;  // depth reached per degree
};
// delta[n]: X_n -> X_{n-1} for n = 0..top.
PerturbResult perturb(const SDRData& s, const std::vector<Matrix>& delta, int cap = -1);

Matrix block_embed(const Matrix& m, std::size_t rows, std::size_t cols, std::size_t row_off, std::size_t col_off);

}  // namespace hopfcyclic
