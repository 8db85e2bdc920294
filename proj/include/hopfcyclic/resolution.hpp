#pragma once

#include <functional>
#include <map>
#include <memory>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hopfcyclic/crossed.hpp"
#include "hopfcyclic/homcore.hpp"

namespace hopfcyclic {

// Element of X_n = (+)_s X_{n-s,s}: one lifted vector per s = 0..n.
using Graded = std::vector<Vec>;

// Lifted index layout (left * mid_dim + mid) * right_dim + right.
struct Outer {
    std::size_t left = 1;
    std::size_t mid = 1;
    std::size_t right = 1;

    std::size_t total() const { return left * mid * right; }
    Idx join(Idx l, Idx m, Idx r) const { return (l * mid + m) * right + r; }
    void split(Idx idx, Idx& l, Idx& m, Idx& r) const {
        r = idx % right;
        idx /= right;
        m = idx % mid;
        l = idx / mid;
    }
};

// The resolution (X, d) of a crossed product E = A #_f H relative to K, its
// contracting homotopy, the comparison with the bar resolution of E over K
// and everything induced on E (x)_{E^e} -.
//
// Lifted coordinates:
//   X_rs   [E][Hbar^s][Abar^r][E]     Y_s   [E][Hbar^s][H]
//   B_n    [E][Ebar^n][E]             hat X_rs [E][Hbar^s][Abar^r]   C_n [E][Ebar^n]
// where the E (x)_A (E/A)^s prefix is kept in the normal form E (x) Hbar^s.
class Resolution {
public:
    // The canonical complex of E is built through canonical_top, which may be
    // top - 1 when its top degree is too large to hold.
    Resolution(const CrossedData& c, int top, std::optional<int> canonical_top = std::nullopt);

    const CrossedData& crossed() const { return *c_; }
    int top() const { return top_; }
    const QuotientSpace& hbar() const { return hbar_; }
    const QuotientSpace& abar() const { return abar_; }
    const QuotientSpace& ebar() const { return canon_.cbar; }
    const SubalgebraData& k_in_E() const { return kE_; }
    const CanonicalComplex& canonical() const { return canon_; }

    Shape mid_shape(int r, int s) const;  // [Hbar^s][Abar^r]
    Shape bar_mid_shape(int n) const;     // [Ebar^n]
    Outer x_outer(int r, int s) const;
    Outer y_outer(int s) const;
    Outer b_outer(int n) const;
    Outer xhat_outer(int r, int s) const;
    Outer chat_outer(int n) const;

    const QuotientSpace& x_space(int r, int s);
    const QuotientSpace& xhat_space(int r, int s);
    const QuotientSpace& b_space(int n);
    const QuotientSpace& chat_space(int n) const { return canon_.spaces.at(n); }

    // Quotient-coordinate offsets of the s-blocks of X_n and hat X_n.
    std::vector<std::size_t> x_offsets(int n);
    std::vector<std::size_t> xhat_offsets(int n);

    // e0 (x)_A x_1 (x)_A ... (x)_A x_m in normal form. With last_full the
    // final factor is a full E ([E][Hbar^{m-1}][H]); otherwise every x_i is
    // taken modulo A ([E][Hbar^m]).
    Vec normalize(const Vec& e0, const std::vector<Vec>& xs, bool last_full) const;
    // Right action of A on E (x)_A (E/A)^s in lifted [E][Hbar^s] coordinates.
    Vec prefix_times(int s, Idx prefix, const Vec& a) const;
    Vec lift_h(Idx q) const;   // a representative in H of a basis vector of Hbar
    Vec lift_a(Idx q) const;   // same for Abar inside A
    Vec lift_e(Idx q) const;   // same for Ebar inside E
    Vec generator(int r, int s, Idx mid) const;  // 1 (x) mid (x) 1 in X_rs

    // The rows and the augmented complex of Y.
    Vec mu(int s, const Vec& x) const;               // X_0s -> Y_s
    Vec partial(int s, const Vec& y) const;          // Y_s -> Y_{s-1}
    Vec sigma_minus(int s, const Vec& y) const;      // Y_{s-1} -> Y_s; s = 0 takes E
    Vec mu_tilde(const Vec& y) const;                // Y_0 -> E
    Vec sigma0_y(int s, const Vec& y) const;         // Y_s -> X_0s
    Vec sigma0(int r, int s, const Vec& x) const;    // X_rs -> X_{r+1,s}
    Vec d0(int r, int s, const Vec& x) const;        // X_rs -> X_{r-1,s}

    // d^l on X_rs (l = 0 is d0), recursion memoized on generators.
    Vec d(int l, int r, int s, const Vec& x);
    const Vec& d_generator(int l, int r, int s, Idx mid);
    // sigma^l on X_rs (r = -1 means Y_s), memoized on 1 (x) mid (x) e.
    Vec sigma(int l, int r, int s, const Vec& x);

    Graded d_total(int n, const Graded& x);           // X_n -> X_{n-1}
    Graded sigma_bar(int n, const Graded& x, bool short_form = false);  // X_{n-1} -> X_n, n >= 1
    Graded sigma_bar0(const Vec& e) const;            // E -> X_0
    Vec mu_total(const Graded& x) const;              // X_0 -> E

    // Bar resolution of E relative to K.
    Vec bprime(int n, const Vec& x) const;   // B_n -> B_{n-1}
    Vec xi(int n, const Vec& x) const;       // B_{n-1} -> B_n; n = 0 takes E
    Vec mu_bar(const Vec& x) const;          // B_0 -> E

    // Comparison maps, memoized on generators.
    const Vec& phi_generator(int r, int s, Idx mid);  // in B_{r+s}
    const Graded& psi_generator(int n, Idx mid);      // in X_n
    const Vec& omega_generator(int n, Idx mid);       // B_n -> B_{n+1}
    Vec phi(int n, const Graded& x);
    Graded psi(int n, const Vec& y);
    Vec omega(int n, const Vec& y);                   // B_n -> B_{n+1}

    // Quotient-coordinate matrices.
    Matrix d_matrix(int n);                            // X_n -> X_{n-1}
    Matrix sigma_bar_matrix(int n, bool short_form = false);  // X_{n-1} -> X_n
    Matrix bprime_matrix(int n);
    Matrix phi_matrix(int n);
    Matrix psi_matrix(int n);
    Matrix omega_matrix(int n);                        // B_n -> B_{n+1}

    // Induced maps on E (x)_{E^e} -.
    Matrix dhat_matrix(int n);                         // hat X_n -> hat X_{n-1}
    Matrix dhat_component(int l, int r, int s);        // hat X_rs -> hat X_{r+l-1,s-l}
    Matrix phihat_matrix(int n);                       // hat X_n -> C_n
    Matrix psihat_matrix(int n);                       // C_n -> hat X_n
    Matrix omegahat_matrix(int n);                     // C_n -> C_{n+1}
    // Dhat = psihat B phihat: hat X_n -> hat X_{n+1}.
    Matrix hat_connes(int n);
    // (hat X, dhat, Dhat) through the top degree of the canonical complex.
    MixedComplexData hat_mixed();

    // hat of an element of X_rs or of B_n (lifted).
    Vec hat_x(int r, int s, const Vec& x) const;
    Vec hat_b(int n, const Vec& y) const;

    // E-bimodule action on lifted two-sided vectors.
    Vec sandwich(const Outer& o, const Vec& eL, const Vec& v, const Vec& eR) const;

private:
    Vec extend(const Outer& src, const Outer& dst, const Vec& v, const std::function<const Vec&(Idx)>& gen) const;
    Vec extend_left(const Outer& src, const Outer& dst, const Vec& v,
                    const std::function<const Vec&(Idx, Idx)>& gen) const;
    Vec hat_of(const Outer& src, const Outer& dst, const Vec& v, const std::function<const Vec&(Idx)>& gen) const;
    Vec add_block(std::size_t dim_l, const Vec& left, const Outer& o, const std::vector<Vec>& slots) const;

    const CrossedData* c_;
    int top_;
    QuotientSpace hbar_;
    QuotientSpace abar_;
    SubalgebraData kE_;
    CanonicalComplex canon_;
    Vec unit_E_;

    std::map<std::pair<int, int>, QuotientSpace> x_spaces_;
    std::map<std::pair<int, int>, QuotientSpace> xhat_spaces_;
    std::map<int, QuotientSpace> b_spaces_;

    std::map<std::tuple<int, int, int>, std::unordered_map<Idx, Vec>> d_memo_;
    std::map<std::tuple<int, int, int>, std::unordered_map<Idx, Vec>> sigma_memo_;
    std::map<std::pair<int, int>, std::unordered_map<Idx, Vec>> phi_memo_;
    std::map<int, std::unordered_map<Idx, Graded>> psi_memo_;
    std::map<int, std::unordered_map<Idx, Vec>> omega_memo_;
    std::map<int, Matrix> dhat_cache_, phihat_cache_, psihat_cache_, omegahat_cache_;
};

// Places a per-block lifted element into quotient coordinates of X_n.
Vec project_graded(Resolution& res, int n, const Graded& x);
Graded lift_graded(Resolution& res, int n, const Vec& q);

}  // namespace hopfcyclic
