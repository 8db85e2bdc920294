#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace hopfcyclic {

// Element of Q or F_p. Rationals live in an int64 pair while they fit and
// spill to mpq_class otherwise; residues keep their prime alongside.
// A rational meeting a residue is coerced into F_p, so integer literals and
// signs work in either field.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : n_(v) {}
    Scalar(long v) : n_(v) {}
    Scalar(long long v) : n_(v) {}

    static Scalar rational(long long num, long long den);
    static Scalar rational(const mpq_class& q);
    static Scalar residue(long long v, std::uint32_t p);
    // "a", "a/b", "-a/b"; p = 0 means Q.
    static Scalar parse(const std::string& text, std::uint32_t p);

    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    std::uint32_t prime() const { return p_; }

    Scalar in_field(std::uint32_t p) const;
    Scalar inverse() const;
    mpq_class to_mpq() const;
    std::string str() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
    static Scalar from_i128(__int128 num, __int128 den);
    static Scalar from_mpq(mpq_class q);
    friend void align(Scalar& a, Scalar& b);

    std::int64_t n_ = 0;  // numerator, or the residue when p_ != 0
    std::int64_t d_ = 1;  // positive, coprime to n_
    std::shared_ptr<const mpq_class> big_;
    std::uint32_t p_ = 0;
};

inline Scalar sign(long k) { return (k % 2 == 0) ? Scalar(1) : Scalar(-1); }

}  // namespace hopfcyclic
