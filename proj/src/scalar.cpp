#include "hopfcyclic/scalar.hpp"

#include <limits>

namespace hopfcyclic {

namespace {

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(__int128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::domain_error("residue not invertible");
    return t < 0 ? t + p : t;
}

mpq_class mpq_from_i64(std::int64_t n, std::int64_t d) {
    mpz_class num, den;
    mpz_set_si(num.get_mpz_t(), n);
    mpz_set_si(den.get_mpz_t(), d);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

Scalar Scalar::from_i128(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("division by zero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) return Scalar();
    u128 g = gcd128(num < 0 ? static_cast<u128>(-num) : static_cast<u128>(num), static_cast<u128>(den));
    if (g > 1) {
        num /= static_cast<__int128>(g);
        den /= static_cast<__int128>(g);
    }
    if (fits64(num) && fits64(den)) {
        Scalar s;
        s.n_ = static_cast<std::int64_t>(num);
        s.d_ = static_cast<std::int64_t>(den);
        return s;
    }
    return Scalar();  // caller falls back to mpq; marker handled there
}

Scalar Scalar::from_mpq(mpq_class q) {
    q.canonicalize();
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
        Scalar s;
        s.n_ = q.get_num().get_si();
        s.d_ = q.get_den().get_si();
        return s;
    }
    Scalar s;
    s.big_ = std::make_shared<const mpq_class>(std::move(q));
    s.n_ = 1;  // keeps is_zero() false
    return s;
}

Scalar Scalar::rational(long long num, long long den) {
    Scalar s = from_i128(num, den);
    return s;
}

Scalar Scalar::rational(const mpq_class& q) { return from_mpq(q); }

Scalar Scalar::residue(long long v, std::uint32_t p) {
    if (p < 2) throw std::invalid_argument("modulus must be a prime >= 2");
    Scalar s;
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    s.n_ = r;
    s.p_ = p;
    return s;
}

Scalar Scalar::parse(const std::string& text, std::uint32_t p) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: '" + text + "'");
    q.canonicalize();
    Scalar s = from_mpq(q);
    return p == 0 ? s : s.in_field(p);
}

Scalar Scalar::in_field(std::uint32_t p) const {
    if (p == p_) return *this;
    if (p_ != 0) throw std::domain_error("scalars from different prime fields");
    if (is_zero()) {
        Scalar s;
        s.p_ = p;
        return s;
    }
    std::int64_t num, den;
    if (big_) {
        mpz_class m(p);
        mpz_class a = big_->get_num() % m;
        mpz_class b = big_->get_den() % m;
        num = a.get_si();
        den = b.get_si();
    } else {
        num = n_ % static_cast<std::int64_t>(p);
        den = d_ % static_cast<std::int64_t>(p);
    }
    if (num < 0) num += p;
    if (den == 0) throw std::domain_error("denominator vanishes mod " + std::to_string(p));
    Scalar s;
    s.p_ = p;
    s.n_ = static_cast<std::int64_t>((static_cast<unsigned __int128>(num) * inv_mod(den, p)) % p);
    return s;
}

void align(Scalar& a, Scalar& b) {
    if (a.p_ == b.p_) return;
    if (a.p_ == 0)
        a = a.in_field(b.p_);
    else if (b.p_ == 0)
        b = b.in_field(a.p_);
    else
        throw std::domain_error("scalars from different prime fields");
}

mpq_class Scalar::to_mpq() const {
    if (p_ != 0) return mpq_class(static_cast<long>(n_));
    if (big_) return *big_;
    return mpq_from_i64(n_, d_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (p_ != 0) {
        Scalar s;
        s.p_ = p_;
        s.n_ = inv_mod(n_, p_);
        return s;
    }
    if (big_) return from_mpq(1 / *big_);
    return from_i128(d_, n_);
}

Scalar Scalar::operator-() const {
    if (p_ != 0) {
        Scalar s = *this;
        if (n_ != 0) s.n_ = p_ - n_;
        return s;
    }
    if (big_) return from_mpq(-*big_);
    if (n_ == std::numeric_limits<std::int64_t>::min()) return from_mpq(-to_mpq());
    Scalar s = *this;
    s.n_ = -n_;
    return s;
}

Scalar operator+(const Scalar& x, const Scalar& y) {
    if (x.p_ == 0 && y.p_ == 0) {
        if (!x.big_ && !y.big_) {
            if (x.d_ == 1 && y.d_ == 1) {
                std::int64_t r;
                if (!__builtin_add_overflow(x.n_, y.n_, &r)) return Scalar(static_cast<long long>(r));
            } else {
                __int128 num = static_cast<__int128>(x.n_) * y.d_ + static_cast<__int128>(y.n_) * x.d_;
                __int128 den = static_cast<__int128>(x.d_) * y.d_;
                if (num == 0) return Scalar();
                Scalar s = Scalar::from_i128(num, den);
                if (!s.is_zero()) return s;
            }
        }
        return Scalar::from_mpq(x.to_mpq() + y.to_mpq());
    }
    Scalar a = x, b = y;
    align(a, b);
    Scalar s;
    s.p_ = a.p_;
    s.n_ = (a.n_ + b.n_) % a.p_;
    return s;
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
    if (x.p_ == 0 && y.p_ == 0) {
        if (x.is_zero() || y.is_zero()) return Scalar();
        if (!x.big_ && !y.big_) {
            if (x.d_ == 1 && y.d_ == 1) {
                std::int64_t r;
                if (!__builtin_mul_overflow(x.n_, y.n_, &r)) return Scalar(static_cast<long long>(r));
            } else {
                __int128 num = static_cast<__int128>(x.n_) * y.n_;
                __int128 den = static_cast<__int128>(x.d_) * y.d_;
                Scalar s = Scalar::from_i128(num, den);
                if (!s.is_zero()) return s;
            }
        }
        return Scalar::from_mpq(x.to_mpq() * y.to_mpq());
    }
    Scalar a = x, b = y;
    align(a, b);
    Scalar s;
    s.p_ = a.p_;
    s.n_ = static_cast<std::int64_t>((static_cast<unsigned __int128>(a.n_) * static_cast<std::uint64_t>(b.n_)) % a.p_);
    return s;
}

bool operator==(const Scalar& x, const Scalar& y) {
    if (x.p_ != y.p_) {
        Scalar a = x, b = y;
        align(a, b);
        return a.n_ == b.n_;
    }
    if (x.big_ || y.big_) {
        if (x.big_ && y.big_) return *x.big_ == *y.big_;
        return false;  // canonical: big values never fit int64
    }
    return x.n_ == y.n_ && x.d_ == y.d_;
}

std::string Scalar::str() const {
    if (big_) return big_->get_str();
    if (p_ != 0 || d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

}  // namespace hopfcyclic
