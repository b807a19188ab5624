#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace circsurf {

/// Arbitrary-precision rational, always reduced, denominator > 0.
/// Thin value wrapper over GMP's mpq_class; every constructor canonicalizes.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : v_(n) {}
    Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "num", "num/den" or a plain decimal like "-3.25".
    static Rational parse(const std::string& s) {
        auto dot = s.find('.');
        if (dot != std::string::npos && s.find('/') == std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            std::size_t frac_len = s.size() - dot - 1;
            mpz_class num(digits, 10), den(1);
            for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
            return Rational(num, den);
        }
        mpq_class q(s, 10);
        q.canonicalize();
        return Rational(q);
    }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational pow(long e) const {
        if (e < 0) {
            if (is_zero()) throw std::domain_error("Rational: 0^negative");
            return (Rational(1) / *this).pow(-e);
        }
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), static_cast<unsigned long>(e));
        return Rational(n, d);
    }

    /// Exact square root if this is a perfect square of a rational, else nullopt.
    std::optional<Rational> sqrt_exact() const {
        if (sign() < 0) return std::nullopt;
        if (!mpz_perfect_square_p(num().get_mpz_t()) ||
            !mpz_perfect_square_p(den().get_mpz_t()))
            return std::nullopt;
        mpz_class n, d;
        mpz_sqrt(n.get_mpz_t(), num().get_mpz_t());
        mpz_sqrt(d.get_mpz_t(), den().get_mpz_t());
        return Rational(n, d);
    }

    double to_double() const { return v_.get_d(); }

    std::string str() const {
        if (is_integer()) return num().get_str();
        return num().get_str() + "/" + den().get_str();
    }

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

inline Rational rat_gcd(const Rational& a, const Rational& b) {
    // gcd of rationals: gcd of numerators over lcm of denominators
    mpz_class gn, ld;
    mpz_gcd(gn.get_mpz_t(), a.num().get_mpz_t(), b.num().get_mpz_t());
    mpz_lcm(ld.get_mpz_t(), a.den().get_mpz_t(), b.den().get_mpz_t());
    return Rational(gn, ld);
}

/// Element a + b*sqrt(d) of the quadratic extension Q(sqrt(d)).
/// Values carry d; mixing different d in one expression is a logic error
/// except when one side is purely rational.
class QuadExt {
public:
    QuadExt() : a_(0), b_(0), d_(0) {}
    QuadExt(Rational a) : a_(std::move(a)), b_(0), d_(0) {}
    QuadExt(Rational a, Rational b, Rational d)
        : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
        if (b_.is_zero()) d_ = Rational(0);
    }

    static QuadExt sqrt_of(const Rational& d) { return QuadExt(Rational(0), Rational(1), d); }

    const Rational& rat_part() const { return a_; }
    const Rational& irr_part() const { return b_; }
    const Rational& radicand() const { return d_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    QuadExt& operator+=(const QuadExt& o) {
        merge_radicand(o);
        a_ += o.a_;
        b_ += o.b_;
        if (b_.is_zero()) d_ = Rational(0);
        return *this;
    }
    QuadExt& operator-=(const QuadExt& o) { return *this += QuadExt(-o.a_, -o.b_, o.d_); }
    QuadExt& operator*=(const QuadExt& o) {
        merge_radicand(o);
        Rational na = a_ * o.a_ + b_ * o.b_ * d_;
        Rational nb = a_ * o.b_ + b_ * o.a_;
        a_ = na;
        b_ = nb;
        if (b_.is_zero()) d_ = Rational(0);
        return *this;
    }
    QuadExt& operator/=(const QuadExt& o) { return *this *= o.inverse(); }

    QuadExt inverse() const {
        Rational n = a_ * a_ - b_ * b_ * d_;
        if (n.is_zero()) throw std::domain_error("QuadExt: division by zero");
        return QuadExt(a_ / n, -b_ / n, d_);
    }
    QuadExt conj() const { return QuadExt(a_, -b_, d_); }

    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
    friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
    friend QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a_, -x.b_, x.d_); }
    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.d_ == y.d_);
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    double to_double() const {
        double s = std::sqrt(d_.to_double());
        return a_.to_double() + b_.to_double() * s;
    }

    std::string str() const {
        if (b_.is_zero()) return a_.str();
        return a_.str() + "+" + b_.str() + "*sqrt(" + d_.str() + ")";
    }

private:
    void merge_radicand(const QuadExt& o) {
        if (b_.is_zero() && !o.b_.is_zero()) d_ = o.d_;
        else if (!b_.is_zero() && !o.b_.is_zero() && d_ != o.d_)
            throw std::logic_error("QuadExt: mixing distinct radicands");
    }

    Rational a_, b_, d_;
};

}  // namespace circsurf
