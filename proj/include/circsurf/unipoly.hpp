#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "circsurf/errors.hpp"
#include "circsurf/multipoly.hpp"
#include "circsurf/rational.hpp"

namespace circsurf {

inline Rational one_like(const Rational&) { return Rational(1); }
inline QuadExt one_like(const QuadExt&) { return QuadExt(Rational(1)); }
template <class K>
MultiPoly<K> one_like(const MultiPoly<K>& p) {
    return MultiPoly<K>::constant(p.arity(), K(Rational(1)));
}

/// Dense univariate polynomial with coefficients in a commutative ring C
/// (Rational, QuadExt, or MultiPoly for elimination work). Coefficients are
/// stored ascending; the zero polynomial has no coefficients and degree -1.
template <class C>
class UniPoly {
public:
    explicit UniPoly(C zero) : zero_(std::move(zero)) {}
    UniPoly(C zero, std::vector<C> coeffs) : zero_(std::move(zero)), c_(std::move(coeffs)) {
        trim();
    }

    static UniPoly zero_poly(const C& exemplar) { return UniPoly(circsurf::zero_like(exemplar)); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const C& zero_elem() const { return zero_; }

    const C& operator[](int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero_;
        return c_[i];
    }
    const C& lc() const {
        if (c_.empty()) throw std::logic_error("UniPoly: lc of zero");
        return c_.back();
    }

    void set_coeff(int i, C v) {
        if (i < 0) throw std::logic_error("UniPoly: negative index");
        if (i >= static_cast<int>(c_.size())) {
            if (circsurf::is_zero(v)) return;
            c_.resize(i + 1, zero_);
        }
        c_[i] = std::move(v);
        trim();
    }

    const std::vector<C>& coeffs() const { return c_; }

    UniPoly& operator+=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator-(const UniPoly& a) {
        UniPoly r(a.zero_);
        r.c_.reserve(a.c_.size());
        for (const auto& x : a.c_) r.c_.push_back(-x);
        return r;
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        UniPoly r(a.zero_);
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (circsurf::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }

    UniPoly& operator*=(const C& s) {
        for (auto& x : c_) x = x * s;
        trim();
        return *this;
    }
    friend UniPoly operator*(UniPoly a, const C& s) { return a *= s; }

    /// Multiplication by t^k.
    UniPoly shifted(int k) const {
        if (is_zero()) return *this;
        UniPoly r(zero_);
        r.c_.assign(c_.size() + k, zero_);
        std::copy(c_.begin(), c_.end(), r.c_.begin() + k);
        return r;
    }

    UniPoly derivative() const {
        UniPoly r(zero_);
        for (int i = 1; i < static_cast<int>(c_.size()); ++i)
            r.set_coeff(i - 1, c_[i] * C(Rational(i)));
        return r;
    }

    C eval(const C& x) const {
        C acc = zero_;
        for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }

    /// Homogeneous evaluation of the degree-d form t^i u^(d-i).
    C eval_hom(const C& t, const C& u, int d) const {
        if (d < degree()) throw std::logic_error("UniPoly: eval_hom degree too small");
        C acc = zero_;
        for (int i = 0; i <= degree(); ++i) {
            C term = c_[i];
            for (int k = 0; k < i; ++k) term = term * t;
            for (int k = 0; k < d - i; ++k) term = term * u;
            acc += term;
        }
        return acc;
    }

    /// Reversed coefficients: t^d * P(1/t) for the given form degree d.
    UniPoly reversed(int d) const {
        if (d < degree()) throw std::logic_error("UniPoly: reversal degree too small");
        UniPoly r(zero_);
        r.c_.assign(d + 1, zero_);
        for (int i = 0; i <= degree(); ++i) r.c_[d - i] = c_[i];
        r.trim();
        return r;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

private:
    void trim() {
        while (!c_.empty() && circsurf::is_zero(c_.back())) c_.pop_back();
    }

    C zero_;
    std::vector<C> c_;
};

using RatPoly = UniPoly<Rational>;

inline RatPoly rat_poly(std::vector<Rational> coeffs) {
    return RatPoly(Rational(0), std::move(coeffs));
}
inline RatPoly rat_poly(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return RatPoly(Rational(0), std::move(c));
}

/// Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A = Q*B + R, returns R.
template <class C>
UniPoly<C> pseudo_remainder(const UniPoly<C>& a, const UniPoly<C>& b) {
    if (b.is_zero()) throw std::domain_error("pseudo_remainder: zero divisor");
    if (a.degree() < b.degree()) throw std::logic_error("pseudo_remainder: deg A < deg B");
    const C& d = b.lc();
    UniPoly<C> r = a;
    int e = a.degree() - b.degree() + 1;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        C rl = r.lc();
        UniPoly<C> sub = b.shifted(k);
        sub *= rl;
        r *= d;
        r -= sub;
        --e;
    }
    for (int i = 0; i < e; ++i) r *= d;
    return r;
}

template <class C>
UniPoly<C> divide_coeffs_exact(const UniPoly<C>& p, const C& d) {
    UniPoly<C> r(p.zero_elem());
    for (int i = 0; i <= p.degree(); ++i) {
        auto q = exact_div(p[i], d);
        if (!q) throw std::logic_error("divide_coeffs_exact: inexact");
        r.set_coeff(i, *q);
    }
    return r;
}

/// Resultant by the subresultant polynomial remainder sequence
/// (Collins/Brown, fraction-free). Works over any integral domain with exact
/// division: rationals here stand in for any field, MultiPoly for elimination.
template <class C>
C resultant(const UniPoly<C>& pa, const UniPoly<C>& pb) {
    if (pa.is_zero() || pb.is_zero()) throw std::domain_error("resultant: zero input");
    UniPoly<C> a = pa, b = pb;
    int sign = 1;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
        std::swap(a, b);
    }
    if (a.degree() == 0) return one_like(pa.zero_elem());
    if (b.degree() == 0) {
        C r = one_like(pa.zero_elem());
        for (int i = 0; i < a.degree(); ++i) r = r * b.lc();
        return sign < 0 ? -r : r;
    }

    C g = one_like(pa.zero_elem());
    C h = g;
    auto power = [&](const C& x, int e) {
        C r = one_like(x);
        for (int i = 0; i < e; ++i) r = r * x;
        return r;
    };
    while (true) {
        int da = a.degree(), db = b.degree();
        int delta = da - db;
        if ((da & 1) && (db & 1)) sign = -sign;
        UniPoly<C> r = pseudo_remainder(a, b);
        a = b;
        C divisor = g * power(h, delta);
        b = r.is_zero() ? r : divide_coeffs_exact(r, divisor);
        if (b.is_zero()) return zero_like(pa.zero_elem());
        g = a.lc();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            auto q = exact_div(power(g, delta), power(h, delta - 1));
            if (!q) throw std::logic_error("resultant: subresultant division failed");
            h = *q;
        }
        if (b.degree() == 0) break;
    }
    int q = a.degree();
    C num = power(b.lc(), q);
    C res;
    if (q <= 1) {
        res = num;
    } else {
        auto d = exact_div(num, power(h, q - 1));
        if (!d) throw std::logic_error("resultant: final division failed");
        res = *d;
    }
    return sign < 0 ? -res : res;
}

/// Resultant as the Sylvester determinant via fraction-free (Bareiss)
/// elimination; cross-check companion for the PRS route.
template <class C>
C sylvester_resultant(const UniPoly<C>& a, const UniPoly<C>& b) {
    if (a.is_zero() || b.is_zero()) throw std::domain_error("sylvester_resultant: zero input");
    int m = a.degree(), n = b.degree();
    int size = m + n;
    C zero = zero_like(a.zero_elem());
    C one = one_like(a.zero_elem());
    if (size == 0) return one;
    std::vector<std::vector<C>> mat(size, std::vector<C>(size, zero));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) mat[r][r + (m - i)] = a[i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) mat[n + r][r + (n - i)] = b[i];

    int sign = 1;
    C prev = one;
    for (int k = 0; k + 1 < size; ++k) {
        if (circsurf::is_zero(mat[k][k])) {
            int p = -1;
            for (int i = k + 1; i < size; ++i)
                if (!circsurf::is_zero(mat[i][k])) { p = i; break; }
            if (p < 0) return zero;
            std::swap(mat[k], mat[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j) {
                C num = mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j];
                auto q = exact_div(num, prev);
                if (!q) throw std::logic_error("sylvester_resultant: Bareiss division failed");
                mat[i][j] = *q;
            }
            mat[i][k] = zero;
        }
        prev = mat[k][k];
    }
    C det = mat[size - 1][size - 1];
    return sign < 0 ? -det : det;
}

/// Monic gcd over a coefficient field (Rational or QuadExt).
template <class C>
UniPoly<C> gcd_field(UniPoly<C> a, UniPoly<C> b) {
    while (!b.is_zero()) {
        // plain remainder with field division
        UniPoly<C> r = a;
        while (!r.is_zero() && r.degree() >= b.degree()) {
            C f = r.lc() / b.lc();
            UniPoly<C> sub = b.shifted(r.degree() - b.degree());
            sub *= f;
            r -= sub;
        }
        a = b;
        b = r;
    }
    if (!a.is_zero()) {
        C inv = one_like(a.zero_elem()) / a.lc();
        a *= inv;
    }
    return a;
}

template <class C>
std::optional<UniPoly<C>> divide_exact_field(const UniPoly<C>& a, const UniPoly<C>& b) {
    if (b.is_zero()) return std::nullopt;
    UniPoly<C> q(a.zero_elem());
    UniPoly<C> r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        C f = r.lc() / b.lc();
        q.set_coeff(k, f);
        UniPoly<C> sub = b.shifted(k);
        sub *= f;
        r -= sub;
    }
    if (!r.is_zero()) return std::nullopt;
    return q;
}

// ---------------------------------------------------------------------------
// Real-root machinery over the rationals (Sturm sequences).
// ---------------------------------------------------------------------------

inline RatPoly squarefree_part(const RatPoly& p) {
    if (p.is_zero()) throw std::domain_error("squarefree_part: zero polynomial");
    if (p.degree() == 0) return rat_poly({Rational(1)});
    RatPoly g = gcd_field(p, p.derivative());
    auto q = divide_exact_field(p, g);
    assert(q);
    return *q;
}

/// Yun decomposition: returns (factor, multiplicity) pairs with
/// P = lc * prod factor_i^mult_i, factors monic and squarefree.
inline std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& f) {
    if (f.is_zero()) throw std::domain_error("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<RatPoly, int>> out;
    if (f.degree() == 0) return out;
    RatPoly df = f.derivative();
    RatPoly a = gcd_field(f, df);
    RatPoly b = *divide_exact_field(f, a);
    RatPoly c = *divide_exact_field(df, a);
    RatPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        RatPoly p = gcd_field(b, d);
        if (p.degree() > 0) out.emplace_back(p, i);
        b = *divide_exact_field(b, p);
        c = *divide_exact_field(d, p);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

struct SturmChain {
    std::vector<RatPoly> seq;

    static SturmChain build(const RatPoly& squarefree) {
        SturmChain s;
        s.seq.push_back(squarefree);
        if (squarefree.degree() >= 1) {
            s.seq.push_back(squarefree.derivative());
            while (s.seq.back().degree() >= 1) {
                const RatPoly& a = s.seq[s.seq.size() - 2];
                const RatPoly& b = s.seq.back();
                RatPoly r = a;
                while (!r.is_zero() && r.degree() >= b.degree()) {
                    Rational f = r.lc() / b.lc();
                    RatPoly sub = b.shifted(r.degree() - b.degree());
                    sub *= f;
                    r -= sub;
                }
                if (r.is_zero()) break;
                s.seq.push_back(-r);
            }
        }
        return s;
    }

    int variations_at(const Rational& x) const {
        int v = 0, prev = 0;
        for (const auto& p : seq) {
            int s = p.is_zero() ? 0 : p.eval(x).sign();
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }

    int variations_at_infinity(int dir) const {  // dir = +1 or -1
        int v = 0, prev = 0;
        for (const auto& p : seq) {
            if (p.is_zero()) continue;
            int s = p.lc().sign();
            if (dir < 0 && (p.degree() & 1)) s = -s;
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }
};

struct RootInterval {
    Rational lo, hi;   // root lies in (lo, hi]; lo == hi means an exact root
    int multiplicity = 1;
};

struct RealRootReport {
    int distinct_count = 0;
    std::vector<RootInterval> intervals;
};

inline Rational cauchy_root_bound(const RatPoly& p) {
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rational r = (p[i] / p.lc()).abs();
        if (r > m) m = r;
    }
    return m + Rational(1);
}

/// Exact count and isolation of distinct real roots in (lo, hi]; unbounded
/// sides when the optionals are empty. Multiplicities come from the Yun
/// decomposition. Rational roots sitting exactly on a supplied endpoint are
/// deflated first so Sturm counts stay valid.
inline RealRootReport real_roots(const RatPoly& p,
                                 std::optional<Rational> lo = std::nullopt,
                                 std::optional<Rational> hi = std::nullopt) {
    if (p.is_zero()) throw std::domain_error("real_roots: zero polynomial");
    RealRootReport rep;
    if (p.degree() == 0) return rep;
    RatPoly sf = squarefree_part(p);
    if (sf.degree() == 0) return rep;

    Rational bound = cauchy_root_bound(sf);  // roots satisfy |r| < bound
    Rational a = lo ? *lo : -bound;
    Rational b = hi ? *hi : bound;
    if (a >= b) return rep;

    auto deflate_at = [&sf](const Rational& x) {
        RatPoly lin = rat_poly({-x, Rational(1)});
        sf = *divide_exact_field(sf, lin);
    };
    bool hi_is_root = false;
    if (sf.eval(a).is_zero()) deflate_at(a);
    if (sf.eval(b).is_zero()) {
        deflate_at(b);
        hi_is_root = true;
    }

    auto sqfree_factors = squarefree_decomposition(p);
    auto multiplicity_at_interval = [&](const Rational& l, const Rational& h) -> int {
        for (const auto& [fac, mult] : sqfree_factors) {
            if (fac.degree() == 0) continue;
            if (fac.eval(h).is_zero()) return mult;
            SturmChain fc = SturmChain::build(fac);
            if (fc.variations_at(l) - fc.variations_at(h) > 0) return mult;
        }
        return 1;
    };

    if (hi_is_root) {
        RootInterval ri;
        ri.lo = ri.hi = b;
        ri.multiplicity = multiplicity_at_interval(b, b);
        rep.intervals.push_back(ri);
    }

    if (sf.degree() >= 1) {
        SturmChain chain = SturmChain::build(sf);
        // pick a midpoint that is not itself a root
        auto safe_mid = [&](const Rational& l, const Rational& h) {
            int parts = sf.degree() + 2;
            for (int k = 1; k < parts; ++k) {
                Rational m = l + (h - l) * Rational(k, parts);
                if (!sf.eval(m).is_zero()) return m;
            }
            throw std::logic_error("real_roots: no root-free midpoint");
        };
        int total = chain.variations_at(a) - chain.variations_at(b);
        std::vector<std::pair<std::pair<Rational, Rational>, int>> work;
        if (total > 0) work.push_back({{a, b}, total});
        while (!work.empty()) {
            auto [iv, count] = work.back();
            work.pop_back();
            if (count == 0) continue;
            if (count == 1) {
                RootInterval ri;
                ri.lo = iv.first;
                ri.hi = iv.second;
                ri.multiplicity = multiplicity_at_interval(iv.first, iv.second);
                rep.intervals.push_back(ri);
                continue;
            }
            Rational mid = safe_mid(iv.first, iv.second);
            int left = chain.variations_at(iv.first) - chain.variations_at(mid);
            work.push_back({{iv.first, mid}, left});
            work.push_back({{mid, iv.second}, count - left});
        }
    }
    rep.distinct_count = static_cast<int>(rep.intervals.size());
    std::sort(rep.intervals.begin(), rep.intervals.end(),
              [](const RootInterval& x, const RootInterval& y) { return x.hi < y.hi; });
    return rep;
}

/// Count of distinct real roots over the whole line.
inline int count_real_roots(const RatPoly& p) {
    if (p.is_zero()) throw std::domain_error("count_real_roots: zero polynomial");
    if (p.degree() == 0) return 0;
    RatPoly sf = squarefree_part(p);
    if (sf.degree() == 0) return 0;
    SturmChain chain = SturmChain::build(sf);
    return chain.variations_at_infinity(-1) - chain.variations_at_infinity(+1);
}

/// All rational roots, via the rational root theorem on the integer-cleared
/// polynomial. Divisor enumeration is by trial division; coefficients at desk
/// scale keep this cheap.
inline std::vector<Rational> rational_roots(const RatPoly& p) {
    std::vector<Rational> out;
    if (p.is_zero() || p.degree() == 0) return out;
    mpz_class den_lcm(1);
    for (int i = 0; i <= p.degree(); ++i)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), p[i].den().get_mpz_t());
    std::vector<mpz_class> c(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i)
        c[i] = p[i].num() * (den_lcm / p[i].den());
    int low = 0;
    while (low <= p.degree() && c[low] == 0) ++low;
    if (low > 0) out.emplace_back(0);
    mpz_class a0 = abs(c[low]), ad = abs(c[p.degree()]);
    auto divisors = [](const mpz_class& n) {
        std::vector<mpz_class> ds;
        for (mpz_class d(1); d * d <= n; ++d) {
            if (n % d == 0) {
                ds.push_back(d);
                ds.push_back(n / d);
            }
            if (d > 2000000) break;  // cap; candidates beyond are not enumerated
        }
        return ds;
    };
    for (const auto& dn : divisors(a0))
        for (const auto& dd : divisors(ad))
            for (int s : {1, -1}) {
                Rational cand(s * dn, dd);
                if (p.eval(cand).is_zero()) out.push_back(cand);
            }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Conversions between MultiPoly and a univariate view in one variable.
// ---------------------------------------------------------------------------

template <class K>
UniPoly<MultiPoly<K>> as_unipoly(const MultiPoly<K>& p, int var) {
    UniPoly<MultiPoly<K>> r(p.zero_like());
    for (const auto& [e, c] : p.terms()) {
        auto rest = e;
        int d = rest[var];
        rest[var] = 0;
        MultiPoly<K> coeff = r[d];
        coeff.add_term(rest, c);
        r.set_coeff(d, std::move(coeff));
    }
    return r;
}

template <class K>
MultiPoly<K> from_unipoly(const UniPoly<MultiPoly<K>>& p, int var) {
    MultiPoly<K> r = p.zero_elem().zero_like();
    for (int i = 0; i <= p.degree(); ++i) {
        for (const auto& [e, c] : p[i].terms()) {
            auto ne = e;
            ne[var] += i;
            r.add_term(ne, c);
        }
    }
    return r;
}

}  // namespace circsurf
