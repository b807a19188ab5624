#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "circsurf/rational.hpp"

namespace circsurf {

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const QuadExt& x) { return x.is_zero(); }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline QuadExt zero_like(const QuadExt&) { return QuadExt(); }
inline std::optional<Rational> exact_div(const Rational& a, const Rational& b) {
    if (b.is_zero()) return std::nullopt;
    return a / b;
}
inline std::optional<QuadExt> exact_div(const QuadExt& a, const QuadExt& b) {
    if (b.is_zero()) return std::nullopt;
    return a / b;
}

/// Sparse multivariate polynomial over a field K, terms keyed by exponent
/// vector in graded-lexicographic descending order (leading term first).
template <class K = Rational>
class MultiPoly {
public:
    using Exps = std::vector<int>;

    struct GrlexDesc {
        bool operator()(const Exps& a, const Exps& b) const {
            int da = 0, db = 0;
            for (int e : a) da += e;
            for (int e : b) db += e;
            if (da != db) return da > db;
            return a > b;  // lexicographic tie-break, descending
        }
    };

    using TermMap = std::map<Exps, K, GrlexDesc>;

    explicit MultiPoly(int arity = 0) : arity_(arity) {
        if (arity < 0) throw std::logic_error("MultiPoly: negative arity");
    }

    static MultiPoly constant(int arity, K c) {
        MultiPoly p(arity);
        if (!circsurf::is_zero(c)) p.terms_.emplace(Exps(arity, 0), std::move(c));
        return p;
    }
    static MultiPoly variable(int arity, int idx, int power = 1) {
        MultiPoly p(arity);
        if (idx < 0 || idx >= arity) throw std::logic_error("MultiPoly: variable index");
        Exps e(arity, 0);
        e[idx] = power;
        p.terms_.emplace(std::move(e), K(Rational(1)));
        return p;
    }
    static MultiPoly monomial(int arity, Exps e, K c) {
        MultiPoly p(arity);
        if (static_cast<int>(e.size()) != arity) throw std::logic_error("MultiPoly: exps arity");
        for (int x : e)
            if (x < 0) throw std::logic_error("MultiPoly: negative exponent");
        if (!circsurf::is_zero(c)) p.terms_.emplace(std::move(e), std::move(c));
        return p;
    }

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    MultiPoly zero_like() const { return MultiPoly(arity_); }

    /// Total degree; -1 for the zero polynomial.
    int total_degree() const {
        if (terms_.empty()) return -1;
        const Exps& e = terms_.begin()->first;
        int d = 0;
        for (int x : e) d += x;
        return d;
    }

    int degree_in(int var) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return terms_.empty() ? -1 : d;
    }

    /// Minimum over terms of the sum of exponents of the given variables.
    int min_degree_in(const std::vector<int>& vars) const {
        if (terms_.empty()) return -1;
        int m = INT32_MAX;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int v : vars) s += e[v];
            m = std::min(m, s);
        }
        return m;
    }

    /// Maximum over terms of the sum of exponents of the given variables.
    int max_degree_in(const std::vector<int>& vars) const {
        if (terms_.empty()) return -1;
        int m = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int v : vars) s += e[v];
            m = std::max(m, s);
        }
        return m;
    }

    const K& leading_coeff() const {
        if (terms_.empty()) throw std::logic_error("MultiPoly: leading_coeff of zero");
        return terms_.begin()->second;
    }
    const Exps& leading_exps() const {
        if (terms_.empty()) throw std::logic_error("MultiPoly: leading_exps of zero");
        return terms_.begin()->first;
    }

    void add_term(const Exps& e, const K& c) {
        if (circsurf::is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (circsurf::is_zero(it->second)) terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(const MultiPoly& a) {
        MultiPoly r(a.arity_);
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly r(a.arity_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exps e(a.arity_);
                for (int i = 0; i < a.arity_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    MultiPoly& operator*=(const K& s) {
        if (circsurf::is_zero(s)) { terms_.clear(); return *this; }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend MultiPoly operator*(MultiPoly a, const K& s) { return a *= s; }
    friend MultiPoly operator*(const K& s, MultiPoly a) { return a *= s; }

    MultiPoly pow(long e) const {
        if (e < 0) throw std::domain_error("MultiPoly: negative power");
        MultiPoly r = constant(arity_, K(Rational(1)));
        MultiPoly base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    K eval(const std::vector<K>& xs) const {
        if (static_cast<int>(xs.size()) != arity_) throw std::logic_error("MultiPoly: eval arity");
        K acc = K(Rational(0));
        for (const auto& [e, c] : terms_) {
            K t = c;
            for (int i = 0; i < arity_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= xs[i];
            acc += t;
        }
        return acc;
    }

    double eval_double(const std::vector<double>& xs) const {
        if (static_cast<int>(xs.size()) != arity_) throw std::logic_error("MultiPoly: eval arity");
        double acc = 0;
        for (const auto& [e, c] : terms_) {
            double t = c.to_double();
            for (int i = 0; i < arity_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= xs[i];
            acc += t;
        }
        return acc;
    }

    /// Substitutes a polynomial for one variable.
    MultiPoly subst(int var, const MultiPoly& value) const {
        value.check_arity(*this);
        MultiPoly r(arity_);
        std::map<int, MultiPoly> powers;
        powers.emplace(0, constant(arity_, K(Rational(1))));
        auto power_of = [&](int k) -> const MultiPoly& {
            auto it = powers.lower_bound(k);
            if (it != powers.end() && it->first == k) return it->second;
            --it;
            MultiPoly acc = it->second;
            for (int j = it->first; j < k; ++j) acc = acc * value;
            return powers.emplace(k, std::move(acc)).first->second;
        };
        for (const auto& [e, c] : terms_) {
            Exps rest = e;
            rest[var] = 0;
            MultiPoly t = monomial(arity_, rest, c);
            if (e[var] > 0) t = t * power_of(e[var]);
            r += t;
        }
        return r;
    }

    /// Substitutes a scalar for one variable (arity is preserved).
    MultiPoly subst_value(int var, const K& value) const {
        MultiPoly r(arity_);
        for (const auto& [e, c] : terms_) {
            K coeff = c;
            for (int k = 0; k < e[var]; ++k) coeff *= value;
            Exps rest = e;
            rest[var] = 0;
            r.add_term(rest, coeff);
        }
        return r;
    }

    /// Reduces var^2 -> rel everywhere, leaving var-degree <= 1.
    MultiPoly reduce_square(int var, const MultiPoly& rel) const {
        rel.check_arity(*this);
        MultiPoly r(arity_);
        std::map<int, MultiPoly> powers;
        powers.emplace(0, constant(arity_, K(Rational(1))));
        auto power_of = [&](int k) -> const MultiPoly& {
            auto it = powers.lower_bound(k);
            if (it != powers.end() && it->first == k) return it->second;
            --it;
            MultiPoly acc = it->second;
            for (int j = it->first; j < k; ++j) acc = acc * rel;
            return powers.emplace(k, std::move(acc)).first->second;
        };
        for (const auto& [e, c] : terms_) {
            int half = e[var] / 2, rem = e[var] % 2;
            Exps rest = e;
            rest[var] = rem;
            r += monomial(arity_, rest, c) * power_of(half);
        }
        return r;
    }

    /// Drops a variable that no term uses, re-indexing the ones after it.
    MultiPoly drop_var(int var) const {
        if (degree_in(var) > 0) throw std::logic_error("MultiPoly: drop_var in use");
        MultiPoly r(arity_ - 1);
        for (const auto& [e, c] : terms_) {
            Exps ne;
            ne.reserve(arity_ - 1);
            for (int i = 0; i < arity_; ++i)
                if (i != var) ne.push_back(e[i]);
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    /// Inserts a fresh variable (exponent 0 everywhere) at position var.
    MultiPoly lift_var(int var) const {
        MultiPoly r(arity_ + 1);
        for (const auto& [e, c] : terms_) {
            Exps ne;
            ne.reserve(arity_ + 1);
            for (int i = 0; i < var; ++i) ne.push_back(e[i]);
            ne.push_back(0);
            for (int i = var; i < arity_; ++i) ne.push_back(e[i]);
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    MultiPoly derivative(int var) const {
        MultiPoly r(arity_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exps ne = e;
            ne[var] -= 1;
            r.add_term(ne, c * K(Rational(e[var])));
        }
        return r;
    }

    /// F(x + o) for a rational offset vector o (same arity).
    MultiPoly translate(const std::vector<K>& origin) const {
        if (static_cast<int>(origin.size()) != arity_)
            throw std::logic_error("MultiPoly: translate arity");
        MultiPoly r = *this;
        for (int i = 0; i < arity_; ++i) {
            if (circsurf::is_zero(origin[i])) continue;
            MultiPoly shifted = variable(arity_, i) + constant(arity_, origin[i]);
            r = r.subst(i, shifted);
        }
        return r;
    }

    /// Splits into homogeneous components, ascending degree, empty degrees omitted.
    std::vector<std::pair<int, MultiPoly>> homogeneous_components() const {
        std::map<int, MultiPoly> by_deg;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (int x : e) d += x;
            auto it = by_deg.find(d);
            if (it == by_deg.end()) it = by_deg.emplace(d, MultiPoly(arity_)).first;
            it->second.terms_.emplace(e, c);
        }
        std::vector<std::pair<int, MultiPoly>> out;
        out.reserve(by_deg.size());
        for (auto& [d, p] : by_deg) out.emplace_back(d, std::move(p));
        return out;
    }

    /// Homogeneous component of one degree (zero polynomial if absent).
    MultiPoly homogeneous_component(int deg) const {
        MultiPoly r(arity_);
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (int x : e) d += x;
            if (d == deg) r.terms_.emplace(e, c);
        }
        return r;
    }

    bool is_homogeneous() const {
        return homogeneous_components().size() <= 1;
    }

    /// Exact multivariate division; nullopt when G does not divide F.
    static std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g) {
        f.check_arity(g);
        if (g.is_zero()) throw std::domain_error("MultiPoly: division by zero");
        MultiPoly q(f.arity_);
        MultiPoly r = f;
        const Exps& ge = g.leading_exps();
        while (!r.is_zero()) {
            const Exps& re = r.leading_exps();
            Exps qe(f.arity_);
            for (int i = 0; i < f.arity_; ++i) {
                qe[i] = re[i] - ge[i];
                if (qe[i] < 0) return std::nullopt;
            }
            K qc = r.leading_coeff() / g.leading_coeff();
            MultiPoly t = monomial(f.arity_, qe, qc);
            q += t;
            r -= t * g;
        }
        return q;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string cs = c.str();
            if (!first) {
                if (!cs.empty() && cs[0] == '-') {
                    os << " - ";
                    cs = cs.substr(1);
                } else {
                    os << " + ";
                }
            }
            first = false;
            bool has_var = false;
            for (int x : e)
                if (x > 0) has_var = true;
            if (!has_var || cs != "1") {
                os << cs;
                if (has_var) os << "*";
            }
            bool started = false;
            for (int i = 0; i < arity_; ++i) {
                if (e[i] == 0) continue;
                if (started) os << "*";
                started = true;
                os << (i < static_cast<int>(names.size()) ? names[i] : "v" + std::to_string(i));
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

    std::string str() const {
        static const std::vector<std::string> def{"x", "y", "z", "q", "t", "u"};
        return str(def);
    }

private:
    void check_arity(const MultiPoly& o) const {
        if (arity_ != o.arity_) throw std::logic_error("MultiPoly: arity mismatch");
    }

    int arity_;
    TermMap terms_;
};

using Poly3 = MultiPoly<Rational>;

inline bool is_zero(const Poly3& p) { return p.is_zero(); }
inline bool is_zero(const MultiPoly<QuadExt>& p) { return p.is_zero(); }
template <class K>
MultiPoly<K> zero_like(const MultiPoly<K>& p) { return p.zero_like(); }
template <class K>
std::optional<MultiPoly<K>> exact_div(const MultiPoly<K>& a, const MultiPoly<K>& b) {
    return MultiPoly<K>::exact_divide(a, b);
}

/// gcd of all coefficients, with the sign of the leading coefficient; dividing
/// by it leaves a primitive polynomial with coprime integer coefficients and a
/// positive leading term.
inline Rational rational_content(const MultiPoly<Rational>& p) {
    if (p.is_zero()) return Rational(0);
    Rational g(0);
    for (const auto& [e, c] : p.terms()) g = rat_gcd(g, c);
    if (p.leading_coeff().sign() < 0) g = -g;
    return g;
}

inline std::pair<Rational, MultiPoly<Rational>> primitive_part(const MultiPoly<Rational>& p) {
    if (p.is_zero()) return {Rational(0), p};
    Rational c = rational_content(p);
    MultiPoly<Rational> prim = p;
    prim *= Rational(1) / c;
    return {c, prim};
}

/// Equality up to a nonzero scalar multiple.
template <class K>
bool proportional(const MultiPoly<K>& a, const MultiPoly<K>& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.leading_exps() != b.leading_exps()) return false;
    return a * b.leading_coeff() == b * a.leading_coeff();
}

template <class K>
MultiPoly<QuadExt> to_quadext(const MultiPoly<K>& p);

inline MultiPoly<QuadExt> to_quadext(const MultiPoly<Rational>& p) {
    MultiPoly<QuadExt> r(p.arity());
    for (const auto& [e, c] : p.terms()) r.add_term(e, QuadExt(c));
    return r;
}

}  // namespace circsurf
