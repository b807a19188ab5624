#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "circsurf/multipoly.hpp"
#include "circsurf/unipoly.hpp"

namespace circsurf {

/// Componentwise-minimum exponent vector: the monomial gcd of all terms.
inline std::vector<int> monomial_content(const Poly3& p) {
    std::vector<int> m;
    for (const auto& [e, c] : p.terms()) {
        if (m.empty()) {
            m = e;
        } else {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
        }
    }
    if (m.empty()) m.assign(p.arity(), 0);
    return m;
}

inline Poly3 divide_by_monomial(const Poly3& p, const std::vector<int>& m) {
    Poly3 r(p.arity());
    for (const auto& [e, c] : p.terms()) {
        auto ne = e;
        for (std::size_t i = 0; i < ne.size(); ++i) {
            ne[i] -= m[i];
            if (ne[i] < 0) throw std::logic_error("divide_by_monomial: not divisible");
        }
        r.add_term(ne, c);
    }
    return r;
}

namespace detail {
inline Poly3 normalize_primitive(const Poly3& p) {
    if (p.is_zero()) return p;
    return primitive_part(p).second;
}
}  // namespace detail

/// Primitive-PRS multivariate gcd over Q[x1..xn]; result is primitive with a
/// positive leading coefficient.
inline Poly3 gcd_multivariate(const Poly3& f, const Poly3& g) {
    if (f.is_zero()) return detail::normalize_primitive(g);
    if (g.is_zero()) return detail::normalize_primitive(f);
    if (f.total_degree() == 0 || g.total_degree() == 0)
        return Poly3::constant(f.arity(), Rational(1));

    int v = -1;
    for (int i = 0; i < f.arity(); ++i)
        if (f.degree_in(i) > 0 || g.degree_in(i) > 0) v = i;

    auto fu = as_unipoly(f, v);
    auto gu = as_unipoly(g, v);

    auto coeff_gcd = [](const UniPoly<Poly3>& p) {
        Poly3 c = p.zero_elem();
        for (int i = 0; i <= p.degree(); ++i) c = gcd_multivariate(c, p[i]);
        return c;
    };

    if (fu.degree() == 0) return gcd_multivariate(f, coeff_gcd(gu));
    if (gu.degree() == 0) return gcd_multivariate(coeff_gcd(fu), g);

    Poly3 cont_f = coeff_gcd(fu);
    Poly3 cont_g = coeff_gcd(gu);
    Poly3 c = gcd_multivariate(cont_f, cont_g);

    auto pf = divide_coeffs_exact(fu, cont_f);
    auto pg = divide_coeffs_exact(gu, cont_g);

    while (true) {
        if (pf.degree() < pg.degree()) std::swap(pf, pg);
        if (pg.degree() == 0) return detail::normalize_primitive(c);
        UniPoly<Poly3> r = pseudo_remainder(pf, pg);
        if (r.is_zero()) {
            Poly3 pp = detail::normalize_primitive(from_unipoly(divide_coeffs_exact(pg, coeff_gcd(pg)), v));
            return detail::normalize_primitive(c * pp);
        }
        Poly3 cont_r = coeff_gcd(r);
        pf = pg;
        pg = divide_coeffs_exact(r, cont_r);
    }
}

/// Splits P = content * primitive with the content free of split_var: the
/// monomial gcd of the terms, the rational content, and the polynomial gcd of
/// the split_var coefficients all go into the content.
inline std::pair<Poly3, Poly3> content_and_primitive(const Poly3& p, int split_var) {
    if (p.is_zero()) throw std::domain_error("content_and_primitive: zero polynomial");
    auto [rc, p0] = primitive_part(p);
    auto m = monomial_content(p0);
    Poly3 p1 = divide_by_monomial(p0, m);
    auto view = as_unipoly(p1, split_var);
    Poly3 cg = view.zero_elem();
    for (int i = 0; i <= view.degree(); ++i) cg = gcd_multivariate(cg, view[i]);
    Poly3 prim = *Poly3::exact_divide(p1, cg);
    auto [rc2, prim_n] = primitive_part(prim);
    Poly3 content = Poly3::monomial(p.arity(), m, rc * rc2) * cg;
    return {content, prim_n};
}

/// Exact e-th root of a polynomial (graded-lex leading-term peeling);
/// nullopt when P is not a perfect e-th power.
inline std::optional<Poly3> poly_nth_root(const Poly3& p, int e) {
    if (e <= 0) throw std::domain_error("poly_nth_root: exponent must be positive");
    if (e == 1) return p;
    if (p.is_zero()) return p;

    auto le = p.leading_exps();
    std::vector<int> re(le.size());
    for (std::size_t i = 0; i < le.size(); ++i) {
        if (le[i] % e != 0) return std::nullopt;
        re[i] = le[i] / e;
    }
    const Rational& lcf = p.leading_coeff();
    if (lcf.sign() < 0 && e % 2 == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_class nabs = abs(lcf.num());
    if (!mpz_root(rn.get_mpz_t(), nabs.get_mpz_t(), e)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), lcf.den().get_mpz_t(), e)) return std::nullopt;
    if (lcf.sign() < 0) rn = -rn;
    Poly3 g = Poly3::monomial(p.arity(), re, Rational(rn, rd));

    const std::size_t term_cap = 200000;
    for (std::size_t iter = 0; iter < term_cap; ++iter) {
        Poly3 r = p - g.pow(e);
        if (r.is_zero()) return g;
        Poly3 denom = g.pow(e - 1) * Rational(e);
        // next term = lt(r) / (e * lt(g)^(e-1))
        auto de = denom.leading_exps();
        auto rexp = r.leading_exps();
        std::vector<int> te(rexp.size());
        for (std::size_t i = 0; i < te.size(); ++i) {
            te[i] = rexp[i] - de[i];
            if (te[i] < 0) return std::nullopt;
        }
        Rational tc = r.leading_coeff() / denom.leading_coeff();
        Poly3 t = Poly3::monomial(p.arity(), te, tc);
        typename Poly3::GrlexDesc before;
        if (!before(g.terms().rbegin()->first, te)) return std::nullopt;  // must strictly decrease
        g += t;
    }
    return std::nullopt;
}

/// Largest e with P = c * Q^e (c rational, e >= 1); returns (Q, e). Used to
/// take the radical of elimination output that covers its surface multiply.
inline std::pair<Poly3, int> perfect_power_radical(const Poly3& p) {
    if (p.is_zero() || p.total_degree() == 0) return {p, 1};
    int n = p.total_degree();
    for (int e = n; e >= 2; --e) {
        if (n % e != 0) continue;
        auto [c, prim] = primitive_part(p);
        auto root = poly_nth_root(prim, e);
        if (root) return {*root, e};
    }
    return {p, 1};
}

}  // namespace circsurf
