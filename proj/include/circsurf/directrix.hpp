#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circsurf/congruence.hpp"
#include "circsurf/errors.hpp"
#include "circsurf/polyops.hpp"
#include "circsurf/unipoly.hpp"

namespace circsurf {

/// Directrix curve alpha(t) = (f1/g, f2/g, f3/g) with homogeneous parameter
/// (t : u); degree_hom is the common form degree after normalization.
struct RationalCurve {
    std::string name;
    RatPoly f1{Rational(0)}, f2{Rational(0)}, f3{Rational(0)}, g{Rational(0)};
    int degree_hom = 0;
};

inline RationalCurve make_curve(std::string name, RatPoly f1, RatPoly f2, RatPoly f3, RatPoly g) {
    if (g.is_zero()) throw std::domain_error("make_curve: zero denominator");
    RatPoly common = gcd_field(gcd_field(f1, f2), gcd_field(f3, g));
    if (common.degree() > 0) {
        auto div = [&](const RatPoly& p) {
            return p.is_zero() ? p : *divide_exact_field(p, common);
        };
        f1 = div(f1);
        f2 = div(f2);
        f3 = div(f3);
        g = div(g);
    }
    RationalCurve c;
    c.name = std::move(name);
    c.degree_hom = std::max(std::max(f1.degree(), f2.degree()), std::max(f3.degree(), g.degree()));
    c.f1 = std::move(f1);
    c.f2 = std::move(f2);
    c.f3 = std::move(f3);
    c.g = std::move(g);
    return c;
}

inline Vec3q eval_curve(const RationalCurve& c, const Rational& t) {
    Rational gv = c.g.eval(t);
    if (gv.is_zero()) throw PoleAtParameter("eval_curve: denominator vanishes at t = " + t.str());
    return {c.f1.eval(t) / gv, c.f2.eval(t) / gv, c.f3.eval(t) / gv};
}

/// Homogeneous evaluation at (t : u): the four form values of common degree.
struct CurveFormValues {
    Rational f1, f2, f3, g;
};

inline CurveFormValues eval_curve_hom(const RationalCurve& c, const Rational& t,
                                      const Rational& u) {
    int d = c.degree_hom;
    auto ev = [&](const RatPoly& p) {
        return p.is_zero() ? Rational(0) : p.eval_hom(t, u, d);
    };
    return {ev(c.f1), ev(c.f2), ev(c.f3), ev(c.g)};
}

/// Chart swap (t : u) -> (u : t); closes the seam of tan-half parametrized
/// curves at t = infinity.
inline RationalCurve inverted_chart(const RationalCurve& c) {
    int d = c.degree_hom;
    auto rev = [&](const RatPoly& p) { return p.is_zero() ? p : p.reversed(d); };
    RationalCurve r = c;
    r.name = c.name + "@inv";
    r.f1 = rev(c.f1);
    r.f2 = rev(c.f2);
    r.f3 = rev(c.f3);
    r.g = rev(c.g);
    return r;
}

/// f = k g for some constant k (k = 0 allowed).
inline bool proportional_to(const RatPoly& f, const RatPoly& g) {
    if (f.is_zero()) return true;
    if (g.is_zero()) return false;
    if (f.degree() != g.degree()) return false;
    Rational k = f.lc() / g.lc();
    RatPoly scaled = g;
    scaled *= k;
    return scaled == f;
}

/// Degree of the parametrization map onto its image: 1 for proper
/// (birational) parametrizations, k when every image point has k parameters.
/// Two parameters t, s hit the same projective point exactly when all pair
/// differences f_i(t) f_j(s) - f_j(t) f_i(s) vanish; off the diagonal their
/// common factor cuts out the k-1 partner parameters of a generic t.
///
/// Fibers of a finite map from the projective parameter line have constant
/// total multiplicity, so a single parameter value with no off-diagonal
/// partner certifies k = 1; only when every sampled fiber looks fat does the
/// full bivariate gcd run.
inline int parametrization_degree(const RationalCurve& c) {
    const RatPoly* comp[4] = {&c.f1, &c.f2, &c.f3, &c.g};

    auto fiber_gcd_at = [&](const Rational& t0) -> std::optional<RatPoly> {
        RatPoly acc(Rational(0));
        bool any = false;
        RatPoly diag = rat_poly(std::vector<Rational>{-t0, Rational(1)});  // s - t0
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                if (comp[i]->is_zero() || comp[j]->is_zero()) continue;
                Rational vi = comp[i]->eval(t0), vj = comp[j]->eval(t0);
                RatPoly num = *comp[j];
                num *= vi;
                {
                    RatPoly sub = *comp[i];
                    sub *= vj;
                    num -= sub;
                }
                if (num.is_zero()) continue;
                auto quot = divide_exact_field(num, diag);
                if (!quot) return std::nullopt;  // t0 hits a base-point-like configuration
                acc = any ? gcd_field(acc, *quot) : *quot;
                any = true;
                if (acc.degree() == 0) return acc;
            }
        }
        if (!any) return std::nullopt;
        return acc;
    };

    for (long num : {17L, -23L, 41L}) {
        auto g = fiber_gcd_at(Rational(num, 5));
        if (g && g->degree() == 0) return 1;
    }

    // suspicion confirmed or samples unlucky: exact bivariate computation
    using P2 = MultiPoly<Rational>;
    auto lift = [](const RatPoly& p, int var) {
        P2 r(2);
        for (int i = 0; i <= p.degree(); ++i) {
            std::vector<int> e(2, 0);
            e[var] = i;
            r.add_term(e, p[i]);
        }
        return r;
    };
    P2 diag = P2::variable(2, 0) - P2::variable(2, 1);
    P2 h(2);
    bool any = false;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (comp[i]->is_zero() || comp[j]->is_zero()) continue;
            P2 pij = lift(*comp[i], 0) * lift(*comp[j], 1) - lift(*comp[j], 0) * lift(*comp[i], 1);
            if (pij.is_zero()) continue;  // proportional pair, no constraint
            auto q = P2::exact_divide(pij, diag);
            if (!q) throw std::logic_error("parametrization_degree: diagonal division failed");
            h = any ? gcd_multivariate(h, *q) : *q;
            any = true;
            if (h.total_degree() == 0) return 1;
        }
    }
    if (!any) return 1;  // constant image; curve_order reports the error
    return 1 + h.degree_in(1);
}

inline int curve_order(const RationalCurve& c) {
    bool f1p = proportional_to(c.f1, c.g), f2p = proportional_to(c.f2, c.g),
         f3p = proportional_to(c.f3, c.g);
    if (f1p && f2p && f3p)
        throw std::domain_error("curve_order: parametrization image is a single point");
    int k = parametrization_degree(c);
    if (c.degree_hom % k != 0)
        throw ModelViolation("curve_order: map degree does not divide the parameter degree");
    return c.degree_hom / k;
}

// ---------------------------------------------------------------------------
// Homogeneous binary forms, represented by a dehomogenized polynomial plus a
// declared form degree (the difference is the multiplicity of the root at
// infinity u = 0).
// ---------------------------------------------------------------------------

struct BinForm {
    RatPoly p{Rational(0)};
    int deg = 0;

    bool is_zero() const { return p.is_zero(); }
    int u_multiplicity() const { return p.is_zero() ? deg : deg - p.degree(); }
};

/// gcd of two binary forms; its degree counts common projective roots with
/// multiplicity (including the root at infinity).
inline BinForm form_gcd(const BinForm& a, const BinForm& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RatPoly g = gcd_field(a.p, b.p);
    int umin = std::min(a.u_multiplicity(), b.u_multiplicity());
    return BinForm{g, g.degree() + umin};
}

/// Degree of the gcd as a form: the number of common roots with multiplicity.
/// Zero-degree (constant) gcds count 0; a zero form yields -1.
inline int form_gcd_count(const BinForm& a, const BinForm& b) {
    BinForm g = form_gcd(a, b);
    if (g.is_zero()) return -1;
    return g.deg;
}

/// Same over Q(sqrt(q)) for splitting conjugate point counts.
struct BinFormExt {
    UniPoly<QuadExt> p{QuadExt()};
    int deg = 0;
    int u_multiplicity() const { return p.is_zero() ? deg : deg - p.degree(); }
};

inline int ext_form_gcd_count(const BinFormExt& a, const BinFormExt& b) {
    if (a.p.is_zero() || b.p.is_zero()) return 0;
    UniPoly<QuadExt> g = gcd_field(a.p, b.p);
    return g.degree() + std::min(a.u_multiplicity(), b.u_multiplicity());
}

// ---------------------------------------------------------------------------
// Curve invariants feeding the degree/multiplicity predictions.
// ---------------------------------------------------------------------------

/// (m, z', a', p1', p2'): curve order, z-axis intersections, absolute-point
/// pairs, and multiplicities at P1/P2 — all counted with multiplicity over the
/// complex projective parameter line via gcd degrees.
struct CurveInvariants {
    int m = 0;
    int z_prime = 0;
    int a_prime = 0;
    int p1_prime = 0;
    int p2_prime = 0;
    bool coincident_p = false;  // q = 0: P1 = P2, combined count in p1_prime
    int map_degree = 1;         // > 1 when the parametrization covers its image k:1

    int p_sum() const { return p1_prime + p2_prime; }
};

inline CurveInvariants invariants(const RationalCurve& c, const CongruenceParam& cong) {
    if (c.f1.is_zero() && c.f2.is_zero())
        throw std::domain_error("invariants: curve lies on the z-axis");
    int d = c.degree_hom;
    CurveInvariants inv;
    inv.m = curve_order(c);
    inv.coincident_p = cong.q.is_zero();

    BinForm F1{c.f1, d}, F2{c.f2, d}, G{c.g, d};

    // parameters hitting the z-axis (P-point passages included)
    BinForm on_axis = form_gcd(F1, F2);
    int axis_total = std::max(0, on_axis.is_zero() ? 0 : on_axis.deg);

    // f3^2 - q g^2 cuts out the P-point parameters among them
    RatPoly pp_poly = c.f3 * c.f3;
    {
        RatPoly qg2 = c.g * c.g;
        qg2 *= cong.q;
        pp_poly -= qg2;
    }

    int psum = 0;
    if (pp_poly.is_zero()) {
        // alpha_3/g is identically +sqrt(q) or -sqrt(q): the curve lies in a
        // plane z = +-p, so every axis meeting is a P-point passage
        psum = axis_total;
        if (cong.q.is_zero()) {
            inv.p1_prime = psum;
        } else {
            auto w = cong.q.sqrt_exact();
            if (!w) throw ModelViolation("invariants: f3^2 = q g^2 with irrational sqrt(q)");
            RatPoly wg = c.g;
            wg *= *w;
            if (c.f3 == wg)
                inv.p1_prime = psum;
            else
                inv.p2_prime = psum;
        }
    } else if (axis_total > 0) {
        BinForm p_locus = form_gcd(on_axis, BinForm{pp_poly, 2 * d});
        psum = std::max(0, p_locus.is_zero() ? 0 : p_locus.deg);
        if (psum > 0) {
            int sq = cong.q.sign();
            if (sq == 0) {
                inv.p1_prime = psum;
            } else if (sq < 0) {
                // conjugate imaginary P1, P2: only the sum is meaningful
                if (psum % 2 != 0)
                    throw ModelViolation("invariants: odd conjugate P-point count");
                inv.p1_prime = inv.p2_prime = psum / 2;
            } else if (auto w = cong.q.sqrt_exact()) {
                RatPoly minus = c.f3, plus = c.f3;
                RatPoly wg = c.g;
                wg *= *w;
                minus -= wg;
                plus += wg;
                inv.p1_prime = std::max(0, form_gcd_count(p_locus, BinForm{minus, d}));
                inv.p2_prime = std::max(0, form_gcd_count(p_locus, BinForm{plus, d}));
                if (inv.p1_prime + inv.p2_prime != psum)
                    throw ModelViolation("invariants: P-point split does not sum");
            } else {
                // irrational sqrt(q): split in the quadratic extension
                auto lift = [&](const Rational& wsign) {
                    UniPoly<QuadExt> r{QuadExt()};
                    int top = std::max(c.f3.degree(), c.g.degree());
                    for (int i = 0; i <= top; ++i) {
                        QuadExt coeff(c.f3[i]);
                        coeff += QuadExt(Rational(0), wsign, cong.q) * QuadExt(c.g[i]);
                        r.set_coeff(i, coeff);
                    }
                    return r;
                };
                BinFormExt locus_ext{UniPoly<QuadExt>{QuadExt()}, p_locus.deg};
                for (int i = 0; i <= p_locus.p.degree(); ++i)
                    locus_ext.p.set_coeff(i, QuadExt(p_locus.p[i]));
                inv.p1_prime = std::max(0, ext_form_gcd_count(locus_ext, {lift(Rational(-1)), d}));
                inv.p2_prime = std::max(0, ext_form_gcd_count(locus_ext, {lift(Rational(1)), d}));
                if (inv.p1_prime + inv.p2_prime != psum)
                    throw ModelViolation("invariants: P-point split does not sum");
            }
        }
    }
    inv.z_prime = axis_total - psum;

    // absolute points: common roots of g and f1^2 + f2^2 + f3^2, in pairs
    RatPoly s2 = c.f1 * c.f1 + c.f2 * c.f2 + c.f3 * c.f3;
    int apairs = std::max(0, form_gcd_count(G, BinForm{s2, 2 * d}));

    // all gcd degrees so far count parameters; a k:1 parametrization hits
    // every image point k times, so the geometric counts divide by k exactly
    inv.map_degree = parametrization_degree(c);
    if (inv.map_degree > 1) {
        auto geometric = [&](int v, const char* what) {
            if (v % inv.map_degree != 0)
                throw ModelViolation(std::string("invariants: ") + what +
                                     " not divisible by the map degree");
            return v / inv.map_degree;
        };
        inv.z_prime = geometric(inv.z_prime, "z-axis count");
        inv.p1_prime = geometric(inv.p1_prime, "P1 count");
        inv.p2_prime = geometric(inv.p2_prime, "P2 count");
        apairs = geometric(apairs, "absolute-point count");
    }
    if (apairs % 2 != 0) throw ModelViolation("invariants: absolute-point count is odd");
    inv.a_prime = apairs / 2;

    if (inv.m < inv.z_prime + inv.p_sum() || inv.m < 2 * inv.a_prime)
        throw ModelViolation("invariants: counts exceed the curve order");
    return inv;
}

// ---------------------------------------------------------------------------
// Degenerate positions (curve inside a plane through z, on a sphere or torus).
// ---------------------------------------------------------------------------

struct DegeneratePosition {
    enum class Kind { InPlaneZeta, OnSphereS, OnTorus, Generic } kind;
    Rational dir_x, dir_y;  // for InPlaneZeta: the plane { dir_y x - dir_x y = 0 }
    Rational r_squared;     // for OnTorus / OnSphereS
};

inline DegeneratePosition detect_degenerate_position(const RationalCurve& c,
                                                     const CongruenceParam& cong) {
    DegeneratePosition out{DegeneratePosition::Kind::Generic, Rational(0), Rational(0),
                           Rational(0)};

    // plane through the z-axis: f1, f2 proportional
    {
        bool plane = false;
        Rational dx(0), dy(0);
        if (c.f1.is_zero() && c.f2.is_zero()) {
            plane = true;  // curve on the z-axis: in every plane through z
        } else if (c.f1.is_zero()) {
            plane = true;
            dy = Rational(1);
        } else if (c.f2.is_zero()) {
            plane = true;
            dx = Rational(1);
        } else if (c.f1.degree() == c.f2.degree()) {
            Rational k = c.f2.lc() / c.f1.lc();
            RatPoly scaled = c.f1;
            scaled *= k;
            if (scaled == c.f2) {
                plane = true;
                dx = Rational(1);
                dy = k;
            }
        }
        if (plane) {
            out.kind = DegeneratePosition::Kind::InPlaneZeta;
            out.dir_x = dx;
            out.dir_y = dy;
            return out;
        }
    }

    RatPoly s_minus_qg2 = c.f1 * c.f1 + c.f2 * c.f2 + c.f3 * c.f3;
    {
        RatPoly qg2 = c.g * c.g;
        qg2 *= cong.q;
        s_minus_qg2 -= qg2;
    }
    if (s_minus_qg2.is_zero()) {
        out.kind = DegeneratePosition::Kind::OnSphereS;
        out.r_squared = cong.q;
        return out;
    }

    // on tau(r): (|alpha|^2 - q)^2 = 4 (r^2 - q) |alpha_xy|^2, linear in r^2
    RatPoly lhs = s_minus_qg2 * s_minus_qg2;
    RatPoly denom = (c.f1 * c.f1 + c.f2 * c.f2) * (c.g * c.g);
    denom *= Rational(4);
    auto quot = divide_exact_field(lhs, denom);
    if (quot && quot->degree() == 0) {
        out.kind = DegeneratePosition::Kind::OnTorus;
        out.r_squared = cong.q + (*quot)[0];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reparametrization and trigonometric ingestion.
// ---------------------------------------------------------------------------

/// Moebius reparametrization t -> (a t + b)/(c t + d), acting on the
/// homogeneous parameter; requires ad - bc != 0.
inline RationalCurve mobius_reparametrize(const RationalCurve& curve, const Rational& a,
                                          const Rational& b, const Rational& c,
                                          const Rational& d) {
    if ((a * d - b * c).is_zero())
        throw std::domain_error("mobius_reparametrize: singular coefficient matrix");
    int dh = curve.degree_hom;
    RatPoly lin_num = rat_poly({b, a});  // a t + b
    RatPoly lin_den = rat_poly({d, c});  // c t + d
    auto transform = [&](const RatPoly& f) {
        if (f.is_zero()) return f;
        RatPoly acc(Rational(0));
        for (int k = 0; k <= f.degree(); ++k) {
            if (f[k].is_zero()) continue;
            RatPoly term = rat_poly(std::vector<Rational>{f[k]});
            for (int i = 0; i < k; ++i) term = term * lin_num;
            for (int i = 0; i < dh - k; ++i) term = term * lin_den;
            acc += term;
        }
        return acc;
    };
    return make_curve(curve.name + "@mobius", transform(curve.f1), transform(curve.f2),
                      transform(curve.f3), transform(curve.g));
}

/// Trigonometric polynomials in (cos t, sin t), ingested through the tan-half
/// substitution cos = (1-u^2)/(1+u^2), sin = 2u/(1+u^2).
using TrigPoly = MultiPoly<Rational>;  // arity 2: variables (cos, sin)

inline TrigPoly trig_const(const Rational& r) { return TrigPoly::constant(2, r); }
inline TrigPoly trig_cos() { return TrigPoly::variable(2, 0); }
inline TrigPoly trig_sin() { return TrigPoly::variable(2, 1); }

inline std::pair<TrigPoly, TrigPoly> trig_multiple_angle(int n) {
    TrigPoly c = trig_cos(), s = trig_sin();
    TrigPoly cos_n = trig_const(Rational(1)), sin_n = TrigPoly(2);
    for (int k = 0; k < n; ++k) {
        TrigPoly cos_next = cos_n * c - sin_n * s;
        TrigPoly sin_next = sin_n * c + cos_n * s;
        cos_n = cos_next;
        sin_n = sin_next;
    }
    return {cos_n, sin_n};
}

inline RationalCurve curve_from_trig(std::string name, const TrigPoly& x, const TrigPoly& y,
                                     const TrigPoly& z) {
    int dmax = 0;
    for (const TrigPoly* p : {&x, &y, &z}) dmax = std::max(dmax, p->total_degree());
    if (dmax < 0) dmax = 0;
    RatPoly one_pu2 = rat_poly({1, 0, 1});   // 1 + u^2
    RatPoly one_mu2 = rat_poly({1, 0, -1});  // 1 - u^2
    RatPoly two_u = rat_poly({0, 2});        // 2u
    auto numerator = [&](const TrigPoly& p) {
        RatPoly acc(Rational(0));
        for (const auto& [e, coeff] : p.terms()) {
            RatPoly term = rat_poly(std::vector<Rational>{coeff});
            for (int i = 0; i < e[0]; ++i) term = term * one_mu2;
            for (int i = 0; i < e[1]; ++i) term = term * two_u;
            for (int i = 0; i < dmax - e[0] - e[1]; ++i) term = term * one_pu2;
            acc += term;
        }
        return acc;
    };
    RatPoly g = rat_poly({1});
    for (int i = 0; i < dmax; ++i) g = g * one_pu2;
    return make_curve(std::move(name), numerator(x), numerator(y), numerator(z), g);
}

}  // namespace circsurf
