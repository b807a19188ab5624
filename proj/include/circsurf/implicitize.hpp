#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "circsurf/directrix.hpp"
#include "circsurf/errors.hpp"
#include "circsurf/polyops.hpp"
#include "circsurf/surface.hpp"

namespace circsurf {

/// The two incidence equations in the curve parameter t whose resultant
/// eliminates t: E1 puts (x,y,z) in the carrying plane of the circle through
/// alpha(t), E2 on its carrying sphere. Coefficients live in Q[x,y,z] (arity
/// 3), or Q[x,y,z,q] (arity 4) when q stays symbolic.
struct EliminationSystem {
    UniPoly<Poly3> e1{Poly3(3)};
    UniPoly<Poly3> e2{Poly3(3)};
    int arity = 3;
    bool symbolic_q = false;
    Rational q;
};

/// Cleaned implicit equation plus elimination provenance.
struct ImplicitSurface {
    Poly3 f{3};
    bool symbolic_q = false;
    Rational q;
    CurveInvariants inv;
    int predicted_order = 0;
    int computed_order = 0;
    int covering_multiplicity = 1;  // how often CS covers the carrier (torus/sphere cases)
    bool order_matches = false;
    int radical_exponent = 1;       // e when the raw resultant carried F^e
    std::vector<std::string> removed_factors;
};

namespace detail {

inline UniPoly<Poly3> lift_ratpoly(const RatPoly& p, const Poly3& factor) {
    UniPoly<Poly3> r(factor.zero_like());
    for (int i = 0; i <= p.degree(); ++i) {
        Poly3 c = factor;
        c *= p[i];
        r.set_coeff(i, std::move(c));
    }
    return r;
}

/// Long division of a t-polynomial with Poly3 coefficients by a rational
/// t-polynomial; division must be exact.
inline UniPoly<Poly3> divide_by_ratpoly(const UniPoly<Poly3>& a, const RatPoly& b) {
    if (b.degree() <= 0) {
        UniPoly<Poly3> r = a;
        Rational inv = Rational(1) / b[0];
        for (int i = 0; i <= a.degree(); ++i) {
            Poly3 c = a[i];
            c *= inv;
            r.set_coeff(i, std::move(c));
        }
        return r;
    }
    UniPoly<Poly3> rem = a;
    UniPoly<Poly3> quot(a.zero_elem());
    Rational lead = b[b.degree()];
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int k = rem.degree() - b.degree();
        Poly3 qc = rem.lc();
        qc *= Rational(1) / lead;
        quot.set_coeff(k, qc);
        for (int i = 0; i <= b.degree(); ++i) {
            Poly3 sub = qc;
            sub *= b[i];
            Poly3 cur = rem[k + i];
            cur -= sub;
            rem.set_coeff(k + i, std::move(cur));
        }
    }
    if (!rem.is_zero()) throw std::logic_error("divide_by_ratpoly: inexact division");
    return quot;
}

}  // namespace detail

/// Builds the elimination system. Pass symbolic_q = true to keep q as a
/// fourth polynomial variable, reproducing the equations with literal q.
inline EliminationSystem build_system(const RationalCurve& c, const CongruenceParam& cong,
                                      bool symbolic_q = false) {
    auto pos = detect_degenerate_position(c, cong);
    if (pos.kind == DegeneratePosition::Kind::InPlaneZeta)
        throw DegeneratePlane(
            "directrix lies in a plane through the z-axis; the swept set is that plane");

    EliminationSystem sys;
    sys.symbolic_q = symbolic_q;
    sys.q = cong.q;
    sys.arity = symbolic_q ? 4 : 3;
    int ar = sys.arity;

    Poly3 x = Poly3::variable(ar, 0), y = Poly3::variable(ar, 1), z = Poly3::variable(ar, 2);
    Poly3 a_minus_q = x * x + y * y + z * z;
    if (symbolic_q)
        a_minus_q -= Poly3::variable(ar, 3);
    else
        a_minus_q -= Poly3::constant(ar, cong.q);

    RatPoly n = c.f1 * c.f1 + c.f2 * c.f2;
    RatPoly s = n + c.f3 * c.f3;
    RatPoly g2 = c.g * c.g;

    // parameters mapping onto the z-axis carry no circle; their common factor
    // is dropped from both equations up front
    RatPoly h = gcd_field(c.f1, c.f2);

    UniPoly<Poly3> e1 = detail::lift_ratpoly(c.f2, x) - detail::lift_ratpoly(c.f1, y);

    UniPoly<Poly3> sphere_part = detail::lift_ratpoly(n * c.g, a_minus_q);
    UniPoly<Poly3> stilde{Poly3(ar)};
    if (symbolic_q) {
        Poly3 qv = Poly3::variable(ar, 3);
        stilde = detail::lift_ratpoly(s, Poly3::constant(ar, Rational(1))) -
                 detail::lift_ratpoly(g2, qv);
    } else {
        RatPoly sq = s;
        RatPoly qg2 = g2;
        qg2 *= cong.q;
        sq -= qg2;
        stilde = detail::lift_ratpoly(sq, Poly3::constant(ar, Rational(1)));
    }
    UniPoly<Poly3> radial =
        detail::lift_ratpoly(c.f1, x) + detail::lift_ratpoly(c.f2, y);
    UniPoly<Poly3> e2 = sphere_part - radial * stilde;

    if (h.degree() > 0) {
        e1 = detail::divide_by_ratpoly(e1, h);
        e2 = detail::divide_by_ratpoly(e2, h);
    }
    if (e1.degree() < 1)
        throw DegeneratePlane("carrying-plane equation is constant in t");
    sys.e1 = std::move(e1);
    sys.e2 = std::move(e2);
    return sys;
}

/// Raw elimination: Res_t(E1, E2).
inline Poly3 eliminate(const EliminationSystem& sys) {
    if (sys.e1.is_zero() || sys.e2.is_zero())
        throw std::domain_error("eliminate: zero equation");
    Poly3 res = resultant(sys.e1, sys.e2);
    if (res.is_zero())
        throw CommonComponent(
            "elimination resultant vanishes identically: the incidence system shares a component");
    return res;
}

// ---------------------------------------------------------------------------
// Membership checks.
// ---------------------------------------------------------------------------

/// |F(X)| / (1 + |X|^deg F), floating point.
inline double membership_residual(const Poly3& f, const Vec3d& v) {
    if (f.arity() != 3) throw std::logic_error("membership_residual: arity-3 polynomial expected");
    double val = f.eval_double({v[0], v[1], v[2]});
    double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return std::abs(val) / (1.0 + std::pow(norm, std::max(1, f.total_degree())));
}

/// Exact membership of the whole circle at homogeneous parameter (t : u): F
/// composed with the circle parametrization reduces to zero modulo
/// cos^2 + sin^2 - 1 and sigma^2 - radicand. Needs g(t:u) != 0 and the point
/// off the z-axis.
inline bool verify_membership_exact(const Poly3& f_in, const RationalCurve& c,
                                    const CongruenceParam& cong, const Rational& t,
                                    const Rational& u = Rational(1)) {
    Poly3 f = f_in;
    if (f.arity() == 4) f = f.subst_value(3, cong.q).drop_var(3);
    if (f.arity() != 3) throw std::logic_error("verify_membership_exact: bad arity");

    auto vals = eval_curve_hom(c, t, u);
    if (vals.g.is_zero())
        throw PoleAtParameter("verify_membership_exact: pole at the sample parameter");
    Rational a1 = vals.f1 / vals.g, a2 = vals.f2 / vals.g, a3 = vals.f3 / vals.g;
    Rational n = a1 * a1 + a2 * a2;
    if (n.is_zero())
        throw PointOnAxis("verify_membership_exact: sample on the z-axis");
    Rational m = n + a3 * a3 - cong.q;
    Rational radicand = Rational(4) * cong.q * n + m * m;

    // symbols: 0 = cos theta, 1 = sin theta, 2 = sigma
    using Sym = MultiPoly<Rational>;
    const int S = 1, SIG = 2;
    Sym xhat = Sym::monomial(3, {1, 0, 1}, a1 / (Rational(2) * n));
    xhat += Sym::constant(3, a1 * m / (Rational(2) * n));
    Sym yhat = Sym::monomial(3, {1, 0, 1}, a2 / (Rational(2) * n));
    yhat += Sym::constant(3, a2 * m / (Rational(2) * n));
    Sym z2hat = Sym::monomial(3, {0, 2, 0}, radicand / (Rational(4) * n));

    Sym even(3), odd(3);
    for (const auto& [e, coeff] : f.terms()) {
        Sym term = Sym::constant(3, coeff);
        term = term * xhat.pow(e[0]);
        term = term * yhat.pow(e[1]);
        term = term * z2hat.pow(e[2] / 2);
        if (e[2] % 2 == 0)
            even += term;
        else
            odd += term;
    }

    Sym sin_rel = Sym::constant(3, Rational(1)) - Sym::monomial(3, {2, 0, 0}, Rational(1));
    auto reduce = [&](Sym p) {
        p = p.reduce_square(S, sin_rel);
        if (auto s0 = radicand.sqrt_exact()) {
            p = p.subst_value(SIG, *s0);
        } else {
            p = p.reduce_square(SIG, Sym::constant(3, radicand));
        }
        return p;
    };
    return reduce(even).is_zero() && reduce(odd).is_zero();
}

// ---------------------------------------------------------------------------
// Extraneous-factor removal.
// ---------------------------------------------------------------------------

namespace detail {

/// Rational parameters at which a candidate factor can be probed: away from
/// poles, the z-axis locus, and (for q > 0) the double-sphere tangency set.
inline std::vector<std::pair<Rational, Rational>> probe_parameters(const RationalCurve& c,
                                                                   int count) {
    std::vector<std::pair<Rational, Rational>> out;
    long k = 2;
    while (static_cast<int>(out.size()) < count && k < 2000) {
        Rational t(k, k % 3 + 1);
        ++k;
        auto vals = eval_curve_hom(c, t, Rational(1));
        if (vals.g.is_zero()) continue;
        if ((vals.f1 * vals.f1 + vals.f2 * vals.f2).is_zero()) continue;
        out.emplace_back(t, Rational(1));
    }
    if (static_cast<int>(out.size()) < count)
        throw ModelViolation("probe_parameters: could not find clean samples");
    return out;
}

/// True when the candidate vanishes identically on every probed circle: then
/// it is part of the swept surface and must stay.
inline bool factor_on_surface(const Poly3& cand, const RationalCurve& c,
                              const CongruenceParam& cong, bool symbolic_q) {
    std::vector<Rational> q_samples;
    if (symbolic_q)
        q_samples = {Rational(5), Rational(7, 2), Rational(-3)};
    else
        q_samples = {cong.q};
    auto params = probe_parameters(c, 4);
    for (const Rational& qs : q_samples) {
        Poly3 sub = cand;
        if (sub.arity() == 4) sub = sub.subst_value(3, qs).drop_var(3);
        CongruenceParam cq{qs};
        for (const auto& [t, u] : params) {
            bool ok;
            try {
                ok = verify_membership_exact(sub, c, cq, t, u);
            } catch (const std::exception&) {
                return false;
            }
            if (!ok) return false;
        }
    }
    return true;
}

/// Field remainder of a by b.
inline RatPoly rem_field(const RatPoly& a, const RatPoly& b) {
    RatPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Rational f = r.lc() / b.lc();
        RatPoly sub = b.shifted(r.degree() - b.degree());
        sub *= f;
        r -= sub;
    }
    return r;
}

/// Product over the roots tau of hs of the planes B(tau) x - A(tau) y through
/// the z-axis; rational by root symmetry, computed as a resultant.
inline std::optional<Poly3> plane_product(const RatPoly& hs, const RatPoly& a, const RatPoly& b,
                                          int arity) {
    RatPoly ra = rem_field(a, hs), rb = rem_field(b, hs);
    if (ra.is_zero() && rb.is_zero()) return std::nullopt;
    UniPoly<Poly3> hs_l{Poly3(arity)};
    for (int i = 0; i <= hs.degree(); ++i) hs_l.set_coeff(i, Poly3::constant(arity, hs[i]));
    UniPoly<Poly3> plane_l = detail::lift_ratpoly(rb, Poly3::variable(arity, 0)) -
                             detail::lift_ratpoly(ra, Poly3::variable(arity, 1));
    if (plane_l.is_zero()) return std::nullopt;
    Poly3 product(arity);
    if (plane_l.degree() == 0) {
        Poly3 p = plane_l[0];
        product = Poly3::constant(arity, Rational(1));
        for (int i = 0; i < hs.degree(); ++i) product = product * p;
    } else {
        product = resultant(hs_l, plane_l);
    }
    if (product.is_zero() || product.total_degree() <= 0) return std::nullopt;
    return primitive_part(product).second;
}

/// Candidate planes through the z-axis that the elimination can pick up:
/// tangent planes at the curve's axis crossings (per squarefree factor of
/// gcd(f1, f2), conjugate parameters contributing jointly) and isotropic-plane
/// pairs through the curve's absolute points (per squarefree factor of
/// gcd(g, f1^2+f2^2+f3^2)).
inline std::vector<Poly3> axis_plane_candidates(const RationalCurve& c, int arity) {
    std::vector<Poly3> out;
    auto add_for_chart = [&](const RationalCurve& chart) {
        RatPoly h = gcd_field(chart.f1, chart.f2);
        if (h.degree() > 0) {
            for (const auto& [hs, mult] : squarefree_decomposition(h)) {
                if (hs.degree() <= 0) continue;
                RatPoly d1 = chart.f1, d2 = chart.f2;
                for (int k = 1; k <= chart.degree_hom + 1; ++k) {
                    d1 = d1.derivative();
                    d2 = d2.derivative();
                    auto p = plane_product(hs, d1, d2, arity);
                    if (p) {
                        out.push_back(*p);
                        break;
                    }
                }
            }
        }
        RatPoly s = chart.f1 * chart.f1 + chart.f2 * chart.f2 + chart.f3 * chart.f3;
        RatPoly habs = gcd_field(chart.g, s);
        if (habs.degree() > 0) {
            for (const auto& [hs, mult] : squarefree_decomposition(habs)) {
                if (hs.degree() <= 0) continue;
                auto p = plane_product(hs, chart.f1, chart.f2, arity);
                if (p) out.push_back(*p);
            }
        }
    };
    add_for_chart(c);
    add_for_chart(inverted_chart(c));
    return out;
}

inline Poly3 strip_symbolic_q_content(const Poly3& p, std::vector<std::string>* removed) {
    if (p.arity() != 4) return p;
    // content of the q-coefficient polynomials across all xyz-monomials
    std::map<std::vector<int>, RatPoly> by_xyz;
    for (const auto& [e, coeff] : p.terms()) {
        std::vector<int> key{e[0], e[1], e[2]};
        auto it = by_xyz.find(key);
        if (it == by_xyz.end()) it = by_xyz.emplace(key, RatPoly(Rational(0))).first;
        RatPoly cur = it->second;
        cur.set_coeff(e[3], coeff);
        it->second = cur;
    }
    RatPoly content(Rational(0));
    for (const auto& [key, poly] : by_xyz) content = gcd_field(content, poly);
    if (content.degree() <= 0) return p;
    Poly3 out(4);
    for (const auto& [key, poly] : by_xyz) {
        RatPoly quot = *divide_exact_field(poly, content);
        for (int i = 0; i <= quot.degree(); ++i)
            out.add_term({key[0], key[1], key[2], i}, quot[i]);
    }
    if (removed) removed->push_back("q-content of degree " + std::to_string(content.degree()));
    return out;
}

}  // namespace detail

/// Strips extraneous factors off the raw resultant: rational (and symbolic-q)
/// content, powers of x^2+y^2, coordinate and tangent planes through the
/// z-axis, and the sphere factor — every candidate is kept only if it
/// vanishes identically on sampled circles of the congruence. A perfect-power
/// raw result is reduced to its radical. The final degree is reconciled with
/// the predicted order and a mismatch is flagged, never silently accepted.
inline ImplicitSurface remove_extraneous(const Poly3& raw, const RationalCurve& c,
                                         const CongruenceParam& cong, bool symbolic_q = false) {
    if (raw.is_zero()) throw EmptySurface("remove_extraneous: zero input");
    ImplicitSurface out;
    out.symbolic_q = symbolic_q;
    out.q = cong.q;
    out.inv = symbolic_q ? invariants(c, CongruenceParam{Rational(5)}) : invariants(c, cong);
    if (symbolic_q) {
        // generic q: P-point passages happen only at special q values
        auto inv7 = invariants(c, CongruenceParam{Rational(7)});
        if (inv7.p_sum() != out.inv.p_sum() || inv7.z_prime != out.inv.z_prime)
            out.inv = invariants(c, CongruenceParam{Rational(11)});
    }
    out.predicted_order =
        3 * out.inv.m - (out.inv.z_prime + 2 * out.inv.a_prime + 2 * out.inv.p_sum());

    int arity = raw.arity();
    std::vector<int> xyz{0, 1, 2};

    Poly3 f = primitive_part(raw).second;
    if (symbolic_q) f = detail::strip_symbolic_q_content(f, &out.removed_factors);

    // structural candidates, cheapest first
    std::vector<std::pair<std::string, Poly3>> candidates;
    auto x = Poly3::variable(arity, 0), y = Poly3::variable(arity, 1),
         z = Poly3::variable(arity, 2);
    candidates.emplace_back("x", x);
    candidates.emplace_back("y", y);
    candidates.emplace_back("x^2+y^2", x * x + y * y);
    candidates.emplace_back("x^2+y^2+z^2", x * x + y * y + z * z);
    {
        Poly3 sphere = x * x + y * y + z * z;
        if (symbolic_q)
            sphere -= Poly3::variable(arity, 3);
        else
            sphere -= Poly3::constant(arity, cong.q);
        candidates.emplace_back("x^2+y^2+z^2-q", sphere);
    }
    for (const Poly3& plane : detail::axis_plane_candidates(c, arity))
        candidates.emplace_back("axis plane " + plane.str(), plane);

    auto try_strip = [&]() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [name, cand] : candidates) {
                if (f.max_degree_in(xyz) <= cand.max_degree_in(xyz)) continue;
                auto quot = Poly3::exact_divide(f, cand);
                if (!quot) continue;
                if (detail::factor_on_surface(cand, c, cong, symbolic_q)) continue;
                f = *quot;
                out.removed_factors.push_back(name);
                changed = true;
            }
        }
    };

    try_strip();
    {
        auto [cnt, prim] = primitive_part(f);
        f = prim;
        auto [root, e] = perfect_power_radical(f);
        if (e > 1 && detail::factor_on_surface(root, c, cong, symbolic_q)) {
            f = root;
            out.radical_exponent = e;
            out.removed_factors.push_back("radical exponent " + std::to_string(e));
            try_strip();
        }
    }
    f = primitive_part(f).second;
    if (symbolic_q) f = detail::strip_symbolic_q_content(f, &out.removed_factors);

    if (f.is_zero() || f.max_degree_in(xyz) <= 0)
        throw EmptySurface("remove_extraneous: nothing left after stripping");

    // the surface itself must survive the membership probe
    if (!detail::factor_on_surface(f, c, cong, symbolic_q))
        throw ModelViolation("remove_extraneous: cleaned polynomial fails circle membership");

    out.f = f;
    out.computed_order = f.max_degree_in(xyz);

    // the directrix can sweep every circle several times (on a torus, on the
    // double sphere, or when it is its own mirror through z = 0); the swept
    // cycle is then the reduced surface counted that often. The correspondence
    // counts parameters, so an improper k:1 parametrization scales it by k.
    int param_count = symbolic_q ? circle_covering_count(c, CongruenceParam{Rational(5)})
                                 : circle_covering_count(c, cong);
    int map_deg = parametrization_degree(c);
    if (param_count % map_deg != 0)
        throw ModelViolation("remove_extraneous: circle covering not divisible by map degree");
    out.covering_multiplicity = param_count / map_deg;
    out.order_matches =
        out.computed_order * out.covering_multiplicity == out.predicted_order;
    return out;
}

/// Full pipeline: incidence system, resultant, cleanup.
inline ImplicitSurface implicitize(const RationalCurve& c, const CongruenceParam& cong,
                                   bool symbolic_q = false) {
    auto sys = build_system(c, cong, symbolic_q);
    Poly3 raw = eliminate(sys);
    return remove_extraneous(raw, c, cong, symbolic_q);
}

inline ImplicitSurface implicitize_symbolic(const RationalCurve& c) {
    return implicitize(c, CongruenceParam{Rational(0)}, true);
}

}  // namespace circsurf
