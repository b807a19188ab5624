#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "circsurf/implicitize.hpp"

namespace circsurf {

struct DegreeCounts {
    int order = 0;
    int abs_conic_mult = 0;
    int z_axis_mult = 0;
    int p_point_mult = 0;
};

struct DegreeReport {
    DegreeCounts predicted, computed;
    bool pass_order = false, pass_abs = false, pass_z = false, pass_p = false;
    std::vector<std::string> flags;

    bool pass_all() const { return pass_order && pass_abs && pass_z && pass_p; }
};

/// The four predictions from the curve invariants: surface order
/// 3m - (z' + 2a' + 2p1' + 2p2'), absolute-conic multiplicity m - (z'+p1'+p2'),
/// z-axis multiplicity m - 2a' + z', P-point multiplicity 2m - (2a'+p1'+p2').
inline DegreeCounts predicted_counts(const CurveInvariants& inv) {
    DegreeCounts t;
    t.order = 3 * inv.m - (inv.z_prime + 2 * inv.a_prime + 2 * inv.p_sum());
    t.abs_conic_mult = inv.m - (inv.z_prime + inv.p_sum());
    t.z_axis_mult = inv.m - 2 * inv.a_prime + inv.z_prime;
    t.p_point_mult = 2 * inv.m - (2 * inv.a_prime + inv.p_sum());
    if (t.order < 0 || t.abs_conic_mult < 0 || t.z_axis_mult < 0 || t.p_point_mult < 0)
        throw ModelViolation("predicted_counts: negative prediction");
    return t;
}

/// Multiplicity of the z-axis on the surface: the smallest e_x + e_y over the
/// terms of F (the vanishing order at a generic axis point).
inline int mult_along_z(const Poly3& f) {
    if (f.is_zero()) throw std::domain_error("mult_along_z: zero polynomial");
    return f.min_degree_in({0, 1});
}

/// Multiplicity of the absolute conic: the largest s such that the
/// homogeneous component of degree n - s + k is divisible by A^k for every
/// k = 1..s (A = x^2 + y^2 + z^2).
inline int absolute_conic_mult(const Poly3& f) {
    if (f.is_zero()) throw std::domain_error("absolute_conic_mult: zero polynomial");
    int n = f.total_degree();
    Poly3 a = Poly3::variable(3, 0).pow(2) + Poly3::variable(3, 1).pow(2) +
              Poly3::variable(3, 2).pow(2);
    auto a_divisibility = [&](int degree) {
        Poly3 h = f.homogeneous_component(degree);
        if (h.is_zero()) return 1 << 20;  // zero component divides anything
        int count = 0;
        while (true) {
            auto q = Poly3::exact_divide(h, a);
            if (!q) break;
            h = *q;
            ++count;
        }
        return count;
    };
    int best = 0;
    for (int s = 1; 2 * s <= n; ++s) {
        bool ok = true;
        for (int k = 1; k <= s && ok; ++k)
            if (a_divisibility(n - s + k) < k) ok = false;
        if (ok) best = s;
    }
    return best;
}

/// Multiplicity of a rational surface point and its tangent cone: translate
/// the point to the origin and take the lowest homogeneous part.
inline std::pair<int, Poly3> point_multiplicity_and_cone(const Poly3& f, const Vec3q& p) {
    if (f.is_zero()) throw std::domain_error("point_multiplicity_and_cone: zero polynomial");
    if (!f.eval({p.x, p.y, p.z}).is_zero())
        throw NotOnSurface("point_multiplicity_and_cone: F does not vanish at the point");
    Poly3 shifted = f.translate({p.x, p.y, p.z});
    auto comps = shifted.homogeneous_components();
    return {comps.front().first, comps.front().second};
}

/// Common multiplicity of F at P1, P2 = (0,0,+-sqrt(q)) for any q != 0,
/// through the conjugate product F(x,y,z+w) F(x,y,z-w) reduced by w^2 = q:
/// the product is rational, its vanishing order at the origin is the sum of
/// the two (equal) multiplicities.
inline int p_point_multiplicity_conjugate(const Poly3& f, const Rational& q) {
    if (f.arity() != 3) throw std::logic_error("p_point_multiplicity_conjugate: arity 3 expected");
    Poly3 f4 = f.lift_var(3);
    Poly3 zvar = Poly3::variable(4, 2), wvar = Poly3::variable(4, 3);
    Poly3 plus = f4.subst(2, zvar + wvar);
    Poly3 minus = f4.subst(2, zvar - wvar);
    Poly3 norm = (plus * minus).reduce_square(3, Poly3::constant(4, q));
    if (norm.degree_in(3) != 0)
        throw ModelViolation("p_point_multiplicity_conjugate: residual radical part");
    Poly3 norm3 = norm.drop_var(3);
    auto comps = norm3.homogeneous_components();
    int low = comps.front().first;
    if (low % 2 != 0)
        throw ModelViolation("p_point_multiplicity_conjugate: odd conjugate multiplicity");
    return low / 2;
}

/// Verifies the four degree/multiplicity claims of the cleaned surface
/// against the predictions from the curve invariants.
inline DegreeReport degree_theory_check(const RationalCurve& c, const CongruenceParam& cong,
                                        const ImplicitSurface& surf) {
    if (surf.f.arity() != 3)
        throw std::logic_error("degree_theory_check: substitute q before checking");
    DegreeReport rep;
    rep.predicted = predicted_counts(invariants(c, cong));
    if (predicted_counts(surf.inv).order != rep.predicted.order)
        rep.flags.push_back("surface provenance carries different invariants");

    // the swept cycle is the reduced surface times the covering count; every
    // predicted multiplicity scales the same way
    int cover = surf.covering_multiplicity;
    if (cover > 1)
        rep.flags.push_back("covering multiplicity " + std::to_string(cover) +
                            ": the curve sweeps every circle that often; counts are of the "
                            "swept cycle");
    rep.computed.order = surf.computed_order * cover;
    rep.computed.abs_conic_mult = absolute_conic_mult(surf.f) * cover;
    rep.computed.z_axis_mult = mult_along_z(surf.f) * cover;

    int sq = cong.q.sign();
    if (sq == 0) {
        rep.computed.p_point_mult =
            point_multiplicity_and_cone(surf.f, {Rational(0), Rational(0), Rational(0)}).first;
    } else if (auto p = cong.q.sqrt_exact()) {
        rep.computed.p_point_mult =
            point_multiplicity_and_cone(surf.f, {Rational(0), Rational(0), *p}).first;
    } else {
        rep.computed.p_point_mult = p_point_multiplicity_conjugate(surf.f, cong.q);
        rep.flags.push_back(sq < 0 ? "imaginary P1, P2: multiplicity via the conjugate product"
                                   : "irrational sqrt(q): multiplicity via the conjugate product");
    }
    rep.computed.p_point_mult *= cover;

    rep.pass_order = rep.predicted.order == rep.computed.order;
    rep.pass_abs = rep.predicted.abs_conic_mult == rep.computed.abs_conic_mult;
    rep.pass_z = rep.predicted.z_axis_mult == rep.computed.z_axis_mult;
    rep.pass_p = rep.predicted.p_point_mult == rep.computed.p_point_mult;
    return rep;
}

// ---------------------------------------------------------------------------
// Spherical inversion (elliptic congruences only).
// ---------------------------------------------------------------------------

/// Inversion in the sphere centered at P1 = (0,0,p) with radius |P1 P2| = 2p.
inline Vec3d spherical_inversion(const CongruenceParam& cong, const Vec3d& x) {
    double p = cong.p_double();
    double r2 = 4 * cong.q.to_double();
    Vec3d d{x[0], x[1], x[2] - p};
    double n2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    if (n2 < 1e-300) throw std::domain_error("spherical_inversion: center has no image");
    double s = r2 / n2;
    return {s * d[0], s * d[1], p + s * d[2]};
}

/// The surface is the inverse image of the cone with vertex P2 over the
/// inverted directrix: sample that cone, map back through the inversion, and
/// report the largest membership residual against F.
inline double inversion_check(const RationalCurve& c, const CongruenceParam& cong,
                              const Poly3& f, int samples, unsigned long seed = 12345) {
    if (cong.q.sign() <= 0)
        throw std::domain_error("inversion_check: elliptic congruence (q > 0) required");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dt(-2.0, 2.0), ds(0.25, 1.75);
    double p = cong.p_double();
    Vec3d p2{0.0, 0.0, -p};
    double max_res = 0.0;
    int done = 0, attempts = 0;
    while (done < samples) {
        if (++attempts > 100 * samples)
            throw ModelViolation("inversion_check: could not draw enough clean samples");
        double t = dt(rng);
        Vec3d base;
        try {
            Rational tr = Rational::parse(std::to_string(t));
            auto a = eval_curve(c, tr);
            Vec3d av{a.x.to_double(), a.y.to_double(), a.z.to_double()};
            base = spherical_inversion(cong, av);
        } catch (const std::exception&) {
            continue;
        }
        double s = ds(rng);
        Vec3d y{p2[0] + s * (base[0] - p2[0]), p2[1] + s * (base[1] - p2[1]),
                p2[2] + s * (base[2] - p2[2])};
        Vec3d x;
        try {
            x = spherical_inversion(cong, y);
        } catch (const std::exception&) {
            continue;
        }
        max_res = std::max(max_res, membership_residual(f, x));
        ++done;
    }
    return max_res;
}

}  // namespace circsurf
