#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "circsurf/errors.hpp"
#include "circsurf/multipoly.hpp"
#include "circsurf/rational.hpp"

namespace circsurf {

struct Vec3q {
    Rational x, y, z;
};

using Vec3d = std::array<double, 3>;

enum class CongruenceClass { Elliptic, Parabolic, Hyperbolic };

/// The congruence C(p) of circles through P1, P2 = (0, 0, +-p), carried by
/// q = p^2 so hyperbolic congruences (imaginary p) stay in rational
/// arithmetic. Every formula here uses q only.
struct CongruenceParam {
    Rational q;

    CongruenceClass classify() const {
        int s = q.sign();
        if (s > 0) return CongruenceClass::Elliptic;
        if (s == 0) return CongruenceClass::Parabolic;
        return CongruenceClass::Hyperbolic;
    }

    /// p = sqrt(q) as a double; elliptic congruences only.
    double p_double() const {
        if (q.sign() < 0) throw std::domain_error("CongruenceParam: p imaginary");
        return std::sqrt(q.to_double());
    }
};

inline CongruenceClass classify(const CongruenceParam& c) { return c.classify(); }

/// One circle of C(p): half-plane direction (dir_x, dir_y), signed center
/// coordinate rho_c along it, radius^2 = rho_c^2 + q. The center itself is
/// always rational; rho_c in isolation is rational only when |dir| is.
struct CongruenceCircle {
    Rational dir_x, dir_y;        // unnormalized half-plane direction
    Rational center_x, center_y;  // center (center_x, center_y, 0), exact
    Rational rho_c_signed_sq;     // sign(rho_c) * rho_c^2
    Rational r_squared;

    Rational rho_c_squared() const { return rho_c_signed_sq.abs(); }

    /// Signed rho_c; exact only when dir_x^2 + dir_y^2 is a perfect square.
    Rational rho_c() const {
        auto s = rho_c_squared().sqrt_exact();
        if (!s) throw std::domain_error("CongruenceCircle: rho_c irrational");
        return rho_c_signed_sq.sign() < 0 ? -*s : *s;
    }

    double phi() const { return std::atan2(dir_y.to_double(), dir_x.to_double()); }

    /// Zero-radius circle: the point lies on c(0) of a hyperbolic congruence.
    bool is_degenerate() const { return r_squared.is_zero(); }

    /// Exact incidence test: in the carrying plane and on the carrying sphere.
    bool passes_through(const Vec3q& pt, const CongruenceParam& cong) const {
        Rational plane = dir_y * pt.x - dir_x * pt.y;
        if (!plane.is_zero()) return false;
        Rational dx = pt.x - center_x, dy = pt.y - center_y;
        Rational dist2 = dx * dx + dy * dy + pt.z * pt.z;
        (void)cong;
        return dist2 == r_squared;
    }
};

/// The unique circle of C(p) through a point off the z-axis.
inline CongruenceCircle circle_through_point(const CongruenceParam& cong, const Vec3q& a) {
    Rational rho0_sq = a.x * a.x + a.y * a.y;
    if (rho0_sq.is_zero())
        throw SingularPointOfCongruence(
            "point on the z-axis: infinitely many congruence circles pass through it");
    // center = lambda * (a_x, a_y) with lambda = (rho0^2 + z^2 - q) / (2 rho0^2)
    Rational lam = (rho0_sq + a.z * a.z - cong.q) / (Rational(2) * rho0_sq);
    CongruenceCircle c;
    c.dir_x = a.x;
    c.dir_y = a.y;
    c.center_x = lam * a.x;
    c.center_y = lam * a.y;
    Rational rc_sq = lam * lam * rho0_sq;
    c.rho_c_signed_sq = lam.sign() < 0 ? -rc_sq : rc_sq;
    c.r_squared = rc_sq + cong.q;
    return c;
}

/// Point of the congruence chart (theta, r, phi), floating point.
inline Vec3d congruence_point(const CongruenceParam& cong, double theta, double r, double phi) {
    double q = cong.q.to_double();
    if (cong.q.sign() > 0 && r * r < q)
        throw std::domain_error("congruence_point: r^2 < q in an elliptic congruence");
    double rho_c = std::sqrt(std::max(0.0, r * r - q));
    double s = r * std::cos(theta) + rho_c;
    return {std::cos(phi) * s, std::sin(phi) * s, r * std::sin(theta)};
}

/// Exact congruence point: angles come in as tan-half values, the circle by
/// its signed center coordinate rho_c; the radius r = sqrt(rho_c^2 + q) rides
/// along symbolically as the QuadExt radical.
inline std::array<QuadExt, 3> congruence_point_exact(const CongruenceParam& cong,
                                                     const Rational& rho_c,
                                                     const Rational& tan_half_theta,
                                                     const Rational& tan_half_phi) {
    Rational r_sq = rho_c * rho_c + cong.q;
    if (r_sq.sign() < 0)
        throw std::domain_error("congruence_point_exact: negative squared radius");
    QuadExt r = QuadExt::sqrt_of(r_sq);
    auto cos_sin = [](const Rational& t) {
        Rational den = Rational(1) + t * t;
        return std::pair<Rational, Rational>{(Rational(1) - t * t) / den,
                                             Rational(2) * t / den};
    };
    auto [ct, st] = cos_sin(tan_half_theta);
    auto [cp, sp] = cos_sin(tan_half_phi);
    QuadExt radial = r * QuadExt(ct) + QuadExt(rho_c);
    return {QuadExt(cp) * radial, QuadExt(sp) * radial, r * QuadExt(st)};
}

/// Implicit equation of the torus tau(r) carrying all congruence circles of
/// squared radius r^2: (A - q)^2 - 4 (r^2 - q)(x^2 + y^2).
inline Poly3 torus_polynomial(const CongruenceParam& cong, const Rational& r_squared) {
    if (r_squared.sign() < 0 || (r_squared - cong.q).sign() < 0)
        throw std::domain_error("torus_polynomial: need r^2 >= max(q, 0)");
    auto x = Poly3::variable(3, 0), y = Poly3::variable(3, 1), z = Poly3::variable(3, 2);
    Poly3 A = x * x + y * y + z * z;
    Poly3 inner = A - Poly3::constant(3, cong.q);
    return inner * inner -
           Poly3::constant(3, Rational(4) * (r_squared - cong.q)) * (x * x + y * y);
}

/// Sphere of the pencil orthogonal to every circle of C(p): center (0,0,zc),
/// radius^2 = zc^2 - q.
struct PencilSphere {
    Rational center_z;
    Rational radius_squared;
};

inline PencilSphere orthogonal_pencil_sphere(const CongruenceParam& cong, const Rational& zc) {
    Rational r2 = zc * zc - cong.q;
    if (r2.sign() <= 0)
        throw std::domain_error("orthogonal_pencil_sphere: center inside the limit points");
    return PencilSphere{zc, r2};
}

/// Angle residual between the circle through A and a sphere centered on the
/// z-axis, measured at an actual intersection point: the norm of the unit
/// circle tangent projected onto the sphere's tangent plane. Near 0 when the
/// sphere cuts the circle at a right angle; 1 when the circle lies on the
/// sphere.
inline double apollonian_orthogonality(const CongruenceParam& cong, const Vec3d& a,
                                       const PencilSphere& sphere) {
    double q = cong.q.to_double();
    double rho0_sq = a[0] * a[0] + a[1] * a[1];
    if (rho0_sq < 1e-300) throw SingularPointOfCongruence("point on the z-axis");
    double rho0 = std::sqrt(rho0_sq);
    double rho_c = (rho0_sq + a[2] * a[2] - q) / (2 * rho0);
    double r = std::sqrt(std::max(0.0, rho_c * rho_c + q));
    double cphi = a[0] / rho0, sphi = a[1] / rho0;
    Vec3d center{rho_c * cphi, rho_c * sphi, 0.0};
    Vec3d scenter{0.0, 0.0, sphere.center_z.to_double()};
    double rs = std::sqrt(sphere.radius_squared.to_double());

    // circle point P(theta) = center + r cos(theta) u + r sin(theta) k
    Vec3d u{cphi, sphi, 0.0};
    Vec3d d{center[0] - scenter[0], center[1] - scenter[1], center[2] - scenter[2]};
    double alpha = 2 * r * (u[0] * d[0] + u[1] * d[1] + u[2] * d[2]);
    double beta = 2 * r * d[2];
    double gamma = d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + r * r - rs * rs;
    double amp = std::hypot(alpha, beta);
    double theta;
    double scale = std::abs(gamma) + amp + 1e-30;
    if (amp / scale < 1e-14) {
        if (std::abs(gamma) / scale > 1e-12)
            throw NoIntersection("circle and sphere do not meet");
        theta = 0.0;  // circle lies on the sphere
    } else {
        double c = -gamma / amp;
        if (c > 1.0 || c < -1.0) {
            if (std::abs(c) - 1.0 > 1e-12) throw NoIntersection("circle and sphere do not meet");
            c = std::clamp(c, -1.0, 1.0);
        }
        theta = std::atan2(beta, alpha) + std::acos(c);
        // acos is ill-conditioned near +-1; polish the incidence root
        for (int it = 0; it < 3; ++it) {
            double g = alpha * std::cos(theta) + beta * std::sin(theta) + gamma;
            double dg = -alpha * std::sin(theta) + beta * std::cos(theta);
            if (std::abs(dg) < 1e-14 * amp) break;
            theta -= g / dg;
        }
    }

    Vec3d p{center[0] + r * std::cos(theta) * u[0], center[1] + r * std::cos(theta) * u[1],
            r * std::sin(theta)};
    Vec3d tangent{-r * std::sin(theta) * u[0], -r * std::sin(theta) * u[1],
                  r * std::cos(theta)};
    Vec3d normal{p[0] - scenter[0], p[1] - scenter[1], p[2] - scenter[2]};
    double tn = std::hypot(std::hypot(tangent[0], tangent[1]), tangent[2]);
    double nn = std::hypot(std::hypot(normal[0], normal[1]), normal[2]);
    if (tn < 1e-300 || nn < 1e-300) return 1.0;
    // rejection of the unit tangent from the sphere normal: the part lying in
    // the tangent plane (vanishes when the circle cuts the sphere orthogonally)
    double dot = (tangent[0] * normal[0] + tangent[1] * normal[1] + tangent[2] * normal[2]) /
                 (tn * nn);
    Vec3d rej{tangent[0] / tn - dot * normal[0] / nn, tangent[1] / tn - dot * normal[1] / nn,
              tangent[2] / tn - dot * normal[2] / nn};
    return std::hypot(std::hypot(rej[0], rej[1]), rej[2]);
}

}  // namespace circsurf
