#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "circsurf/directrix.hpp"
#include "circsurf/errors.hpp"
#include "circsurf/polyops.hpp"

namespace circsurf {

namespace detail {

struct SampleParts {
    double a1, a2, a3;  // curve point
    double n;           // |alpha_xy|^2
    double m;           // |alpha|^2 - q
    double root;        // sqrt(4 q n + m^2)
};

inline SampleParts sample_parts(const RationalCurve& c, double q, double t, double guard) {
    auto ev = [&](const RatPoly& p) {
        double acc = 0;
        for (int i = p.degree(); i >= 0; --i) acc = acc * t + p[i].to_double();
        return acc;
    };
    double gv = ev(c.g);
    if (std::abs(gv) < guard) throw PoleAtParameter("surface sample at a pole of g");
    SampleParts s;
    s.a1 = ev(c.f1) / gv;
    s.a2 = ev(c.f2) / gv;
    s.a3 = ev(c.f3) / gv;
    s.n = s.a1 * s.a1 + s.a2 * s.a2;
    if (s.n < guard * guard)
        throw PointOnAxis("surface sample where the directrix meets the z-axis");
    s.m = s.n + s.a3 * s.a3 - q;
    s.root = std::sqrt(std::max(0.0, 4 * q * s.n + s.m * s.m));
    return s;
}

}  // namespace detail

/// Point of the circular surface at curve parameter t and circle angle theta.
inline Vec3d eval_surface(const RationalCurve& c, const CongruenceParam& cong, double t,
                          double theta, double guard = 1e-12) {
    auto s = detail::sample_parts(c, cong.q.to_double(), t, guard);
    double scale = (s.root * std::cos(theta) + s.m) / (2 * s.n);
    double zr = s.root / (2 * std::sqrt(s.n));
    return {s.a1 * scale, s.a2 * scale, zr * std::sin(theta)};
}

/// The swept-circle decomposition: base point gamma(t), squared radius
/// r^2(t), radial unit direction a1(t) in the z = 0 plane, a2 = (0,0,1).
struct StandardForm {
    std::function<Vec3d(double)> gamma;
    std::function<double(double)> r_squared;
    std::function<Vec3d(double)> a1;
    Vec3d a2{0.0, 0.0, 1.0};

    Vec3d eval(double t, double theta) const {
        Vec3d g = gamma(t), u = a1(t);
        double r = std::sqrt(std::max(0.0, r_squared(t)));
        double ct = std::cos(theta), st = std::sin(theta);
        return {g[0] + r * (ct * u[0] + st * a2[0]), g[1] + r * (ct * u[1] + st * a2[1]),
                g[2] + r * (ct * u[2] + st * a2[2])};
    }
};

inline StandardForm standard_form(const RationalCurve& c, const CongruenceParam& cong,
                                  double guard = 1e-12) {
    double q = cong.q.to_double();
    StandardForm f;
    f.gamma = [c, q, guard](double t) -> Vec3d {
        auto s = detail::sample_parts(c, q, t, guard);
        double lam = s.m / (2 * s.n);
        return {lam * s.a1, lam * s.a2, 0.0};
    };
    f.r_squared = [c, q, guard](double t) {
        auto s = detail::sample_parts(c, q, t, guard);
        return q + s.m * s.m / (4 * s.n);
    };
    f.a1 = [c, q, guard](double t) -> Vec3d {
        auto s = detail::sample_parts(c, q, t, guard);
        double rho = std::sqrt(s.n);
        return {s.a1 / rho, s.a2 / rho, 0.0};
    };
    return f;
}

// ---------------------------------------------------------------------------
// Meshing.
// ---------------------------------------------------------------------------

struct MeshOptions {
    int n_t = 32;
    int n_theta = 24;
    double guard = 1e-6;        // half-width of the excision band around poles
    double pinch_eps = 1e-9;    // r^2 below this flags a pinch vertex
    bool add_inverted_chart = false;
};

struct SurfaceMesh {
    struct Chart {
        std::string name;
        double t0, t1;
        std::size_t vertex_offset;
        int n_t, n_theta;
    };
    std::string curve_name;
    std::string q_text;
    std::vector<Vec3d> vertices;
    std::vector<std::array<std::size_t, 3>> faces;  // 0-based
    std::vector<Chart> charts;
    std::vector<std::size_t> pinch_vertices;
};

namespace detail {

/// Real roots of p inside [lo, hi], refined by exact bisection to the given
/// width and returned as doubles.
inline std::vector<double> refined_real_roots(const RatPoly& p, double lo_d, double hi_d,
                                              double width) {
    std::vector<double> out;
    if (p.is_zero() || p.degree() == 0) return out;
    RatPoly sf = squarefree_part(p);
    if (sf.degree() == 0) return out;
    Rational lo = Rational::parse(std::to_string(lo_d));
    Rational hi = Rational::parse(std::to_string(hi_d));
    auto rep = real_roots(sf, lo, hi);
    for (auto iv : rep.intervals) {
        while ((iv.hi - iv.lo).to_double() > width && iv.lo < iv.hi) {
            Rational mid = (iv.lo + iv.hi) / Rational(2);
            Rational vlo = sf.eval(iv.lo), vmid = sf.eval(mid);
            if (vmid.is_zero()) {
                iv.lo = iv.hi = mid;
                break;
            }
            if (vlo.sign() == 0 || vlo.sign() != vmid.sign())
                iv.hi = mid;
            else
                iv.lo = mid;
        }
        out.push_back((iv.lo.to_double() + iv.hi.to_double()) / 2);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Real parameters in [t0, t1] where g or |alpha_xy|^2 vanish.
inline std::vector<double> excluded_params(const RationalCurve& c, double t0, double t1,
                                           double guard) {
    std::vector<double> out;
    const RatPoly n = c.f1 * c.f1 + c.f2 * c.f2;
    for (const RatPoly* p : {&c.g, &n}) {
        auto roots = refined_real_roots(*p, t0 - 1.0, t1 + 1.0, guard / 4);
        out.insert(out.end(), roots.begin(), roots.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Parameters where the curve crosses c(0) (zero-radius circles, q < 0).
inline std::vector<double> pinch_params(const RationalCurve& c, const CongruenceParam& cong,
                                        double t0, double t1) {
    if (cong.q.sign() >= 0) return {};
    RatPoly pinch = c.f1 * c.f1 + c.f2 * c.f2;
    RatPoly qg2 = c.g * c.g;
    qg2 *= cong.q;
    pinch += qg2;
    if (!c.f3.is_zero()) pinch = gcd_field(pinch, c.f3);
    if (pinch.is_zero()) return {};
    return refined_real_roots(pinch, t0, t1, 1e-13);
}

}  // namespace detail

/// Grid-sampled mesh; the t-range splits automatically at poles of g and at
/// directrix meetings with the z-axis, one chart per clean subrange with
/// (n_t+1)(n_theta+1) vertices and 2 n_t n_theta triangles.
inline SurfaceMesh mesh_surface(const RationalCurve& c, const CongruenceParam& cong, double t0,
                                double t1, const MeshOptions& opt = {}) {
    if (opt.n_t < 2 || opt.n_theta < 2)
        throw std::domain_error("mesh_surface: grid dimensions must be at least 2");
    if (!(t0 < t1)) throw std::domain_error("mesh_surface: empty t-range");

    SurfaceMesh mesh;
    mesh.curve_name = c.name;
    mesh.q_text = cong.q.str();

    const double pi = 3.14159265358979323846;
    double q = cong.q.to_double();

    auto add_chart = [&](const RationalCurve& curve, const std::string& tag, double a, double b) {
        auto cuts = detail::excluded_params(curve, a, b, opt.guard);
        std::vector<std::pair<double, double>> ranges;
        double lo = a;
        for (double cut : cuts) {
            if (cut - opt.guard > lo) ranges.emplace_back(lo, cut - opt.guard);
            lo = std::max(lo, cut + opt.guard);
        }
        if (lo < b) ranges.emplace_back(lo, b);

        auto pinches = detail::pinch_params(curve, cong, a, b);
        for (auto [ra, rb] : ranges) {
            SurfaceMesh::Chart chart;
            chart.name = tag + "[" + std::to_string(ra) + "," + std::to_string(rb) + "]";
            chart.t0 = ra;
            chart.t1 = rb;
            chart.vertex_offset = mesh.vertices.size();
            chart.n_t = opt.n_t;
            chart.n_theta = opt.n_theta;
            // snap the nearest grid row onto each pinch parameter so the
            // r^2 = 0 vertices are present and can be flagged
            std::vector<double> t_rows(opt.n_t + 1);
            for (int i = 0; i <= opt.n_t; ++i) t_rows[i] = ra + (rb - ra) * i / opt.n_t;
            for (double tp : pinches) {
                if (tp <= ra || tp >= rb) continue;
                std::size_t best = 0;
                for (std::size_t i = 1; i < t_rows.size(); ++i)
                    if (std::abs(t_rows[i] - tp) < std::abs(t_rows[best] - tp)) best = i;
                t_rows[best] = tp;
            }
            for (int i = 0; i <= opt.n_t; ++i) {
                double t = t_rows[i];
                double r2 = 0.0;
                {
                    auto s = detail::sample_parts(curve, q, t, opt.guard * opt.guard);
                    r2 = q + s.m * s.m / (4 * s.n);
                }
                for (int j = 0; j <= opt.n_theta; ++j) {
                    double theta = 2 * pi * j / opt.n_theta;
                    Vec3d v = eval_surface(curve, cong, t, theta, opt.guard * opt.guard);
                    if (!(std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2])))
                        throw ModelViolation("mesh_surface: non-finite vertex");
                    if (q < 0 && std::abs(r2) < opt.pinch_eps)
                        mesh.pinch_vertices.push_back(mesh.vertices.size());
                    mesh.vertices.push_back(v);
                }
            }
            std::size_t off = chart.vertex_offset;
            std::size_t row = static_cast<std::size_t>(opt.n_theta) + 1;
            for (int i = 0; i < opt.n_t; ++i) {
                for (int j = 0; j < opt.n_theta; ++j) {
                    std::size_t v00 = off + i * row + j;
                    std::size_t v01 = v00 + 1;
                    std::size_t v10 = v00 + row;
                    std::size_t v11 = v10 + 1;
                    mesh.faces.push_back({v00, v10, v11});
                    mesh.faces.push_back({v00, v11, v01});
                }
            }
            mesh.charts.push_back(chart);
        }
    };

    add_chart(c, c.name, t0, t1);
    if (opt.add_inverted_chart) add_chart(inverted_chart(c), c.name + "@inv", t0, t1);
    if (mesh.charts.empty()) throw std::domain_error("mesh_surface: no valid range survives");
    return mesh;
}

/// Wavefront OBJ: one group per chart, vertices at 17 significant digits.
inline void write_obj(const SurfaceMesh& mesh, std::ostream& os) {
    os << "# circular surface mesh, curve " << mesh.curve_name << ", q = " << mesh.q_text
       << "\n";
    char buf[96];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
        os << buf;
    }
    // faces were appended chart by chart, 2 * n_t * n_theta per chart
    std::size_t face_idx = 0;
    for (const auto& chart : mesh.charts) {
        os << "g " << chart.name << "\n";
        std::size_t count = 2u * chart.n_t * chart.n_theta;
        for (std::size_t k = 0; k < count && face_idx < mesh.faces.size(); ++k, ++face_idx) {
            const auto& f = mesh.faces[face_idx];
            os << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
        }
    }
}

// ---------------------------------------------------------------------------
// Singular candidates.
// ---------------------------------------------------------------------------

struct SingularCandidates {
    std::vector<RootInterval> pinch_points;       // alpha meets c(0), q < 0 only
    std::vector<RootInterval> singular_circles;   // correspondence roots off the pinch set
    std::vector<RootInterval> curve_singularities;
};

namespace detail {

/// Divides out of D every factor it shares with P, repeatedly.
inline RatPoly strip_common(RatPoly d, const RatPoly& p) {
    if (p.degree() <= 0) return d;
    while (true) {
        RatPoly g = gcd_field(d, p);
        if (g.degree() == 0) return d;
        d = *divide_exact_field(d, g);
    }
}

inline MultiPoly<Rational> lift_bivariate(const RatPoly& p, int var) {
    MultiPoly<Rational> r(2);
    for (int i = 0; i <= p.degree(); ++i) {
        std::vector<int> e(2, 0);
        e[var] = i;
        r.add_term(e, p[i]);
    }
    return r;
}

}  // namespace detail

/// The circle-equality correspondence between parameters t (variable 0) and
/// s (variable 1), diagonal removed: h1 = same carrying plane, h2 = alpha(s)
/// on the circle through alpha(t). Common zeros off the diagonal are pairs of
/// parameters sweeping one circle.
struct CircleCorrespondence {
    Poly3 h1{2}, h2{2};
};

inline CircleCorrespondence circle_correspondence(const RationalCurve& c,
                                                  const CongruenceParam& cong) {
    RatPoly n = c.f1 * c.f1 + c.f2 * c.f2;
    RatPoly s_poly = n + c.f3 * c.f3;
    auto f1a = detail::lift_bivariate(c.f1, 0), f2a = detail::lift_bivariate(c.f2, 0),
         ga = detail::lift_bivariate(c.g, 0);
    auto f1b = detail::lift_bivariate(c.f1, 1), f2b = detail::lift_bivariate(c.f2, 1),
         gb = detail::lift_bivariate(c.g, 1);
    auto na = detail::lift_bivariate(n, 0);
    auto sa = detail::lift_bivariate(s_poly, 0), sb = detail::lift_bivariate(s_poly, 1);
    auto qa = MultiPoly<Rational>::constant(2, cong.q);

    MultiPoly<Rational> g1 = f1a * f2b - f2a * f1b;
    MultiPoly<Rational> g2 =
        (sb - qa * gb * gb) * na * ga - (f1a * f1b + f2a * f2b) * (sa - qa * ga * ga) * gb;
    MultiPoly<Rational> diag =
        MultiPoly<Rational>::variable(2, 0) - MultiPoly<Rational>::variable(2, 1);
    CircleCorrespondence out;
    auto q1 = Poly3::exact_divide(g1, diag);
    auto q2 = Poly3::exact_divide(g2, diag);
    if (q1) out.h1 = *q1;
    if (q2) out.h2 = *q2;
    return out;
}

/// How many times the directrix meets a generic circle of its own family:
/// 1 in general position, larger when the curve is carried multiply (on a
/// torus, on the double sphere, or mirror-symmetric through the z = 0 plane).
/// A sampled fiber with no off-diagonal partner certifies 1 exactly (the
/// projection from the correspondence curve has constant fiber multiplicity);
/// otherwise the common factor of the correspondence is computed outright.
inline int circle_covering_count(const RationalCurve& c, const CongruenceParam& cong) {
    auto corr = circle_correspondence(c, cong);
    if (corr.h1.is_zero() && corr.h2.is_zero()) return 1;  // planar; rejected upstream

    int ds1 = std::max(0, corr.h1.degree_in(1));
    int ds2 = std::max(0, corr.h2.degree_in(1));
    auto specialize = [&](const Poly3& h, int dbound, const Rational& t0) {
        RatPoly p(Rational(0));
        auto hu = as_unipoly(h, 1);
        for (int i = 0; i <= hu.degree(); ++i) {
            // coefficient of s^i is univariate in t
            RatPoly ct(Rational(0));
            for (const auto& [e, coeff] : hu[i].terms()) ct.set_coeff(e[0], coeff);
            p.set_coeff(i, ct.is_zero() ? Rational(0) : ct.eval(t0));
        }
        return BinForm{p, dbound};
    };
    for (long num : {19L, -29L, 43L}) {
        Rational t0(num, 7);
        BinForm b1 = corr.h1.is_zero() ? BinForm{RatPoly(Rational(0)), ds1}
                                       : specialize(corr.h1, ds1, t0);
        BinForm b2 = corr.h2.is_zero() ? BinForm{RatPoly(Rational(0)), ds2}
                                       : specialize(corr.h2, ds2, t0);
        if (b1.is_zero() && b2.is_zero()) continue;
        BinForm g = b1.is_zero() ? b2 : (b2.is_zero() ? b1 : form_gcd(b1, b2));
        if (!g.is_zero() && g.deg == 0) return 1;
    }

    Poly3 w(2);
    if (corr.h1.is_zero())
        w = corr.h2;
    else if (corr.h2.is_zero())
        w = corr.h1;
    else
        w = gcd_multivariate(corr.h1, corr.h2);
    if (w.degree_in(1) <= 0) return 1;
    // partners of a single special parameter (factors free of t) do not count
    auto wu = as_unipoly(w, 0);
    Poly3 content = wu.zero_elem();
    for (int i = 0; i <= wu.degree(); ++i) content = gcd_multivariate(content, wu[i]);
    if (content.degree_in(1) > 0) w = *Poly3::exact_divide(w, content);
    return 1 + std::max(0, w.degree_in(1));
}

/// Candidates for the singular set beyond the axis and the absolute conic:
/// pinch points where the curve crosses c(0), parameters whose congruence
/// circle meets the curve again (found by eliminating the partner parameter
/// from the incidence correspondence), and singular parameters of the curve
/// itself.
inline SingularCandidates singular_candidates(const RationalCurve& c,
                                              const CongruenceParam& cong) {
    SingularCandidates out;

    RatPoly n = c.f1 * c.f1 + c.f2 * c.f2;

    // pinch points: |alpha_xy|^2 = -q and alpha_3 = 0
    if (cong.q.sign() < 0) {
        RatPoly pinch = n;
        {
            RatPoly qg2 = c.g * c.g;
            qg2 *= cong.q;
            pinch += qg2;
        }
        if (!c.f3.is_zero()) pinch = gcd_field(pinch, c.f3);
        if (!pinch.is_zero() && pinch.degree() > 0)
            out.pinch_points = real_roots(pinch).intervals;
    }

    // correspondence system between parameters t1 (var 0) and t2 (var 1):
    // same carrying plane and t2's point on t1's circle, diagonal removed
    {
        auto corr = circle_correspondence(c, cong);
        if (!corr.h1.is_zero() && !corr.h2.is_zero()) {
            auto u1 = as_unipoly(corr.h1, 1);
            auto u2 = as_unipoly(corr.h2, 1);
            MultiPoly<Rational> res(2);
            if (u1.degree() == 0)
                res = u1[0];
            else if (u2.degree() == 0)
                res = u2[0];
            else
                res = resultant(u1, u2);
            if (res.is_zero()) {
                // shared correspondence component: divide it out and retry
                Poly3 g = gcd_multivariate(corr.h1, corr.h2);
                if (g.total_degree() > 0) {
                    auto r1 = as_unipoly(*Poly3::exact_divide(corr.h1, g), 1);
                    auto r2 = as_unipoly(*Poly3::exact_divide(corr.h2, g), 1);
                    if (r1.degree() > 0 || r2.degree() > 0)
                        res = r1.degree() == 0 ? r1[0]
                              : r2.degree() == 0 ? r2[0]
                                                 : resultant(r1, r2);
                }
            }
            if (!res.is_zero() && res.degree_in(0) > 0) {
                RatPoly d(Rational(0));
                for (const auto& [e, coeff] : res.terms()) d.set_coeff(e[0], coeff);
                // drop parameters already counted as pinch points and the
                // parameters sitting on the z-axis (not carried by any circle)
                if (cong.q.sign() < 0) {
                    RatPoly pinch = n;
                    RatPoly qg2 = c.g * c.g;
                    qg2 *= cong.q;
                    pinch += qg2;
                    if (!c.f3.is_zero()) pinch = gcd_field(pinch, c.f3);
                    d = detail::strip_common(d, pinch);
                }
                d = detail::strip_common(d, gcd_field(c.f1, c.f2));
                d = detail::strip_common(d, c.g);
                if (d.degree() > 0) out.singular_circles = real_roots(d).intervals;
            }
        }
    }

    // curve singularities: cusps (all derivative numerators vanish) and
    // self-intersections (two parameters, same point)
    {
        RatPoly n1 = c.f1.derivative() * c.g - c.f1 * c.g.derivative();
        RatPoly n2 = c.f2.derivative() * c.g - c.f2 * c.g.derivative();
        RatPoly n3 = c.f3.derivative() * c.g - c.f3 * c.g.derivative();
        RatPoly cusp = gcd_field(gcd_field(n1, n2), n3);
        if (!cusp.is_zero() && cusp.degree() > 0) {
            auto found = real_roots(cusp).intervals;
            out.curve_singularities.insert(out.curve_singularities.end(), found.begin(),
                                           found.end());
        }

        auto lift = [](const RatPoly& p, int var) {
            MultiPoly<Rational> r(2);
            for (int i = 0; i <= p.degree(); ++i) {
                std::vector<int> e(2, 0);
                e[var] = i;
                r.add_term(e, p[i]);
            }
            return r;
        };
        MultiPoly<Rational> diag =
            MultiPoly<Rational>::variable(2, 0) - MultiPoly<Rational>::variable(2, 1);
        std::vector<MultiPoly<Rational>> ks;
        const RatPoly* comps[3] = {&c.f1, &c.f2, &c.f3};
        for (const RatPoly* f : comps) {
            MultiPoly<Rational> k = lift(*f, 0) * lift(c.g, 1) - lift(*f, 1) * lift(c.g, 0);
            auto h = Poly3::exact_divide(k, diag);
            if (h && !h->is_zero() && h->degree_in(1) > 0) ks.push_back(*h);
        }
        if (ks.size() >= 2) {
            RatPoly meet(Rational(0));
            bool have = false;
            for (std::size_t i = 0; i + 1 < ks.size() && !have; ++i) {
                auto r = resultant(as_unipoly(ks[i], 1), as_unipoly(ks[i + 1], 1));
                if (r.is_zero()) continue;
                RatPoly d(Rational(0));
                for (const auto& [e, coeff] : r.terms()) d.set_coeff(e[0], coeff);
                meet = have ? gcd_field(meet, d) : d;
                have = true;
            }
            // require agreement across a second resultant pair when available
            if (have && ks.size() >= 3) {
                auto r = resultant(as_unipoly(ks[0], 1), as_unipoly(ks[2], 1));
                if (!r.is_zero()) {
                    RatPoly d(Rational(0));
                    for (const auto& [e, coeff] : r.terms()) d.set_coeff(e[0], coeff);
                    meet = gcd_field(meet, d);
                }
            }
            if (have && meet.degree() > 0) {
                auto found = real_roots(meet).intervals;
                out.curve_singularities.insert(out.curve_singularities.end(), found.begin(),
                                               found.end());
            }
        }
    }

    return out;
}

}  // namespace circsurf
