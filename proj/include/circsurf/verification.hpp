#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "circsurf/analysis.hpp"
#include "circsurf/builtin_curves.hpp"
#include "circsurf/io.hpp"
#include "circsurf/surface.hpp"

namespace circsurf {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace verification {

// Hand-entered expected implicit equations; same entries as the test fixtures.
namespace expected {

inline Poly3 cnst(const Rational& r) { return Poly3::constant(3, r); }

inline Poly3 line_cyclide(const Rational& b, const Rational& c, const Rational& q) {
    Poly3 x = Poly3::variable(3, 0), y = Poly3::variable(3, 1), z = Poly3::variable(3, 2);
    Poly3 a = x * x + y * y + z * z;
    return x * a - cnst(c * c + Rational(1) - q) * x * x - cnst(Rational(2) * b * c) * x * y -
           cnst(b * b + Rational(1)) * y * y - cnst(q) * x;
}

inline Poly3 hyperbola_sextic_symbolic() {
    Poly3 x = Poly3::variable(4, 0), y = Poly3::variable(4, 1), z = Poly3::variable(4, 2),
          q = Poly3::variable(4, 3);
    Poly3 a = x * x + y * y + z * z;
    Poly3 x2 = x * x, y2 = y * y;
    Poly3 two = Poly3::constant(4, Rational(2));
    return x * y * a * a -
           (x2 * x2 + two * x2 * y2 + q * q * x2 * y2 + y2 * y2 + two * q * x * y * z * z) +
           q * q * x * y;
}

inline Poly3 hyperbola_quintic(const Rational& q) {
    Poly3 x = Poly3::variable(3, 0), y = Poly3::variable(3, 1), z = Poly3::variable(3, 2);
    Poly3 a = x * x + y * y + z * z;
    Poly3 x2 = x * x, y2 = y * y;
    return x * y2 * a - (x2 * x2 + x2 * y2 - cnst(q) * x2 * y2 + y2 * y2) - cnst(q) * x * y2;
}

inline Poly3 twisted_cubic_sextic(const Rational& q) {
    Poly3 x = Poly3::variable(3, 0), y = Poly3::variable(3, 1), z = Poly3::variable(3, 2);
    Poly3 a = x * x + y * y + z * z;
    Poly3 x2 = x * x, y2 = y * y, z2 = z * z;
    Poly3 mid = cnst(Rational(2)) * x2 * x2 - cnst(Rational(4)) * x2 * x * y +
                cnst(Rational(2)) * x2 * y2 + cnst(Rational(2)) * x2 * z2 -
                cnst(Rational(2)) * x * y * z2;
    return x * (x - y) * a * a + (x2 - y2) * (x2 - y2) - cnst(q) * mid + cnst(q * q) * x2 * y2 +
           cnst(q * q) * x * (x - y);
}

inline Poly3 twisted_cubic_quintic() {
    Poly3 x = Poly3::variable(3, 0), y = Poly3::variable(3, 1), z = Poly3::variable(3, 2);
    Poly3 a = x * x + y * y + z * z;
    return x * a * a + (x - y) * (x + y) * (x + y);
}

inline Poly3 latitude_torus() {
    Poly3 x = Poly3::variable(3, 0), y = Poly3::variable(3, 1), z = Poly3::variable(3, 2);
    Poly3 a = x * x + y * y + z * z;
    Poly3 am1 = a - cnst(Rational(1));
    return am1 * am1 - cnst(Rational(9, 4)) * (x * x + y * y);
}

}  // namespace expected

namespace detail {

template <class Fn>
CriterionResult timed(int id, const std::string& name, Fn&& fn, double budget_seconds) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    auto start = std::chrono::steady_clock::now();
    try {
        auto [pass, detail] = fn();
        r.pass = pass;
        r.detail = detail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0 && r.seconds > budget_seconds) {
        r.pass = false;
        r.detail += " [over " + std::to_string(budget_seconds) + "s budget]";
    }
    return r;
}

inline std::vector<std::pair<Rational, Rational>> rational_probes(const RationalCurve& c,
                                                                  int count) {
    std::vector<std::pair<Rational, Rational>> out;
    long k = 2;
    while (static_cast<int>(out.size()) < count && k < 4000) {
        Rational t(k, k % 5 + 1);
        ++k;
        auto vals = eval_curve_hom(c, t, Rational(1));
        if (vals.g.is_zero()) continue;
        if ((vals.f1 * vals.f1 + vals.f2 * vals.f2).is_zero()) continue;
        out.emplace_back(t, Rational(1));
    }
    return out;
}

/// 100 seeded floating samples under 1e-9 relative residual plus 10 exact
/// rational circle memberships.
inline std::pair<bool, std::string> membership_battery(const RationalCurve& c,
                                                       const CongruenceParam& cong,
                                                       const Poly3& f, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dt(-3.0, 3.0), dth(0.0, 6.2831853);
    double worst = 0.0;
    int done = 0, guard = 0;
    while (done < 100 && ++guard < 10000) {
        Vec3d v;
        try {
            v = eval_surface(c, cong, dt(rng), dth(rng));
        } catch (const std::exception&) {
            continue;
        }
        worst = std::max(worst, membership_residual(f, v));
        ++done;
    }
    if (done < 100) return {false, "could not draw 100 samples"};
    if (worst >= 1e-9)
        return {false, "float residual " + std::to_string(worst)};
    for (const auto& [t, u] : rational_probes(c, 10)) {
        if (!verify_membership_exact(f, c, cong, t, u))
            return {false, "exact membership failed at t = " + t.str()};
    }
    std::ostringstream os;
    os << "max residual " << worst << ", 10 exact probes zero";
    return {true, os.str()};
}

}  // namespace detail

// --- criterion 1 -----------------------------------------------------------

inline CriterionResult criterion_line_regression() {
    return detail::timed(
        1, "line directrix implicitizes to the reference cyclide (4 parameter sets)",
        [&]() -> std::pair<bool, std::string> {
            struct Case {
                Rational b, c, q;
            };
            for (const Case& cs : {Case{Rational(1), Rational(2), Rational(1)},
                                   Case{Rational(1), Rational(2), Rational(0)},
                                   Case{Rational(1), Rational(2), Rational(-1)},
                                   Case{Rational(0), Rational(0), Rational(1)}}) {
                auto t0 = std::chrono::steady_clock::now();
                auto surf = implicitize(curves::line(cs.b, cs.c), CongruenceParam{cs.q});
                double secs =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                if (secs >= 1.0)
                    return {false, "a single case took " + std::to_string(secs) + "s"};
                if (!proportional(surf.f, expected::line_cyclide(cs.b, cs.c, cs.q)))
                    return {false, "mismatch at q = " + cs.q.str()};
            }
            return {true, "all four (b, c, q) cases match up to scalar, each < 1s"};
        },
        0);
}

// --- criterion 2 -----------------------------------------------------------

inline CriterionResult criterion_h1_symbolic() {
    return detail::timed(
        2, "hyperbola h1 with symbolic q matches the reference sextic",
        [&]() -> std::pair<bool, std::string> {
            auto surf = implicitize_symbolic(curves::hyperbola_h1());
            if (!proportional(surf.f, expected::hyperbola_sextic_symbolic()))
                return {false, "symbolic elimination does not match"};
            return {true, "symbolic q elimination matches up to scalar"};
        },
        10.0);
}

// --- criterion 3 -----------------------------------------------------------

inline CriterionResult criterion_h2_family() {
    return detail::timed(
        3, "hyperbola h2 matches the reference quintic for q in {1, 0, -1}",
        [&]() -> std::pair<bool, std::string> {
            for (long qv : {1L, 0L, -1L}) {
                auto surf = implicitize(curves::hyperbola_h2(), CongruenceParam{Rational(qv)});
                if (!proportional(surf.f, expected::hyperbola_quintic(Rational(qv))))
                    return {false, "mismatch at q = " + std::to_string(qv)};
            }
            return {true, "all three congruence classes match up to scalar"};
        },
        10.0);
}

// --- criterion 4 -----------------------------------------------------------

inline CriterionResult criterion_twisted_cubic_family() {
    return detail::timed(
        4, "twisted cubic matches its sextic (q = +-1) and splits at q = 0",
        [&]() -> std::pair<bool, std::string> {
            for (long qv : {1L, -1L}) {
                auto surf = implicitize(curves::twisted_cubic(), CongruenceParam{Rational(qv)});
                if (!proportional(surf.f, expected::twisted_cubic_sextic(Rational(qv))))
                    return {false, "mismatch at q = " + std::to_string(qv)};
            }
            CongruenceParam q0{Rational(0)};
            auto sys = build_system(curves::twisted_cubic(), q0);
            Poly3 raw = eliminate(sys);
            Poly3 plane = Poly3::variable(3, 0) - Poly3::variable(3, 1);
            if (!Poly3::exact_divide(raw, plane))
                return {false, "raw resultant does not contain the plane x = y"};
            auto surf0 = implicitize(curves::twisted_cubic(), q0);
            if (!proportional(surf0.f, expected::twisted_cubic_quintic()))
                return {false, "cleaned q = 0 surface does not match the quintic"};
            return {true, "sextics match; plane x = y split off at q = 0"};
        },
        60.0);
}

// --- criterion 5 -----------------------------------------------------------

inline CriterionResult criterion_degree_integer_checks() {
    return detail::timed(
        5, "degree/multiplicity checks pass exactly for line, h1, h2, twisted cubic",
        [&]() -> std::pair<bool, std::string> {
            CongruenceParam q1{Rational(1)};
            struct Case {
                RationalCurve curve;
                int order, abs, zm, pm;
            };
            std::vector<Case> cases{{curves::line(), 3, 1, 1, 2},
                                    {curves::hyperbola_h1(), 6, 2, 2, 4},
                                    {curves::hyperbola_h2(), 5, 1, 3, 4},
                                    {curves::twisted_cubic(), 6, 2, 2, 4}};
            for (const auto& cs : cases) {
                auto surf = implicitize(cs.curve, q1);
                auto rep = degree_theory_check(cs.curve, q1, surf);
                bool exact = rep.pass_all() && rep.computed.order == cs.order &&
                             rep.computed.abs_conic_mult == cs.abs &&
                             rep.computed.z_axis_mult == cs.zm &&
                             rep.computed.p_point_mult == cs.pm;
                if (!exact) return {false, cs.curve.name + " counts differ"};
            }
            return {true, "(3,1,1,2), (6,2,2,4), (5,1,3,4), (6,2,2,4) all exact"};
        },
        0);
}

// --- criterion 6 -----------------------------------------------------------

inline CriterionResult criterion_latitude_torus() {
    return detail::timed(
        6, "latitude circle implicitizes to its carrying torus",
        [&]() -> std::pair<bool, std::string> {
            CongruenceParam q1{Rational(1)};
            auto pos = detect_degenerate_position(curves::latitude_circle(), q1);
            if (pos.kind != DegeneratePosition::Kind::OnTorus ||
                pos.r_squared != Rational(25, 16))
                return {false, "degenerate-position detection missed the torus"};
            auto surf = implicitize(curves::latitude_circle(), q1);
            if (!proportional(surf.f, expected::latitude_torus()))
                return {false, "cleaned surface is not the torus"};
            return {true, "torus detected (r^2 = 25/16) and recovered up to scalar"};
        },
        0);
}

// --- criterion 7 -----------------------------------------------------------

inline CriterionResult criterion_cyclic_harmonic_invariants() {
    return detail::timed(
        7, "cyclic-harmonic invariants and predictions at scale",
        [&]() -> std::pair<bool, std::string> {
            auto ch = curves::cyclic_harmonic(Rational(2));
            auto inv = invariants(ch, CongruenceParam{Rational(-1)});
            if (!(inv.m == 8 && inv.z_prime == 6 && inv.a_prime == 2 && inv.p_sum() == 0))
                return {false, "invariants differ from (8, 6, 2, 0)"};
            auto t = predicted_counts(inv);
            if (!(t.order == 14 && t.abs_conic_mult == 2 && t.z_axis_mult == 10 &&
                  t.p_point_mult == 12))
                return {false, "predictions differ from (14, 2, 10, 12)"};
            return {true, "(m, z', a', p') = (8, 6, 2, 0); predictions (14, 2, 10, 12)"};
        },
        10.0);
}

// --- criterion 8 -----------------------------------------------------------

inline CriterionResult criterion_membership(unsigned long seed = 12345) {
    return detail::timed(
        8, "parametric samples satisfy every implicitized surface",
        [&]() -> std::pair<bool, std::string> {
            struct Item {
                RationalCurve curve;
                Rational q;
            };
            std::vector<Item> items;
            for (long qv : {1L, 0L, -1L}) items.push_back({curves::line(), Rational(qv)});
            items.push_back({curves::line(Rational(0), Rational(0)), Rational(1)});
            items.push_back({curves::hyperbola_h1(), Rational(1)});
            for (long qv : {1L, 0L, -1L}) items.push_back({curves::hyperbola_h2(), Rational(qv)});
            for (long qv : {1L, -1L, 0L})
                items.push_back({curves::twisted_cubic(), Rational(qv)});
            items.push_back({curves::latitude_circle(), Rational(1)});
            for (const auto& item : items) {
                CongruenceParam cong{item.q};
                auto surf = implicitize(item.curve, cong);
                auto [ok, detail] = detail::membership_battery(item.curve, cong, surf.f, seed);
                if (!ok) return {false, item.curve.name + " q=" + item.q.str() + ": " + detail};
            }
            return {true, std::to_string(items.size()) +
                              " surfaces x (100 float + 10 exact) samples all inside 1e-9"};
        },
        0);
}

// --- criterion 9 -----------------------------------------------------------

inline CriterionResult criterion_orthogonality(unsigned long seed = 12345) {
    return detail::timed(
        9, "congruence circles cut the orthogonal sphere pencil at right angles",
        [&]() -> std::pair<bool, std::string> {
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<int> dnum(-30, 30);
            std::uniform_int_distribution<int> dden(1, 6);
            double worst = 0.0;
            for (long qv : {1L, 0L, -1L}) {
                CongruenceParam cong{Rational(qv)};
                int done = 0;
                while (done < 50) {
                    Vec3q a{Rational(dnum(rng), dden(rng)), Rational(dnum(rng), dden(rng)),
                            Rational(dnum(rng), dden(rng))};
                    if ((a.x * a.x + a.y * a.y).is_zero()) continue;
                    Rational zc(dnum(rng) % 7 + 8);  // outside the limit points
                    PencilSphere sphere;
                    try {
                        sphere = orthogonal_pencil_sphere(cong, zc);
                    } catch (const std::exception&) {
                        continue;
                    }
                    auto circle = circle_through_point(cong, a);
                    // |C_circle - C_sphere|^2 = r_circle^2 + r_sphere^2, exactly
                    Rational lhs = circle.center_x * circle.center_x +
                                   circle.center_y * circle.center_y +
                                   sphere.center_z * sphere.center_z;
                    Rational rhs = circle.r_squared + sphere.radius_squared;
                    if (lhs != rhs) return {false, "exact orthogonality identity failed"};
                    double rel = std::abs(lhs.to_double() - rhs.to_double()) /
                                 (1.0 + std::abs(lhs.to_double()));
                    worst = std::max(worst, rel);
                    ++done;
                }
            }
            if (worst >= 1e-9) return {false, "relative residual " + std::to_string(worst)};
            return {true, "50 pairs per class, exact identity and float residual < 1e-9"};
        },
        0);
}

// --- criterion 10 ----------------------------------------------------------

inline CriterionResult criterion_inversion(unsigned long seed = 12345) {
    return detail::timed(
        10, "spherical inversion maps the cone over i(alpha) onto the surface",
        [&]() -> std::pair<bool, std::string> {
            CongruenceParam q1{Rational(1)};
            auto line_surf = implicitize(curves::line(), q1);
            double r1 = inversion_check(curves::line(), q1, line_surf.f, 100, seed);
            auto tc_surf = implicitize(curves::twisted_cubic(), q1);
            double r2 = inversion_check(curves::twisted_cubic(), q1, tc_surf.f, 100, seed);
            if (r1 >= 1e-9 || r2 >= 1e-9)
                return {false,
                        "residuals " + std::to_string(r1) + ", " + std::to_string(r2)};
            std::ostringstream os;
            os << "line " << r1 << ", twisted cubic " << r2;
            return {true, os.str()};
        },
        0);
}

// --- criterion 11 ----------------------------------------------------------

inline CriterionResult criterion_double_points() {
    return detail::timed(
        11, "double-point counts of the two reference ellipses",
        [&]() -> std::pair<bool, std::string> {
            auto sa = singular_candidates(curves::ellipse_a(), CongruenceParam{Rational(-1)});
            std::size_t na = sa.pinch_points.size() + sa.singular_circles.size();
            auto sb = singular_candidates(curves::ellipse_b(), CongruenceParam{Rational(-4)});
            std::size_t nb = sb.pinch_points.size() + sb.singular_circles.size();
            if (na != 4) return {false, "first ellipse: " + std::to_string(na) + " != 4"};
            if (nb != 3) return {false, "second ellipse: " + std::to_string(nb) + " != 3"};
            return {true, "exactly 4 and 3 isolated double points (Sturm-exact)"};
        },
        0);
}

// --- criterion 12 ----------------------------------------------------------

inline CriterionResult criterion_mesh_contract() {
    return detail::timed(
        12, "OBJ meshes: counts, finiteness, and implicit-surface residuals",
        [&]() -> std::pair<bool, std::string> {
            MeshOptions opt;
            opt.n_t = 24;
            opt.n_theta = 16;

            // line against its cubic
            CongruenceParam q1{Rational(1)};
            auto mesh1 = mesh_surface(curves::line(), q1, -4.0, 4.0, opt);
            if (mesh1.vertices.size() != 25u * 17u || mesh1.faces.size() != 2u * 24u * 16u)
                return {false, "line mesh counts off"};
            Poly3 f = expected::line_cyclide(Rational(1), Rational(2), Rational(1));
            for (const auto& v : mesh1.vertices)
                if (membership_residual(f, v) >= 1e-9) return {false, "line mesh residual"};

            // twisted cubic against its hyperbolic sextic
            CongruenceParam qm1{Rational(-1)};
            auto mesh2 = mesh_surface(curves::twisted_cubic(), qm1, 0.2, 3.0, opt);
            Poly3 f2 = expected::twisted_cubic_sextic(Rational(-1));
            for (const auto& v : mesh2.vertices)
                if (membership_residual(f2, v) >= 1e-9)
                    return {false, "twisted cubic mesh residual"};

            // closed rose-style curve against q = -16: finiteness and counts
            CongruenceParam q16{Rational(-16)};
            MeshOptions opt2;
            opt2.n_t = 40;
            opt2.n_theta = 20;
            opt2.add_inverted_chart = true;
            auto mesh3 = mesh_surface(curves::rose_curve(), q16, -1.0, 1.0, opt2);
            std::size_t per_chart = 41u * 21u;
            if (mesh3.vertices.size() != per_chart * mesh3.charts.size())
                return {false, "rose mesh counts off"};

            // OBJ round trip through the reference reader
            for (const SurfaceMesh* m : {&mesh1, &mesh2, &mesh3}) {
                std::ostringstream os;
                write_obj(*m, os);
                std::istringstream is(os.str());
                auto counts = read_obj_counts(is);
                if (!counts.finite) return {false, "non-finite vertex written"};
                if (counts.vertices != m->vertices.size() || counts.faces != m->faces.size() ||
                    counts.groups != m->charts.size())
                    return {false, "OBJ round trip lost elements"};
            }
            return {true, "3 meshes: counts exact, vertices finite, residuals < 1e-9"};
        },
        0);
}

inline std::vector<CriterionResult> run_all(unsigned long seed = 12345, int jobs = 1) {
    std::vector<std::function<CriterionResult()>> tasks{
        [] { return criterion_line_regression(); },
        [] { return criterion_h1_symbolic(); },
        [] { return criterion_h2_family(); },
        [] { return criterion_twisted_cubic_family(); },
        [] { return criterion_degree_integer_checks(); },
        [] { return criterion_latitude_torus(); },
        [] { return criterion_cyclic_harmonic_invariants(); },
        [seed] { return criterion_membership(seed); },
        [seed] { return criterion_orthogonality(seed); },
        [seed] { return criterion_inversion(seed); },
        [] { return criterion_double_points(); },
        [] { return criterion_mesh_contract(); }};

    std::vector<CriterionResult> out(tasks.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
        return out;
    }
    std::vector<std::future<CriterionResult>> futures(tasks.size());
    std::size_t next = 0;
    while (next < tasks.size()) {
        std::size_t batch = std::min<std::size_t>(jobs, tasks.size() - next);
        for (std::size_t k = 0; k < batch; ++k)
            futures[next + k] = std::async(std::launch::async, tasks[next + k]);
        for (std::size_t k = 0; k < batch; ++k) out[next + k] = futures[next + k].get();
        next += batch;
    }
    return out;
}

}  // namespace verification
}  // namespace circsurf
