#include <catch2/catch.hpp>

#include <random>

#include "circsurf/analysis.hpp"
#include "circsurf/builtin_curves.hpp"
#include "reference_surfaces.hpp"

using namespace circsurf;

TEST_CASE("predicted counts") {
    SECTION("line") {
        CurveInvariants inv{1, 0, 0, 0, 0, false};
        auto t = predicted_counts(inv);
        REQUIRE(t.order == 3);
        REQUIRE(t.abs_conic_mult == 1);
        REQUIRE(t.z_axis_mult == 1);
        REQUIRE(t.p_point_mult == 2);
    }
    SECTION("conic meeting the axis once") {
        CurveInvariants inv{2, 1, 0, 0, 0, false};
        auto t = predicted_counts(inv);
        REQUIRE(t.order == 5);
        REQUIRE(t.abs_conic_mult == 1);
        REQUIRE(t.z_axis_mult == 3);
        REQUIRE(t.p_point_mult == 4);
    }
    SECTION("cyclic harmonic") {
        CurveInvariants inv{8, 6, 2, 0, 0, false};
        auto t = predicted_counts(inv);
        REQUIRE(t.order == 14);
        REQUIRE(t.abs_conic_mult == 2);
        REQUIRE(t.z_axis_mult == 10);
        REQUIRE(t.p_point_mult == 12);
    }
}

TEST_CASE("z-axis multiplicity") {
    REQUIRE(mult_along_z(reference::hyperbola_sextic(Rational(1))) == 2);
    REQUIRE(mult_along_z(reference::hyperbola_quintic(Rational(1))) == 3);
    REQUIRE(mult_along_z(reference::line_cyclide(Rational(1), Rational(2), Rational(1))) == 1);

    SECTION("multiplying by a plane through the axis adds one") {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> dc(1, 9);
        for (const Poly3& f : {reference::hyperbola_sextic(Rational(1)),
                               reference::line_cyclide(Rational(1), Rational(2), Rational(1)),
                               reference::twisted_cubic_quintic()}) {
            Poly3 plane = Poly3::variable(3, 0) * Rational(dc(rng)) +
                          Poly3::variable(3, 1) * Rational(dc(rng));
            REQUIRE(mult_along_z(f * plane) == mult_along_z(f) + 1);
        }
    }
}

TEST_CASE("absolute conic multiplicity") {
    auto [x, y, z, A] = reference::vars3();
    REQUIRE(absolute_conic_mult(reference::line_cyclide(Rational(1), Rational(2), Rational(1))) ==
            1);
    REQUIRE(absolute_conic_mult(reference::hyperbola_sextic(Rational(1))) == 2);
    REQUIRE(absolute_conic_mult(reference::twisted_cubic_quintic()) == 2);
    REQUIRE(absolute_conic_mult(reference::latitude_torus()) == 2);

    SECTION("multiplying by A adds one") {
        for (const Poly3& f : {reference::line_cyclide(Rational(1), Rational(2), Rational(1)),
                               reference::hyperbola_sextic(Rational(1)),
                               reference::twisted_cubic_quintic()}) {
            REQUIRE(absolute_conic_mult(f * A) == absolute_conic_mult(f) + 1);
        }
    }
}

TEST_CASE("point multiplicity and tangent cones") {
    SECTION("line cyclide cone at P1") {
        Poly3 f = reference::line_cyclide(Rational(1), Rational(2), Rational(1));
        auto [k, cone] = point_multiplicity_and_cone(f, {Rational(0), Rational(0), Rational(1)});
        REQUIRE(k == 2);
        REQUIRE(proportional(cone,
                             reference::line_cyclide_cone(Rational(1), Rational(2), Rational(1))));
    }
    SECTION("hyperbola sextic cone at P1") {
        Poly3 f = reference::hyperbola_sextic(Rational(1));
        auto [k, cone] = point_multiplicity_and_cone(f, {Rational(0), Rational(0), Rational(1)});
        REQUIRE(k == 4);
        REQUIRE(proportional(cone, reference::hyperbola_sextic_cone(Rational(1))));
    }
    SECTION("hyperbola quintic cone at P1") {
        Poly3 f = reference::hyperbola_quintic(Rational(1));
        auto [k, cone] = point_multiplicity_and_cone(f, {Rational(0), Rational(0), Rational(1)});
        REQUIRE(k == 4);
        REQUIRE(proportional(cone, reference::hyperbola_quintic_cone(Rational(1))));
    }
    SECTION("twisted cubic cone at P1") {
        Poly3 f = reference::twisted_cubic_sextic(Rational(1));
        auto [k, cone] = point_multiplicity_and_cone(f, {Rational(0), Rational(0), Rational(1)});
        REQUIRE(k == 4);
        REQUIRE(proportional(cone, reference::twisted_cubic_cone(Rational(1))));
    }
    SECTION("generic surface point is smooth") {
        Poly3 f = reference::line_cyclide(Rational(1), Rational(2), Rational(1));
        // (4, 0, 1) lies on the surface and off the singular lines
        auto [k, cone] = point_multiplicity_and_cone(f, {Rational(4), Rational(0), Rational(1)});
        REQUIRE(k == 1);
    }
    SECTION("off-surface point rejected") {
        Poly3 f = reference::line_cyclide(Rational(1), Rational(2), Rational(1));
        REQUIRE_THROWS_AS(
            point_multiplicity_and_cone(f, {Rational(1), Rational(1), Rational(1)}),
            NotOnSurface);
    }
    SECTION("conjugate product route agrees on rational-sqrt cases") {
        Poly3 f = reference::hyperbola_sextic(Rational(1));
        REQUIRE(p_point_multiplicity_conjugate(f, Rational(1)) == 4);
        Poly3 g = reference::line_cyclide(Rational(1), Rational(2), Rational(1));
        REQUIRE(p_point_multiplicity_conjugate(g, Rational(1)) == 2);
    }
}

TEST_CASE("degree-theory checks across the suite") {
    CongruenceParam q1{Rational(1)};

    auto check = [&](const RationalCurve& c, const CongruenceParam& cong, int order, int abs,
                     int zm, int pm) {
        auto surf = implicitize(c, cong);
        auto rep = degree_theory_check(c, cong, surf);
        REQUIRE(rep.computed.order == order);
        REQUIRE(rep.computed.abs_conic_mult == abs);
        REQUIRE(rep.computed.z_axis_mult == zm);
        REQUIRE(rep.computed.p_point_mult == pm);
        REQUIRE(rep.pass_all());
    };

    SECTION("line") { check(curves::line(), q1, 3, 1, 1, 2); }
    SECTION("h1") { check(curves::hyperbola_h1(), q1, 6, 2, 2, 4); }
    SECTION("h2") { check(curves::hyperbola_h2(), q1, 5, 1, 3, 4); }
    SECTION("twisted cubic") { check(curves::twisted_cubic(), q1, 6, 2, 2, 4); }
    SECTION("twisted cubic, hyperbolic congruence") {
        CongruenceParam qm1{Rational(-1)};
        auto surf = implicitize(curves::twisted_cubic(), qm1);
        auto rep = degree_theory_check(curves::twisted_cubic(), qm1, surf);
        REQUIRE(rep.pass_all());
        REQUIRE(!rep.flags.empty());  // conjugate-product route is flagged
    }
    SECTION("irrational sqrt(q)") {
        // (t^2-2, t(t^2-2), t) passes P1, P2 of q = 2 at t = +-sqrt(2)
        auto c = make_curve("thruBoth", rat_poly({-2, 0, 1}), rat_poly({0, -2, 0, 1}),
                            rat_poly({0, 1}), rat_poly({1}));
        CongruenceParam q2{Rational(2)};
        auto surf = implicitize(c, q2);
        auto rep = degree_theory_check(c, q2, surf);
        REQUIRE(rep.predicted.order == 5);
        REQUIRE(rep.predicted.p_point_mult == 4);
        REQUIRE(rep.pass_all());
    }
}

TEST_CASE("spherical inversion") {
    CongruenceParam q1{Rational(1)};

    SECTION("P2 is a fixed point") {
        auto img = spherical_inversion(q1, {0.0, 0.0, -1.0});
        REQUIRE(img[0] == Approx(0.0).margin(1e-15));
        REQUIRE(img[1] == Approx(0.0).margin(1e-15));
        REQUIRE(img[2] == Approx(-1.0));
    }
    SECTION("involution") {
        Vec3d x{1.3, -0.4, 0.7};
        auto twice = spherical_inversion(q1, spherical_inversion(q1, x));
        for (int i = 0; i < 3; ++i) REQUIRE(twice[i] == Approx(x[i]).margin(1e-12));
    }
    SECTION("cone samples map onto the surface") {
        auto line_surf = implicitize(curves::line(), q1);
        REQUIRE(inversion_check(curves::line(), q1, line_surf.f, 100) < 1e-9);
        auto tc_surf = implicitize(curves::twisted_cubic(), q1);
        REQUIRE(inversion_check(curves::twisted_cubic(), q1, tc_surf.f, 100) < 1e-9);
    }
    SECTION("hyperbolic congruence rejected") {
        auto surf = implicitize(curves::line(), q1);
        REQUIRE_THROWS_AS(
            inversion_check(curves::line(), CongruenceParam{Rational(-1)}, surf.f, 10),
            std::domain_error);
    }
}
