#include <catch2/catch.hpp>

#include <random>

#include "circsurf/builtin_curves.hpp"
#include "circsurf/directrix.hpp"

using namespace circsurf;

TEST_CASE("curve evaluation") {
    SECTION("line") {
        auto l = curves::line();
        auto p = eval_curve(l, Rational(0));
        REQUIRE(p.x == Rational(1));
        REQUIRE(p.y == Rational(0));
        REQUIRE(p.z == Rational(2));
    }
    SECTION("twisted cubic passes the origin") {
        auto tc = curves::twisted_cubic();
        auto p = eval_curve(tc, Rational(0));
        REQUIRE(p.x == Rational(0));
        REQUIRE(p.y == Rational(0));
        REQUIRE(p.z == Rational(0));
    }
    SECTION("hyperbola") {
        auto h1 = curves::hyperbola_h1();
        auto p = eval_curve(h1, Rational(2));
        REQUIRE(p.x == Rational(2));
        REQUIRE(p.y == Rational(1, 2));
        REQUIRE(p.z == Rational(0));
    }
    SECTION("pole") {
        auto h1 = curves::hyperbola_h1();
        REQUIRE_THROWS_AS(eval_curve(h1, Rational(0)), PoleAtParameter);
    }
}

TEST_CASE("curve order") {
    REQUIRE(curve_order(curves::line()) == 1);
    REQUIRE(curve_order(curves::hyperbola_h1()) == 2);
    REQUIRE(curve_order(curves::hyperbola_h2()) == 2);
    REQUIRE(curve_order(curves::twisted_cubic()) == 3);
    REQUIRE(curve_order(curves::latitude_circle()) == 2);
    REQUIRE(curve_order(curves::cyclic_harmonic()) == 8);

    SECTION("degenerate image") {
        auto pt = make_curve("pt", rat_poly({1}), rat_poly({2}), rat_poly({3}), rat_poly({1}));
        REQUIRE_THROWS_AS(curve_order(pt), std::domain_error);
    }
    SECTION("proper parametrizations have map degree 1") {
        for (const auto& c : curves::all_builtin()) REQUIRE(parametrization_degree(c) == 1);
    }
    SECTION("double covers are recognized and the order halves") {
        // (t^2, t^2 + 1, 2 t^2 - 3) runs over a line twice
        auto dbl = make_curve("double-line", rat_poly({0, 0, 1}), rat_poly({1, 0, 1}),
                              rat_poly({-3, 0, 2}), rat_poly({1}));
        REQUIRE(parametrization_degree(dbl) == 2);
        REQUIRE(curve_order(dbl) == 1);
        auto inv = invariants(dbl, CongruenceParam{Rational(1)});
        REQUIRE(inv.m == 1);
        REQUIRE(inv.map_degree == 2);
        // the (t - s)(t + s + ts) style cover from a shifted quadratic
        auto shifted = make_curve("shifted-cover", rat_poly({3, 3}), rat_poly({0, 0, -2}),
                                  rat_poly({-3, -3, 2}), rat_poly({2, 2}));
        REQUIRE(parametrization_degree(shifted) == 2);
        REQUIRE(curve_order(shifted) == 1);
    }
    SECTION("order equals generic-plane intersection count") {
        // the pullback of a generic plane a x + b y + c z + e = 0 through the
        // parametrization has parameter degree m (root at infinity included)
        for (const auto& c : curves::all_builtin()) {
            RatPoly pullback(Rational(0));
            long coeffs[4] = {3, 5, 7, 11};
            const RatPoly* parts[4] = {&c.f1, &c.f2, &c.f3, &c.g};
            for (int i = 0; i < 4; ++i) {
                RatPoly term = *parts[i];
                term *= Rational(coeffs[i]);
                pullback += term;
            }
            REQUIRE(pullback.degree() == curve_order(c));
        }
    }
}

TEST_CASE("invariants of the suite curves") {
    CongruenceParam q1{Rational(1)};

    SECTION("line in general position") {
        auto inv = invariants(curves::line(), q1);
        REQUIRE(inv.m == 1);
        REQUIRE(inv.z_prime == 0);
        REQUIRE(inv.a_prime == 0);
        REQUIRE(inv.p_sum() == 0);
    }
    SECTION("h1") {
        auto inv = invariants(curves::hyperbola_h1(), q1);
        REQUIRE(inv.m == 2);
        REQUIRE(inv.z_prime == 0);
        REQUIRE(inv.a_prime == 0);
        REQUIRE(inv.p_sum() == 0);
    }
    SECTION("h2 meets the axis at infinity") {
        auto inv = invariants(curves::hyperbola_h2(), q1);
        REQUIRE(inv.m == 2);
        REQUIRE(inv.z_prime == 1);
        REQUIRE(inv.a_prime == 0);
        REQUIRE(inv.p_sum() == 0);
    }
    SECTION("twisted cubic") {
        auto inv = invariants(curves::twisted_cubic(), q1);
        REQUIRE(inv.m == 3);
        REQUIRE(inv.z_prime == 1);
        REQUIRE(inv.a_prime == 1);
        REQUIRE(inv.p_sum() == 0);
    }
    SECTION("latitude circle") {
        auto inv = invariants(curves::latitude_circle(), q1);
        REQUIRE(inv.m == 2);
        REQUIRE(inv.z_prime == 0);
        REQUIRE(inv.a_prime == 1);
        REQUIRE(inv.p_sum() == 0);
    }
    SECTION("cyclic harmonic k=2 against q=-1") {
        auto inv = invariants(curves::cyclic_harmonic(), CongruenceParam{Rational(-1)});
        REQUIRE(inv.m == 8);
        REQUIRE(inv.z_prime == 6);
        REQUIRE(inv.a_prime == 2);
        REQUIRE(inv.p_sum() == 0);
    }
    SECTION("curve through P1 only (rational p)") {
        // alpha(t) = (1-t, t(1-t), 1) passes through (0,0,1) = P1 at t = 1
        auto c = make_curve("thruP1", rat_poly({1, -1}), rat_poly({0, 1, -1}), rat_poly({1}),
                            rat_poly({1}));
        auto inv = invariants(c, q1);
        REQUIRE(inv.m == 2);
        REQUIRE(inv.p1_prime == 1);
        REQUIRE(inv.p2_prime == 0);
        REQUIRE(inv.z_prime == 0);
    }
    SECTION("curve through both P's at irrational parameters, q = 2") {
        // alpha(t) = (t^2-2, t(t^2-2), t) meets the axis at t = +-sqrt(2),
        // i.e. exactly at (0,0,+-sqrt(2)) = P1, P2 of the q = 2 congruence
        auto c = make_curve("thruBoth", rat_poly({-2, 0, 1}), rat_poly({0, -2, 0, 1}),
                            rat_poly({0, 1}), rat_poly({1}));
        auto inv = invariants(c, CongruenceParam{Rational(2)});
        REQUIRE(inv.m == 3);
        REQUIRE(inv.p1_prime == 1);
        REQUIRE(inv.p2_prime == 1);
        REQUIRE(inv.z_prime == 0);
        // against q = 3 the same crossings are plain axis points
        auto inv2 = invariants(c, CongruenceParam{Rational(3)});
        REQUIRE(inv2.p_sum() == 0);
        REQUIRE(inv2.z_prime == 2);
    }
    SECTION("curve inside the plane z = p") {
        // alpha(t) = (t, t^2, 1), q = 1: every axis meeting is a P1 passage
        auto c = make_curve("inTopPlane", rat_poly({0, 1}), rat_poly({0, 0, 1}), rat_poly({1}),
                            rat_poly({1}));
        auto inv = invariants(c, q1);
        REQUIRE(inv.p1_prime == 1);  // crossing at t = 0
        REQUIRE(inv.p2_prime == 0);
        REQUIRE(inv.z_prime == 0);
    }
    SECTION("z-axis curve rejected") {
        auto axis = make_curve("axis", rat_poly({0}), rat_poly({0}), rat_poly({0, 1}),
                               rat_poly({1}));
        REQUIRE_THROWS_AS(invariants(axis, q1), std::domain_error);
    }
}

TEST_CASE("invariants are reparametrization invariant") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> dm(-5, 5);
    CongruenceParam q1{Rational(1)};
    std::vector<RationalCurve> suite{curves::line(), curves::hyperbola_h1(),
                                     curves::hyperbola_h2(), curves::twisted_cubic(),
                                     curves::latitude_circle()};
    int done = 0;
    while (done < 20) {
        Rational a(dm(rng)), b(dm(rng)), c(dm(rng)), d(dm(rng));
        if ((a * d - b * c).is_zero()) continue;
        for (const auto& curve : suite) {
            auto base = invariants(curve, q1);
            auto re = invariants(mobius_reparametrize(curve, a, b, c, d), q1);
            REQUIRE(base.m == re.m);
            REQUIRE(base.z_prime == re.z_prime);
            REQUIRE(base.a_prime == re.a_prime);
            REQUIRE(base.p_sum() == re.p_sum());
        }
        ++done;
    }
}

TEST_CASE("degenerate position detection") {
    CongruenceParam q1{Rational(1)};

    SECTION("curve in a plane through the z-axis") {
        auto c = make_curve("planar", rat_poly({0, 1}), rat_poly({0, 2}), rat_poly({0, 0, 1}),
                            rat_poly({1}));
        auto d = detect_degenerate_position(c, q1);
        REQUIRE(d.kind == DegeneratePosition::Kind::InPlaneZeta);
        REQUIRE(d.dir_y * Rational(1) == d.dir_x * Rational(2));  // direction (1, 2)
    }
    SECTION("latitude circle on its torus") {
        auto d = detect_degenerate_position(curves::latitude_circle(), q1);
        REQUIRE(d.kind == DegeneratePosition::Kind::OnTorus);
        REQUIRE(d.r_squared == Rational(25, 16));
    }
    SECTION("great circle on the double sphere") {
        TrigPoly x = trig_cos(), y = trig_sin();
        auto c = curve_from_trig("greatcircle", x, y, TrigPoly(2));
        auto d = detect_degenerate_position(c, q1);
        REQUIRE(d.kind == DegeneratePosition::Kind::OnSphereS);
    }
    SECTION("line is generic") {
        auto d = detect_degenerate_position(curves::line(), q1);
        REQUIRE(d.kind == DegeneratePosition::Kind::Generic);
    }
    SECTION("detected plane actually carries the curve") {
        auto c = make_curve("planar", rat_poly({0, 1}), rat_poly({0, 2}), rat_poly({0, 0, 1}),
                            rat_poly({1}));
        auto d = detect_degenerate_position(c, q1);
        for (long t : {1L, 2L, -3L}) {
            auto p = eval_curve(c, Rational(t));
            REQUIRE((d.dir_y * p.x - d.dir_x * p.y).is_zero());
        }
    }
    SECTION("detected torus actually carries the curve") {
        auto c = curves::latitude_circle();
        auto d = detect_degenerate_position(c, q1);
        Poly3 torus = torus_polynomial(q1, d.r_squared);
        for (long t : {0L, 1L, 2L, -3L}) {
            auto p = eval_curve(c, Rational(t));
            REQUIRE(torus.eval({p.x, p.y, p.z}).is_zero());
        }
    }
}

TEST_CASE("trig ingestion round trip") {
    // rho = cos 3t + 2 at tan(t/2) = 1/3, checked against the tan-half
    // identities evaluated directly
    auto ch = curves::cyclic_harmonic();
    Rational u(1, 3);
    Rational den = Rational(1) + u * u;
    Rational ct = (Rational(1) - u * u) / den, st = Rational(2) * u / den;
    Rational cos3 = Rational(4) * ct * ct * ct - Rational(3) * ct;
    Rational rho = cos3 + Rational(2);
    auto p = eval_curve(ch, u);
    REQUIRE(p.x == rho * ct);
    REQUIRE(p.y == rho * st);
    REQUIRE(p.z == Rational(0));

    // inverted chart agrees at the reciprocal parameter
    auto chi = inverted_chart(ch);
    auto p2 = eval_curve(chi, Rational(3));
    REQUIRE(p2.x == p.x);
    REQUIRE(p2.y == p.y);
}
