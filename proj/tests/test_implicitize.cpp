#include <catch2/catch.hpp>

#include <cmath>
#include <random>

#include "circsurf/builtin_curves.hpp"
#include "circsurf/implicitize.hpp"
#include "reference_surfaces.hpp"

using namespace circsurf;

TEST_CASE("elimination system shape") {
    CongruenceParam q1{Rational(1)};

    SECTION("line gives the textbook plane equation") {
        auto sys = build_system(curves::line(), q1);
        // E1 = x t - y
        REQUIRE(sys.e1.degree() == 1);
        REQUIRE(sys.e1[1] == Poly3::variable(3, 0));
        REQUIRE(sys.e1[0] == -Poly3::variable(3, 1));
    }
    SECTION("h1 plane equation after clearing") {
        auto sys = build_system(curves::hyperbola_h1(), q1);
        // f1 = t^2, f2 = 1: E1 = x - y t^2
        REQUIRE(sys.e1.degree() == 2);
        REQUIRE(sys.e1[0] == Poly3::variable(3, 0));
        REQUIRE(sys.e1[2] == -Poly3::variable(3, 1));
    }
    SECTION("E1 vanishes identically exactly on the z-axis") {
        auto sys = build_system(curves::twisted_cubic(), q1);
        for (int i = 0; i <= sys.e1.degree(); ++i) {
            Poly3 coeff = sys.e1[i];
            // every coefficient is a combination of x and y only
            Poly3 on_axis = coeff.subst_value(0, Rational(0)).subst_value(1, Rational(0));
            REQUIRE(on_axis.is_zero());
        }
    }
    SECTION("planar directrix rejected") {
        auto planar = make_curve("planar", rat_poly({0, 1}), rat_poly({0, 3}),
                                 rat_poly({0, 0, 1}), rat_poly({1}));
        REQUIRE_THROWS_AS(build_system(planar, q1), DegeneratePlane);
    }
}

TEST_CASE("raw elimination contains the expected surface") {
    SECTION("line, several congruences") {
        for (long qv : {1L, 0L, -1L}) {
            CongruenceParam cong{Rational(qv)};
            auto sys = build_system(curves::line(), cong);
            Poly3 raw = eliminate(sys);
            Poly3 expect = reference::line_cyclide(Rational(1), Rational(2), Rational(qv));
            REQUIRE(Poly3::exact_divide(raw, expect));
        }
    }
    SECTION("latitude circle raw contains its torus") {
        CongruenceParam q1{Rational(1)};
        auto sys = build_system(curves::latitude_circle(), q1);
        Poly3 raw = eliminate(sys);
        REQUIRE(Poly3::exact_divide(raw, reference::latitude_torus()));
    }
    SECTION("h1 symbolic raw contains the sextic with literal q") {
        auto sys = build_system(curves::hyperbola_h1(), CongruenceParam{Rational(0)}, true);
        Poly3 raw = eliminate(sys);
        REQUIRE(Poly3::exact_divide(raw, reference::hyperbola_sextic_symbolic()));
    }
}

TEST_CASE("cleaned implicit equations match the references") {
    SECTION("line family") {
        struct Case {
            Rational b, c, q;
        };
        for (const Case& cs : {Case{Rational(1), Rational(2), Rational(1)},
                               Case{Rational(1), Rational(2), Rational(0)},
                               Case{Rational(1), Rational(2), Rational(-1)},
                               Case{Rational(0), Rational(0), Rational(1)}}) {
            auto surf = implicitize(curves::line(cs.b, cs.c), CongruenceParam{cs.q});
            REQUIRE(proportional(surf.f, reference::line_cyclide(cs.b, cs.c, cs.q)));
            REQUIRE(surf.computed_order == 3);
            REQUIRE(surf.order_matches);
        }
    }
    SECTION("h1 with symbolic q") {
        auto surf = implicitize_symbolic(curves::hyperbola_h1());
        REQUIRE(proportional(surf.f, reference::hyperbola_sextic_symbolic()));
        REQUIRE(surf.computed_order == 6);
        REQUIRE(surf.order_matches);
    }
    SECTION("h2 across the classes") {
        for (long qv : {1L, 0L, -1L}) {
            auto surf = implicitize(curves::hyperbola_h2(), CongruenceParam{Rational(qv)});
            REQUIRE(proportional(surf.f, reference::hyperbola_quintic(Rational(qv))));
            REQUIRE(surf.computed_order == 5);
            REQUIRE(surf.order_matches);
        }
    }
    SECTION("twisted cubic, elliptic and hyperbolic") {
        for (long qv : {1L, -1L}) {
            auto surf = implicitize(curves::twisted_cubic(), CongruenceParam{Rational(qv)});
            REQUIRE(proportional(surf.f, reference::twisted_cubic_sextic(Rational(qv))));
            REQUIRE(surf.order_matches);
        }
    }
    SECTION("twisted cubic at q = 0 splits off the plane x = y") {
        auto sys = build_system(curves::twisted_cubic(), CongruenceParam{Rational(0)});
        Poly3 raw = eliminate(sys);
        auto [x, y, z, A] = reference::vars3();
        REQUIRE(Poly3::exact_divide(raw, x - y));

        auto surf = implicitize(curves::twisted_cubic(), CongruenceParam{Rational(0)});
        REQUIRE(proportional(surf.f, reference::twisted_cubic_quintic()));
        bool plane_removed = false;
        for (const auto& name : surf.removed_factors)
            if (name.find("axis plane") != std::string::npos) plane_removed = true;
        REQUIRE(plane_removed);
        REQUIRE(surf.order_matches);
    }
    SECTION("latitude circle cleans to its torus, covered once") {
        auto surf = implicitize(curves::latitude_circle(), CongruenceParam{Rational(1)});
        REQUIRE(proportional(surf.f, reference::latitude_torus()));
        REQUIRE(surf.covering_multiplicity == 1);
        REQUIRE(surf.order_matches);
    }
    SECTION("great circle doubles over its sphere") {
        TrigPoly x = trig_cos(), y = trig_sin();
        auto c = curve_from_trig("greatcircle", x, y, TrigPoly(2));
        auto surf = implicitize(c, CongruenceParam{Rational(1)});
        auto [xx, yy, zz, A] = reference::vars3();
        REQUIRE(proportional(surf.f, A - Poly3::constant(3, Rational(1))));
        REQUIRE(surf.covering_multiplicity == 2);
        REQUIRE(surf.radical_exponent == 2);
        REQUIRE(surf.order_matches);
    }
}

TEST_CASE("membership checks") {
    CongruenceParam q1{Rational(1)};
    Poly3 line_f = reference::line_cyclide(Rational(1), Rational(2), Rational(1));

    SECTION("known on-surface point") {
        REQUIRE(membership_residual(line_f, {2.0, 0.0, std::sqrt(5.0)}) < 1e-14);
    }
    SECTION("known off-surface point") {
        Poly3 f = reference::hyperbola_sextic(Rational(1));
        double res = membership_residual(f, {1.0, 1.0, 1.0});
        REQUIRE(res == Approx(3.0 / 28.0));
    }
    SECTION("exact circle membership") {
        REQUIRE(verify_membership_exact(line_f, curves::line(), q1, Rational(0)));
        REQUIRE(verify_membership_exact(line_f, curves::line(), q1, Rational(3, 2)));
        REQUIRE(verify_membership_exact(line_f, curves::line(), q1, Rational(-7, 3)));
        // a wrong surface fails
        Poly3 wrong = reference::hyperbola_sextic(Rational(1));
        REQUIRE(!verify_membership_exact(wrong, curves::line(), q1, Rational(0)));
    }
    SECTION("exact membership across the cleaned surfaces") {
        auto surf = implicitize(curves::hyperbola_h1(), q1);
        for (long num : {2L, 3L, -5L})
            REQUIRE(verify_membership_exact(surf.f, curves::hyperbola_h1(), q1, Rational(num)));
    }
    SECTION("floating samples land on the cleaned surface") {
        std::mt19937_64 rng(101);
        std::uniform_real_distribution<double> dt(-3.0, 3.0), dth(0.0, 6.28);
        auto surf = implicitize(curves::twisted_cubic(), q1);
        int done = 0;
        while (done < 100) {
            double t = dt(rng);
            Vec3d v;
            try {
                v = eval_surface(curves::twisted_cubic(), q1, t, dth(rng));
            } catch (const std::exception&) {
                continue;
            }
            REQUIRE(membership_residual(surf.f, v) < 1e-9);
            ++done;
        }
    }
}

TEST_CASE("equivariance properties") {
    CongruenceParam q1{Rational(1)};

    SECTION("rotating the directrix about z rotates the surface") {
        // 3-4-5 rotation: (x, y) -> ((3x - 4y)/5, (4x + 3y)/5)
        auto c = curves::line();
        RatPoly f1r = c.f1, f2r = c.f2;
        f1r *= Rational(3, 5);
        {
            RatPoly t = c.f2;
            t *= Rational(4, 5);
            f1r -= t;
        }
        f2r *= Rational(3, 5);
        {
            RatPoly t = c.f1;
            t *= Rational(4, 5);
            f2r += t;
        }
        auto rotated = make_curve("line-rot", f1r, f2r, c.f3, c.g);
        auto fr = implicitize(rotated, q1);
        // composing F_rot with the same rotation recovers F (simultaneous
        // substitution, term by term)
        Poly3 xs = Poly3::variable(3, 0), ys = Poly3::variable(3, 1);
        Poly3 xr = xs * Rational(3, 5) - ys * Rational(4, 5);
        Poly3 yr = xs * Rational(4, 5) + ys * Rational(3, 5);
        Poly3 pulled(3);
        for (const auto& [e, coeff] : fr.f.terms()) {
            Poly3 term = Poly3::constant(3, coeff);
            term = term * xr.pow(e[0]);
            term = term * yr.pow(e[1]);
            term = term * Poly3::variable(3, 2).pow(e[2]);
            pulled += term;
        }
        auto base = implicitize(c, q1);
        REQUIRE(proportional(pulled, base.f));
    }
    SECTION("Moebius reparametrization leaves the surface unchanged") {
        auto base = implicitize(curves::hyperbola_h2(), q1);
        std::mt19937_64 rng(103);
        std::uniform_int_distribution<int> dm(-3, 3);
        int done = 0;
        while (done < 5) {
            Rational a(dm(rng)), b(dm(rng)), c2(dm(rng)), d(dm(rng));
            if ((a * d - b * c2).is_zero()) continue;
            auto re = mobius_reparametrize(curves::hyperbola_h2(), a, b, c2, d);
            auto fr = implicitize(re, q1);
            REQUIRE(proportional(fr.f, base.f));
            ++done;
        }
    }
}
