#include <catch2/catch.hpp>

#include <random>

#include "circsurf/multipoly.hpp"
#include "circsurf/polyops.hpp"
#include "circsurf/unipoly.hpp"
#include "reference_surfaces.hpp"

using namespace circsurf;

namespace {

Poly3 random_poly(std::mt19937_64& rng, int arity, int max_deg, int terms) {
    std::uniform_int_distribution<int> dc(-9, 9);
    std::uniform_int_distribution<int> de(0, max_deg);
    Poly3 p(arity);
    for (int i = 0; i < terms; ++i) {
        std::vector<int> e(arity);
        for (auto& x : e) x = de(rng);
        p.add_term(e, Rational(dc(rng)));
    }
    return p;
}

RatPoly random_ratpoly(std::mt19937_64& rng, int deg) {
    std::uniform_int_distribution<int> dc(-9, 9);
    std::vector<Rational> c(deg + 1);
    for (auto& x : c) x = Rational(dc(rng));
    if (c.back().is_zero()) c.back() = Rational(1);
    return rat_poly(std::move(c));
}

}  // namespace

TEST_CASE("arithmetic basics") {
    auto [x, y, z, A] = reference::vars3();

    SECTION("cancellation") {
        Poly3 p = x * x + y;
        REQUIRE(p - y == x * x);
    }
    SECTION("square of the sphere form") {
        Poly3 sq = A * A;
        Poly3 expect(3);
        expect.add_term({4, 0, 0}, Rational(1));
        expect.add_term({0, 4, 0}, Rational(1));
        expect.add_term({0, 0, 4}, Rational(1));
        expect.add_term({2, 2, 0}, Rational(2));
        expect.add_term({2, 0, 2}, Rational(2));
        expect.add_term({0, 2, 2}, Rational(2));
        REQUIRE(sq == expect);
    }
    SECTION("split-plane factor pair") {
        Poly3 p = (x - y) * (x + y) * (x + y);
        Poly3 expect(3);
        expect.add_term({3, 0, 0}, Rational(1));
        expect.add_term({2, 1, 0}, Rational(1));
        expect.add_term({1, 2, 0}, Rational(-1));
        expect.add_term({0, 3, 0}, Rational(-1));
        REQUIRE(p == expect);
    }
    SECTION("pow domain error") {
        REQUIRE_THROWS_AS(x.pow(-1), std::domain_error);
    }
}

TEST_CASE("resultants: pinned examples") {
    SECTION("linear pair, symbolic endpoints") {
        // Res_t(t - a, t - b) = a - b, with a, b as polynomial symbols
        Poly3 a = Poly3::variable(2, 0), b = Poly3::variable(2, 1);
        Poly3 one = Poly3::constant(2, Rational(1));
        UniPoly<Poly3> P(Poly3(2), {-a, one});
        UniPoly<Poly3> Q(Poly3(2), {-b, one});
        REQUIRE(resultant(P, Q) == a - b);
    }
    SECTION("evaluation oracle") {
        // Res_t(t^2 + 1, t - 2) equals t^2+1 evaluated at t = 2
        RatPoly P = rat_poly({1, 0, 1});
        RatPoly Q = rat_poly({-2, 1});
        Rational expected = P.eval(Rational(2));
        REQUIRE(expected == Rational(5));
        REQUIRE(resultant(P, Q) == expected);
    }
    SECTION("isotropic pair") {
        // Res_t(x t - y, t^2 + 1) = x^2 + y^2
        Poly3 x = Poly3::variable(2, 0), y = Poly3::variable(2, 1);
        Poly3 one = Poly3::constant(2, Rational(1));
        UniPoly<Poly3> P(Poly3(2), {-y, x});
        UniPoly<Poly3> Q(Poly3(2), {one, Poly3(2), one});
        REQUIRE(resultant(P, Q) == x * x + y * y);
    }
    SECTION("zero input is a domain error") {
        RatPoly z(Rational(0));
        RatPoly P = rat_poly({1, 1});
        REQUIRE_THROWS_AS(resultant(P, z), std::domain_error);
    }
}

TEST_CASE("resultant properties") {
    std::mt19937_64 rng(20240817);
    SECTION("zero exactly when a common factor is planted") {
        for (int i = 0; i < 40; ++i) {
            RatPoly common = random_ratpoly(rng, 2);
            RatPoly a = random_ratpoly(rng, 3);
            RatPoly b = random_ratpoly(rng, 3);
            RatPoly pa = a * common, pb = b * common;
            REQUIRE(resultant(pa, pb).is_zero());
            // and generically nonzero without the plant
            RatPoly g = gcd_field(a, b);
            if (g.degree() == 0) REQUIRE(!resultant(a, b).is_zero());
        }
    }
    SECTION("PRS agrees with the Sylvester determinant") {
        for (int i = 0; i < 30; ++i) {
            int da = 1 + static_cast<int>(rng() % 4), db = 1 + static_cast<int>(rng() % 4);
            UniPoly<Poly3> A(Poly3(2)), B(Poly3(2));
            for (int k = 0; k <= da; ++k) A.set_coeff(k, random_poly(rng, 2, 1, 2));
            for (int k = 0; k <= db; ++k) B.set_coeff(k, random_poly(rng, 2, 1, 2));
            if (A.is_zero() || B.is_zero()) continue;
            REQUIRE(resultant(A, B) == sylvester_resultant(A, B));
        }
        // higher-degree rational pairs, sparse on purpose to provoke
        // defective remainder sequences
        for (int i = 0; i < 120; ++i) {
            int da = 1 + static_cast<int>(rng() % 6), db = 1 + static_cast<int>(rng() % 6);
            std::uniform_int_distribution<int> dcoef(-5, 5);
            std::vector<Rational> ca(da + 1), cb(db + 1);
            for (auto& x : ca) x = (rng() % 3 == 0) ? Rational(0) : Rational(dcoef(rng));
            for (auto& x : cb) x = (rng() % 3 == 0) ? Rational(0) : Rational(dcoef(rng));
            RatPoly A = rat_poly(std::move(ca)), B = rat_poly(std::move(cb));
            if (A.is_zero() || B.is_zero() || A.degree() < 1 || B.degree() < 1) continue;
            REQUIRE(resultant(A, B) == sylvester_resultant(A, B));
        }
    }
}

TEST_CASE("content and primitive part") {
    auto [x, y, z, A] = reference::vars3();
    SECTION("monomial content") {
        Poly3 p = x * x * y + x * y * y;
        auto [cont, prim] = content_and_primitive(p, 1);
        REQUIRE(cont == x * y);
        REQUIRE(prim == x + y);
        REQUIRE(cont * prim == p);
    }
    SECTION("scalar content") {
        Poly3 p = Poly3::constant(3, Rational(2)) * (x + y);
        auto [cont, prim] = content_and_primitive(p, 0);
        REQUIRE(cont == Poly3::constant(3, Rational(2)));
        REQUIRE(prim == x + y);
    }
    SECTION("irreducible cofactors leave content 1") {
        Poly3 p = (x * x + y * y) * (x - Poly3::constant(3, Rational(1)));
        auto [cont, prim] = content_and_primitive(p, 0);
        REQUIRE(cont == Poly3::constant(3, Rational(1)));
        REQUIRE(prim == p);
    }
    SECTION("zero polynomial is a domain error") {
        REQUIRE_THROWS_AS(content_and_primitive(Poly3(3), 0), std::domain_error);
    }
}

TEST_CASE("homogeneous components") {
    auto [x, y, z, A] = reference::vars3();
    SECTION("sextic splits into degrees 6, 4, 2") {
        Poly3 F = reference::hyperbola_sextic(Rational(1));
        auto comps = F.homogeneous_components();
        REQUIRE(comps.size() == 3);
        REQUIRE(comps[0].first == 2);
        REQUIRE(comps[1].first == 4);
        REQUIRE(comps[2].first == 6);
        REQUIRE(comps[2].second == x * y * A * A);
    }
    SECTION("already homogeneous") {
        auto comps = A.homogeneous_components();
        REQUIRE(comps.size() == 1);
        REQUIRE(comps[0].first == 2);
        REQUIRE(comps[0].second == A);
    }
    SECTION("mixed degrees") {
        Poly3 p = x + x * x;
        auto comps = p.homogeneous_components();
        REQUIRE(comps.size() == 2);
        REQUIRE(comps[0] == std::make_pair(1, x));
        REQUIRE(comps[1] == std::make_pair(2, x * x));
    }
    SECTION("reassembly is exact on random input") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 50; ++i) {
            Poly3 p = random_poly(rng, 3, 5, 8);
            Poly3 sum(3);
            for (auto& [d, c] : p.homogeneous_components()) sum += c;
            REQUIRE(sum == p);
        }
    }
}

TEST_CASE("translate") {
    auto [x, y, z, A] = reference::vars3();
    SECTION("plane shift") {
        Poly3 shifted = z.translate({Rational(0), Rational(0), Rational(1)});
        REQUIRE(shifted == z + Poly3::constant(3, Rational(1)));
    }
    SECTION("identity") {
        Poly3 F = reference::hyperbola_sextic(Rational(1));
        REQUIRE(F.translate({Rational(0), Rational(0), Rational(0)}) == F);
    }
    SECTION("lowest part of the shifted line cyclide") {
        // moving the cubic surface's origin to P1 = (0,0,1) exposes the
        // quadratic cone 4x^2 + 4xy + 2y^2 - 2xz as lowest homogeneous part
        Poly3 F = reference::line_cyclide(Rational(1), Rational(2), Rational(1));
        Poly3 T = F.translate({Rational(0), Rational(0), Rational(1)});
        auto comps = T.homogeneous_components();
        REQUIRE(comps.front().first == 2);
        Poly3 expect = reference::line_cyclide_cone(Rational(1), Rational(2), Rational(1));
        bool match = comps.front().second == expect || comps.front().second == -expect;
        REQUIRE(match);
    }
    SECTION("round-trip on random input") {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> dv(-4, 4);
        for (int i = 0; i < 100; ++i) {
            Poly3 p = random_poly(rng, 3, 4, 6);
            std::vector<Rational> v{Rational(dv(rng)), Rational(dv(rng)), Rational(dv(rng))};
            std::vector<Rational> nv{-v[0], -v[1], -v[2]};
            REQUIRE(p.translate(v).translate(nv) == p);
        }
    }
}

TEST_CASE("exact division") {
    auto [x, y, z, A] = reference::vars3();
    SECTION("difference of squares") {
        auto q = Poly3::exact_divide(x * x - y * y, x - y);
        REQUIRE(q);
        REQUIRE(*q == x + y);
    }
    SECTION("split plane factors off the degenerate sextic") {
        // at q = 0 the twisted-cubic surface contains the plane x = y;
        // dividing it out leaves the quintic and reconstructs exactly
        Poly3 sextic = reference::twisted_cubic_sextic(Rational(0));
        auto q = Poly3::exact_divide(sextic, x - y);
        REQUIRE(q);
        REQUIRE(*q == reference::twisted_cubic_quintic());
        REQUIRE((x - y) * (*q) == sextic);
    }
    SECTION("not divisible") {
        REQUIRE(!Poly3::exact_divide(x * x + Poly3::constant(3, Rational(1)), x));
    }
    SECTION("random product round-trip") {
        std::mt19937_64 rng(13);
        for (int i = 0; i < 60; ++i) {
            Poly3 F = random_poly(rng, 3, 3, 5);
            Poly3 G = random_poly(rng, 3, 3, 4);
            if (G.is_zero()) continue;
            auto q = Poly3::exact_divide(F * G, G);
            REQUIRE(q);
            REQUIRE(*q == F);
        }
    }
}

TEST_CASE("real roots") {
    SECTION("two symmetric roots") {
        auto rep = real_roots(rat_poly({-2, 0, 1}));
        REQUIRE(rep.distinct_count == 2);
    }
    SECTION("no real roots") {
        auto rep = real_roots(rat_poly({1, 0, 1}));
        REQUIRE(rep.distinct_count == 0);
    }
    SECTION("multiplicity reported separately") {
        // (t-1)^2 (t+3)
        RatPoly p = rat_poly({1, -2, 1}) * rat_poly({3, 1});
        auto rep = real_roots(p);
        REQUIRE(rep.distinct_count == 2);
        REQUIRE(rep.intervals[0].multiplicity == 1);  // -3
        REQUIRE(rep.intervals[1].multiplicity == 2);  // 1
    }
    SECTION("zero polynomial is a domain error") {
        REQUIRE_THROWS_AS(real_roots(RatPoly(Rational(0))), std::domain_error);
    }
    SECTION("count matches brute-force sign changes on a fine grid") {
        std::mt19937_64 rng(17);
        std::uniform_int_distribution<int> dr(-6, 6);
        for (int trial = 0; trial < 25; ++trial) {
            // build a polynomial from well-separated integer roots
            std::vector<int> roots;
            for (int r = -6; r <= 6; ++r)
                if (rng() % 3 == 0) roots.push_back(r);
            if (roots.empty() || roots.size() > 6) continue;
            RatPoly p = rat_poly({1});
            for (int r : roots) p = p * rat_poly({Rational(-r), Rational(1)});
            // brute force: sign changes on a grid of step 1/8 over [-8, 8]
            int brute = 0;
            Rational step(1, 8);
            Rational prev_x(-8);
            int prev_sign = p.eval(prev_x).sign();
            for (Rational xx = prev_x + step; xx <= Rational(8); xx += step) {
                int s = p.eval(xx).sign();
                if (s == 0) {
                    ++brute;
                    prev_sign = -prev_sign;  // simple roots only: sign flips across
                    continue;
                }
                if (prev_sign != 0 && s != prev_sign) ++brute;
                prev_sign = s;
            }
            auto rep = real_roots(p);
            REQUIRE(rep.distinct_count == static_cast<int>(roots.size()));
            REQUIRE(rep.distinct_count == brute);
        }
    }
    SECTION("isolating intervals bracket the integer roots") {
        RatPoly p = rat_poly({6, -5, -2, 1});  // roots 1, 3, -2: (t-1)(t-3)(t+2)
        auto rep = real_roots(p);
        REQUIRE(rep.distinct_count == 3);
        std::vector<long> expected{-2, 1, 3};
        for (std::size_t i = 0; i < 3; ++i) {
            Rational r(expected[i]);
            REQUIRE(rep.intervals[i].lo < r);
            REQUIRE(r <= rep.intervals[i].hi);
        }
    }
    SECTION("rational roots by trial divisors") {
        // 6t^3 - 5t^2 - 2t + 1 has roots 1, 1/3, -1/2
        RatPoly p = rat_poly({1, -2, -5, 6});
        auto roots = rational_roots(p);
        REQUIRE(roots == std::vector<Rational>{Rational(-1, 2), Rational(1, 3), Rational(1)});
        REQUIRE(rational_roots(rat_poly({1, 0, 1})).empty());
    }
}

TEST_CASE("multivariate gcd and radical helpers") {
    auto [x, y, z, A] = reference::vars3();
    SECTION("planted common factor is recovered") {
        std::mt19937_64 rng(23);
        for (int i = 0; i < 20; ++i) {
            Poly3 common = random_poly(rng, 3, 2, 3);
            if (common.is_zero() || common.total_degree() == 0) continue;
            Poly3 a = random_poly(rng, 3, 2, 3);
            Poly3 b = random_poly(rng, 3, 2, 3);
            if (a.is_zero() || b.is_zero()) continue;
            Poly3 g = gcd_multivariate(a * common, b * common);
            REQUIRE(Poly3::exact_divide(g, primitive_part(common).second));
        }
    }
    SECTION("perfect power radical") {
        Poly3 F = reference::latitude_torus();
        auto [root, e] = perfect_power_radical(F * F);
        REQUIRE(e == 2);
        REQUIRE(proportional(root, F));
        auto [r1, e1] = perfect_power_radical(F);
        REQUIRE(e1 == 1);
    }
    SECTION("nth root rejects non-powers") {
        REQUIRE(!poly_nth_root(x * x + y, 2));
        REQUIRE(poly_nth_root((x + y) * (x + y), 2));
    }
}
