#include <catch2/catch.hpp>

#include <sstream>

#include "circsurf/builtin_curves.hpp"
#include "circsurf/io.hpp"
#include "reference_surfaces.hpp"

using namespace circsurf;

TEST_CASE("polynomial JSON") {
    SECTION("round trip preserves the polynomial") {
        Poly3 f = reference::hyperbola_sextic(Rational(1));
        json j = poly_to_json(f);
        REQUIRE(poly_from_json(j) == f);
        REQUIRE(j["vars"] == json({"x", "y", "z"}));
    }
    SECTION("terms come out in graded-lex descending order") {
        Poly3 f = reference::line_cyclide(Rational(1), Rational(2), Rational(1));
        json j = poly_to_json(f);
        int prev = 1 << 20;
        for (const auto& term : j["terms"]) {
            int deg = 0;
            for (int e : term["exp"].get<std::vector<int>>()) deg += e;
            REQUIRE(deg <= prev);
            prev = deg;
        }
    }
    SECTION("rational coefficients as strings") {
        Poly3 f = reference::latitude_torus();
        json j = poly_to_json(f);
        bool saw_fraction = false;
        for (const auto& term : j["terms"])
            if (term["coeff"].get<std::string>().find('/') != std::string::npos)
                saw_fraction = true;
        REQUIRE(saw_fraction);  // the 9/4 coefficient
        REQUIRE(poly_from_json(j) == f);
    }
}

TEST_CASE("curve JSON") {
    SECTION("round trip for every builtin") {
        for (const auto& c : curves::all_builtin()) {
            json j = curve_to_json(c);
            auto back = curve_from_json(j);
            REQUIRE(back.f1 == c.f1);
            REQUIRE(back.f2 == c.f2);
            REQUIRE(back.f3 == c.f3);
            REQUIRE(back.g == c.g);
            REQUIRE(back.degree_hom == c.degree_hom);
            REQUIRE(j["coeffs_as"] == "rational-strings");
        }
    }
    SECTION("normalization happens on load") {
        json j;
        j["name"] = "scaled-line";
        // all four components share the factor (1 + t)
        j["numerators"] = {std::vector<std::string>{"1", "1"},        // 1 + t
                           std::vector<std::string>{"0", "1", "1"},   // t + t^2
                           std::vector<std::string>{"2", "3", "1"}};  // (1+t)(2+t)
        j["denominator"] = std::vector<std::string>{"1", "1"};
        auto c = curve_from_json(j);
        REQUIRE(c.degree_hom == 1);
    }
}

TEST_CASE("report JSON shapes") {
    auto c = curves::line();
    CongruenceParam q1{Rational(1)};
    auto surf = implicitize(c, q1);
    json js = implicit_surface_to_json(surf);
    REQUIRE(js["q"] == "1");
    REQUIRE(js["predicted_order"] == 3);
    REQUIRE(js["computed_order"] == 3);
    REQUIRE(js.contains("removed_factors"));

    auto rep = degree_theory_check(c, q1, surf);
    json jr = degree_report_to_json(rep);
    REQUIRE(jr["pass"]["order"] == true);
    REQUIRE(jr["predicted"]["p_point_mult"] == 2);
    REQUIRE(jr["computed"]["p_point_mult"] == 2);
    REQUIRE(jr["flags"].is_array());
}

TEST_CASE("obj reference reader") {
    CongruenceParam q1{Rational(1)};
    MeshOptions opt;
    opt.n_t = 4;
    opt.n_theta = 4;
    auto mesh = mesh_surface(curves::line(), q1, -1.0, 1.0, opt);
    std::ostringstream os;
    write_obj(mesh, os);
    std::istringstream is(os.str());
    auto counts = read_obj_counts(is);
    REQUIRE(counts.vertices == mesh.vertices.size());
    REQUIRE(counts.faces == mesh.faces.size());
    REQUIRE(counts.groups == mesh.charts.size());
    REQUIRE(counts.finite);
}
