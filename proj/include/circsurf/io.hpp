#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "circsurf/analysis.hpp"
#include "circsurf/directrix.hpp"
#include "circsurf/implicitize.hpp"

namespace circsurf {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Polynomial JSON: {"vars": [...], "terms": [{"exp": [...], "coeff": "n/d"}]},
// terms in graded-lex descending order.
// ---------------------------------------------------------------------------

inline json poly_to_json(const Poly3& p, std::vector<std::string> vars = {}) {
    if (vars.empty()) {
        static const std::vector<std::string> def{"x", "y", "z", "q"};
        vars.assign(def.begin(), def.begin() + p.arity());
    }
    json j;
    j["vars"] = vars;
    j["terms"] = json::array();
    for (const auto& [e, c] : p.terms()) {
        json term;
        term["exp"] = e;
        term["coeff"] = c.str();
        j["terms"].push_back(term);
    }
    return j;
}

inline Poly3 poly_from_json(const json& j) {
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    Poly3 p(static_cast<int>(vars.size()));
    for (const auto& term : j.at("terms")) {
        std::vector<int> e = term.at("exp").get<std::vector<int>>();
        Rational c = Rational::parse(term.at("coeff").get<std::string>());
        p.add_term(e, c);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Curve JSON: ascending coefficient lists of the three numerators and the
// common denominator, coefficients as rational strings.
// ---------------------------------------------------------------------------

inline json curve_to_json(const RationalCurve& c) {
    auto coeffs = [](const RatPoly& p) {
        std::vector<std::string> out;
        for (int i = 0; i <= p.degree(); ++i) out.push_back(p[i].str());
        if (out.empty()) out.push_back("0");
        return out;
    };
    json j;
    j["name"] = c.name;
    j["numerators"] = {coeffs(c.f1), coeffs(c.f2), coeffs(c.f3)};
    j["denominator"] = coeffs(c.g);
    j["coeffs_as"] = "rational-strings";
    return j;
}

inline RationalCurve curve_from_json(const json& j) {
    auto poly = [](const json& arr) {
        std::vector<Rational> c;
        for (const auto& v : arr) {
            if (v.is_string())
                c.push_back(Rational::parse(v.get<std::string>()));
            else
                c.push_back(Rational::parse(v.dump()));
        }
        return RatPoly(Rational(0), std::move(c));
    };
    const auto& nums = j.at("numerators");
    if (nums.size() != 3) throw std::runtime_error("curve JSON: three numerators expected");
    return make_curve(j.value("name", "curve"), poly(nums[0]), poly(nums[1]), poly(nums[2]),
                      poly(j.at("denominator")));
}

// ---------------------------------------------------------------------------
// ImplicitSurface JSON: the polynomial plus elimination provenance.
// ---------------------------------------------------------------------------

inline json implicit_surface_to_json(const ImplicitSurface& s) {
    json j = poly_to_json(s.f);
    j["q"] = s.symbolic_q ? std::string("symbolic") : s.q.str();
    j["removed_factors"] = s.removed_factors;
    j["predicted_order"] = s.predicted_order;
    j["computed_order"] = s.computed_order;
    j["order_matches"] = s.order_matches;
    j["covering_multiplicity"] = s.covering_multiplicity;
    j["radical_exponent"] = s.radical_exponent;
    json inv;
    inv["m"] = s.inv.m;
    inv["z_prime"] = s.inv.z_prime;
    inv["a_prime"] = s.inv.a_prime;
    inv["p1_prime"] = s.inv.p1_prime;
    inv["p2_prime"] = s.inv.p2_prime;
    inv["coincident_p"] = s.inv.coincident_p;
    j["invariants"] = inv;
    return j;
}

// ---------------------------------------------------------------------------
// DegreeReport JSON.
// ---------------------------------------------------------------------------

inline json degree_report_to_json(const DegreeReport& r) {
    auto counts = [](const DegreeCounts& t) {
        json j;
        j["order"] = t.order;
        j["abs_conic_mult"] = t.abs_conic_mult;
        j["z_axis_mult"] = t.z_axis_mult;
        j["p_point_mult"] = t.p_point_mult;
        return j;
    };
    json j;
    j["predicted"] = counts(r.predicted);
    j["computed"] = counts(r.computed);
    j["pass"] = {{"order", r.pass_order},
                 {"abs_conic_mult", r.pass_abs},
                 {"z_axis_mult", r.pass_z},
                 {"p_point_mult", r.pass_p}};
    j["flags"] = r.flags;
    return j;
}

// ---------------------------------------------------------------------------
// Reference OBJ reader (counts only; used for round-trip checks).
// ---------------------------------------------------------------------------

struct ObjCounts {
    std::size_t vertices = 0;
    std::size_t faces = 0;
    std::size_t groups = 0;
    bool finite = true;
};

inline ObjCounts read_obj_counts(std::istream& is) {
    ObjCounts c;
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("v ", 0) == 0) {
            ++c.vertices;
            if (line.find("nan") != std::string::npos || line.find("inf") != std::string::npos)
                c.finite = false;
        } else if (line.rfind("f ", 0) == 0) {
            ++c.faces;
        } else if (line.rfind("g ", 0) == 0) {
            ++c.groups;
        }
    }
    return c;
}

}  // namespace circsurf
