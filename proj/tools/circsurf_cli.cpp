// circsurf command line: sample circular surfaces to OBJ, derive implicit
// equations, verify the degree/multiplicity theory, run the whole battery.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "circsurf/builtin_curves.hpp"
#include "circsurf/io.hpp"
#include "circsurf/surface.hpp"
#include "circsurf/verification.hpp"

using namespace circsurf;

namespace {

RationalCurve load_curve(const std::string& path, const std::string& builtin) {
    if (!builtin.empty()) {
        for (const auto& c : curves::all_builtin())
            if (c.name == builtin) return c;
        throw std::runtime_error("unknown builtin curve: " + builtin);
    }
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open curve file: " + path);
    json j;
    is >> j;
    return curve_from_json(j);
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot write " + out_path);
    os << j.dump(2) << "\n";
}

struct CommonOpts {
    std::string curve_path;
    std::string builtin;
    std::string q_text = "1";
    std::string out;
    unsigned long seed = 12345;
    double tol = 1e-9;
};

void add_curve_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--curve", o.curve_path, "curve-spec JSON path");
    cmd->add_option("--builtin", o.builtin,
                    "builtin curve name (line, h1, h2, twisted-cubic, latitude-circle, "
                    "ellipse-a, ellipse-b, cyclic-harmonic-k2, rose)");
    cmd->add_option("--q", o.q_text, "congruence parameter q = p^2 as a rational")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circular surfaces over circle congruences: sampling, implicitization, "
                 "verification"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string t0_text = "-3", t1_text = "3";
    int nt = 48, ntheta = 32;
    bool two_charts = false;
    bool symbolic_q = false;
    int samples = 100;
    int jobs = 1;
    std::string out_dir = "data/curves";

    auto* sample = app.add_subcommand("sample", "mesh a surface patch to Wavefront OBJ");
    add_curve_opts(sample, o);
    sample->add_option("--t0", t0_text, "curve parameter range start (rational)")
        ->capture_default_str();
    sample->add_option("--t1", t1_text, "curve parameter range end (rational)")
        ->capture_default_str();
    sample->add_option("--nt", nt, "grid rows along the curve")
        ->check(CLI::Range(2, 1 << 20))
        ->capture_default_str();
    sample->add_option("--ntheta", ntheta, "grid columns around the circles")
        ->check(CLI::Range(2, 1 << 20))
        ->capture_default_str();
    sample->add_flag("--two-charts", two_charts,
                     "also mesh the inverted parameter chart (closes tan-half seams)");
    sample->add_option("--out", o.out, "output OBJ path")->required();

    auto* impl = app.add_subcommand("implicitize", "eliminate the parameter, print the surface");
    add_curve_opts(impl, o);
    impl->add_flag("--symbolic-q", symbolic_q, "keep q as a polynomial variable");
    impl->add_option("--out", o.out, "output JSON path (stdout when absent)");

    auto* analyze = app.add_subcommand("analyze", "implicitize and verify the degree theory");
    add_curve_opts(analyze, o);
    analyze->add_option("--out", o.out, "output JSON path (stdout when absent)");

    auto* verify = app.add_subcommand("verify", "membership, orthogonality and inversion checks");
    add_curve_opts(verify, o);
    verify->add_option("--samples", samples, "sample count per check")->capture_default_str();
    verify->add_option("--seed", o.seed, "random seed")->capture_default_str();
    verify->add_option("--tol", o.tol, "residual tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* suite = app.add_subcommand("suite", "run the full verification battery");
    suite->add_option("--jobs", jobs, "criteria run concurrently up to this limit")
        ->capture_default_str();
    suite->add_option("--seed", o.seed, "random seed")->capture_default_str();

    auto* dump = app.add_subcommand("curves", "write the builtin curve specs as JSON");
    dump->add_option("--out-dir", out_dir, "target directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) {
            auto curve = load_curve(o.curve_path, o.builtin);
            CongruenceParam cong{Rational::parse(o.q_text)};
            MeshOptions opt;
            opt.n_t = nt;
            opt.n_theta = ntheta;
            opt.add_inverted_chart = two_charts;
            double t0 = Rational::parse(t0_text).to_double();
            double t1 = Rational::parse(t1_text).to_double();
            auto mesh = mesh_surface(curve, cong, t0, t1, opt);
            std::ofstream os(o.out);
            if (!os) throw std::runtime_error("cannot write " + o.out);
            write_obj(mesh, os);
            std::printf("wrote %zu vertices, %zu faces, %zu charts to %s\n",
                        mesh.vertices.size(), mesh.faces.size(), mesh.charts.size(),
                        o.out.c_str());
            if (!mesh.pinch_vertices.empty())
                std::printf("flagged %zu pinch vertices (zero-radius circles)\n",
                            mesh.pinch_vertices.size());
            return 0;
        }

        if (impl->parsed()) {
            auto curve = load_curve(o.curve_path, o.builtin);
            CongruenceParam cong{Rational::parse(o.q_text)};
            ImplicitSurface surf;
            try {
                surf = symbolic_q ? implicitize_symbolic(curve) : implicitize(curve, cong);
            } catch (const DegeneratePlane& e) {
                std::fprintf(stderr,
                             "degenerate: %s\n(the swept set is the plane itself, counted "
                             "with multiplicity)\n",
                             e.what());
                return 1;
            }
            emit(implicit_surface_to_json(surf), o.out);
            if (!surf.order_matches) {
                std::fprintf(stderr, "warning: computed order %d does not match prediction %d\n",
                             surf.computed_order, surf.predicted_order);
                return 1;
            }
            return 0;
        }

        if (analyze->parsed()) {
            auto curve = load_curve(o.curve_path, o.builtin);
            CongruenceParam cong{Rational::parse(o.q_text)};
            auto surf = implicitize(curve, cong);
            auto rep = degree_theory_check(curve, cong, surf);
            json j = degree_report_to_json(rep);
            j["surface"] = implicit_surface_to_json(surf);
            emit(j, o.out);
            return rep.pass_all() ? 0 : 1;
        }

        if (verify->parsed()) {
            auto curve = load_curve(o.curve_path, o.builtin);
            CongruenceParam cong{Rational::parse(o.q_text)};
            bool all = true;

            auto surf = implicitize(curve, cong);
            std::mt19937_64 rng(o.seed);
            std::uniform_real_distribution<double> dt(-3.0, 3.0), dth(0.0, 6.2831853);
            double worst = 0.0;
            int done = 0, guard = 0;
            while (done < samples && ++guard < 100 * samples) {
                Vec3d v;
                try {
                    v = eval_surface(curve, cong, dt(rng), dth(rng));
                } catch (const std::exception&) {
                    continue;
                }
                worst = std::max(worst, membership_residual(surf.f, v));
                ++done;
            }
            bool ok = done == samples && worst < o.tol;
            std::printf("%s membership: %d samples, max residual %.3e\n", ok ? "PASS" : "FAIL",
                        done, worst);
            all = all && ok;

            std::uniform_int_distribution<int> dnum(-30, 30);
            std::uniform_int_distribution<int> dden(1, 6);
            bool orth = true;
            int pairs = 0;
            while (pairs < samples / 2) {
                Vec3q a{Rational(dnum(rng), dden(rng)), Rational(dnum(rng), dden(rng)),
                        Rational(dnum(rng), dden(rng))};
                if ((a.x * a.x + a.y * a.y).is_zero()) continue;
                Rational zc(std::abs(dnum(rng)) % 7 + 8);
                PencilSphere sphere;
                try {
                    sphere = orthogonal_pencil_sphere(cong, zc);
                } catch (const std::exception&) {
                    continue;
                }
                auto circle = circle_through_point(cong, a);
                Rational lhs = circle.center_x * circle.center_x +
                               circle.center_y * circle.center_y +
                               sphere.center_z * sphere.center_z;
                if (lhs != circle.r_squared + sphere.radius_squared) orth = false;
                ++pairs;
            }
            std::printf("%s orthogonality: %d circle/sphere pairs, exact identity\n",
                        orth ? "PASS" : "FAIL", pairs);
            all = all && orth;

            if (cong.q.sign() > 0) {
                double res = inversion_check(curve, cong, surf.f, samples, o.seed);
                bool inv_ok = res < o.tol;
                std::printf("%s inversion: %d cone samples, max residual %.3e\n",
                            inv_ok ? "PASS" : "FAIL", samples, res);
                all = all && inv_ok;
            } else {
                std::printf("SKIP inversion: defined for elliptic congruences (q > 0) only\n");
            }
            return all ? 0 : 1;
        }

        if (suite->parsed()) {
            auto results = verification::run_all(o.seed, jobs);
            bool all = true;
            for (const auto& r : results) {
                std::printf("%s criterion %2d: %s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.id,
                            r.name.c_str(), r.seconds, r.detail.c_str());
                all = all && r.pass;
            }
            std::printf("%s: %zu criteria\n", all ? "ALL PASS" : "FAILURES PRESENT",
                        results.size());
            return all ? 0 : 1;
        }

        if (dump->parsed()) {
            for (const auto& c : curves::all_builtin()) {
                std::string path = out_dir + "/" + c.name + ".json";
                std::ofstream os(path);
                if (!os) throw std::runtime_error("cannot write " + path);
                os << curve_to_json(c).dump(2) << "\n";
                std::printf("wrote %s\n", path.c_str());
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
