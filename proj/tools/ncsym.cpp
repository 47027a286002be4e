// Command-line front end. Exit codes: 0 pass, 1 usage or domain error, 2 verification failure
// (swapped with 0 under --negative-control).

#include "ncsym/acceptance.hpp"
#include "ncsym/field_lab.hpp"
#include "ncsym/io.hpp"
#include "ncsym/mechanics.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

using namespace ncsym;

namespace {

struct Options {
    std::string family, z, branch = "c1", out, model;
    int d = 3, deg_t = 2, N = 1, steps = 10000;
    unsigned seed = 1;
    double h = 1e-3;
    bool negative = false;
};

void add_family(CLI::App* c, Options& o, bool required) {
    auto* f = c->add_option("--family", o.family, "cgal, cgal-z, sch, sch-expanded, gal, cnc, cmil, cmil-z, cga, alt");
    if (required) f->required();
    c->add_option("--d", o.d, "spatial dimension")->check(CLI::Range(1, 8));
    c->add_option("--z", o.z, "dynamical exponent p/q or inf");
    c->add_option("--deg-t", o.deg_t, "t-degree bound")->check(CLI::Range(0, 8));
    c->add_option("--branch", o.branch, "cmil branch c1 or c2");
    c->add_option("--N", o.N, "alt translation degree")->check(CLI::Range(1, 8));
}

SolveRequest request(const Options& o) {
    SolveRequest r;
    r.family = o.family;
    r.d = o.d;
    if (!o.z.empty()) r.z = DynExponent::parse(o.z);
    r.deg_t = o.deg_t;
    r.branch = o.branch;
    r.N = o.N;
    return r;
}

Json request_json(const Options& o) {
    return {{"family", o.family}, {"d", o.d},           {"z", o.z.empty() ? Json(nullptr) : Json(o.z)},
            {"deg_t", o.deg_t},   {"branch", o.branch}, {"N", o.N}};
}

// Writes the report and maps the verdict to an exit code.
int finish(const Options& o, Json report, bool verified) {
    report["negative_control"] = o.negative;
    report["verified"] = verified;
    bool success = o.negative ? !verified : verified;
    report["verdict"] = success ? "pass" : "fail";
    write_json(o.out, report);
    return success ? 0 : 2;
}

int cmd_solve(const Options& o) {
    auto b = solve(request(o));
    write_json(o.out, {{"request", request_json(o)}, {"basis", to_json(b)}});
    return 0;
}

int cmd_bracket_table(const Options& o) {
    auto b = solve(request(o));
    if (o.negative) {
        // t³∂t brackets out of any of these finite families
        VectorField extra(o.d);
        extra[0] = pow(Poly::variable(o.d, 0), 3);
        b.generators.push_back(extra);
    }
    auto r = structure_constants(b.generators);
    Json report = {{"request", request_json(o)}, {"dim", b.dim()}, {"closed", r.constants.has_value()}};
    bool ok = false;
    if (r.constants) {
        report["structure_constants"] = to_json(*r.constants);
        ok = r.constants->antisymmetric() && r.constants->jacobi();
    } else {
        report["failure"] = {{"i", r.failure.i}, {"j", r.failure.j}, {"residual", to_json(r.failure.residual)}};
    }
    return finish(o, report, ok);
}

int cmd_rep_check(const Options& o) {
    Options q = o;
    if (q.family != "sch" && q.family != "cga") throw std::invalid_argument("rep-check needs --family sch or cga");
    q.z = q.family == "sch" ? "2" : "1";
    auto b = solve(request(q));
    RepReport rep;
    if (q.family == "sch") {
        rep = o.negative ? check_representation("sch, +kappa entry", b.generators,
                                                [d = o.d](const VectorField& X) -> std::optional<RMatrix> {
                                                    auto p = sch_params(X);
                                                    if (!p) return std::nullopt;
                                                    RMatrix m = rep_schrodinger(d, *p);
                                                    m(d + 1, d) = p->kappa;
                                                    return m;
                                                })
                         : check_sch_rep(b.generators);
    } else {
        rep = o.negative ? check_representation("cga, +kappa/2 entry", b.generators,
                                                [d = o.d](const VectorField& X) -> std::optional<RMatrix> {
                                                    auto p = cga_params(X);
                                                    if (!p) return std::nullopt;
                                                    return rep_cga_plus_half_kappa(d, *p);
                                                })
                         : check_cga_rep(b.generators);
    }
    Json report = {{"request", request_json(q)}, {"representation", to_json(rep)}};
    bool ok = rep.faithful && rep.consistent && rep.sign != 0;
    auto sc = structure_constants(b.generators);
    if (sc.constants) {
        auto radical = q.family == "sch" ? sch_radical(b.generators) : cga_radical(b.generators);
        auto levi = levi_check(*sc.constants, radical, o.d);
        report["levi"] = to_json(levi);
        ok = ok && levi.status == LeviStatus::Ok;
    } else {
        ok = false;
    }
    return finish(o, report, ok);
}

int cmd_geodesic(const Options& o) {
    const int d = o.d;
    Connection G(d);
    Vec x0 = Vec::Zero(d + 1), v0 = Vec::Zero(d + 1);
    std::mt19937 rng(o.seed);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int A = 1; A <= d; ++A) {
        x0[A] = U(rng);
        v0[A] = U(rng);
    }
    if (o.model == "flat") {
        v0[0] = 1;
    } else if (o.model == "oscillator") {
        // V = ½|x|²: Γ^A_00 = x^A
        for (int A = 1; A <= d; ++A) G(A, 0, 0) = Poly::variable(d, A);
        v0[0] = 1;
    } else if (o.model == "lightlike") {
        for (int A = 1; A <= d; ++A) G(A, 0, 0) = Poly::variable(d, A);
    } else {
        throw std::invalid_argument("geodesic model must be flat, oscillator or lightlike");
    }
    auto tr = integrate_geodesic(G, x0, v0, o.steps, o.h);
    if (!o.out.empty()) {
        std::ofstream os(o.out);
        if (!os) throw std::runtime_error("cannot open " + o.out);
        write_trajectory_csv(os, tr);
    }
    Json report = {{"model", o.model},
                   {"d", d},
                   {"steps", o.steps},
                   {"h", o.h},
                   {"seed", o.seed},
                   {"timelike", tr.timelike},
                   {"tdot_preserved", tr.tdot_preserved},
                   {"final", std::vector<double>(tr.x.back().data(), tr.x.back().data() + d + 1)}};
    Options q = o;
    q.out.clear();  // the summary goes to stdout, the trajectory to --out
    return finish(q, report, tr.tdot_preserved);
}

Mat3 rotation(int A, int B) {
    Mat3 w = Mat3::Zero();
    w(A, B) = 1;
    w(B, A) = -1;
    return w;
}

int cmd_noether(const Options& o) {
    std::mt19937 rng(o.seed);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    auto v3 = [&] {
        Vec3 v;
        for (int i = 0; i < 3; ++i) v[i] = U(rng);  // fixed draw order
        return v;
    };
    Json report = {{"model", o.model}, {"steps", o.steps}, {"h", o.h}, {"seed", o.seed}};
    bool ok = true;
    if (o.model == "massive") {
        const double m = 1.5, s = 0.7;
        MassiveState y0;
        y0.x = v3();
        y0.v = v3();
        y0.u = v3().normalized();
        auto c0 = massive_charges(y0, m, s);
        double drift = 0;
        for (const auto& y : massive_flow(y0, o.steps, o.h)) {
            auto c = massive_charges(y, m, s);
            drift = std::max({drift, (c.P - c0.P).norm(), (c.G - c0.G).norm(), (c.J - c0.J).norm(), std::abs(c.H - c0.H),
                              std::abs(c.K - c0.K), std::abs(c.D - c0.D)});
        }
        report["drift"] = drift;
        ok = drift < 1e-12;
        auto model = massive_model(m, s);
        MassiveState y;
        y.t = U(rng);
        y.x = v3();
        y.v = v3();
        y.u = v3().normalized();
        Vec p = pack(y);
        double sym = 0, noe = 0;
        if (o.negative) {
            // acceleration t² ∂_1 lifted to velocities
            auto acc = [](const Vec& q) {
                Vec Z = Vec::Zero(10);
                Z[1] = q[0] * q[0];
                Z[4] = 2 * q[0];
                return Z;
            };
            sym = presymplectic_symmetry_check(model, acc, p).residual;
        } else {
            SchNumeric gen;
            gen.omega = rotation(0, 1);
            gen.beta = Vec3(1, -0.5, 0.25);
            gen.gamma = Vec3(0, 1, 2);
            gen.kappa = 0.5;
            gen.lambda = -1;
            gen.epsilon = 2;
            auto Z = [&](const Vec& q) { return massive_lift(gen, unpack_massive(q)); };
            auto J = [&](const Vec& q) { return massive_noether(gen, unpack_massive(q), m, s); };
            sym = presymplectic_symmetry_check(model, Z, p).residual;
            noe = noether_check(model, Z, J, p).residual;
        }
        report["presymplectic_residual"] = sym;
        report["noether_residual"] = noe;
        ok = ok && sym < 1e-6 && noe < 1e-6;
    } else if (o.model == "photon") {
        const double k = 1.7, s = 0.8;
        PhotonState y;
        y.t = U(rng);
        y.x = v3();
        y.E = U(rng);
        y.u = v3().normalized();
        PhotonSymmetry X;
        if (o.negative) {
            X.omega = {Mat3::Zero(), rotation(0, 1)};
        } else {
            X.omega = {rotation(0, 2)};
            X.eta = {Vec3(1, -1, 0), Vec3(0.5, 0, 2), Vec3(0, 1, 0)};
            X.xi = {1, 0.5, -0.3};
            double J0 = photon_charges(y, k, s, X), drift = 0;
            PhotonState q = y;
            for (int i = 0; i < o.steps; ++i) {
                q = photon_flow(q, o.h);
                drift = std::max(drift, std::abs(photon_charges(q, k, s, X) - J0));
            }
            report["drift"] = drift;
            ok = drift < 1e-12;
        }
        auto Z = [&](const Vec& p) { return photon_lift(X, unpack_photon(p), k); };
        double sym = presymplectic_symmetry_check(photon_model(k, s), Z, pack(y)).residual;
        report["presymplectic_residual"] = sym;
        ok = ok && sym < 1e-6;
    } else if (o.model == "jacobi") {
        // negative control: the harmonic potential does not conserve D
        auto js = o.negative ? jacobi_charges(1, 0.5, 2, Vec3(1, 0, 0), Vec3(0, 0.3, 0), o.steps, o.h)
                             : jacobi_charges(1, -0.5, -2, Vec3(1, 0, 0), Vec3(0, 1, 0), o.steps, o.h);
        report["drift"] = {{"E", js.max_drift(js.E)}, {"D", js.max_drift(js.D)}, {"K", js.max_drift(js.K)}};
        report["min_radius"] = js.min_radius;
        ok = js.max_drift(js.D) < 1e-6 && (o.negative || js.max_drift(js.K) < 1e-6);
    } else if (o.model == "poisson") {
        auto tab = poisson_check(1.5, 0.7, 20, o.seed);
        report["brackets"] = tab.entries;
        report["max_error"] = tab.max_error;
        report["spin_sign"] = tab.spin_sign;
        ok = tab.max_error < 1e-9;
    } else {
        throw std::invalid_argument("noether model must be massive, photon, jacobi or poisson");
    }
    return finish(o, report, ok);
}

std::vector<std::vector<double>> sample(int d, int n, unsigned seed, double thi) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> T(0, thi), X(-1, 1);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n; ++i) {
        std::vector<double> p{T(rng)};
        for (int A = 0; A < d; ++A) p.push_back(X(rng));
        pts.push_back(p);
    }
    return pts;
}

int cmd_fluid_check(const Options& o) {
    const int d = o.d;
    auto V = Potential::zero();
    FluidFields base = self_similar_solution(d, 0.5, 1.0);
    FluidFields img;
    std::vector<double> b(d, 0.0);
    for (int A = 0; A < d; ++A) b[A] = 0.3 - 0.2 * A;
    if (o.model == "self-similar") {
        img = base;
    } else if (o.model == "boost") {
        img = fluid_transform_apply(FluidTransform::boost(b), base);
    } else if (o.model == "expansion") {
        img = fluid_transform_apply(FluidTransform::expansion(0.6), base);
    } else if (o.model == "z-dilation") {
        auto z = DynExponent::parse(o.z.empty() ? "2" : o.z);
        if (z.infinite) throw std::invalid_argument("z-dilation needs a finite --z");
        img = fluid_transform_apply(FluidTransform::z_dilation(1.7, z.value.to_double()), base);
    } else if (o.model == "polytropic") {
        auto z = DynExponent::parse(o.z.empty() ? "2" : o.z);
        if (z.infinite) throw std::invalid_argument("polytropic needs a finite --z");
        V = Potential::polytropic(0.9, polytropic_exponent(z, d).to_double());
        base = uniform_flow(b, 1.4, V);
        img = fluid_transform_apply(FluidTransform::z_dilation(1.6, z.value.to_double()), base);
    } else if (o.model == "chaplygin") {
        V = Potential::chaplygin(0.8);
        base = uniform_flow(b, 1.5, V);
        img = fluid_transform_apply(FluidTransform::time_dilation(2.5), base);
    } else {
        throw std::invalid_argument("fluid model must be self-similar, boost, expansion, z-dilation, polytropic or chaplygin");
    }
    if (o.negative) {
        // accelerated image of the same base solution
        std::vector<double> a(d, 0.0);
        a[0] = 0.8;
        img = fluid_transform_apply(FluidTransform::acceleration(a), base);
    }
    auto r = fluid_residual(img.theta, img.rho, V, sample(d, 100, o.seed, 1.5));
    Json report = {{"model", o.model},
                   {"d", d},
                   {"seed", o.seed},
                   {"points", 100},
                   {"residual", {{"continuity", r.continuity}, {"bernoulli", r.bernoulli}}}};
    return finish(o, report, r.max() < 1e-9);
}

int cmd_em_check(const Options& o) {
    auto nc = flat_structure(3);
    auto lib = sourcefree_library();
    std::vector<VectorField> gens;
    std::string fam = o.negative ? "cnc" : (o.family.empty() ? "cmil" : o.family);
    if (fam == "cmil") {
        VectorField U(3);
        U[0] = Poly::constant(3, Rational(1));
        gens = solve_cmil_flat(3, U).c1.generators;
    } else if (fam == "sch") {
        gens = restrict_sch_z(solve_sch_expanded(3), DynExponent::finite(Rational(2))).generators;
    } else if (fam == "cnc") {
        gens = solve_cnc_flat(3, 2).basis.generators;
    } else {
        throw std::invalid_argument("em-check family must be cmil, sch or cnc");
    }
    Json rows = Json::array();
    bool ok = true;
    for (const auto& X : gens) {
        Json failed = Json::array();
        for (std::size_t i = 0; i < lib.size(); ++i)
            if (!lbll_symmetry_check(X, lib[i], nc).pass) failed.push_back(static_cast<int>(i));
        ok = ok && failed.empty();
        rows.push_back({{"generator", to_json(X)}, {"failed_fields", failed}});
    }
    Json report = {{"family", fam}, {"fields", static_cast<int>(lib.size())}, {"generators", rows}};
    return finish(o, report, ok);
}

int cmd_selftest(const Options& o) {
    auto results = run_all(thread_cap_from_env());
    Json rows = Json::array();
    bool ok = true;
    for (const auto& r : results) {
        std::fprintf(stderr, "criterion %d: %s  %s (%.3f s)\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
        rows.push_back(to_json(r));
        ok = ok && r.pass;
    }
    return finish(o, {{"criteria", rows}}, ok);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newton-Cartan symmetry toolkit"};
    app.set_help_flag("--help", "print help");  // -h would clash with --h
    app.require_subcommand(1);
    Options o;

    auto* solve_c = app.add_subcommand("solve", "solve a symmetry family and print its basis");
    add_family(solve_c, o, true);
    auto* bracket_c = app.add_subcommand("bracket-table", "structure constants with antisymmetry and Jacobi checks");
    add_family(bracket_c, o, true);
    auto* rep_c = app.add_subcommand("rep-check", "matrix representation and Levi checks");
    add_family(rep_c, o, true);
    auto* geo_c = app.add_subcommand("geodesic", "integrate a Newton-Cartan geodesic");
    geo_c->add_option("--model", o.model, "flat, oscillator or lightlike")->required();
    geo_c->add_option("--d", o.d)->check(CLI::Range(1, 8));
    auto* noe_c = app.add_subcommand("noether", "charge drift and presymplectic checks");
    noe_c->add_option("--model", o.model, "massive, photon, jacobi or poisson")->required();
    auto* fluid_c = app.add_subcommand("fluid-check", "residuals of transformed fluid solutions");
    fluid_c->add_option("--model", o.model, "self-similar, boost, expansion, z-dilation, polytropic or chaplygin")
        ->required();
    fluid_c->add_option("--d", o.d)->check(CLI::Range(1, 6));
    fluid_c->add_option("--z", o.z, "p/q");
    auto* em_c = app.add_subcommand("em-check", "sourcefree LBLL invariance of a generator family");
    em_c->add_option("--family", o.family, "cmil, sch or cnc");
    auto* self_c = app.add_subcommand("selftest", "run every acceptance criterion");

    for (auto* c : {solve_c, bracket_c, rep_c, geo_c, noe_c, fluid_c, em_c, self_c})
        c->add_option("--out", o.out, "output path (stdout when omitted)");
    for (auto* c : {geo_c, noe_c, fluid_c}) c->add_option("--seed", o.seed);
    for (auto* c : {geo_c, noe_c}) {
        c->add_option("--steps", o.steps)->check(CLI::PositiveNumber);
        c->add_option("--h", o.h)->check(CLI::PositiveNumber);
    }
    for (auto* c : {bracket_c, rep_c, noe_c, fluid_c, em_c})
        c->add_flag("--negative-control", o.negative, "run the designated failing case; exit codes swap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*solve_c) return cmd_solve(o);
        if (*bracket_c) return cmd_bracket_table(o);
        if (*rep_c) return cmd_rep_check(o);
        if (*geo_c) return cmd_geodesic(o);
        if (*noe_c) return cmd_noether(o);
        if (*fluid_c) return cmd_fluid_check(o);
        if (*em_c) return cmd_em_check(o);
        if (*self_c) return cmd_selftest(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
