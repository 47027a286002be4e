#include "ncsym/acceptance.hpp"

#include "ncsym/field_lab.hpp"
#include "ncsym/mechanics.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

namespace ncsym {
namespace {

// Records one named verdict and folds it into the running result.
struct Ledger {
    Json& out;
    bool ok = true;
    void check(const std::string& name, bool cond, Json info = nullptr) {
        Json e = {{"pass", cond}};
        if (!info.is_null()) e["info"] = std::move(info);
        out[name] = std::move(e);
        ok = ok && cond;
    }
};

VectorField time_ether(int d) {
    VectorField U(d);
    U[0] = Poly::constant(d, Rational(1));
    return U;
}

const DynExponent kZ1 = DynExponent::finite(Rational(1));
const DynExponent kZ2 = DynExponent::finite(Rational(2));

AlgebraBasis sch(int d) { return restrict_sch_z(solve_sch_expanded(d), kZ2); }
AlgebraBasis cga(int d) { return restrict_cmil_z(solve_cmil_flat(d, time_ether(d)).c1, kZ1); }

bool c1(Json& out) {
    Ledger L{out};
    auto dim = [&](const std::string& name, int got, int want) { L.check(name, got == want, {{"dim", got}, {"expected", want}}); };
    auto ex3 = solve_sch_expanded(3);
    dim("sch(3)", restrict_sch_z(ex3, kZ2).dim(), 12);
    dim("expanded sch(3)", ex3.dim(), 13);
    dim("gal(3)", restrict_gal(ex3).dim(), 10);
    auto cm3 = solve_cmil_flat(3, time_ether(3));
    dim("cmil(3)", cm3.c1.dim(), 16);
    dim("CGA(3)", restrict_cmil_z(cm3.c1, kZ1).dim(), 15);
    dim("CGA(2)", cga(2).dim(), 10);
    dim("sch(2)", sch(2).dim(), 8);
    for (int d : {2, 3})
        for (int N : {1, 2, 3})
            dim("alt_{2/" + std::to_string(N) + "}(" + std::to_string(d) + ")", alt_subalgebra(d, N).dim(),
                d * (d - 1) / 2 + 3 + (N + 1) * d);
    return L.ok;
}

bool c2(Json& out) {
    Ledger L{out};
    auto run = [&](const std::string& name, const std::vector<VectorField>& basis) {
        auto r = structure_constants(basis);
        bool ok = r.constants && r.constants->antisymmetric() && r.constants->jacobi();
        Json info = {{"dim", static_cast<int>(basis.size())}, {"closed", r.constants.has_value()}};
        if (r.constants) {
            info["antisymmetric"] = r.constants->antisymmetric();
            info["jacobi"] = r.constants->jacobi();
        }
        L.check(name, ok, info);
    };
    run("sch(3)", sch(3).generators);
    run("CGA(3)", cga(3).generators);
    run("cmil(3)", solve_cmil_flat(3, time_ether(3)).c1.generators);
    run("alt_{2/3}(3)", alt_subalgebra(3, 3).generators);
    return L.ok;
}

bool c3(Json& out) {
    Ledger L{out};
    for (int d : {2, 3}) {
        const std::string ds = "(" + std::to_string(d) + ")";
        auto s = sch(d);
        auto rs = check_sch_rep(s.generators);
        L.check("sch" + ds + " rep", rs.faithful && rs.consistent && rs.sign != 0, to_json(rs));
        auto c = cga(d);
        auto rc = check_cga_rep(c.generators);
        L.check("CGA" + ds + " rep", rc.faithful && rc.consistent && rc.sign != 0, to_json(rc));
        auto ss = structure_constants(s.generators);
        auto cs = structure_constants(c.generators);
        bool closed = ss.constants && cs.constants;
        L.check("closed" + ds, closed);
        if (!closed) continue;
        auto ls = levi_check(*ss.constants, sch_radical(s.generators), d);
        L.check("sch" + ds + " Levi", ls.status == LeviStatus::Ok, to_json(ls));
        auto lc = levi_check(*cs.constants, cga_radical(c.generators), d);
        L.check("CGA" + ds + " Levi", lc.status == LeviStatus::Ok, to_json(lc));
    }
    return L.ok;
}

bool c4(Json& out) {
    Ledger L{out};
    auto cnc = solve_cnc_flat(3, 2);
    auto s2 = sch(3);
    bool fg = true;
    for (const auto& X : s2.generators) {
        auto [f, g] = linear_factors(X);
        fg = fg && (f + g).is_zero();
    }
    L.check("sch_2(3) inside cnc(3)", span_contains(cnc.basis.generators, s2.generators));
    L.check("f + g = 0 on sch_2(3)", fg);

    int verified = 0, coriolis = 0;
    for (const auto& w : cnc.witnesses) {
        verified += w.verified;
        coriolis += all_zero(raised_connection_variation(w.X));
    }
    const int n = cnc.basis.dim();
    L.check("cnc witnesses verified", verified == n, {{"verified", verified}, {"dim", n}});
    L.check("L_X Gamma^{abc} = 0 on cnc", coriolis == n, {{"zero", coriolis}, {"dim", n}});

    for (const auto& z : {kZ2, kZ1, DynExponent::finite(Rational(3, 2)), DynExponent::infinity()}) {
        auto cz = solve_linear(cnc.basis.generators, [&](const VectorField& X) { return exponent_residual(X, z); });
        auto gz = solve_cgal_z(3, z, 2);
        L.check("cnc_z = cgal_z at z = " + z.str(), span_equal(cz, gz.generators),
                {{"cnc_z", static_cast<int>(cz.size())}, {"cgal_z", gz.dim()}});
    }

    std::vector<DynExponent> grid{DynExponent::infinity()};
    for (auto z : {Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1), Rational(3, 2), Rational(2), Rational(3)})
        grid.push_back(DynExponent::finite(z));
    for (int N = 1; N <= 4; ++N) {
        Json closing = Json::array();
        for (const auto& z : grid)
            if (closure_check(alt_candidate(2, N, z)).closed) closing.push_back(z.str());
        L.check("alt z-scan N = " + std::to_string(N),
                closing.size() == 1 && closing[0] == DynExponent::finite(Rational(2, N)).str(), closing);
    }
    return L.ok;
}

Mat3 rotation(int A, int B) {
    Mat3 w = Mat3::Zero();
    w(A, B) = 1;
    w(B, A) = -1;
    return w;
}

bool c5(Json& out) {
    Ledger L{out};
    MassiveState y0;
    y0.x = Vec3(0.3, -1, 2);
    y0.v = Vec3(0.7, 0.2, -0.4);
    y0.u = Vec3(1, 1, 0).normalized();
    const double m = 1.5, s = 0.7;
    auto flow = massive_flow(y0, 10000, 1e-3);
    auto c0 = massive_charges(y0, m, s);
    Json drift = Json::object();
    double worst = 0;
    auto note = [&](const std::string& k, double v) {
        drift[k] = std::max(drift.value(k, 0.0), v);
        worst = std::max(worst, v);
    };
    for (const auto& y : flow) {
        auto c = massive_charges(y, m, s);
        note("P", (c.P - c0.P).norm());
        note("G", (c.G - c0.G).norm());
        note("J", (c.J - c0.J).norm());
        note("H", std::abs(c.H - c0.H));
        note("K", std::abs(c.K - c0.K));
        note("D", std::abs(c.D - c0.D));
    }
    L.check("free massive drift < 1e-12", worst < 1e-12, drift);

    auto js = jacobi_charges(1, -0.5, -2, Vec3(1, 0, 0), Vec3(0, 1, 0), 10000, 1e-3);
    L.check("Jacobi D, K drift < 1e-6 with |x| >= 0.5",
            js.max_drift(js.D) < 1e-6 && js.max_drift(js.K) < 1e-6 && js.min_radius >= 0.5,
            {{"D", js.max_drift(js.D)}, {"K", js.max_drift(js.K)}, {"min_radius", js.min_radius}});
    auto harm = jacobi_charges(1, 0.5, 2, Vec3(1, 0, 0), Vec3(0, 0.3, 0), 10000, 1e-3);
    L.check("harmonic D drift > 1e-2", harm.max_drift(harm.D) > 1e-2, {{"D", harm.max_drift(harm.D)}});

    auto tab = poisson_check(m, s, 20, 11);
    // max_error covers {P_A,G_B} − mδ_AB, {P,P}, {G,G} and the J table at every point
    L.check("{P_A,G_B} = m delta_AB within 1e-9", tab.max_error < 1e-9 && tab.points == 20,
            {{"P1G1", tab.entries.at("{P1,G1}")}, {"max_error", tab.max_error}, {"points", tab.points}});
    return L.ok;
}

PhotonState random_photon(std::mt19937& rng) {
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    PhotonState y;
    y.t = U(rng);
    y.x = Vec3(U(rng), U(rng), U(rng));
    y.E = U(rng);
    y.u = Vec3(U(rng), U(rng), U(rng)).normalized();
    return y;
}

bool c6(Json& out) {
    Ledger L{out};
    std::mt19937 rng(3);
    const double k = 1.7, s = 0.8;

    PhotonState y = random_photon(rng);
    bool tfixed = true;
    PhotonState q = y;
    for (int i = 0; i < 10000; ++i) {
        q = photon_flow(q, 1e-3);
        tfixed = tfixed && q.t == y.t;
    }
    Connection G(3);
    G(1, 0, 0) = Poly::parse(3, "x1");
    Vec x0 = Vec::Zero(4), v0 = Vec::Zero(4);
    x0[0] = 2;
    v0[1] = 1;
    auto tr = integrate_geodesic(G, x0, v0, 1000, 1e-3);
    bool geo_fixed = tr.tdot_preserved && !tr.timelike;
    for (const auto& x : tr.x) geo_fixed = geo_fixed && x[0] == 2.0;
    L.check("tdot = 0 exactly", tfixed && geo_fixed);

    PhotonSymmetry X;
    X.omega = {rotation(0, 2)};
    X.eta = {Vec3(1, -1, 0), Vec3(0.5, 0, 2), Vec3(0, 1, 0)};
    X.xi = {1, 0.5, -0.3};
    double J0 = photon_charges(y, k, s, X), drift = 0;
    q = y;
    for (int i = 0; i < 10000; ++i) {
        q = photon_flow(q, 1e-3);
        drift = std::max(drift, std::abs(photon_charges(q, k, s, X) - J0));
    }
    L.check("photon charge drift < 1e-12", drift < 1e-12, {{"drift", drift}});

    auto model = photon_model(k, s);
    auto Z = [&](const Vec& p) { return photon_lift(X, unpack_photon(p), k); };
    double worst = 0;
    for (int n = 0; n < 20; ++n) worst = std::max(worst, presymplectic_symmetry_check(model, Z, pack(random_photon(rng))).residual);
    L.check("constant omega lift residual < 1e-6", worst < 1e-6, {{"residual", worst}});

    PhotonSymmetry W;
    W.omega = {Mat3::Zero(), rotation(0, 1)};
    const double wdot = axial(rotation(0, 1)).norm();
    auto ZW = [&](const Vec& p) { return photon_lift(W, unpack_photon(p), k); };
    double best = 0;
    for (int n = 0; n < 20; ++n) best = std::max(best, presymplectic_symmetry_check(model, ZW, pack(random_photon(rng))).residual);
    L.check("omega(t) witness > 0.1 s |omega'|", best > 0.1 * s * wdot, {{"residual", best}, {"bound", 0.1 * s * wdot}});
    return L.ok;
}

std::vector<std::vector<double>> sample(int d, int n, unsigned seed, double tlo, double thi) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> T(tlo, thi), X(-1, 1);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n; ++i) {
        std::vector<double> p{T(rng)};
        for (int A = 0; A < d; ++A) p.push_back(X(rng));
        pts.push_back(p);
    }
    return pts;
}

bool c7(Json& out) {
    Ledger L{out};
    const int d = 3;
    const auto V0 = Potential::zero();
    auto ss = self_similar_solution(d, 0.5, 1.0);
    auto pts = sample(d, 100, 1, 0, 1.5);
    double r = fluid_residual(ss.theta, ss.rho, V0, pts).max();
    L.check("self-similar residual < 1e-10", r < 1e-10, {{"residual", r}});

    auto ex = fluid_transform_apply(FluidTransform::expansion(0.6), ss);
    double re = fluid_residual(ex.theta, ex.rho, V0, pts).max();
    auto bo = fluid_transform_apply(FluidTransform::boost({0.3, 0.1, -0.2}), ss);
    double rb = fluid_residual(bo.theta, bo.rho, V0, pts).max();
    L.check("expansion image < 1e-9", re < 1e-9, {{"residual", re}});
    L.check("boost image < 1e-9", rb < 1e-9, {{"residual", rb}});

    auto uf = uniform_flow({0.2, 0.1, 0}, 1.0, V0);
    std::vector<double> a{0.8, -0.6, 0};
    auto ac = fluid_transform_apply(FluidTransform::acceleration(a), uf);
    double ra = fluid_residual(ac.theta, ac.rho, V0, sample(d, 200, 4, 0, 1)).max();
    L.check("acceleration image residual > 0.1 |a|", ra > 0.1, {{"residual", ra}, {"bound", 0.1}});

    auto ss2 = self_similar_solution(d, 0.9, 1.0);
    auto uf2 = uniform_flow({0.3, -0.7, 0.2}, 1.0, V0);
    auto gpts = sample(d, 15, 7, 0, 0.8);
    Json zeros = Json::array();
    int scanned = 0;
    for (double alpha : {0.5, 1.0, 2.0})
        for (double beta : {0.0, 0.25, 0.5, 1.0})
            for (double gamma : {-2.0, -1.0, 0.0, 1.0})
                for (double delta : {1.0, 2.0, 3.0, 4.0}) {
                    ++scanned;
                    bool ok = true;
                    for (const auto& f : {ss2, uf2}) {
                        auto img = generalized_expansion(f, 0.7, alpha, beta, gamma, delta);
                        ok = ok && fluid_residual(img.theta, img.rho, V0, gpts).max() < 1e-9;
                    }
                    if (ok) zeros.push_back({alpha, beta, gamma, delta});
                }
    L.check("generalized expansion scan singles out (1, 1/2, -1, d)",
            zeros.size() == 1 && zeros[0] == Json{1.0, 0.5, -1.0, static_cast<double>(d)},
            {{"zeros", zeros}, {"grid", scanned}});

    auto g = polytropic_exponent(kZ2, 3);
    L.check("gamma(z=2, d=3) = 5/3", g == Rational(5, 3), g.str());

    auto Vc = Potential::chaplygin(0.8);
    auto packet = gaussian_packet({0.3, 0.2}, 1.0, 1.0);
    const double lambda = 1.7;
    auto dil = fluid_transform_apply(FluidTransform::time_dilation(lambda), packet);
    Box box{{-3, -3}, {3, 3}};
    double worst = 0;
    for (double t : {0.0, 0.4, 1.1}) {
        auto before = fluid_charges(packet, Vc, lambda * t, box, 2);
        auto after = fluid_charges(dil, Vc, t, box, 2);
        worst = std::max(worst, std::abs(*after.Delta - *before.Delta));
    }
    auto cu = uniform_flow({0.5, -0.25}, 1.5, Vc);
    auto cimg = fluid_transform_apply(FluidTransform::time_dilation(2.5), cu);
    double rc = fluid_residual(cimg.theta, cimg.rho, Vc, sample(2, 20, 8, 0, 1)).max();
    L.check("Chaplygin Delta consistent within 1e-6", worst < 1e-6 && rc < 1e-12,
            {{"pair_gap", worst}, {"dilated_residual", rc}});
    return L.ok;
}

bool c8(Json& out) {
    Ledger L{out};
    auto nc = flat_structure(3);
    auto lib = sourcefree_library();
    bool sourcefree = lib.size() >= 5;
    for (const auto& F : lib) sourcefree = sourcefree && lbll_residual({F, OneForm(3)}, nc).zero();
    L.check("library of >= 5 sourcefree fields", sourcefree, {{"fields", static_cast<int>(lib.size())}});

    auto cm = solve_cmil_flat(3, time_ether(3)).c1;
    int passed = 0;
    for (const auto& X : cm.generators) {
        bool all = true;
        for (const auto& F : lib) all = all && lbll_symmetry_check(X, F, nc).pass;
        passed += all;
    }
    L.check("all cmil(3) generators pass", cm.dim() == 16 && passed == 16, {{"passed", passed}, {"dim", cm.dim()}});

    // a cnc generator whose rotation part is t(x2 d1 − x1 d2), up to the other terms
    auto cnc = solve_cnc_flat(3, 2);
    Json witness;
    for (const auto& X : cnc.basis.generators) {
        Exponent e12(4, 0), e21(4, 0);
        e12[0] = e12[2] = 1;
        e21[0] = e21[1] = 1;
        Rational a = X[1].coefficient(e12);
        if (a.is_zero() || a != -X[2].coefficient(e21)) continue;
        for (std::size_t i = 0; i < lib.size(); ++i) {
            auto s = lbll_symmetry_check(X, lib[i], nc);
            if (!s.pass) {
                int nonzero = 0;
                for (int c = 0; c <= 3; ++c) nonzero += !s.residual.div[c].is_zero();
                witness = {{"generator", to_json(X)}, {"field", static_cast<int>(i)}, {"nonzero_div_components", nonzero}};
                break;
            }
        }
        if (!witness.is_null()) break;
    }
    L.check("cnc t-rotation fail witness", !witness.is_null(), witness);
    return L.ok;
}

struct Criterion {
    const char* title;
    double budget;
    bool (*run)(Json&);
};

const Criterion kTable[kCriteria] = {
    {"dimension table", 10, c1},      {"closure and Jacobi", 30, c2}, {"representations and Levi", 10, c3},
    {"inclusions and z-scan", 0, c4}, {"mechanics drift", 60, c5},   {"photon suite", 30, c6},
    {"fluid suite", 60, c7},          {"LBLL suite", 30, c8},
};

}  // namespace

CriterionResult run_criterion(int id) {
    if (id < 1 || id > kCriteria) throw std::out_of_range("criterion id");
    const Criterion& s = kTable[id - 1];
    CriterionResult r;
    r.id = id;
    r.title = s.title;
    r.budget = s.budget;
    r.details = Json::object();
    auto t0 = std::chrono::steady_clock::now();
    try {
        r.checks_ok = s.run(r.details);
    } catch (const std::exception& e) {
        r.checks_ok = false;
        r.details["exception"] = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = r.checks_ok && (r.budget <= 0 || r.seconds < r.budget);
    return r;
}

std::vector<CriterionResult> run_all(int threads) {
    std::vector<CriterionResult> out(kCriteria);
    std::atomic<int> next{1};
    auto worker = [&] {
        for (int id = next++; id <= kCriteria; id = next++) out[id - 1] = run_criterion(id);
    };
    threads = std::clamp(threads, 1, kCriteria);
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

int thread_cap_from_env() {
    const char* v = std::getenv("NCSYM_THREADS");
    if (!v) return 1;
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || n < 1) return 1;
    long hw = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<int>(std::min(n, hw));
}

Json to_json(const CriterionResult& r, bool timing) {
    Json j = {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"checks_ok", r.checks_ok}, {"details", r.details}};
    if (r.budget > 0) j["budget_seconds"] = r.budget;
    if (timing) j["seconds"] = r.seconds;
    return j;
}

}  // namespace ncsym
