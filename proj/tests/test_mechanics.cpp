#include "doctest.h"
#include "support.hpp"

#include "ncsym/mechanics.hpp"

#include <cmath>
#include <random>

using namespace ncsym;
using testsupport::P;

namespace {

Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

Mat3 rot(int A, int B) {
    Mat3 w = Mat3::Zero();
    w(A, B) = 1;
    w(B, A) = -1;
    return w;
}

// Unit-parameter sch(3) generators: 3 rotations, 3 boosts, 3 translations, κ, λ, ε.
std::vector<SchNumeric> sch_unit_params() {
    std::vector<SchNumeric> out;
    for (auto [A, B] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
        SchNumeric p;
        p.omega = rot(A, B);
        out.push_back(p);
    }
    for (int A = 0; A < 3; ++A) {
        SchNumeric b, g;
        b.beta[A] = 1;
        g.gamma[A] = 1;
        out.push_back(b);
        out.push_back(g);
    }
    SchNumeric k, l, e;
    k.kappa = 1;
    l.lambda = 1;
    e.epsilon = 1;
    out.insert(out.end(), {k, l, e});
    return out;
}

MassiveState random_massive(std::mt19937& rng) {
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    MassiveState y;
    y.t = U(rng);
    y.x = Vec3(U(rng), U(rng), U(rng));
    y.v = Vec3(U(rng), U(rng), U(rng));
    y.u = Vec3(U(rng), U(rng), U(rng)).normalized();
    return y;
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

}  // namespace

TEST_CASE("RK4 convergence order on the harmonic oscillator") {
    auto f = [](double, const Vec& y) { return vec({y[1], -y[0]}); };
    auto err = [&](double h) {
        Vec y = vec({1, 0});
        int n = static_cast<int>(std::lround(1.0 / h));
        for (int i = 0; i < n; ++i) y = rk4_step(f, i * h, y, h);
        return std::abs(y[0] - std::cos(1.0));
    };
    double p = std::log2(err(0.1) / err(0.05));
    CHECK(p > 3.7);
    CHECK(p < 4.3);
}

TEST_CASE("geodesics: flat and Newtonian") {
    Connection flat(2);
    auto tr = integrate_geodesic(flat, vec({0, 1, 2}), vec({1, 0.5, -1}), 100, 0.01);
    CHECK(tr.timelike);
    CHECK(tr.tdot_preserved);
    CHECK(std::abs(tr.x.back()[1] - 1.5) < 1e-12);
    CHECK(std::abs(tr.x.back()[2] - 1.0) < 1e-12);

    // V = ½ w² |x|², w = 2
    Connection G(1);
    G(1, 0, 0) = P(1, "4*x1");
    const double w = 2, T = 2 * M_PI / w, h = 1e-3;
    int steps = static_cast<int>(std::lround(T / h));
    double hh = T / steps;
    auto osc = integrate_geodesic(G, vec({0, 1}), vec({1, 0}), steps, hh);
    CHECK(osc.tdot_preserved);
    CHECK(std::abs(osc.x.back()[1] - 1) < 1e-6);
    CHECK(std::abs(osc.xdot.back()[1]) < 1e-6);
    CHECK_THROWS_AS(integrate_geodesic(G, vec({0, 1}), vec({1, 0}), 1, 0), std::invalid_argument);
}

TEST_CASE("lightlike geodesic keeps t fixed") {
    Connection G(3);
    G(1, 0, 0) = P(3, "x1");  // Γ^0_ab = 0
    auto tr = integrate_geodesic(G, vec({2, 0, 0, 0}), vec({0, 1, 0, 0}), 200, 0.01);
    CHECK_FALSE(tr.timelike);
    CHECK(tr.tdot_preserved);
    CHECK(tr.x.back()[0] == 2.0);
    PhotonState y;
    y.t = 2;
    y.u = Vec3::UnitX();
    auto z = photon_flow(y, 2.0);
    CHECK(std::abs(tr.x.back()[1] - z.x[0]) < 1e-12);
}

TEST_CASE("rotating frame: geodesic form against the second-order form") {
    // d = 2, ω^1_2 = t, V = ½ x1² + x2
    Connection G(2);
    G(1, 0, 0) = P(2, "x1 - x2");
    G(2, 0, 0) = P(2, "1 + x1");
    G(1, 2, 0) = P(2, "-t");
    G(1, 0, 2) = P(2, "-t");
    G(2, 1, 0) = P(2, "t");
    G(2, 0, 1) = P(2, "t");
    const double h = 1e-3;
    const int steps = 2000;
    auto geo = integrate_geodesic(G, vec({0, 0.3, -0.2}), vec({1, 0.1, 0.4}), steps, h);
    auto f = [](double t, const Vec& y) {
        Eigen::Matrix2d om, omd;
        om << 0, t, -t, 0;
        omd << 0, 1, -1, 0;
        Eigen::Vector2d x = y.head(2), v = y.tail(2);
        Eigen::Vector2d grad(x[0], 1);
        Vec dy(4);
        dy.head(2) = v;
        dy.tail(2) = -grad + omd * x + 2 * om * v;
        return dy;
    };
    Vec y = vec({0.3, -0.2, 0.1, 0.4});
    double worst = 0;
    for (int s = 0; s < steps; ++s) {
        y = rk4_step(f, s * h, y, h);
        worst = std::max(worst, (y.head(2) - geo.x[s + 1].tail(2)).norm());
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("massive charges") {
    MassiveState rest;
    rest.t = 3;
    rest.x = Vec3(1, 2, -1);
    auto c = massive_charges(rest, 2, 0.5);
    CHECK(c.P.norm() == 0);
    CHECK(c.D == 0);
    CHECK(c.K == doctest::Approx(6));
    CHECK((c.G - 2 * rest.x).norm() == 0);
    CHECK_THROWS_AS(massive_charges(rest, 0, 1), std::invalid_argument);

    MassiveState y0;
    y0.x = Vec3(0.3, -1, 2);
    y0.v = Vec3(0.7, 0.2, -0.4);
    y0.u = Vec3(1, 1, 0).normalized();
    auto flow = massive_flow(y0, 10000, 1e-3);
    CHECK(std::abs(flow.back().t - 10) < 1e-9);
    auto c0 = massive_charges(y0, 1.5, 0.7);
    double drift = 0;
    for (const auto& y : flow) {
        auto ci = massive_charges(y, 1.5, 0.7);
        drift = std::max({drift, (ci.P - c0.P).norm(), (ci.G - c0.G).norm(), (ci.J - c0.J).norm(),
                          std::abs(ci.H - c0.H), std::abs(ci.K - c0.K), std::abs(ci.D - c0.D)});
        CHECK(std::abs(y.u.norm() - 1) < 1e-12);
    }
    CHECK(drift < 1e-12);
    CHECK((flow.back().u - y0.u).norm() < 1e-15);
}

TEST_CASE("massive lift examples") {
    MassiveState y;
    y.t = 0.5;
    y.x = Vec3(1, 0, 2);
    y.v = Vec3(0, 1, 1);
    SchNumeric H;
    H.epsilon = 1;
    CHECK((massive_lift(H, y) - Vec::Unit(10, 0)).norm() == 0);
    CHECK(massive_noether(H, y, 2, 1) == doctest::Approx(-massive_charges(y, 2, 1).H));

    SchNumeric B;
    B.beta = Vec3(1, -2, 0);
    Vec Z = massive_lift(B, y);
    CHECK((Z.segment(4, 3) - B.beta).norm() == 0);
    CHECK(massive_noether(B, y, 2, 1) == doctest::Approx(-massive_charges(y, 2, 1).G.dot(B.beta)));

    SchNumeric K;
    K.kappa = 1;
    Z = massive_lift(K, y);
    CHECK((Z.segment(4, 3) - (y.x - y.v * y.t)).norm() < 1e-15);
    CHECK(massive_noether(K, y, 2, 1) == doctest::Approx(-massive_charges(y, 2, 1).K));
}

TEST_CASE("massive Noether relation and presymplectic invariance") {
    std::mt19937 rng(7);
    const double m = 1.3, s = 0.6;
    auto model = massive_model(m, s);
    int sign = 0;
    double worst_noether = 0, worst_sym = 0;
    for (int n = 0; n < 50; ++n) {
        Vec y = pack(random_massive(rng));
        for (const auto& p : sch_unit_params()) {
            auto Z = [&](const Vec& q) { return massive_lift(p, unpack_massive(q)); };
            auto J = [&](const Vec& q) { return massive_noether(p, unpack_massive(q), m, s); };
            auto nc = noether_check(model, Z, J, y);
            worst_noether = std::max(worst_noether, nc.residual);
            if (sign == 0) sign = nc.sign;
            CHECK(nc.sign == sign);
            if (n < 10) worst_sym = std::max(worst_sym, presymplectic_symmetry_check(model, Z, y).residual);
        }
    }
    CHECK(sign == 1);
    CHECK(worst_noether < 1e-6);
    CHECK(worst_sym < 1e-6);

    // a CGA acceleration is not a symmetry of the massive model
    auto acc = [](const Vec& q) {
        Vec Z = Vec::Zero(10);
        Z.segment(1, 3) = Vec3(q[0] * q[0], 0, 0);
        Z.segment(4, 3) = Vec3(2 * q[0], 0, 0);
        return Z;
    };
    Vec y = pack(random_massive(rng));
    CHECK(presymplectic_symmetry_check(model, acc, y).residual > 0.1);
}

TEST_CASE("Poisson brackets on the space of motions") {
    auto tab = poisson_check(2.5, 0.5, 20, 11);
    CHECK(tab.points == 20);
    CHECK(tab.max_error < 1e-9);
    CHECK(tab.entries.at("{P1,G1}") == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(std::abs(tab.entries.at("{P1,G2}")) < 1e-9);
    CHECK(tab.spin_sign != 0);
    CHECK_THROWS_AS(poisson_check(0, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("photon flow and charges") {
    PhotonState y;
    y.t = 1.25;
    y.u = Vec3::UnitX();
    auto z = photon_flow(y, 2);
    CHECK((z.x - Vec3(2, 0, 0)).norm() == 0);
    CHECK(z.t == y.t);
    auto same = photon_flow(y, 0);
    CHECK((same.x - y.x).norm() == 0);
    PhotonState bad = y;
    bad.u = Vec3(1, 1, 0);
    CHECK_THROWS_AS(photon_flow(bad, 1), std::invalid_argument);

    PhotonSymmetry boost;
    boost.eta = {Vec3::Zero(), Vec3(1, 2, -1)};
    const double k = 3;
    PhotonState p;
    p.t = 0.7;
    p.u = Vec3(0, 0.6, 0.8);
    p.x = Vec3(1, 1, 1);
    // G = −Pt paired with β: the charge is k u·β t, constant on the instantaneous motion
    double g0 = photon_charges(p, k, 0.5, boost);
    CHECK(g0 == doctest::Approx(k * p.u.dot(Vec3(1, 2, -1)) * p.t));

    PhotonSymmetry gen;
    gen.omega = {rot(0, 1)};
    gen.eta = {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
    gen.xi = {0.5, -1, 2, 0.25};
    double J0 = photon_charges(p, k, 0, gen);
    double drift = 0;
    PhotonState q = p;
    for (int i = 0; i < 1000; ++i) {
        q = photon_flow(q, 1e-3);
        drift = std::max(drift, std::abs(photon_charges(q, k, 0, gen) - J0));
    }
    CHECK(drift < 1e-12);

    PhotonSymmetry spinning = gen;
    spinning.omega.push_back(rot(1, 2));
    CHECK_NOTHROW(photon_charges(p, k, 0, spinning));
    CHECK_THROWS_AS(photon_charges(p, k, 0.5, spinning), std::invalid_argument);
}

TEST_CASE("photon presymplectic checks") {
    std::mt19937 rng(3);
    const double k = 1.7, s = 0.8;
    PhotonSymmetry X;
    X.omega = {rot(0, 2)};
    X.eta = {Vec3(1, -1, 0), Vec3(0.5, 0, 2), Vec3(0, 1, 0)};
    X.xi = {1, 0.5, -0.3};
    auto model = photon_model(k, s);
    auto Z = [&](const Vec& y) { return photon_lift(X, unpack_photon(y), k); };
    auto J = [&](const Vec& y) { return photon_charges(unpack_photon(y), k, s, X); };
    for (int n = 0; n < 20; ++n) {
        Vec y = pack(random_photon(rng));
        CHECK(presymplectic_symmetry_check(model, Z, y).pass);
        auto nc = noether_check(model, Z, J, y);
        CHECK(nc.residual < 1e-6);
        CHECK(nc.sign == 1);
    }

    PhotonSymmetry W;
    W.omega = {Mat3::Zero(), rot(0, 1)};
    const double wdot = axial(rot(0, 1)).norm();
    auto ZW = [&](const Vec& y) { return photon_lift(W, unpack_photon(y), k); };
    double best = 0;
    for (int n = 0; n < 20; ++n) best = std::max(best, presymplectic_symmetry_check(model, ZW, pack(random_photon(rng))).residual);
    CHECK(best > 0.1 * s * wdot);
    // spinless: time-dependent rotations are fine
    auto fermat = photon_model(k, 0);
    for (int n = 0; n < 5; ++n) CHECK(presymplectic_symmetry_check(fermat, ZW, pack(random_photon(rng))).pass);
}

TEST_CASE("Jacobi inverse-square charges") {
    // circular speed for U = c/r², c < 0: v² = 2|c|/(m r²)
    const double m = 1, c = -0.5;
    auto js = jacobi_charges(m, c, -2, Vec3(1, 0, 0), Vec3(0, 1, 0), 10000, 1e-3);
    CHECK(js.min_radius >= 0.5);
    CHECK(js.max_drift(js.D) < 1e-6);
    CHECK(js.max_drift(js.K) < 1e-6);
    CHECK(js.max_drift(js.E) < 1e-6);

    // eccentric repulsive orbit
    auto rep = jacobi_charges(2, 0.3, -2, Vec3(1, 0.5, 0), Vec3(-0.2, 0.4, 0.1), 10000, 1e-3);
    CHECK(rep.max_drift(rep.D) < 1e-6);
    CHECK(rep.max_drift(rep.K) < 1e-6);

    // free case: D = p·x − 2Et = p·x0
    auto fr = jacobi_charges(1, 0, -2, Vec3(1, 2, 0), Vec3(0.5, -1, 0.25), 1000, 1e-2);
    CHECK(std::abs(fr.D.back() - Vec3(0.5, -1, 0.25).dot(Vec3(1, 2, 0))) < 1e-10);

    auto harm = jacobi_charges(1, 0.5, 2, Vec3(1, 0, 0), Vec3(0, 0.3, 0), 10000, 1e-3);
    CHECK(harm.max_drift(harm.D) > 1e-2);

    CHECK_THROWS_AS(jacobi_charges(1, -2, -2, Vec3(0.1, 0, 0), Vec3(0, 0, 0), 10000, 1e-3, 0.05),
                    std::runtime_error);
}
