#include "doctest.h"
#include "support.hpp"

#include "ncsym/field_lab.hpp"

#include <cmath>
#include <random>

using namespace ncsym;
using testsupport::P;
using testsupport::V;

namespace {

std::vector<std::vector<double>> random_points(int d, int n, unsigned seed, double tlo = 0, double thi = 1,
                                               double xr = 1) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> T(tlo, thi), X(-xr, xr);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n; ++i) {
        std::vector<double> p{T(rng)};
        for (int A = 0; A < d; ++A) p.push_back(X(rng));
        pts.push_back(p);
    }
    return pts;
}

double central(const FieldExpr& f, int i, double t, std::vector<double> x, double h = 1e-5) {
    double tp = t, tm = t;
    auto xp = x, xm = x;
    if (i == 0) {
        tp += h;
        tm -= h;
    } else {
        xp[i - 1] += h;
        xm[i - 1] -= h;
    }
    return (f(tp, xp) - f(tm, xm)) / (2 * h);
}

VectorField ether3() {
    VectorField U(3);
    U[0] = Poly::constant(3, Rational(1));
    return U;
}

}  // namespace

TEST_CASE("dual numbers against central differences") {
    auto f = FieldExpr::make(2, [](const auto& t, const auto& x) {
        using std::exp;
        using std::pow;
        return exp(-x[0] * x[0]) * pow(1.0 + t * t, 1.5) + x[1] / (2.0 + t) - x[0] * x[1] * t;
    });
    std::vector<double> x{0.3, -0.7};
    const double t = 0.4;
    auto g = f.gradient(t, x);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(g[i] - central(f, i, t, x)) < 1e-6);
    double h = 1e-4;
    auto xp = x, xm = x;
    xp[0] += h;
    xm[0] -= h;
    double fd = (f.gradient(t, xp)[1] - f.gradient(t, xm)[1]) / (2 * h);
    CHECK(std::abs(f.second(1, 1, t, x) - fd) < 1e-6);
    double mixed = (f.gradient(t, xp)[0] - f.gradient(t, xm)[0]) / (2 * h);
    CHECK(std::abs(f.second(0, 1, t, x) - mixed) < 1e-6);
    CHECK(std::abs(f.second(1, 0, t, x) - mixed) < 1e-6);
}

TEST_CASE("fluid residuals") {
    const int d = 3;
    auto pts = random_points(d, 50, 1);
    auto uf = uniform_flow({0.5, -1, 2}, 1.3, Potential::zero());
    CHECK(fluid_residual(uf.theta, uf.rho, Potential::zero(), pts).max() < 1e-12);

    auto ss = self_similar_solution(d, 0.8, 2.0);
    CHECK(fluid_residual(ss.theta, ss.rho, Potential::zero(), pts).max() < 1e-10);

    // density exponent d − 1: continuity fails
    auto bad = FieldExpr::make(d, [](const auto& t, const auto&) {
        using std::pow;
        return 2.0 * pow(0.8 / (t + 0.8), static_cast<double>(d - 1));
    });
    auto r = fluid_residual(ss.theta, bad, Potential::zero(), pts);
    CHECK(r.continuity > 1e-2);
    CHECK(r.bernoulli < 1e-10);

    // polytropic uniform flow
    auto pv = Potential::polytropic(0.7, 5.0 / 3);
    auto pf = uniform_flow({1, 0, 0}, 2.0, pv);
    CHECK(fluid_residual(pf.theta, pf.rho, pv, pts).max() < 1e-12);
}

TEST_CASE("boost of a rest fluid") {
    auto rest = uniform_flow({0, 0}, 1.0, Potential::zero());
    std::vector<double> b{0.4, -1.5};
    auto img = fluid_transform_apply(FluidTransform::boost(b), rest);
    auto pts = random_points(2, 30, 2);
    CHECK(fluid_residual(img.theta, img.rho, Potential::zero(), pts).max() < 1e-12);
    for (const auto& p : pts) {
        std::vector<double> x(p.begin() + 1, p.end());
        auto g = img.theta.gradient(p[0], x);
        CHECK(std::abs(g[1] + b[0]) < 1e-12);
        CHECK(std::abs(g[2] + b[1]) < 1e-12);
    }
    CHECK_THROWS_AS(fluid_transform_apply(FluidTransform::boost({1}), rest), std::invalid_argument);
}

TEST_CASE("expansions of the self-similar solution") {
    const int d = 3;
    auto ss = self_similar_solution(d, 0.5, 1.0);
    const double kappa = 0.6;
    auto img = fluid_transform_apply(FluidTransform::expansion(kappa), ss);
    // valid points: 1 − κt > 0
    auto pts = random_points(d, 100, 3, 0, 1.5);
    CHECK(fluid_residual(img.theta, img.rho, Potential::zero(), pts).max() < 1e-9);
    std::vector<double> x{0.1, 0.2, 0.3};
    CHECK_THROWS_AS(img.rho(2.0, x), std::domain_error);
    CHECK_THROWS_AS(img.theta.gradient(1 / kappa, x), std::domain_error);

    // boosts and z-dilations of any z keep the free solution
    auto bimg = fluid_transform_apply(FluidTransform::boost({0.3, 0.1, -0.2}), ss);
    CHECK(fluid_residual(bimg.theta, bimg.rho, Potential::zero(), pts).max() < 1e-9);
    for (double z : {0.5, 1.0, 2.0, 3.0}) {
        auto zimg = fluid_transform_apply(FluidTransform::z_dilation(1.7, z), ss);
        CHECK(fluid_residual(zimg.theta, zimg.rho, Potential::zero(), pts).max() < 1e-9);
    }
    auto timg = fluid_transform_apply(FluidTransform::time_dilation(1.9), ss);
    CHECK(fluid_residual(timg.theta, timg.rho, Potential::zero(), pts).max() < 1e-9);
}

TEST_CASE("accelerations are not symmetries") {
    auto uf = uniform_flow({0.2, 0.1}, 1.0, Potential::zero());
    std::vector<double> a{0.8, -0.6};
    auto img = fluid_transform_apply(FluidTransform::acceleration(a), uf);
    auto pts = random_points(2, 200, 4, 0, 1, 1);
    auto r = fluid_residual(img.theta, img.rho, Potential::zero(), pts);
    CHECK(r.continuity < 1e-12);
    CHECK(r.bernoulli > 0.1 * std::hypot(a[0], a[1]));
}

TEST_CASE("z-dilation group law") {
    auto ss = self_similar_solution(2, 0.7, 1.2);
    const double z = 1.5;
    auto one = fluid_transform_apply(FluidTransform::z_dilation(1.3, z),
                                     fluid_transform_apply(FluidTransform::z_dilation(0.6, z), ss));
    auto both = fluid_transform_apply(FluidTransform::z_dilation(1.3 * 0.6, z), ss);
    for (const auto& p : random_points(2, 20, 5)) {
        std::vector<double> x(p.begin() + 1, p.end());
        CHECK(std::abs(one.theta(p[0], x) - both.theta(p[0], x)) < 1e-12);
        CHECK(std::abs(one.rho(p[0], x) - both.rho(p[0], x)) < 1e-12);
    }
}

TEST_CASE("polytropic exponent") {
    CHECK(polytropic_exponent(DynExponent::finite(Rational(2)), 3) == Rational(5, 3));
    CHECK(polytropic_exponent(DynExponent::finite(Rational(2)), 2) == Rational(2));
    CHECK(polytropic_exponent(DynExponent::infinity(), 3) == Rational(-1));
    CHECK_THROWS_AS(polytropic_exponent(DynExponent::finite(Rational(5)), 3), std::domain_error);
    for (int d : {1, 2, 3, 4})
        for (auto z : {Rational(1), Rational(2), Rational(3, 2), Rational(1, 3), Rational(7, 2)}) {
            auto g = polytropic_exponent(DynExponent::finite(z), d);
            auto back = z_of_gamma(g, d);
            REQUIRE(back.z);
            CHECK(*back.z == z);
        }
    auto ch = z_of_gamma(Rational(-1), 3);
    CHECK(ch.chaplygin);
    CHECK_FALSE(ch.z);

    // only the matching γ keeps the dilated polytropic flow on shell
    const int d = 3;
    auto pts = random_points(d, 20, 6);
    for (auto [z, expect] : {std::pair{2.0, 5.0 / 3}, {1.0, 1.0}, {1.5, 9.0 / 7}}) {
        int hits = 0;
        for (double gamma : {1.0, 9.0 / 7, 4.0 / 3, 5.0 / 3, 2.0, 3.0}) {
            auto V = Potential::polytropic(0.9, gamma);
            auto uf = uniform_flow({0.3, -0.4, 0.2}, 1.4, V);
            auto img = fluid_transform_apply(FluidTransform::z_dilation(1.6, z), uf);
            bool ok = fluid_residual(img.theta, img.rho, V, pts).max() < 1e-10;
            if (ok) {
                ++hits;
                CHECK(gamma == doctest::Approx(expect));
            }
        }
        CHECK(hits == 1);
    }
}

TEST_CASE("generalized expansion scan") {
    const int d = 2;
    auto ss = self_similar_solution(d, 0.9, 1.0);
    auto uf = uniform_flow({0.3, -0.7}, 1.0, Potential::zero());
    auto pts = random_points(d, 15, 7, 0, 0.8);
    std::vector<std::array<double, 4>> zeros;
    for (double alpha : {0.5, 1.0, 2.0})
        for (double beta : {0.0, 0.25, 0.5, 1.0})
            for (double gamma : {-2.0, -1.0, 0.0, 1.0})
                for (double delta : {1.0, 2.0, 3.0}) {
                    bool ok = true;
                    for (const auto& f : {ss, uf}) {
                        auto img = generalized_expansion(f, 0.7, alpha, beta, gamma, delta);
                        if (fluid_residual(img.theta, img.rho, Potential::zero(), pts).max() > 1e-9) ok = false;
                    }
                    if (ok) zeros.push_back({alpha, beta, gamma, delta});
                }
    REQUIRE(zeros.size() == 1);
    CHECK(zeros[0] == std::array<double, 4>{1.0, 0.5, -1.0, 2.0});
}

TEST_CASE("fluid charges") {
    const int d = 3;
    auto V = Potential::polytropic(0.5, 5.0 / 3);
    auto bump = gaussian_packet({0, 0, 0}, 1.0);
    FluidFields still{FieldExpr::make(d, [](const auto& t, const auto&) { return 0.0 * t; }), bump.rho};
    Box box{{-6, -6, -6}, {6, 6, 6}};
    auto c = fluid_charges(still, V, 0.7, box, 3);
    for (double p : c.P) CHECK(std::abs(p) < 1e-12);
    CHECK(c.M == doctest::Approx(std::pow(M_PI, 1.5)).epsilon(1e-8));
    CHECK(c.H == doctest::Approx(0.5 * std::pow(M_PI / (5.0 / 3), 1.5)).epsilon(1e-8));
    CHECK(c.D == doctest::Approx(0.7 * c.H).epsilon(1e-12));
    CHECK_FALSE(c.Delta);

    std::vector<double> b{0.4, -0.2, 0.1};
    auto packet = gaussian_packet(b, 0.9);
    auto c0 = fluid_charges(packet, Potential::zero(), 0, box, 3);
    for (double t : {0.5, 1.0}) {
        auto ct = fluid_charges(packet, Potential::zero(), t, box, 3);
        CHECK(std::abs(ct.M - c0.M) < 1e-6);
        for (int A = 0; A < d; ++A) {
            CHECK(std::abs(ct.P[A] - c0.P[A]) < 1e-6);
            CHECK(std::abs(ct.G[A] - c0.G[A]) < 1e-6);
        }
        CHECK(std::abs(ct.H - c0.H) < 1e-6);
        CHECK(std::abs(ct.D - c0.D) < 1e-6);
        CHECK(std::abs(ct.K - c0.K) < 1e-6);
        auto j = ct.J3();
        auto j0 = c0.J3();
        for (int A = 0; A < 3; ++A) CHECK(std::abs(j[A] - j0[A]) < 1e-6);
    }
    CHECK(c0.P[0] == doctest::Approx(c0.M * b[0]).epsilon(1e-10));
    CHECK_THROWS_AS(fluid_charges(packet, Potential::zero(), 0, Box{{-1}, {1}}), std::invalid_argument);
}

TEST_CASE("Chaplygin time dilation") {
    const int d = 2;
    auto V = Potential::chaplygin(0.8);
    auto uf = uniform_flow({0.5, -0.25}, 1.5, V);
    auto pts = random_points(d, 20, 8);
    CHECK(fluid_residual(uf.theta, uf.rho, V, pts).max() < 1e-12);
    auto img = fluid_transform_apply(FluidTransform::time_dilation(2.5), uf);
    CHECK(fluid_residual(img.theta, img.rho, V, pts).max() < 1e-12);
    // z-dilations break it
    auto zimg = fluid_transform_apply(FluidTransform::z_dilation(2.5, 2), uf);
    CHECK(fluid_residual(zimg.theta, zimg.rho, V, pts).max() > 1e-3);

    // Δ*(t) = Δ(λt) for the dilated pair
    auto packet = gaussian_packet({0.3, 0.2}, 1.0, 1.0);
    const double lambda = 1.7;
    auto dil = fluid_transform_apply(FluidTransform::time_dilation(lambda), packet);
    Box box{{-3, -3}, {3, 3}};
    for (double t : {0.0, 0.4, 1.1}) {
        auto before = fluid_charges(packet, V, lambda * t, box, 2);
        auto after = fluid_charges(dil, V, t, box, 2);
        REQUIRE(before.Delta);
        REQUIRE(after.Delta);
        CHECK(std::abs(*after.Delta - *before.Delta) < 1e-6);
        CHECK(std::abs(after.H - lambda * before.H) < 1e-6);
    }
}

TEST_CASE("LBLL residuals") {
    auto nc = flat_structure(3);
    EMField em{field_from_EB({P(3, "0"), P(3, "0"), P(3, "0")}, {P(3, "0"), P(3, "0"), P(3, "5")}), OneForm(3)};
    CHECK(lbll_residual(em, nc).zero());
    em.F = field_from_EB({P(3, "x2"), P(3, "x1"), P(3, "0")}, {P(3, "1"), P(3, "-1"), P(3, "2")});
    CHECK(lbll_residual(em, nc).zero());
    em.F = field_from_EB({P(3, "0"), P(3, "0"), P(3, "0")}, {P(3, "0"), P(3, "0"), P(3, "3*t")});
    auto r = lbll_residual(em, nc);
    CHECK_FALSE(r.dF.is_zero());
    CHECK(r.div.is_zero());
    // Gauss law with a source: div E = ϱ
    em.F = field_from_EB({P(3, "x1"), P(3, "0"), P(3, "0")}, {P(3, "0"), P(3, "0"), P(3, "0")});
    CHECK_FALSE(lbll_residual(em, nc).zero());
    em.J[0] = P(3, "1");
    CHECK(lbll_residual(em, nc).zero());
    // Ampère without displacement current: curl B = j
    em = {field_from_EB({P(3, "0"), P(3, "0"), P(3, "0")}, {P(3, "0"), P(3, "x1"), P(3, "0")}), OneForm(3)};
    auto amp = lbll_residual(em, nc);
    CHECK(amp.dF.is_zero());
    CHECK(amp.div[0].is_zero());
    CHECK_FALSE(amp.div[3].is_zero());

    for (const auto& F : sourcefree_library()) CHECK(lbll_residual({F, OneForm(3)}, nc).zero());
    CHECK(sourcefree_library().size() >= 5);
}

TEST_CASE("LBLL symmetries: cmil(3) passes, a time-dependent rotation fails") {
    auto nc = flat_structure(3);
    auto lib = sourcefree_library();
    auto cmil = solve_cmil_flat(3, ether3());
    REQUIRE(cmil.c1.dim() == 16);
    for (const auto& X : cmil.c1.generators)
        for (const auto& F : lib) {
            auto s = lbll_symmetry_check(X, F, nc);
            CHECK(s.pass);
        }
    auto sch = restrict_sch_z(solve_sch_expanded(3), DynExponent::finite(Rational(2)));
    for (const auto& X : sch.generators)
        for (const auto& F : lib) CHECK(lbll_symmetry_check(X, F, nc).pass);

    // cnc generators with a t-dependent rotation part
    auto cnc = solve_cnc_flat(3, 2);
    int witnesses = 0;
    for (const auto& X : cnc.basis.generators) {
        Exponent e(4, 0);
        e[0] = 1;
        e[2] = 1;
        Rational a = X[1].coefficient(e);
        e[2] = 0;
        e[1] = 1;
        Rational b = X[2].coefficient(e);
        if (a == -b && !a.is_zero()) {
            bool failed = false;
            for (const auto& F : lib) {
                auto s = lbll_symmetry_check(X, F, nc);
                if (!s.pass) {
                    failed = true;
                    CHECK_FALSE(s.residual.div.is_zero());
                }
            }
            CHECK(failed);
            ++witnesses;
        }
    }
    CHECK(witnesses >= 1);

    // linearity: rescaling F does not change the outcome
    auto X = cmil.c1.generators.front();
    TwoForm F = lib[4];
    F *= Rational(-7, 3);
    CHECK(lbll_symmetry_check(X, F, nc).pass);

    EMField src{field_from_EB({P(3, "x1"), P(3, "0"), P(3, "0")}, {P(3, "0"), P(3, "0"), P(3, "0")}), OneForm(3)};
    CHECK_THROWS_AS(lbll_symmetry_check(X, src.F, nc), std::invalid_argument);
}
