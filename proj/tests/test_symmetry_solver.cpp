#include "doctest.h"
#include "support.hpp"

#include "ncsym/symmetry.hpp"

using namespace ncsym;
using testsupport::P;
using testsupport::V;

namespace {

int rotations(int d) { return d * (d - 1) / 2; }

VectorField ether_field(int d) {
    VectorField U(d);
    U[0] = Poly::constant(d, Rational(1));
    return U;
}

// Fields from the closed forms with one unit parameter at a time.
std::vector<VectorField> closed_form_cga(int d) {
    std::vector<VectorField> out;
    for (int A = 1; A <= d; ++A)
        for (int B = A + 1; B <= d; ++B) {
            VectorField R(d);
            R[A] = Poly::variable(d, B);
            R[B] = -Poly::variable(d, A);
            out.push_back(R);
        }
    for (int A = 1; A <= d; ++A) {
        VectorField acc(d), boost(d), shift(d);
        acc[A] = P(d, "-1/2*t^2");
        boost[A] = P(d, "t");
        shift[A] = P(d, "1");
        out.insert(out.end(), {acc, boost, shift});
    }
    VectorField K(d), L(d), E(d);
    K[0] = P(d, "1/2*t^2");
    L[0] = P(d, "t");
    E[0] = P(d, "1");
    for (int A = 1; A <= d; ++A) {
        K[A] = P(d, "t") * Poly::variable(d, A);
        L[A] = Poly::variable(d, A);
    }
    out.insert(out.end(), {K, L, E});
    return out;
}

bool satisfies_sch_connection(const VectorField& X) {
    const int d = X.dim();
    auto nc = flat_structure(d);
    auto [f, g] = linear_factors(X);
    Connection L = lie_derive_connection(X, nc.Gamma);
    Poly half_gp = g.differentiate(0) * Rational(1, 2);
    Connection expect(d);
    for (int c = 0; c <= d; ++c) {
        expect(c, c, 0) += half_gp;
        expect(c, 0, c) += half_gp;
    }
    return L == expect;
}

}  // namespace

TEST_CASE("dynamical exponent parsing") {
    CHECK(DynExponent::parse("inf").infinite);
    CHECK(DynExponent::parse("3/2").value == Rational(3, 2));
    CHECK(DynExponent::parse("2").str() == "2/1");
    CHECK_THROWS_AS(DynExponent::parse("0"), std::invalid_argument);
    CHECK_THROWS_AS(DynExponent::parse("-1"), std::invalid_argument);
    CHECK_THROWS_AS(DynExponent::parse("1.5"), std::invalid_argument);
}

TEST_CASE("cgal dimensions and factors") {
    auto b3 = solve_cgal(3, 0);
    CHECK(b3.dim() == 3 + 3 + 3 + 1 + 1);
    CHECK(solve_cgal(2, 0).dim() == 1 + 2 + 2 + 1 + 1);
    auto b31 = solve_cgal(3, 1);
    CHECK(b31.dim() == 2 * 11);
    for (std::size_t i = 0; i < b31.generators.size(); ++i) {
        CHECK(all_zero(conformal_residual(b31.generators[i])));
        CHECK(b31.factors[i] == linear_factors(b31.generators[i]));
    }
    CHECK_THROWS_AS(solve_cgal(1, 0), std::invalid_argument);
}

TEST_CASE("projection to the time axis is a homomorphism") {
    auto b = solve_cgal(3, 1);
    for (std::size_t i = 0; i < b.generators.size(); i += 3)
        for (std::size_t j = 1; j < b.generators.size(); j += 4) {
            const auto& X = b.generators[i];
            const auto& Y = b.generators[j];
            Poly lhs = lie_bracket(X, Y)[0];
            Poly rhs = X[0] * Y[0].differentiate(0) - Y[0] * X[0].differentiate(0);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("cgal_z") {
    auto z2 = solve_cgal_z(3, DynExponent::finite(Rational(2)), 2);
    CHECK(z2.dim() == 21);
    auto zi = solve_cgal_z(3, DynExponent::infinity(), 2);
    CHECK(zi.dim() == 21);
    for (const auto& fg : zi.factors) CHECK(fg.first.is_zero());
    // z = 1 is q = 2: L_X (gamma x theta x theta) = 0; z = 2 is q = 1: L_X (gamma x theta) = 0
    auto nc = flat_structure(3);
    const auto& gm = nc.base.gamma;
    const auto& th = nc.base.theta;
    auto z1 = solve_cgal_z(3, DynExponent::finite(Rational(1)), 2);
    for (const auto& X : z1.generators) {
        auto [Lg, Lt] = lie_derive_structure(X, gm, th);
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; b <= 3; ++b)
                for (int c = 0; c <= 3; ++c)
                    for (int e = 0; e <= 3; ++e) {
                        Poly v = Lg(a, b) * th[c] * th[e] + gm(a, b) * (Lt[c] * th[e] + th[c] * Lt[e]);
                        CHECK(v.is_zero());
                    }
    }
    for (const auto& X : z2.generators) {
        auto [Lg, Lt] = lie_derive_structure(X, gm, th);
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; b <= 3; ++b)
                for (int c = 0; c <= 3; ++c) CHECK((Lg(a, b) * th[c] + gm(a, b) * Lt[c]).is_zero());
    }
    CHECK_THROWS_AS(DynExponent::finite(Rational(-2)), std::invalid_argument);
}

TEST_CASE("expanded Schroedinger and its restrictions") {
    auto ex = solve_sch_expanded(3);
    CHECK(ex.dim() == 13);
    for (const auto& X : ex.generators) CHECK(satisfies_sch_connection(X));
    auto gal = restrict_gal(ex);
    CHECK(gal.dim() == 10);
    auto s2 = restrict_sch_z(ex, DynExponent::finite(Rational(2)));
    CHECK(s2.dim() == 12);
    auto s3 = restrict_sch_z(ex, DynExponent::finite(Rational(3)));
    CHECK(s3.dim() == 11);
    for (const auto& [f, g] : s3.factors) {
        CHECK(f.is_constant());
        CHECK(f + g * Rational(2, 3) == Poly(3));
    }
    for (const auto& X : s3.generators) CHECK(X[0].degree(0) <= 1);
    auto si = restrict_sch_z(ex, DynExponent::infinity());
    CHECK(si.dim() == 11);
    for (const auto& [f, g] : si.factors) CHECK(f.is_zero());
    CHECK(span_contains(s2.generators, gal.generators));
    CHECK(span_contains(ex.generators, s2.generators));
    CHECK_FALSE(span_contains(s2.generators, ex.generators));

    for (int d : {2, 4}) {
        auto e = solve_sch_expanded(d);
        CHECK(e.dim() == rotations(d) + 2 * d + 4);
        CHECK(restrict_sch_z(e, DynExponent::finite(Rational(2))).dim() == rotations(d) + 2 * d + 3);
        CHECK(restrict_gal(e).dim() == rotations(d) + 2 * d + 1);
    }
}

TEST_CASE("cnc and its witnesses") {
    auto r = solve_cnc_flat(3, 2);
    CHECK(r.basis.dim() == 24);
    REQUIRE(r.witnesses.size() == 24);
    int adapted = 0, consistent = 0;
    std::vector<VectorField> adapted_span;
    for (const auto& w : r.witnesses) {
        CHECK(w.verified);
        CHECK(all_zero(raised_connection_variation(w.X)));
        adapted += w.adapted;
        consistent += w.coriolis_consistent;
        adapted_span.push_back(w.X);
    }
    CHECK(adapted > 0);
    CHECK(consistent > 0);
    CHECK(consistent < 24);
    CHECK(span_equal(adapted_span, r.basis.generators));

    // a time-dependent rotation alone does not admit a witness without the shift
    VectorField rot = V(3, {"0", "t*x2", "-t*x1"});
    CHECK_FALSE(verify_cnc_witness(cnc_witness(rot)));

    for (auto z : {DynExponent::finite(Rational(2)), DynExponent::finite(Rational(1)),
                   DynExponent::finite(Rational(3, 2)), DynExponent::infinity()}) {
        auto cz = solve_linear(r.basis.generators, [&](const VectorField& X) { return exponent_residual(X, z); });
        CHECK(span_equal(cz, solve_cgal_z(3, z, 2).generators));
    }

    auto s2 = restrict_sch_z(solve_sch_expanded(3), DynExponent::finite(Rational(2)));
    CHECK(span_contains(r.basis.generators, s2.generators));
    for (const auto& X : s2.generators) {
        auto [f, g] = linear_factors(X);
        CHECK((f + g).is_zero());
        auto w = cnc_witness(X);
        CHECK(w.verified);
        CHECK(w.F_num.is_zero());
    }
}

TEST_CASE("cmil branches") {
    const int d = 3;
    auto r = solve_cmil_flat(d, ether_field(d));
    CHECK(r.raw_dim == 17);
    CHECK(r.seed_c1.size() == 13);
    CHECK(r.seed_c2.size() == 13);
    CHECK(r.c1.dim() == 16);
    CHECK(r.c2.dim() == 13);
    CHECK(span_equal(r.c2.generators, solve_sch_expanded(d).generators));
    CHECK(span_equal(r.c1.generators, closed_form_cga(d)) == false);
    CHECK(span_contains(r.c1.generators, closed_form_cga(d)));
    CHECK(closure_check(r.c1.generators).closed);

    // raw space is strictly larger than the union of the two branches
    CHECK(span_contains(r.raw, r.c1.generators));
    CHECK(span_contains(r.raw, r.c2.generators));
    VectorField K1 = V(d, {"1/2*t^2", "t*x1", "t*x2", "t*x3"});
    VectorField K2 = V(d, {"t^2", "t*x1", "t*x2", "t*x3"});
    VectorField mix = K1 + K2;
    CHECK(span_contains(r.raw, mix));
    CHECK_FALSE(span_contains(r.c1.generators, mix));
    CHECK_FALSE(span_contains(r.c2.generators, mix));

    // with the given ether only the 13 seed directions solve the ter-system one by one
    int with_given = 0;
    for (const auto& X : r.c1.generators) with_given += all_zero(cmil_branch_residual(X, ether_field(d), Rational(1)));
    CHECK(with_given < 16);
    REQUIRE(r.c1_ether_adapted.size() == 16);
    CHECK(span_equal(r.c1_ether_adapted, r.c1.generators));
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(all_zero(cmil_branch_residual(r.c1_ether_adapted[i], r.c1_ethers[i], Rational(1))));

    VectorField moving = V(d, {"1", "1", "0", "-2"});
    CHECK(solve_cmil_flat(d, moving).c1.dim() == 16);
    CHECK_THROWS_AS(solve_cmil_flat(d, V(d, {"1", "t"})), std::invalid_argument);
}

TEST_CASE("cmil c-scan: only c = 1 and c = 2 close inside the raw space") {
    const int d = 2;
    for (auto c : {Rational(1), Rational(2)}) CHECK(cmil_branch_closure(d, ether_field(d), c).stayed_inside);
    for (auto c : {Rational(0), Rational(1, 2), Rational(3, 2), Rational(3), Rational(-1)})
        CHECK_FALSE(cmil_branch_closure(d, ether_field(d), c).stayed_inside);
}

TEST_CASE("cmil_z restrictions and the CGA") {
    auto r3 = solve_cmil_flat(3, ether_field(3));
    auto cga3 = restrict_cmil_z(r3.c1, DynExponent::finite(Rational(1)));
    CHECK(cga3.dim() == 15);
    CHECK(span_equal(cga3.generators, closed_form_cga(3)));
    auto r2 = solve_cmil_flat(2, ether_field(2));
    auto cga2 = restrict_cmil_z(r2.c1, DynExponent::finite(Rational(1)));
    CHECK(cga2.dim() == 10);
    CHECK(span_equal(cga2.generators, closed_form_cga(2)));

    auto z2 = restrict_cmil_z(r3.c1, DynExponent::finite(Rational(2)));
    CHECK(z2.dim() == 14);
    for (const auto& X : z2.generators) CHECK(X[0].degree(0) <= 1);
    auto zi = restrict_cmil_z(r3.c1, DynExponent::infinity());
    CHECK(zi.dim() == 14);
    for (const auto& [f, g] : zi.factors) CHECK(f.is_zero());
    VectorField acc = V(3, {"0", "t^2"});
    CHECK(span_contains(zi.generators, acc));
}

TEST_CASE("alt subalgebras") {
    for (int d : {2, 3})
        for (int N : {1, 2, 3}) {
            auto a = alt_subalgebra(d, N);
            CHECK(a.dim() == rotations(d) + 3 + (N + 1) * d);
            CHECK(span_equal(a.generators, alt_candidate(d, N, DynExponent::finite(Rational(2, N)))));
        }
    auto sch2 = restrict_sch_z(solve_sch_expanded(2), DynExponent::finite(Rational(2)));
    CHECK(span_equal(alt_subalgebra(2, 1).generators, sch2.generators));
    CHECK(span_equal(alt_subalgebra(2, 2).generators, closed_form_cga(2)));
    CHECK_THROWS_AS(alt_subalgebra(2, 0), std::invalid_argument);
}

TEST_CASE("alt z-scan and obstruction coefficient") {
    std::vector<DynExponent> grid{DynExponent::infinity()};
    for (auto z : {Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1), Rational(3, 2), Rational(2),
                   Rational(3)})
        grid.push_back(DynExponent::finite(z));
    for (int N = 1; N <= 4; ++N)
        for (const auto& z : grid) {
            bool expected = !z.infinite && z.value == Rational(2, N);
            CHECK(closure_check(alt_candidate(2, N, z)).closed == expected);
            Rational k1(3), e1(-2), k2(1, 2), e2(5);
            Rational inv = z.infinite ? Rational(0) : Rational(1) / z.value;
            Rational formula = (Rational(N, 2) - inv) * (k1 * e2 - k2 * e1);
            CHECK(alt_obstruction(2, N, z, k1, e1, k2, e2) == formula);
            CHECK(formula.is_zero() == expected);
        }
}

TEST_CASE("structure constants") {
    const int d = 3;
    auto sch = restrict_sch_z(solve_sch_expanded(d), DynExponent::finite(Rational(2)));
    VectorField H = V(d, {"1"});
    VectorField D = V(d, {"2*t", "x1", "x2", "x3"});
    VectorField K = V(d, {"t^2", "t*x1", "t*x2", "t*x3"});
    std::vector<VectorField> ordered{H, D, K};
    for (const auto& X : sch.generators)
        if (!span_contains(ordered, X)) ordered.push_back(X);
    REQUIRE(ordered.size() == 12);
    auto res = structure_constants(ordered);
    REQUIRE(res.constants);
    const auto& c = *res.constants;
    CHECK(c.at(0, 1, 0) == Rational(-2));
    CHECK(c.at(2, 1, 2) == Rational(2));
    CHECK(c.at(1, 2, 0) == Rational(-1));
    CHECK(c.antisymmetric());
    CHECK(c.jacobi());

    auto ab = structure_constants({V(d, {"0", "1"}), V(d, {"0", "0", "1"})});
    REQUIRE(ab.constants);
    for (const auto& v : ab.constants->c) CHECK(v.is_zero());

    // [-1/2 t^2 d_1, d_t] = t d_1
    auto cga = structure_constants({V(d, {"0", "-1/2*t^2"}), H, V(d, {"0", "t"}), V(d, {"0", "1"})});
    REQUIRE(cga.constants);
    CHECK(cga.constants->at(2, 0, 1) == Rational(1));

    // the pair {t d_t + x.d_x, K} alone closes ([D', K] = K); adding d_t exposes the mismatch
    auto bad = structure_constants({H, V(d, {"t", "x1", "x2", "x3"}), K});
    CHECK_FALSE(bad.constants);
    CHECK_FALSE(bad.failure.closed);
    CHECK_FALSE(bad.failure.residual.is_zero());
    CHECK_THROWS_AS(structure_constants({H, H}), std::invalid_argument);
}

TEST_CASE("closure_check") {
    const int d = 3;
    auto sch = restrict_sch_z(solve_sch_expanded(d), DynExponent::finite(Rational(2)));
    CHECK(closure_check(sch.generators).closed);
    VectorField Dc = V(d, {"t", "x1", "x2", "x3"});
    VectorField Ks = V(d, {"t^2", "t*x1", "t*x2", "t*x3"});
    CHECK(closure_check({Dc, Ks}).closed);
    auto rep = closure_check({V(d, {"1"}), Dc, Ks});
    CHECK_FALSE(rep.closed);
    CHECK(rep.i == 0);
    CHECK(rep.j == 2);
    CHECK_FALSE(rep.residual.is_zero());
    CHECK(closure_check({V(d, {"t^3", "x1*x2"})}).closed);
}

TEST_CASE("canonical output is stable") {
    auto a = solve_cgal_z(2, DynExponent::finite(Rational(2)), 1);
    auto b = solve_cgal_z(2, DynExponent::finite(Rational(2)), 1);
    REQUIRE(a.dim() == b.dim());
    for (int i = 0; i < a.dim(); ++i) CHECK(a.generators[i].str() == b.generators[i].str());
    auto shuffled = a.generators;
    std::reverse(shuffled.begin(), shuffled.end());
    auto canon = canonical_fields(shuffled, 2);
    for (int i = 0; i < a.dim(); ++i) CHECK(canon[i] == a.generators[i]);
}

TEST_CASE("solve dispatcher") {
    SolveRequest req;
    req.family = "sch";
    req.d = 3;
    req.z = DynExponent::finite(Rational(2));
    CHECK(solve(req).dim() == 12);
    req.family = "cga";
    CHECK(solve(req).dim() == 15);
    req.family = "cmil";
    req.branch = "c2";
    CHECK(solve(req).dim() == 13);
    req.family = "nope";
    CHECK_THROWS_AS(solve(req), std::invalid_argument);
    req.family = "cgal-z";
    req.z.reset();
    CHECK_THROWS_AS(solve(req), std::invalid_argument);
}
