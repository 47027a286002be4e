#pragma once

#include "ncsym/symmetry.hpp"

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ncsym {

/// Dense square rational matrix.
struct RMatrix {
    int n = 0;
    std::vector<Rational> a;

    RMatrix() = default;
    explicit RMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, Rational(0)) {}
    Rational& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const Rational& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
    bool is_zero() const;
    friend bool operator==(const RMatrix&, const RMatrix&) = default;
};

RMatrix operator*(const RMatrix& x, const RMatrix& y);
RMatrix operator-(const RMatrix& x, const RMatrix& y);
RMatrix operator*(const Rational& c, const RMatrix& x);
RMatrix commutator(const RMatrix& x, const RMatrix& y);

/// X^0 = κt² + 2λt + ε,  X^A = ω^A_B x^B + κt x^A + λx^A + β^A t + γ^A.
struct SchParams {
    RMatrix omega;  ///< d×d, antisymmetric
    std::vector<Rational> beta, gamma;
    Rational kappa, lambda, epsilon;
};

/// X^0 = ½κt² + λt + ε,  X^A = ω^A_B x^B + λx^A + κt x^A − ½α^A t² + β^A t + γ^A.
struct CgaParams {
    RMatrix omega;
    std::vector<Rational> alpha, beta, gamma;
    Rational kappa, lambda, epsilon;
};

SchParams zero_sch_params(int d);
CgaParams zero_cga_params(int d);

/// Block matrix [ω β γ; 0 λ ε; 0 −κ −λ] of size d+2.
RMatrix rep_schrodinger(int d, const SchParams& p);
/// Block matrix [ω −½α β γ; 0 λ 2ε 0; 0 −½κ 0 ε; 0 0 −κ −λ] of size d+3.
RMatrix rep_cga(int d, const CgaParams& p);
/// Same with +½κ in the (1,0) slot of the lower block; not bracket-consistent, kept as a negative control.
RMatrix rep_cga_plus_half_kappa(int d, const CgaParams& p);

VectorField sch_field(int d, const SchParams& p);
VectorField cga_field(int d, const CgaParams& p);
/// Parameters of X when it has the closed form exactly, otherwise empty.
std::optional<SchParams> sch_params(const VectorField& X);
std::optional<CgaParams> cga_params(const VectorField& X);

struct RepReport {
    std::string rep;
    int sign = 0;          ///< [Z_i, Z_j] = sign · Z([X_i, X_j]); 0 when undetermined
    bool faithful = false;
    bool consistent = true;
    std::vector<std::pair<int, int>> mismatches;
    int pairs_checked = 0;
};

using MatrixMap = std::function<std::optional<RMatrix>(const VectorField&)>;

/// Checks linear independence of the images and the bracket correspondence on all pairs.
RepReport check_representation(const std::string& name, const std::vector<VectorField>& basis, const MatrixMap& rep);
RepReport check_sch_rep(const std::vector<VectorField>& basis);
RepReport check_cga_rep(const std::vector<VectorField>& basis);

/// Exact invariants used to recognise a reductive quotient.
struct AlgebraInvariants {
    int dim = 0;
    int center_dim = 0;
    int derived_dim = 0;
    int killing_pos = 0, killing_neg = 0, killing_zero = 0;
    friend bool operator==(const AlgebraInvariants&, const AlgebraInvariants&) = default;
};

AlgebraInvariants invariants(const StructureConstants& sc);
/// Structure constants of so(d) ⊕ sl(2,R) in a matrix basis.
StructureConstants reference_so_sl2(int d);
/// Signature of a symmetric rational matrix by congruence elimination.
std::tuple<int, int, int> inertia(std::vector<std::vector<Rational>> m);

enum class LeviStatus { Ok, NotIdeal, NotAbelian, QuotientMismatch };
std::string levi_status_name(LeviStatus s);

struct LeviReport {
    LeviStatus status = LeviStatus::Ok;
    bool ideal = false, abelian = false, quotient_match = false;
    int i = -1, j = -1;  ///< witness pair for the first failing check
    AlgebraInvariants quotient, reference;
};

/// Radical test for a candidate abelian ideal, then comparison of the quotient with so(d) ⊕ sl(2,R).
LeviReport levi_check(const StructureConstants& sc, const std::vector<int>& radical, int d);

/// Radical indices inside a sch / CGA basis: generators with only β, γ (and α) parameters.
std::vector<int> sch_radical(const std::vector<VectorField>& basis);
std::vector<int> cga_radical(const std::vector<VectorField>& basis);

}  // namespace ncsym
