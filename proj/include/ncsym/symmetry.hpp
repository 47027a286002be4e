#pragma once

#include "ncsym/linear.hpp"
#include "ncsym/nc_geometry.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ncsym {

enum class Family { CGAL, CGAL_Z, SCH_EXPANDED, SCH_Z, GAL, CNC, CMIL, CMIL_Z, ALT };

std::string family_name(Family f);

/// Dynamical exponent: a positive rational or infinity (kept as a flag, never a float).
struct DynExponent {
    bool infinite = false;
    Rational value{1};

    static DynExponent finite(const Rational& z);
    static DynExponent infinity() { return {true, Rational(0)}; }
    /// "p/q", "p" or "inf".
    static DynExponent parse(std::string_view text);
    std::string str() const;
    friend bool operator==(const DynExponent&, const DynExponent&) = default;
};

/// Column bookkeeping for vector fields viewed as coefficient vectors over Q.
/// A column is one (component, monomial) pair.
class FieldIndex {
public:
    explicit FieldIndex(int dim) : dim_(dim) {}
    FieldIndex(int dim, const std::vector<VectorField>& fields);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(keys_.size()); }
    void add(const VectorField& X);
    /// Coefficient vector; columns missing from the index make this throw.
    SparseVec vec(const VectorField& X) const;
    std::optional<SparseVec> try_vec(const VectorField& X) const;
    VectorField field(const SparseVec& v) const;
    const std::pair<int, Exponent>& key(int col) const { return keys_[col]; }
    /// Column permutation used for canonical bases (see canonical_fields).
    std::vector<int> priority_order() const;

private:
    int dim_;
    std::vector<std::pair<int, Exponent>> keys_;
    std::map<std::pair<int, Exponent>, int> col_;
};

/// Reduced echelon basis of span(fields) with pivots chosen in the order
/// rotations, translation-type fields (highest t-power first), quadratic x terms,
/// time components t^k with k >= 2, diagonal dilations, t d_t, d_t.
/// Every generator has a unit pivot, so the output is reproducible byte for byte.
std::vector<VectorField> canonical_fields(const std::vector<VectorField>& fields, int dim);

bool span_contains(const std::vector<VectorField>& span, const VectorField& X);
bool span_contains(const std::vector<VectorField>& span, const std::vector<VectorField>& sub);
bool span_equal(const std::vector<VectorField>& a, const std::vector<VectorField>& b);

/// Residual map; a field solves the system when every returned polynomial vanishes.
using Residual = std::function<std::vector<Poly>(const VectorField&)>;

/// Canonical basis of {X in span(candidates) : r(X) = 0}, assuming r is linear.
std::vector<VectorField> solve_linear(const std::vector<VectorField>& candidates, const Residual& r);

/// Polynomial ansatz: X^0 in t only with degree <= deg_t; X^A of x-degree <= 2 and t-degree <= deg_t.
std::vector<VectorField> ansatz_fields(int d, int deg_t);

/// Conformal factors read off linearly: f = -(2/d) div_x X, g = d_0 X^0.
std::pair<Poly, Poly> linear_factors(const VectorField& X);

/// Residual pieces on the flat structure (all linear in X).
std::vector<Poly> conformal_residual(const VectorField& X);                 ///< L_X gamma - f gamma, L_X theta - g theta
std::vector<Poly> exponent_residual(const VectorField& X, const DynExponent& z);  ///< f + (2/z) g, or f for z = inf
std::vector<Poly> sch_residual(const VectorField& X);                       ///< expanded Schroedinger system
std::vector<Poly> cnc_residual(const VectorField& X);                       ///< flat cnc system without U, F
std::vector<Poly> cmil_raw_residual(const VectorField& X);                  ///< ter-system with the ether left free
/// ter-system with ether U (constant spatial part) and ξ'' = -(c/2) f'.
std::vector<Poly> cmil_branch_residual(const VectorField& X, const VectorField& ether, const Rational& c);
/// d_0 d_0 X^A - (f' + g') U^A for a given ether.
std::vector<Poly> ether_residual(const VectorField& X, const VectorField& ether);
/// L_X Gamma^{abc} = gamma^{ak} gamma^{bl} (L_X Gamma)^c_{kl} on the flat structure.
std::vector<Poly> raised_connection_variation(const VectorField& X);

bool all_zero(const std::vector<Poly>& ps);

struct AlgebraBasis {
    Family family = Family::CGAL;
    int d = 0;
    std::optional<DynExponent> z;
    int deg_t = 0;
    std::vector<VectorField> generators;
    std::vector<std::pair<Poly, Poly>> factors;  ///< (f, g) per generator

    int dim() const { return static_cast<int>(generators.size()); }
};

AlgebraBasis solve_cgal(int d, int deg_t);
AlgebraBasis solve_cgal_z(int d, const DynExponent& z, int deg_t);
/// Solved at t-degree 3, one above what the solution needs, so the bound is not what truncates it.
AlgebraBasis solve_sch_expanded(int d);
AlgebraBasis restrict_sch_z(const AlgebraBasis& expanded, const DynExponent& z);
/// f = g = 0 inside the expanded Schroedinger algebra.
AlgebraBasis restrict_gal(const AlgebraBasis& expanded);

/// Witness (U, F) for one cnc generator, with denominators cleared:
/// U = U_num / den, F = F_num / den^2, den = f + g (or 1 when f + g vanishes).
struct CncWitness {
    VectorField X;
    Poly f, g, den;
    VectorField U_num;
    TwoForm F_num;
    bool adapted = false;           ///< X was shifted by t d_t because f + g vanished
    bool verified = false;          ///< the full bis-system holds and F is closed
    bool coriolis_consistent = false;  ///< F agrees with coriolis_from_observer(U)
};

struct CncResult {
    AlgebraBasis basis;
    std::vector<CncWitness> witnesses;
};

CncResult solve_cnc_flat(int d, int deg_t);
CncWitness cnc_witness(const VectorField& X);
/// Checks the bis-system for X with the witness, after clearing denominators.
bool verify_cnc_witness(const CncWitness& w);

struct ClosureReport {
    bool closed = true;
    int i = -1, j = -1;            ///< offending pair
    VectorField residual;          ///< component of [X_i, X_j] outside the span
};

ClosureReport closure_check(const std::vector<VectorField>& fields);

struct GrowthReport {
    std::vector<VectorField> generators;
    bool stayed_inside = true;     ///< every bracket met the ambient system and degree bound
    int steps = 0;
};

/// Adds brackets to span(seed) until it closes; a bracket failing `inside` stops the growth.
GrowthReport lie_closure(const std::vector<VectorField>& seed, const std::function<bool(const VectorField&)>& inside,
                         int max_dim = 200);

struct CmilResult {
    int raw_dim = 0;               ///< linearized ter-system at t-degree 2, ether free
    std::vector<VectorField> raw;
    AlgebraBasis c1, c2;
    std::vector<VectorField> seed_c1, seed_c2;  ///< ter-system with the given ether, per branch
    /// c = 1 basis in which each generator solves the ter-system for some constant ether.
    std::vector<VectorField> c1_ether_adapted;
    std::vector<VectorField> c1_ethers;
};

/// Closure of the c-branch seed inside the raw space.
GrowthReport cmil_branch_closure(int d, const VectorField& ether, const Rational& c);
CmilResult solve_cmil_flat(int d, const VectorField& ether);
AlgebraBasis restrict_cmil_z(const AlgebraBasis& c1, const DynExponent& z);

/// d_t-type seed Y = ξ d_t + (ξ'/z) x.d_x.
VectorField z_dilation_field(int d, const Poly& xi, const DynExponent& z);
AlgebraBasis alt_subalgebra(int d, int N);
/// Candidate alt span at exponent z: sl2 seeds with z-dilation action, constant rotations,
/// translations of degree <= N.
std::vector<VectorField> alt_candidate(int d, int N, const DynExponent& z);
/// Coefficient of t^{N+1} d_1 in [κ1 K + η1 t^N d_1, κ2 K + η2 t^N d_1], K = ½t² d_t + (t/z) x.d_x.
Rational alt_obstruction(int d, int N, const DynExponent& z, const Rational& k1, const Rational& e1,
                         const Rational& k2, const Rational& e2);

struct StructureConstants {
    int n = 0;
    std::vector<Rational> c;  ///< c^k_{ij} at (i*n + j)*n + k

    const Rational& at(int k, int i, int j) const { return c[(static_cast<std::size_t>(i) * n + j) * n + k]; }
    Rational& at(int k, int i, int j) { return c[(static_cast<std::size_t>(i) * n + j) * n + k]; }
    bool antisymmetric() const;
    bool jacobi() const;
};

struct StructureResult {
    std::optional<StructureConstants> constants;
    ClosureReport failure;
};

StructureResult structure_constants(const std::vector<VectorField>& basis);

/// Dispatcher used by the command line: family names are cgal, cgal-z, sch, sch-expanded,
/// gal, cnc, cmil, cmil-z, cga, alt.
struct SolveRequest {
    std::string family;
    int d = 3;
    std::optional<DynExponent> z;
    int deg_t = 2;
    std::string branch = "c1";
    int N = 1;
};

AlgebraBasis solve(const SolveRequest& req);

}  // namespace ncsym
