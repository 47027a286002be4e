#pragma once

#include "ncsym/tensors.hpp"

#include <optional>
#include <utility>

namespace ncsym {

/// X(f) = X^a d_a f.
Poly apply(const VectorField& X, const Poly& f);

/// [X,Y]^a = X^b d_b Y^a - Y^b d_b X^a.
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

SymTensor2Up lie_derive_gamma(const VectorField& X, const SymTensor2Up& gamma);

/// General one-form Lie derivative X^b d_b A_a + A_b d_a X^b.
OneForm lie_derive_one_form(const VectorField& X, const OneForm& A);

std::pair<SymTensor2Up, OneForm> lie_derive_structure(const VectorField& X, const SymTensor2Up& gamma,
                                                      const OneForm& theta);

/// (f, g) with L_X gamma = f gamma and L_X theta = g theta, when both hold with
/// polynomial factors and g depends on t alone.
std::optional<std::pair<Poly, Poly>> conformal_factors(const VectorField& X, const SymTensor2Up& gamma,
                                                       const OneForm& theta);

/// L_X Gamma^c_{ab} = X^k d_k Gamma^c_{ab} - Gamma^k_{ab} d_k X^c + Gamma^c_{kb} d_a X^k
///                  + Gamma^c_{ak} d_b X^k + d_a d_b X^c.
Connection lie_derive_connection(const VectorField& X, const Connection& Gamma);

/// (L_X F)_{ab} = X^c d_c F_{ab} + F_{cb} d_a X^c + F_{ac} d_b X^c.
TwoForm lie_derive_two_form(const VectorField& X, const TwoForm& F);

/// (dA)_{ab} = d_a A_b - d_b A_a.
TwoForm exterior_derivative(const OneForm& A);

/// (dF)_{abc} = d_a F_{bc} + d_b F_{ca} + d_c F_{ab}.
ThreeTensor exterior_derivative(const TwoForm& F);

/// Field on T*M in coordinates (x^0..x^d, p_0..p_d); polynomials live in a ring of
/// dimension 2d+1, with x^a at variable a and p_a at variable d+1+a.
struct LiftedField {
    int base_dim = 0;
    std::vector<Poly> components;  // 2(d+1) entries: x-part then p-part

    int x_var(int a) const { return a; }
    int p_var(int a) const { return base_dim + 1 + a; }
};

/// X~ = X^a d/dx^a - p_b (dX^b/dx^a) d/dp_a.
LiftedField canonical_lift(const VectorField& X);

/// Lifted field acting as a derivation on cotangent polynomials.
Poly apply(const LiftedField& Z, const Poly& f);

/// gamma^{ab} p_a p_b - k2 on T*M.
Poly mass_shell(const SymTensor2Up& gamma, const Rational& k2);

/// Embeds a spacetime polynomial into the cotangent ring.
Poly to_cotangent(const Poly& p);

}  // namespace ncsym
