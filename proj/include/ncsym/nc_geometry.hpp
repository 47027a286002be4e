#pragma once

#include "ncsym/lie.hpp"

namespace ncsym {

struct GalileiStructure {
    int dim = 0;
    SymTensor2Up gamma;
    OneForm theta;

    /// gamma^{ab} theta_b == 0 identically.
    bool kernel_condition() const;
};

struct Observer {
    VectorField U;
};

struct NCStructure {
    GalileiStructure base;
    Connection Gamma;
};

/// gamma = spatial identity block, theta = dt, Gamma = 0.
NCStructure flat_structure(int d);

/// theta_a U^a == 1 identically.
bool is_unit(const GalileiStructure& base, const Observer& U);

/// nabla_a gamma^{bc} stored as (a, b, c).
Connection covariant_derivative_gamma(const GalileiStructure& base, const Connection& Gamma);
/// nabla_a theta_b stored as (a, b).
PolyMatrix covariant_derivative_theta(const GalileiStructure& base, const Connection& Gamma);
/// True when nabla gamma = 0 and nabla theta = 0 hold exactly.
bool is_compatible(const GalileiStructure& base, const Connection& Gamma);

/// {}^U gamma_{ab}, solved row by row from {}^U gamma_{ak} gamma^{kb} = delta_a^b - U^b theta_a
/// and {}^U gamma_{ak} U^k = 0 by fraction-free elimination over the polynomial ring.
/// Throws std::domain_error when the solution is not polynomial.
SymTensor2Down observer_metric(const GalileiStructure& base, const Observer& U);

/// Gamma = {}^U Gamma + theta_(a F_b)k gamma^{kc}.
Connection connection_from_observer(const GalileiStructure& base, const Observer& U, const TwoForm& F);

/// (U + gamma(Psi), F + d Phi) with Phi_a = Psi_a - (Psi_b U^b + 1/2 gamma^{bc} Psi_b Psi_c) theta_a.
std::pair<Observer, TwoForm> milne_boost(const GalileiStructure& base, const Observer& U, const TwoForm& F,
                                         const OneForm& Psi);

/// F_{ab} = -2 {}^U gamma_{c[a} nabla_{b]} U^c.
TwoForm coriolis_from_observer(const NCStructure& nc, const Observer& U);

/// Four-term variation of the connection generated by (f, g); with `lightlike` set the
/// reduced form -f' delta^c_(a theta_b) + (f'+g') U^c theta_a theta_b + (f+g) gamma^{ck} theta_(a F_b)k
/// is returned instead. psi only enters through the Milne gauge and drops out of the result.
Connection vary_connection(const GalileiStructure& base, const Observer& U, const TwoForm& F, const Poly& f,
                           const Poly& g, const OneForm& psi, bool lightlike);

/// gamma(Psi)^a = gamma^{ab} Psi_b.
VectorField raise(const SymTensor2Up& gamma, const OneForm& Psi);

}  // namespace ncsym
