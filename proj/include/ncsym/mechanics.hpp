#pragma once

#include "ncsym/representations.hpp"

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace ncsym {

using Vec = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Increment y(τ+h) − y(τ) of one classical RK4 step.
Vec rk4_increment(const std::function<Vec(double, const Vec&)>& f, double tau, const Vec& y, double h);
/// One classical RK4 step for y' = f(τ, y).
Vec rk4_step(const std::function<Vec(double, const Vec&)>& f, double tau, const Vec& y, double h);

// ----- geodesics --------------------------------------------------------------------------

struct GeodesicTrajectory {
    std::vector<double> tau;
    std::vector<Vec> x;     ///< spacetime point, index 0 = t
    std::vector<Vec> xdot;
    bool timelike = false;  ///< ṫ(0) ≠ 0
    bool tdot_preserved = true;  ///< ṫ bit-identical along the run
};

/// Precompiled polynomial connection for fast double evaluation.
class NumericConnection {
public:
    explicit NumericConnection(const Connection& G);
    int dim() const { return d_; }
    /// Γ^c_ab(x) v^a v^b
    Vec contract(const Vec& x, const Vec& v) const;

private:
    struct Entry {
        int c, a, b;
        std::vector<std::pair<std::vector<int>, double>> terms;
    };
    int d_;
    std::vector<Entry> entries_;
};

/// ẍ^c + Γ^c_ab ẋ^a ẋ^b = 0 (affine gauge), fixed-step RK4.
GeodesicTrajectory integrate_geodesic(const Connection& G, const Vec& x0, const Vec& xdot0, int steps, double h);

// ----- massive spinning particle (d = 3) --------------------------------------------------

struct MassiveState {
    double t = 0;
    Vec3 x = Vec3::Zero(), v = Vec3::Zero(), u = Vec3::UnitZ();
};

struct MassiveCharges {
    Vec3 P, G, J;
    double H = 0, K = 0, D = 0;
};

MassiveCharges massive_charges(const MassiveState& y, double m, double s);
/// Free motion: ṫ = 1, ẋ = v, v̇ = 0, u̇ = 0, integrated with RK4 (compensated summation), u renormalized each step.
std::vector<MassiveState> massive_flow(const MassiveState& y0, int steps, double h);

/// Double-precision copy of the sch parameters.
struct SchNumeric {
    Mat3 omega = Mat3::Zero();
    Vec3 beta = Vec3::Zero(), gamma = Vec3::Zero();
    double kappa = 0, lambda = 0, epsilon = 0;
};
SchNumeric to_numeric(const SchParams& p);
/// ω_A = −½ ε_ABC ω^BC
Vec3 axial(const Mat3& omega);

/// Lifted field on (t, x, v, u) as a 10-vector.
Vec massive_lift(const SchNumeric& p, const MassiveState& y);
/// J·ω − G·β + P·γ − Hε − Kκ + Dλ
double massive_noether(const SchNumeric& p, const MassiveState& y, double m, double s);

// ----- photon (d = 3) ----------------------------------------------------------------------

struct PhotonState {
    double t = 0;
    Vec3 x = Vec3::Zero();
    double E = 0;
    Vec3 u = Vec3::UnitZ();
};

PhotonState photon_flow(const PhotonState& y, double arclength);

/// X = ξ(t)∂t + (ω(t)x + η(t))∂x with polynomial coefficients (index = power of t).
struct PhotonSymmetry {
    std::vector<Mat3> omega;
    std::vector<Vec3> eta;
    std::vector<double> xi;
    bool omega_constant() const;
};

Mat3 eval_omega(const PhotonSymmetry& X, double t, int derivative = 0);
Vec3 eval_eta(const PhotonSymmetry& X, double t, int derivative = 0);
double eval_xi(const PhotonSymmetry& X, double t, int derivative = 0);

/// Canonical lift on (t, x, E, u) as an 8-vector.
Vec photon_lift(const PhotonSymmetry& X, const PhotonState& y, double k);
/// (x × ku + su)·ω + ku·η(t) − ξ(t)E; throws when s ≠ 0 and ω depends on t.
double photon_charges(const PhotonState& y, double k, double s, const PhotonSymmetry& X);

// ----- presymplectic checks ----------------------------------------------------------------

/// A closed two-form on an evolution space with ambient coordinates; the last three
/// coordinates are the spin direction u.
struct PresymplecticModel {
    std::string name;
    int dim = 0;
    std::function<double(const Vec& y, const Vec& a, const Vec& b)> sigma;
    /// Tangent directions at y (coordinate axes, with the u block replaced by two sphere tangents).
    std::vector<Vec> tangent_basis(const Vec& y) const;
};

PresymplecticModel massive_model(double m, double s);
PresymplecticModel photon_model(double k, double s);
Vec pack(const MassiveState& y);
MassiveState unpack_massive(const Vec& y);
Vec pack(const PhotonState& y);
PhotonState unpack_photon(const Vec& y);

struct SymmetryCheck {
    double residual = 0;  ///< max |L_Z σ(a, b)| over tangent pairs
    bool pass = false;
};

/// L_Z σ = d(i_Z σ) by central differences, evaluated at y.
SymmetryCheck presymplectic_symmetry_check(const PresymplecticModel& model, const std::function<Vec(const Vec&)>& Z,
                                           const Vec& y, double tol = 1e-6, double step = 1e-4);

/// max over tangent a of |σ(Z, a) − sign·(−dJ(a))| with sign chosen as +1 when it fits, else −1.
struct NoetherCheck {
    double residual = 0;
    int sign = 0;
};
NoetherCheck noether_check(const PresymplecticModel& model, const std::function<Vec(const Vec&)>& Z,
                           const std::function<double(const Vec&)>& J, const Vec& y, double step = 1e-5);

// ----- Poisson brackets on the space of motions -------------------------------------------

struct PoissonTable {
    std::map<std::string, double> entries;  ///< "{A,B}" -> value
    int spin_sign = 0;                      ///< {J1, J2} = spin_sign · J3
    double max_error = 0;                   ///< worst deviation from the expected table over the sample
    int points = 0;
};

/// Brackets of the charges at random motions (q, p, u), from the inverse of
/// Ω = dp∧dq − (s/2)ε u du du.
PoissonTable poisson_check(double m, double s, int points, unsigned seed);

// ----- Jacobi's inverse-square problem -----------------------------------------------------

struct JacobiSeries {
    std::vector<double> t, E, D, K;
    double max_drift(const std::vector<double>& s) const;
    double min_radius = 0;
};

/// Central potential U = c|x|^k (k = −2: Jacobi; k = 2: harmonic control), RK4 with ẋ = p/m.
JacobiSeries jacobi_charges(double m, double c, int k, const Vec3& x0, const Vec3& p0, int steps, double h,
                            double r_min = 1e-3);

/// Writes one row per sample: tau, state components.
void write_trajectory_csv(std::ostream& os, const GeodesicTrajectory& tr);

}  // namespace ncsym
