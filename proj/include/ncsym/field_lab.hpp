#pragma once

#include "ncsym/nc_geometry.hpp"
#include "ncsym/symmetry.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace ncsym {

// ----- forward-mode dual numbers -----------------------------------------------------------

template <class T>
struct Dual {
    T v{}, d{};
    Dual() = default;
    Dual(double c) : v(c), d(0) {}  // NOLINT: implicit constants are intended
    Dual(T value, T der) : v(value), d(der) {}
};

using D1 = Dual<double>;
using D2 = Dual<D1>;

inline double value(double x) { return x; }
template <class T>
double value(const Dual<T>& x) { return value(x.v); }

template <class T> Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T> Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T> Dual<T> operator+(const Dual<T>& a, double c) { return {a.v + c, a.d}; }
template <class T> Dual<T> operator+(double c, const Dual<T>& a) { return {a.v + c, a.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a, double c) { return {a.v - c, a.d}; }
template <class T> Dual<T> operator-(double c, const Dual<T>& a) { return {c - a.v, -a.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, double c) { return {a.v * c, a.d * c}; }
template <class T> Dual<T> operator*(double c, const Dual<T>& a) { return {a.v * c, a.d * c}; }
template <class T> Dual<T> operator/(const Dual<T>& a, double c) { return {a.v / c, a.d / c}; }
template <class T> Dual<T> operator/(double c, const Dual<T>& a) { return Dual<T>(c) / a; }
template <class T> Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) { return a = a + b; }

template <class T> Dual<T> exp(const Dual<T>& a) {
    using std::exp;
    T e = exp(a.v);
    return {e, a.d * e};
}
template <class T> Dual<T> log(const Dual<T>& a) {
    using std::log;
    return {log(a.v), a.d / a.v};
}
template <class T> Dual<T> pow(const Dual<T>& a, double p) {
    using std::pow;
    return {pow(a.v, p), a.d * (p * pow(a.v, p - 1))};
}
template <class T> Dual<T> sqrt(const Dual<T>& a) { return pow(a, 0.5); }

// ----- scalar fields on (t, x) -------------------------------------------------------------

/// Scalar field of (t, x) evaluable on double, D1 and D2.
class FieldExpr {
public:
    template <class T>
    using Fn = std::function<T(const T&, const std::vector<T>&)>;

    FieldExpr() = default;
    template <class F>
    static FieldExpr make(int d, F f) {
        FieldExpr e;
        e.d_ = d;
        e.f0_ = f;
        e.f1_ = f;
        e.f2_ = f;
        return e;
    }

    int dim() const { return d_; }

    template <class T>
    T operator()(const T& t, const std::vector<T>& x) const {
        if constexpr (std::is_same_v<T, double>) return f0_(t, x);
        else if constexpr (std::is_same_v<T, D1>) return f1_(t, x);
        else return f2_(t, x);
    }

    /// (∂t f, ∂1 f, ..., ∂d f)
    std::vector<double> gradient(double t, const std::vector<double>& x) const;
    /// Σ_A ∂_A ∂_A f
    double laplacian(double t, const std::vector<double>& x) const;
    /// Full second derivative ∂_i ∂_j f, index 0 = t.
    double second(int i, int j, double t, const std::vector<double>& x) const;

private:
    int d_ = 0;
    Fn<double> f0_;
    Fn<D1> f1_;
    Fn<D2> f2_;
};

// ----- fluids ------------------------------------------------------------------------------

struct Potential {
    enum class Kind { Zero, Polytropic, Chaplygin };
    Kind kind = Kind::Zero;
    double c = 0, gamma = 1;

    static Potential zero() { return {}; }
    static Potential polytropic(double c, double gamma) { return {Kind::Polytropic, c, gamma}; }
    static Potential chaplygin(double c) { return {Kind::Chaplygin, c, -1}; }
    double V(double rho) const;
    double dV(double rho) const;
};

struct FluidResidual {
    double continuity = 0;  ///< max |∂tρ + ∇·(ρ∇θ)|
    double bernoulli = 0;   ///< max |∂tθ + ½(∇θ)² + V'(ρ)|
    double max() const { return std::max(continuity, bernoulli); }
};

FluidResidual fluid_residual(const FieldExpr& theta, const FieldExpr& rho, const Potential& V,
                             const std::vector<std::vector<double>>& points);

struct FluidFields {
    FieldExpr theta, rho;
};

enum class TransformKind { Boost, ZDilation, Expansion, Acceleration, TimeDilation };

struct FluidTransform {
    TransformKind kind = TransformKind::Boost;
    std::vector<double> b;  ///< boost velocity
    double lambda = 1;      ///< dilation factor
    double z = 2;           ///< dynamical exponent (finite)
    double kappa = 0;       ///< expansion rate
    std::vector<double> a;  ///< acceleration

    static FluidTransform boost(std::vector<double> b);
    static FluidTransform z_dilation(double lambda, double z);
    static FluidTransform expansion(double kappa);
    static FluidTransform acceleration(std::vector<double> a);
    static FluidTransform time_dilation(double lambda);
};

/// Image fields (θ*, ρ*); domain violations throw std::domain_error at evaluation.
FluidFields fluid_transform_apply(const FluidTransform& T, const FluidFields& f);

/// t* = Ωt, x* = Ω^α x, ρ* = Ω^δ ρ(t*, x*), θ* = θ(t*, x*) − βκΩ^γ |x*|², Ω = 1/(1 − κt).
FluidFields generalized_expansion(const FluidFields& f, double kappa, double alpha, double beta, double gamma,
                                  double delta);

/// θ = |x|²/(2(t+a)), ρ = ρ0 (a/(t+a))^d
FluidFields self_similar_solution(int d, double a, double rho0);
/// ρ = ρ0, θ = b·x − ½|b|²t − V'(ρ0)t
FluidFields uniform_flow(const std::vector<double>& b, double rho0, const Potential& V);
/// ρ = exp(−|x − bt|²/w²) (optionally + floor), θ = b·x − ½|b|²t
FluidFields gaussian_packet(const std::vector<double>& b, double width, double floor = 0);

/// γ = (d+z)/(d+2−z); z = ∞ gives −1.
Rational polytropic_exponent(const DynExponent& z, int d);
struct ZOfGamma {
    std::optional<Rational> z;
    bool chaplygin = false;  ///< γ = −1, only the z = ∞ reading
};
/// z = (γ(d+2) − d)/(γ + 1)
ZOfGamma z_of_gamma(const Rational& gamma, int d);

struct FluidCharges {
    std::vector<double> P, G;
    std::vector<std::vector<double>> J;  ///< J^{AB} = ∫ρ(x^A v^B − x^B v^A)
    double H = 0, K = 0, D = 0, M = 0;
    std::optional<double> Delta;        ///< time-dilation charge, Chaplygin only
    std::vector<double> J3() const;     ///< d = 3 vector view
};

struct Box {
    std::vector<double> lo, hi;
};

/// Tensor-product Gauss-Legendre (order 16 per axis and panel).
FluidCharges fluid_charges(const FluidFields& f, const Potential& V, double t, const Box& box, int panels = 1);

// ----- magnetic-type Galilean electromagnetism ---------------------------------------------

struct EMField {
    TwoForm F;
    OneForm J;
};

/// d = 3: F_A0 = E_A, F_BC = ε_BCA B^A.
TwoForm field_from_EB(const std::vector<Poly>& E, const std::vector<Poly>& B);

/// div F_c = γ^ab ∇_a F_bc
OneForm lbll_divergence(const TwoForm& F, const NCStructure& nc);

struct LbllResidual {
    ThreeTensor dF;
    OneForm div;  ///< div F − J
    bool zero() const { return dF.is_zero() && div.is_zero(); }
};

LbllResidual lbll_residual(const EMField& em, const NCStructure& nc);

struct LbllSymmetry {
    bool pass = false;
    TwoForm LXF;
    LbllResidual residual;
};

/// Re-runs the sourcefree equations on L_X F; throws std::invalid_argument when F is not sourcefree.
LbllSymmetry lbll_symmetry_check(const VectorField& X, const TwoForm& F, const NCStructure& nc);

/// Polynomial sourcefree fields in flat d = 3 spacetime.
std::vector<TwoForm> sourcefree_library();

}  // namespace ncsym
