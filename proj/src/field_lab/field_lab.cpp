#include "ncsym/field_lab.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace ncsym {

std::vector<double> FieldExpr::gradient(double t, const std::vector<double>& x) const {
    std::vector<double> g(d_ + 1);
    for (int i = 0; i <= d_; ++i) {
        D1 tt(t, i == 0 ? 1.0 : 0.0);
        std::vector<D1> xx(d_);
        for (int A = 0; A < d_; ++A) xx[A] = D1(x[A], i == A + 1 ? 1.0 : 0.0);
        g[i] = f1_(tt, xx).d;
    }
    return g;
}

double FieldExpr::second(int i, int j, double t, const std::vector<double>& x) const {
    auto seed = [&](int k, double v) { return D2(D1(v, k == i ? 1.0 : 0.0), D1(k == j ? 1.0 : 0.0, 0.0)); };
    D2 tt = seed(0, t);
    std::vector<D2> xx(d_);
    for (int A = 0; A < d_; ++A) xx[A] = seed(A + 1, x[A]);
    return f2_(tt, xx).d.d;
}

double FieldExpr::laplacian(double t, const std::vector<double>& x) const {
    double s = 0;
    for (int A = 1; A <= d_; ++A) s += second(A, A, t, x);
    return s;
}

double Potential::V(double rho) const {
    switch (kind) {
        case Kind::Zero: return 0;
        case Kind::Polytropic: return c * std::pow(rho, gamma);
        case Kind::Chaplygin: return c / rho;
    }
    return 0;
}

double Potential::dV(double rho) const {
    switch (kind) {
        case Kind::Zero: return 0;
        case Kind::Polytropic: return c * gamma * std::pow(rho, gamma - 1);
        case Kind::Chaplygin: return -c / (rho * rho);
    }
    return 0;
}

FluidResidual fluid_residual(const FieldExpr& theta, const FieldExpr& rho, const Potential& V,
                             const std::vector<std::vector<double>>& points) {
    const int d = theta.dim();
    if (rho.dim() != d) throw std::invalid_argument("fluid_residual: dimension mismatch");
    FluidResidual r;
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != d + 1) throw std::invalid_argument("fluid_residual: point has wrong size");
        const double t = p[0];
        std::vector<double> x(p.begin() + 1, p.end());
        auto gt = theta.gradient(t, x);
        auto gr = rho.gradient(t, x);
        double rv = rho(t, x);
        double cont = gr[0] + rv * theta.laplacian(t, x);
        double v2 = 0;
        for (int A = 1; A <= d; ++A) {
            cont += gr[A] * gt[A];
            v2 += gt[A] * gt[A];
        }
        double bern = gt[0] + 0.5 * v2 + V.dV(rv);
        if (!std::isfinite(cont) || !std::isfinite(bern)) throw std::domain_error("fluid_residual: non-finite value");
        r.continuity = std::max(r.continuity, std::abs(cont));
        r.bernoulli = std::max(r.bernoulli, std::abs(bern));
    }
    return r;
}

FluidTransform FluidTransform::boost(std::vector<double> b) {
    FluidTransform T;
    T.kind = TransformKind::Boost;
    T.b = std::move(b);
    return T;
}

FluidTransform FluidTransform::z_dilation(double lambda, double z) {
    if (!(lambda > 0)) throw std::invalid_argument("z_dilation: lambda must be positive");
    FluidTransform T;
    T.kind = TransformKind::ZDilation;
    T.lambda = lambda;
    T.z = z;
    return T;
}

FluidTransform FluidTransform::expansion(double kappa) {
    FluidTransform T;
    T.kind = TransformKind::Expansion;
    T.kappa = kappa;
    return T;
}

FluidTransform FluidTransform::acceleration(std::vector<double> a) {
    FluidTransform T;
    T.kind = TransformKind::Acceleration;
    T.a = std::move(a);
    return T;
}

FluidTransform FluidTransform::time_dilation(double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("time_dilation: lambda must be positive");
    FluidTransform T;
    T.kind = TransformKind::TimeDilation;
    T.lambda = lambda;
    return T;
}

namespace {

template <class T>
T dot(const std::vector<double>& a, const std::vector<T>& x) {
    T s(0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s = s + a[i] * x[i];
    return s;
}

template <class T>
T norm2(const std::vector<T>& x) {
    T s(0.0);
    for (const auto& v : x) s = s + v * v;
    return s;
}

double norm2(const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return s;
}

void check_size(const std::vector<double>& v, int d, const char* what) {
    if (static_cast<int>(v.size()) != d) throw std::invalid_argument(std::string(what) + ": parameter has wrong length");
}

template <class T>
void check_expansion_domain(const T& t, double kappa) {
    if (!(1 - kappa * value(t) > 0)) throw std::domain_error("expansion: 1 - kappa t must be positive");
}

}  // namespace

FluidFields fluid_transform_apply(const FluidTransform& T, const FluidFields& f) {
    const int d = f.theta.dim();
    const FieldExpr th = f.theta, rh = f.rho;
    switch (T.kind) {
        case TransformKind::Boost: {
            check_size(T.b, d, "boost");
            const auto b = T.b;
            const double b2 = norm2(b);
            auto shift = [b](const auto& t, auto x) {
                for (std::size_t A = 0; A < x.size(); ++A) x[A] = x[A] + b[A] * t;
                return x;
            };
            return {FieldExpr::make(d, [=](const auto& t, const auto& x) { return th(t, shift(t, x)) - dot(b, x) - 0.5 * b2 * t; }),
                    FieldExpr::make(d, [=](const auto& t, const auto& x) { return rh(t, shift(t, x)); })};
        }
        case TransformKind::ZDilation: {
            const double l = T.lambda, z = T.z;
            const double lz = std::pow(l, z), sth = std::pow(l, z - 2), srh = std::pow(l, d - z + 2);
            auto scale = [l](auto x) {
                for (auto& v : x) v = v * l;
                return x;
            };
            return {FieldExpr::make(d, [=](const auto& t, const auto& x) { return sth * th(lz * t, scale(x)); }),
                    FieldExpr::make(d, [=](const auto& t, const auto& x) { return srh * rh(lz * t, scale(x)); })};
        }
        case TransformKind::Expansion: {
            const double k = T.kappa;
            auto star = [k](const auto& t, auto x) {
                check_expansion_domain(t, k);
                auto om = 1.0 / (1.0 - k * t);
                for (auto& v : x) v = v * om;
                return std::pair(t * om, x);
            };
            return {FieldExpr::make(d,
                                    [=](const auto& t, const auto& x) {
                                        auto [ts, xs] = star(t, x);
                                        return th(ts, xs) - k * norm2(x) / (2.0 * (1.0 - k * t));
                                    }),
                    FieldExpr::make(d, [=](const auto& t, const auto& x) {
                        using std::pow;
                        auto [ts, xs] = star(t, x);
                        return pow(1.0 - k * t, -static_cast<double>(d)) * rh(ts, xs);
                    })};
        }
        case TransformKind::Acceleration: {
            check_size(T.a, d, "acceleration");
            const auto a = T.a;
            auto xstar = [a](const auto& t, auto x) {
                for (std::size_t A = 0; A < x.size(); ++A) x[A] = x[A] - 0.5 * a[A] * t * t;
                return x;
            };
            return {FieldExpr::make(d,
                                    [=](const auto& t, const auto& x) {
                                        auto xs = xstar(t, x);
                                        return th(t, xs) + dot(a, xs) * t;
                                    }),
                    FieldExpr::make(d, [=](const auto& t, const auto& x) { return rh(t, xstar(t, x)); })};
        }
        case TransformKind::TimeDilation: {
            const double l = T.lambda;
            return {FieldExpr::make(d, [=](const auto& t, const auto& x) { return l * th(l * t, x); }),
                    FieldExpr::make(d, [=](const auto& t, const auto& x) { return rh(l * t, x) / l; })};
        }
    }
    throw std::logic_error("unknown transform");
}

FluidFields generalized_expansion(const FluidFields& f, double kappa, double alpha, double beta, double gamma,
                                  double delta) {
    const int d = f.theta.dim();
    const FieldExpr th = f.theta, rh = f.rho;
    auto star = [=](const auto& t, auto x) {
        using std::pow;
        check_expansion_domain(t, kappa);
        auto om = 1.0 / (1.0 - kappa * t);
        auto oa = pow(om, alpha);
        for (auto& v : x) v = v * oa;
        return std::tuple(om, t * om, x);
    };
    return {FieldExpr::make(d,
                            [=](const auto& t, const auto& x) {
                                using std::pow;
                                auto [om, ts, xs] = star(t, x);
                                return th(ts, xs) - beta * kappa * pow(om, gamma) * norm2(xs);
                            }),
            FieldExpr::make(d, [=](const auto& t, const auto& x) {
                using std::pow;
                auto [om, ts, xs] = star(t, x);
                return pow(om, delta) * rh(ts, xs);
            })};
}

FluidFields self_similar_solution(int d, double a, double rho0) {
    if (!(a > 0)) throw std::invalid_argument("self_similar_solution: a must be positive");
    return {FieldExpr::make(d, [a](const auto& t, const auto& x) { return norm2(x) / (2.0 * (t + a)); }),
            FieldExpr::make(d, [a, rho0, d](const auto& t, const auto&) {
                using std::pow;
                return rho0 * pow(a / (t + a), static_cast<double>(d));
            })};
}

FluidFields uniform_flow(const std::vector<double>& b, double rho0, const Potential& V) {
    const int d = static_cast<int>(b.size());
    const double c = 0.5 * norm2(b) + V.dV(rho0);
    return {FieldExpr::make(d, [b, c](const auto& t, const auto& x) { return dot(b, x) - c * t; }),
            FieldExpr::make(d, [rho0](const auto& t, const auto&) { return rho0 + 0.0 * t; })};
}

FluidFields gaussian_packet(const std::vector<double>& b, double width, double floor) {
    const int d = static_cast<int>(b.size());
    const double h = 0.5 * norm2(b);
    return {FieldExpr::make(d, [b, h](const auto& t, const auto& x) { return dot(b, x) - h * t; }),
            FieldExpr::make(d, [b, width, floor](const auto& t, const auto& x) {
                using std::exp;
                auto y = x;
                for (std::size_t A = 0; A < y.size(); ++A) y[A] = y[A] - b[A] * t;
                return floor + exp(-norm2(y) / (width * width));
            })};
}

Rational polytropic_exponent(const DynExponent& z, int d) {
    if (z.infinite) return Rational(-1);
    Rational den = Rational(d + 2) - z.value;
    if (den.is_zero()) throw std::domain_error("polytropic_exponent: z = d + 2 is a pole");
    return (Rational(d) + z.value) / den;
}

ZOfGamma z_of_gamma(const Rational& gamma, int d) {
    ZOfGamma r;
    if (gamma == Rational(-1)) {
        r.chaplygin = true;
        return r;
    }
    r.z = (gamma * Rational(d + 2) - Rational(d)) / (gamma + Rational(1));
    return r;
}

std::vector<double> FluidCharges::J3() const {
    if (J.size() != 3) throw std::logic_error("J3 needs d = 3");
    return {J[1][2], J[2][0], J[0][1]};
}

FluidCharges fluid_charges(const FluidFields& f, const Potential& V, double t, const Box& box, int panels) {
    const int d = f.theta.dim();
    if (static_cast<int>(box.lo.size()) != d || static_cast<int>(box.hi.size()) != d)
        throw std::invalid_argument("fluid_charges: box dimension mismatch");
    if (panels < 1) throw std::invalid_argument("fluid_charges: panels must be positive");
    using GL = boost::math::quadrature::gauss<double, 16>;
    std::vector<double> ref_x, ref_w;
    for (std::size_t i = 0; i < GL::abscissa().size(); ++i) {
        double x = GL::abscissa()[i], w = GL::weights()[i];
        ref_x.push_back(x);
        ref_w.push_back(w);
        if (x != 0) {
            ref_x.push_back(-x);
            ref_w.push_back(w);
        }
    }
    std::vector<std::vector<double>> nodes(d), weights(d);
    for (int A = 0; A < d; ++A) {
        double len = (box.hi[A] - box.lo[A]) / panels;
        for (int p = 0; p < panels; ++p) {
            double mid = box.lo[A] + (p + 0.5) * len;
            for (std::size_t i = 0; i < ref_x.size(); ++i) {
                nodes[A].push_back(mid + 0.5 * len * ref_x[i]);
                weights[A].push_back(0.5 * len * ref_w[i]);
            }
        }
    }
    FluidCharges c;
    c.P.assign(d, 0);
    c.G.assign(d, 0);
    c.J.assign(d, std::vector<double>(d, 0));
    double xv = 0, rx2 = 0, rtheta = 0;
    std::vector<std::size_t> idx(d, 0);
    const std::size_t n = nodes[0].size();
    std::vector<double> x(d);
    while (true) {
        double w = 1;
        for (int A = 0; A < d; ++A) {
            x[A] = nodes[A][idx[A]];
            w *= weights[A][idx[A]];
        }
        double r = f.rho(t, x), th = f.theta(t, x);
        auto g = f.theta.gradient(t, x);
        double v2 = 0;
        for (int A = 0; A < d; ++A) v2 += g[A + 1] * g[A + 1];
        double pot = V.V(r);
        if (!std::isfinite(r) || !std::isfinite(th) || !std::isfinite(v2) || !std::isfinite(pot))
            throw std::domain_error("fluid_charges: non-finite integrand");
        c.M += w * r;
        c.H += w * (0.5 * r * v2 + pot);
        for (int A = 0; A < d; ++A) {
            c.P[A] += w * r * g[A + 1];
            c.G[A] += w * r * (x[A] - g[A + 1] * t);
            xv += w * r * x[A] * g[A + 1];
            rx2 += w * r * x[A] * x[A];
            for (int B = 0; B < d; ++B) c.J[A][B] += w * r * (x[A] * g[B + 1] - x[B] * g[A + 1]);
        }
        rtheta += w * r * th;
        int A = 0;
        while (A < d && ++idx[A] == n) idx[A++] = 0;
        if (A == d) break;
    }
    c.D = t * c.H - 0.5 * xv;
    c.K = -t * t * c.H + 2 * t * c.D + 0.5 * rx2;
    if (V.kind == Potential::Kind::Chaplygin) c.Delta = t * c.H - rtheta;
    return c;
}

TwoForm field_from_EB(const std::vector<Poly>& E, const std::vector<Poly>& B) {
    if (E.size() != 3 || B.size() != 3) throw std::invalid_argument("field_from_EB: need three components each");
    TwoForm F(3);
    for (int A = 1; A <= 3; ++A) F.set(A, 0, E[A - 1]);
    F.set(1, 2, B[2]);
    F.set(2, 3, B[0]);
    F.set(3, 1, B[1]);
    return F;
}

OneForm lbll_divergence(const TwoForm& F, const NCStructure& nc) {
    const int d = F.dim();
    require_same_dim(d, nc.base.dim, "lbll_divergence");
    OneForm div(d);
    for (int c = 0; c <= d; ++c) {
        Poly acc(d);
        for (int a = 0; a <= d; ++a)
            for (int b = 0; b <= d; ++b) {
                const Poly& g = nc.base.gamma(a, b);
                if (g.is_zero()) continue;
                Poly nab = F(b, c).differentiate(a);
                for (int k = 0; k <= d; ++k) {
                    if (!nc.Gamma(k, a, b).is_zero()) nab -= nc.Gamma(k, a, b) * F(k, c);
                    if (!nc.Gamma(k, a, c).is_zero()) nab -= nc.Gamma(k, a, c) * F(b, k);
                }
                acc += g * nab;
            }
        div[c] = acc;
    }
    return div;
}

LbllResidual lbll_residual(const EMField& em, const NCStructure& nc) {
    LbllResidual r;
    r.dF = exterior_derivative(em.F);
    OneForm div = lbll_divergence(em.F, nc);
    for (int c = 0; c <= em.F.dim(); ++c) div[c] -= em.J[c];
    r.div = div;
    return r;
}

LbllSymmetry lbll_symmetry_check(const VectorField& X, const TwoForm& F, const NCStructure& nc) {
    EMField em{F, OneForm(F.dim())};
    if (!lbll_residual(em, nc).zero()) throw std::invalid_argument("lbll_symmetry_check: field is not sourcefree");
    LbllSymmetry s;
    s.LXF = lie_derive_two_form(X, F);
    s.residual = lbll_residual({s.LXF, OneForm(F.dim())}, nc);
    s.pass = s.residual.zero();
    return s;
}

std::vector<TwoForm> sourcefree_library() {
    auto P = [](const char* s) { return Poly::parse(3, s); };
    std::vector<TwoForm> out;
    out.push_back(field_from_EB({P("0"), P("0"), P("0")}, {P("0"), P("0"), P("1")}));
    out.push_back(field_from_EB({P("x2"), P("x1"), P("0")}, {P("1"), P("2"), P("3")}));
    out.push_back(field_from_EB({P("2*x1"), P("-2*x2"), P("0")}, {P("x2"), P("x1"), P("0")}));
    out.push_back(field_from_EB({P("1/2*x2"), P("-1/2*x1"), P("0")}, {P("0"), P("0"), P("t")}));
    out.push_back(field_from_EB({P("0"), P("0"), P("1/2*x1^2 - 1/2*x2^2")}, {P("t*x2"), P("t*x1"), P("0")}));
    out.push_back(field_from_EB({P("x2*x3"), P("x1*x3"), P("x1*x2")}, {P("x2*x3"), P("x1*x3"), P("x1*x2")}));
    out.push_back(field_from_EB({P("t*x2"), P("t*x1"), P("0")}, {P("0"), P("0"), P("0")}));
    return out;
}

}  // namespace ncsym
