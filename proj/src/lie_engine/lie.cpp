#include "ncsym/lie.hpp"

#include <numeric>
#include <stdexcept>

namespace ncsym {

Poly apply(const VectorField& X, const Poly& f) {
    require_same_dim(X.dim(), f.dim(), "apply");
    Poly out(f.dim());
    for (int a = 0; a < X.n(); ++a)
        if (!X[a].is_zero()) out += X[a] * f.differentiate(a);
    return out;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    require_same_dim(X.dim(), Y.dim(), "lie_bracket");
    VectorField Z(X.dim());
    for (int a = 0; a < X.n(); ++a) Z[a] = apply(X, Y[a]) - apply(Y, X[a]);
    return Z;
}

SymTensor2Up lie_derive_gamma(const VectorField& X, const SymTensor2Up& gamma) {
    require_same_dim(X.dim(), gamma.dim(), "lie_derive_gamma");
    const int n = X.n();
    SymTensor2Up L(X.dim());
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Poly v = apply(X, gamma(a, b));
            for (int c = 0; c < n; ++c) {
                if (!gamma(c, b).is_zero()) v -= X[a].differentiate(c) * gamma(c, b);
                if (!gamma(a, c).is_zero()) v -= X[b].differentiate(c) * gamma(a, c);
            }
            L(a, b) = v;
            L(b, a) = v;
        }
    return L;
}

OneForm lie_derive_one_form(const VectorField& X, const OneForm& A) {
    require_same_dim(X.dim(), A.dim(), "lie_derive_one_form");
    OneForm L(X.dim());
    for (int a = 0; a < X.n(); ++a) {
        Poly v = apply(X, A[a]);
        for (int b = 0; b < X.n(); ++b)
            if (!A[b].is_zero()) v += A[b] * X[b].differentiate(a);
        L[a] = v;
    }
    return L;
}

std::pair<SymTensor2Up, OneForm> lie_derive_structure(const VectorField& X, const SymTensor2Up& gamma,
                                                      const OneForm& theta) {
    return {lie_derive_gamma(X, gamma), lie_derive_one_form(X, theta)};
}

namespace {

// Factor phi with target == phi * base componentwise, if one exists.
template <class T>
std::optional<Poly> proportionality_factor(const T& target, const T& base) {
    const auto& td = target.data();
    const auto& bd = base.data();
    std::optional<Poly> phi;
    for (std::size_t i = 0; i < bd.size(); ++i) {
        if (bd[i].is_zero()) continue;
        auto q = td[i].divide_exact(bd[i]);
        if (!q) return std::nullopt;
        phi = *q;
        break;
    }
    if (!phi) return std::nullopt;
    for (std::size_t i = 0; i < bd.size(); ++i)
        if (!(td[i] == *phi * bd[i])) return std::nullopt;
    return phi;
}

}  // namespace

std::optional<std::pair<Poly, Poly>> conformal_factors(const VectorField& X, const SymTensor2Up& gamma,
                                                       const OneForm& theta) {
    auto [Lg, Lt] = lie_derive_structure(X, gamma, theta);
    auto f = proportionality_factor(Lg, gamma);
    if (!f) return std::nullopt;
    auto g = proportionality_factor(Lt, theta);
    if (!g) return std::nullopt;
    for (int A = 1; A <= X.dim(); ++A)
        if (g->depends_on(A)) return std::nullopt;
    return std::make_pair(*f, *g);
}

Connection lie_derive_connection(const VectorField& X, const Connection& Gamma) {
    require_same_dim(X.dim(), Gamma.dim(), "lie_derive_connection");
    const int n = X.n();
    // dX[k][c] = d_k X^c
    std::vector<std::vector<Poly>> dX(n, std::vector<Poly>(n));
    for (int k = 0; k < n; ++k)
        for (int c = 0; c < n; ++c) dX[k][c] = X[c].differentiate(k);
    const bool flat = Gamma.is_zero();
    Connection L(X.dim());
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                Poly v = dX[a][c].differentiate(b);
                if (!flat) {
                    v += apply(X, Gamma(c, a, b));
                    for (int k = 0; k < n; ++k) {
                        if (!Gamma(k, a, b).is_zero()) v -= Gamma(k, a, b) * dX[k][c];
                        if (!Gamma(c, k, b).is_zero()) v += Gamma(c, k, b) * dX[a][k];
                        if (!Gamma(c, a, k).is_zero()) v += Gamma(c, a, k) * dX[b][k];
                    }
                }
                L(c, a, b) = v;
                L(c, b, a) = v;
            }
    return L;
}

TwoForm lie_derive_two_form(const VectorField& X, const TwoForm& F) {
    require_same_dim(X.dim(), F.dim(), "lie_derive_two_form");
    const int n = X.n();
    TwoForm L(X.dim());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            Poly v = apply(X, F(a, b));
            for (int c = 0; c < n; ++c) {
                if (!F(c, b).is_zero()) v += F(c, b) * X[c].differentiate(a);
                if (!F(a, c).is_zero()) v += F(a, c) * X[c].differentiate(b);
            }
            L.set(a, b, v);
        }
    return L;
}

TwoForm exterior_derivative(const OneForm& A) {
    TwoForm F(A.dim());
    for (int a = 0; a < A.n(); ++a)
        for (int b = a + 1; b < A.n(); ++b) F.set(a, b, A[b].differentiate(a) - A[a].differentiate(b));
    return F;
}

ThreeTensor exterior_derivative(const TwoForm& F) {
    ThreeTensor D(F.dim());
    const int n = F.n();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                D(a, b, c) = F(b, c).differentiate(a) + F(c, a).differentiate(b) + F(a, b).differentiate(c);
    return D;
}

Poly to_cotangent(const Poly& p) {
    std::vector<int> map(p.nvars());
    std::iota(map.begin(), map.end(), 0);
    return p.embed(2 * p.dim() + 1, map);
}

LiftedField canonical_lift(const VectorField& X) {
    const int d = X.dim();
    const int n = d + 1;
    const int cdim = 2 * d + 1;
    LiftedField Z;
    Z.base_dim = d;
    Z.components.assign(2 * n, Poly(cdim));
    for (int a = 0; a < n; ++a) Z.components[a] = to_cotangent(X[a]);
    for (int a = 0; a < n; ++a) {
        Poly v(cdim);
        for (int b = 0; b < n; ++b) {
            Poly dXb = X[b].differentiate(a);
            if (dXb.is_zero()) continue;
            v -= Poly::variable(cdim, Z.p_var(b)) * to_cotangent(dXb);
        }
        Z.components[n + a] = v;
    }
    return Z;
}

Poly apply(const LiftedField& Z, const Poly& f) {
    Poly out(f.dim());
    for (std::size_t i = 0; i < Z.components.size(); ++i)
        if (!Z.components[i].is_zero()) out += Z.components[i] * f.differentiate(static_cast<int>(i));
    return out;
}

Poly mass_shell(const SymTensor2Up& gamma, const Rational& k2) {
    const int d = gamma.dim();
    const int cdim = 2 * d + 1;
    Poly h = Poly::constant(cdim, -k2);
    for (int a = 0; a <= d; ++a)
        for (int b = 0; b <= d; ++b) {
            if (gamma(a, b).is_zero()) continue;
            h += to_cotangent(gamma(a, b)) * Poly::variable(cdim, d + 1 + a) * Poly::variable(cdim, d + 1 + b);
        }
    return h;
}

}  // namespace ncsym
