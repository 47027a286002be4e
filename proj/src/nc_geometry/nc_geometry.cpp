#include "ncsym/nc_geometry.hpp"

#include <stdexcept>
#include <string>

namespace ncsym {

bool GalileiStructure::kernel_condition() const {
    for (int a = 0; a <= dim; ++a) {
        Poly s(dim);
        for (int b = 0; b <= dim; ++b) s += gamma(a, b) * theta[b];
        if (!s.is_zero()) return false;
    }
    return true;
}

NCStructure flat_structure(int d) {
    if (d < 2) throw std::invalid_argument("flat_structure: spatial dimension must be at least 2");
    NCStructure nc;
    nc.base.dim = d;
    nc.base.gamma = SymTensor2Up(d);
    nc.base.theta = OneForm(d);
    for (int A = 1; A <= d; ++A) nc.base.gamma(A, A) = Poly::constant(d, Rational(1));
    nc.base.theta[0] = Poly::constant(d, Rational(1));
    nc.Gamma = Connection(d);
    return nc;
}

bool is_unit(const GalileiStructure& base, const Observer& U) {
    require_same_dim(base.dim, U.U.dim(), "is_unit");
    Poly s(base.dim);
    for (int a = 0; a <= base.dim; ++a) s += base.theta[a] * U.U[a];
    return s == Poly::constant(base.dim, Rational(1));
}

Connection covariant_derivative_gamma(const GalileiStructure& base, const Connection& Gamma) {
    const int n = base.dim + 1;
    Connection D(base.dim);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                Poly v = base.gamma(b, c).differentiate(a);
                for (int k = 0; k < n; ++k) {
                    v += Gamma(b, a, k) * base.gamma(k, c);
                    v += Gamma(c, a, k) * base.gamma(b, k);
                }
                D(a, b, c) = v;
            }
    return D;
}

PolyMatrix covariant_derivative_theta(const GalileiStructure& base, const Connection& Gamma) {
    const int n = base.dim + 1;
    PolyMatrix D(base.dim);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Poly v = base.theta[b].differentiate(a);
            for (int k = 0; k < n; ++k) v -= Gamma(k, a, b) * base.theta[k];
            D(a, b) = v;
        }
    return D;
}

bool is_compatible(const GalileiStructure& base, const Connection& Gamma) {
    return covariant_derivative_gamma(base, Gamma).is_zero() && covariant_derivative_theta(base, Gamma).is_zero();
}

namespace {

Poly exact_div(const Poly& num, const Poly& den) {
    auto q = num.divide_exact(den);
    if (!q) throw std::domain_error("observer_metric: solution is not polynomial");
    return *q;
}

// Solves the consistent, uniquely solvable system A y = r (rows x cols, rows >= cols)
// over Q[t, x] by Bareiss elimination followed by exact back substitution.
std::vector<Poly> solve_unique(std::vector<std::vector<Poly>> A, std::vector<Poly> r, int dim) {
    const int rows = static_cast<int>(A.size());
    const int cols = static_cast<int>(A.front().size());
    for (int i = 0; i < rows; ++i) A[i].push_back(r[i]);
    Poly prev = Poly::constant(dim, Rational(1));
    int rank = 0;
    std::vector<int> pivot_col;
    for (int k = 0; k < cols && rank < rows; ++k) {
        int p = -1;
        for (int i = rank; i < rows; ++i)
            if (!A[i][k].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(A[p], A[rank]);
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = k + 1; j <= cols; ++j)
                A[i][j] = exact_div(A[rank][k] * A[i][j] - A[i][k] * A[rank][j], prev);
            A[i][k] = Poly(dim);
        }
        prev = A[rank][k];
        pivot_col.push_back(k);
        ++rank;
    }
    if (rank != cols) throw std::domain_error("observer_metric: linear system is not uniquely solvable");
    for (int i = rank; i < rows; ++i)
        if (!A[i][cols].is_zero()) throw std::domain_error("observer_metric: inconsistent linear system");
    std::vector<Poly> y(cols, Poly(dim));
    for (int i = rank - 1; i >= 0; --i) {
        int k = pivot_col[i];
        Poly s = A[i][cols];
        for (int j = k + 1; j < cols; ++j)
            if (!A[i][j].is_zero()) s -= A[i][j] * y[j];
        y[k] = exact_div(s, A[i][k]);
    }
    return y;
}

Poly sym_half(const Poly& a, const Poly& b) { return (a + b) * Rational(1, 2); }

}  // namespace

SymTensor2Down observer_metric(const GalileiStructure& base, const Observer& U) {
    if (!is_unit(base, U)) throw std::invalid_argument("observer_metric: observer is not unit");
    const int d = base.dim;
    const int n = d + 1;
    // Coefficient matrix shared by every row a: columns are the unknowns h_{a0..ad}.
    std::vector<std::vector<Poly>> A(n + 1, std::vector<Poly>(n, Poly(d)));
    for (int b = 0; b < n; ++b)
        for (int k = 0; k < n; ++k) A[b][k] = base.gamma(k, b);
    for (int k = 0; k < n; ++k) A[n][k] = U.U[k];
    SymTensor2Down h(d);
    for (int a = 0; a < n; ++a) {
        std::vector<Poly> r(n + 1, Poly(d));
        for (int b = 0; b < n; ++b) {
            r[b] = -(U.U[b] * base.theta[a]);
            if (a == b) r[b] += Poly::constant(d, Rational(1));
        }
        auto y = solve_unique(A, r, d);
        for (int k = 0; k < n; ++k) h(a, k) = y[k];
    }
    if (!h.is_symmetric()) throw std::domain_error("observer_metric: solution is not symmetric");
    return h;
}

Connection connection_from_observer(const GalileiStructure& base, const Observer& U, const TwoForm& F) {
    require_same_dim(base.dim, F.dim(), "connection_from_observer");
    if (!F.is_antisymmetric()) throw std::invalid_argument("connection_from_observer: F is not antisymmetric");
    if (!exterior_derivative(F).is_zero()) throw std::invalid_argument("connection_from_observer: F is not closed");
    SymTensor2Down h = observer_metric(base, U);
    const int n = base.dim + 1;
    Connection G(base.dim);
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                Poly v(base.dim);
                for (int k = 0; k < n; ++k) {
                    if (base.gamma(c, k).is_zero()) continue;
                    Poly inner = sym_half(h(b, k).differentiate(a), h(a, k).differentiate(b)) -
                                 h(a, b).differentiate(k) * Rational(1, 2);
                    inner += sym_half(base.theta[a] * F(b, k), base.theta[b] * F(a, k));
                    v += base.gamma(c, k) * inner;
                }
                v += sym_half(base.theta[b].differentiate(a), base.theta[a].differentiate(b)) * U.U[c];
                G(c, a, b) = v;
                G(c, b, a) = v;
            }
    return G;
}

VectorField raise(const SymTensor2Up& gamma, const OneForm& Psi) {
    VectorField V(gamma.dim());
    for (int a = 0; a < gamma.n(); ++a)
        for (int b = 0; b < gamma.n(); ++b) V[a] += gamma(a, b) * Psi[b];
    return V;
}

std::pair<Observer, TwoForm> milne_boost(const GalileiStructure& base, const Observer& U, const TwoForm& F,
                                         const OneForm& Psi) {
    const int d = base.dim;
    Observer U2{U.U + raise(base.gamma, Psi)};
    Poly s(d);
    for (int b = 0; b <= d; ++b) s += Psi[b] * U.U[b];
    Poly q(d);
    for (int b = 0; b <= d; ++b)
        for (int c = 0; c <= d; ++c) q += base.gamma(b, c) * Psi[b] * Psi[c];
    s += q * Rational(1, 2);
    OneForm Phi(d);
    for (int a = 0; a <= d; ++a) Phi[a] = Psi[a] - s * base.theta[a];
    return {U2, F + exterior_derivative(Phi)};
}

TwoForm coriolis_from_observer(const NCStructure& nc, const Observer& U) {
    const auto& base = nc.base;
    SymTensor2Down h = observer_metric(base, U);
    const int n = base.dim + 1;
    // nablaU[b][c] = nabla_b U^c
    std::vector<std::vector<Poly>> nablaU(n, std::vector<Poly>(n, Poly(base.dim)));
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
            Poly v = U.U[c].differentiate(b);
            for (int k = 0; k < n; ++k) v += nc.Gamma(c, b, k) * U.U[k];
            nablaU[b][c] = v;
        }
    TwoForm F(base.dim);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            Poly v(base.dim);
            for (int c = 0; c < n; ++c) v -= h(c, a) * nablaU[b][c] - h(c, b) * nablaU[a][c];
            F.set(a, b, v);
        }
    return F;
}

Connection vary_connection(const GalileiStructure& base, const Observer& U, const TwoForm& F, const Poly& f,
                           const Poly& g, const OneForm& psi, bool lightlike) {
    require_same_dim(base.dim, psi.dim(), "vary_connection");
    const int d = base.dim;
    const int n = d + 1;
    for (int A = 1; A <= d; ++A) {
        if (g.depends_on(A)) throw std::invalid_argument("vary_connection: g must depend on t alone");
        if (lightlike && f.depends_on(A))
            throw std::invalid_argument("vary_connection: lightlike form needs f depending on t alone");
    }
    const Poly fg = f + g;
    Connection dG(d);
    if (lightlike) {
        const Poly fp = f.differentiate(0);
        const Poly fgp = fg.differentiate(0);
        for (int c = 0; c < n; ++c)
            for (int a = 0; a < n; ++a)
                for (int b = a; b < n; ++b) {
                    Poly v(d);
                    if (c == a) v -= fp * base.theta[b] * Rational(1, 2);
                    if (c == b) v -= fp * base.theta[a] * Rational(1, 2);
                    v += fgp * U.U[c] * base.theta[a] * base.theta[b];
                    for (int k = 0; k < n; ++k)
                        v += fg * base.gamma(c, k) * sym_half(base.theta[a] * F(b, k), base.theta[b] * F(a, k));
                    dG(c, a, b) = v;
                    dG(c, b, a) = v;
                }
        return dG;
    }
    SymTensor2Down h = observer_metric(base, U);
    std::vector<Poly> df(n), dfg(n);
    for (int a = 0; a < n; ++a) {
        df[a] = f.differentiate(a);
        dfg[a] = fg.differentiate(a);
    }
    for (int c = 0; c < n; ++c) {
        Poly grad_f(d);
        for (int k = 0; k < n; ++k) grad_f += base.gamma(c, k) * df[k];
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                Poly v(d);
                if (c == a) v -= df[b] * Rational(1, 2);
                if (c == b) v -= df[a] * Rational(1, 2);
                v += U.U[c] * sym_half(base.theta[a] * dfg[b], base.theta[b] * dfg[a]);
                v += grad_f * h(a, b) * Rational(1, 2);
                for (int k = 0; k < n; ++k)
                    v += fg * base.gamma(c, k) * sym_half(base.theta[a] * F(b, k), base.theta[b] * F(a, k));
                dG(c, a, b) = v;
                dG(c, b, a) = v;
            }
    }
    return dG;
}

}  // namespace ncsym
