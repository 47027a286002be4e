#include "ncsym/representations.hpp"

#include <stdexcept>

namespace ncsym {

bool RMatrix::is_zero() const {
    for (const auto& v : a)
        if (!v.is_zero()) return false;
    return true;
}

RMatrix operator*(const RMatrix& x, const RMatrix& y) {
    if (x.n != y.n) throw std::invalid_argument("RMatrix: size mismatch");
    RMatrix z(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            if (x(i, k).is_zero()) continue;
            for (int j = 0; j < x.n; ++j)
                if (!y(k, j).is_zero()) z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

RMatrix operator-(const RMatrix& x, const RMatrix& y) {
    if (x.n != y.n) throw std::invalid_argument("RMatrix: size mismatch");
    RMatrix z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
    return z;
}

RMatrix operator*(const Rational& c, const RMatrix& x) {
    RMatrix z = x;
    for (auto& v : z.a) v *= c;
    return z;
}

RMatrix commutator(const RMatrix& x, const RMatrix& y) { return x * y - y * x; }

SchParams zero_sch_params(int d) {
    return {RMatrix(d), std::vector<Rational>(d), std::vector<Rational>(d), Rational(0), Rational(0), Rational(0)};
}

CgaParams zero_cga_params(int d) {
    return {RMatrix(d), std::vector<Rational>(d), std::vector<Rational>(d), std::vector<Rational>(d),
            Rational(0), Rational(0), Rational(0)};
}

namespace {

void check_omega(int d, const RMatrix& w) {
    if (w.n != d) throw std::invalid_argument("rotation block has the wrong size");
    for (int A = 0; A < d; ++A)
        for (int B = 0; B < d; ++B)
            if (w(A, B) != -w(B, A)) throw std::invalid_argument("rotation block is not antisymmetric");
}

void check_vec(int d, const std::vector<Rational>& v) {
    if (static_cast<int>(v.size()) != d) throw std::invalid_argument("parameter vector has the wrong length");
}

Exponent ex(int d, int tpow, int xvar = 0) {
    Exponent e(d + 1, 0);
    e[0] = tpow;
    if (xvar > 0) e[xvar] = 1;
    return e;
}

Poly mono(int d, int tpow, int xvar, const Rational& c) { return Poly::monomial(d, ex(d, tpow, xvar), c); }

// Shared spatial part ω x + λ x + κ t x + η(t), with η given by its t^0, t^1, t^2 coefficients.
void fill_spatial(VectorField& X, const RMatrix& omega, const Rational& lambda, const Rational& kappa,
                  const std::vector<const std::vector<Rational>*>& eta) {
    const int d = X.dim();
    for (int A = 1; A <= d; ++A) {
        Poly p(d);
        for (int B = 1; B <= d; ++B) p += mono(d, 0, B, omega(A - 1, B - 1));
        p += mono(d, 0, A, lambda);
        p += mono(d, 1, A, kappa);
        for (std::size_t k = 0; k < eta.size(); ++k)
            if (eta[k]) p += mono(d, static_cast<int>(k), 0, (*eta[k])[A - 1]);
        X[A] = p;
    }
}

// Reads ω + λ from the linear part; returns false when the shape is wrong.
bool read_linear(const VectorField& X, RMatrix& omega, Rational& lambda, const Rational& kappa) {
    const int d = X.dim();
    lambda = X[1].coefficient(ex(d, 0, 1));
    omega = RMatrix(d);
    for (int A = 1; A <= d; ++A) {
        if (X[A].coefficient(ex(d, 1, A)) != kappa) return false;
        for (int B = 1; B <= d; ++B) {
            Rational m = X[A].coefficient(ex(d, 0, B));
            omega(A - 1, B - 1) = A == B ? m - lambda : m;
        }
    }
    for (int A = 0; A < d; ++A)
        for (int B = 0; B < d; ++B)
            if (omega(A, B) != -omega(B, A)) return false;
    return true;
}

std::vector<Rational> read_eta(const VectorField& X, int tpow, const Rational& scale) {
    const int d = X.dim();
    std::vector<Rational> v(d);
    for (int A = 1; A <= d; ++A) v[A - 1] = X[A].coefficient(ex(d, tpow)) * scale;
    return v;
}

SparseVec flatten(const RMatrix& m) { return SparseVec::from_dense(m.a); }

}  // namespace

RMatrix rep_schrodinger(int d, const SchParams& p) {
    check_omega(d, p.omega);
    check_vec(d, p.beta);
    check_vec(d, p.gamma);
    RMatrix Z(d + 2);
    for (int A = 0; A < d; ++A) {
        for (int B = 0; B < d; ++B) Z(A, B) = p.omega(A, B);
        Z(A, d) = p.beta[A];
        Z(A, d + 1) = p.gamma[A];
    }
    Z(d, d) = p.lambda;
    Z(d, d + 1) = p.epsilon;
    Z(d + 1, d) = -p.kappa;
    Z(d + 1, d + 1) = -p.lambda;
    return Z;
}

RMatrix rep_cga(int d, const CgaParams& p) {
    check_omega(d, p.omega);
    check_vec(d, p.alpha);
    check_vec(d, p.beta);
    check_vec(d, p.gamma);
    RMatrix Z(d + 3);
    for (int A = 0; A < d; ++A) {
        for (int B = 0; B < d; ++B) Z(A, B) = p.omega(A, B);
        Z(A, d) = p.alpha[A] * Rational(-1, 2);
        Z(A, d + 1) = p.beta[A];
        Z(A, d + 2) = p.gamma[A];
    }
    Z(d, d) = p.lambda;
    Z(d, d + 1) = p.epsilon * Rational(2);
    Z(d + 1, d) = p.kappa * Rational(-1, 2);
    Z(d + 1, d + 2) = p.epsilon;
    Z(d + 2, d + 1) = -p.kappa;
    Z(d + 2, d + 2) = -p.lambda;
    return Z;
}

RMatrix rep_cga_plus_half_kappa(int d, const CgaParams& p) {
    RMatrix Z = rep_cga(d, p);
    Z(d + 1, d) = p.kappa * Rational(1, 2);
    return Z;
}

VectorField sch_field(int d, const SchParams& p) {
    check_omega(d, p.omega);
    check_vec(d, p.beta);
    check_vec(d, p.gamma);
    VectorField X(d);
    X[0] = mono(d, 2, 0, p.kappa) + mono(d, 1, 0, p.lambda * Rational(2)) + mono(d, 0, 0, p.epsilon);
    fill_spatial(X, p.omega, p.lambda, p.kappa, {&p.gamma, &p.beta});
    return X;
}

VectorField cga_field(int d, const CgaParams& p) {
    check_omega(d, p.omega);
    check_vec(d, p.alpha);
    check_vec(d, p.beta);
    check_vec(d, p.gamma);
    VectorField X(d);
    X[0] = mono(d, 2, 0, p.kappa * Rational(1, 2)) + mono(d, 1, 0, p.lambda) + mono(d, 0, 0, p.epsilon);
    std::vector<Rational> acc(d);
    for (int A = 0; A < d; ++A) acc[A] = p.alpha[A] * Rational(-1, 2);
    fill_spatial(X, p.omega, p.lambda, p.kappa, {&p.gamma, &p.beta, &acc});
    return X;
}

std::optional<SchParams> sch_params(const VectorField& X) {
    const int d = X.dim();
    SchParams p = zero_sch_params(d);
    p.kappa = X[0].coefficient(ex(d, 2));
    Rational lam2 = X[0].coefficient(ex(d, 1));
    p.epsilon = X[0].coefficient(ex(d, 0));
    if (!read_linear(X, p.omega, p.lambda, p.kappa)) return std::nullopt;
    if (lam2 != p.lambda * Rational(2)) return std::nullopt;
    p.beta = read_eta(X, 1, Rational(1));
    p.gamma = read_eta(X, 0, Rational(1));
    if (sch_field(d, p) != X) return std::nullopt;
    return p;
}

std::optional<CgaParams> cga_params(const VectorField& X) {
    const int d = X.dim();
    CgaParams p = zero_cga_params(d);
    p.kappa = X[0].coefficient(ex(d, 2)) * Rational(2);
    Rational lam = X[0].coefficient(ex(d, 1));
    p.epsilon = X[0].coefficient(ex(d, 0));
    if (!read_linear(X, p.omega, p.lambda, p.kappa)) return std::nullopt;
    if (lam != p.lambda) return std::nullopt;
    p.alpha = read_eta(X, 2, Rational(-2));
    p.beta = read_eta(X, 1, Rational(1));
    p.gamma = read_eta(X, 0, Rational(1));
    if (cga_field(d, p) != X) return std::nullopt;
    return p;
}

RepReport check_representation(const std::string& name, const std::vector<VectorField>& basis, const MatrixMap& rep) {
    RepReport r;
    r.rep = name;
    std::vector<RMatrix> Z;
    for (const auto& X : basis) {
        auto m = rep(X);
        if (!m) throw std::invalid_argument("check_representation: basis element outside the closed form");
        Z.push_back(*m);
    }
    if (Z.empty()) return r;
    std::vector<SparseVec> flat;
    for (const auto& m : Z) flat.push_back(flatten(m));
    r.faithful = SpanIndex(Z.front().n * Z.front().n, flat).independent();
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            ++r.pairs_checked;
            auto image = rep(lie_bracket(basis[i], basis[j]));
            RMatrix c = commutator(Z[i], Z[j]);
            int s = 0;
            bool ok = true;
            if (!image) {
                ok = false;
            } else if (c.is_zero() && image->is_zero()) {
                s = 0;
            } else if (c == *image) {
                s = 1;
            } else if (c == Rational(-1) * *image) {
                s = -1;
            } else {
                ok = false;
            }
            if (ok && s != 0) {
                if (r.sign == 0) r.sign = s;
                ok = r.sign == s;
            }
            if (!ok) {
                r.consistent = false;
                r.mismatches.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    return r;
}

RepReport check_sch_rep(const std::vector<VectorField>& basis) {
    return check_representation("sch", basis, [](const VectorField& X) -> std::optional<RMatrix> {
        auto p = sch_params(X);
        if (!p) return std::nullopt;
        return rep_schrodinger(X.dim(), *p);
    });
}

RepReport check_cga_rep(const std::vector<VectorField>& basis) {
    return check_representation("cga", basis, [](const VectorField& X) -> std::optional<RMatrix> {
        auto p = cga_params(X);
        if (!p) return std::nullopt;
        return rep_cga(X.dim(), *p);
    });
}

std::tuple<int, int, int> inertia(std::vector<std::vector<Rational>> m) {
    const int n = static_cast<int>(m.size());
    int pos = 0, neg = 0;
    int r = 0;
    while (r < n) {
        int p = -1;
        for (int i = r; i < n && p < 0; ++i)
            if (!m[i][i].is_zero()) p = i;
        if (p < 0) {
            // zero diagonal: x_i -> x_i + x_j makes the (i, i) entry 2 m_ij
            int pi = -1, pj = -1;
            for (int i = r; i < n && pi < 0; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!m[i][j].is_zero()) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi < 0) break;
            for (int k = 0; k < n; ++k) m[pi][k] += m[pj][k];
            for (int k = 0; k < n; ++k) m[k][pi] += m[k][pj];
            p = pi;
        }
        std::swap(m[p], m[r]);
        for (auto& row : m) std::swap(row[p], row[r]);
        const Rational piv = m[r][r];
        (piv.sign() > 0 ? pos : neg)++;
        for (int i = r + 1; i < n; ++i) {
            if (m[i][r].is_zero()) continue;
            Rational f = m[i][r] / piv;
            for (int j = r; j < n; ++j) m[i][j] -= f * m[r][j];
        }
        for (int i = r + 1; i < n; ++i) m[r][i] = Rational(0);
        for (int i = r + 1; i < n; ++i) m[i][r] = Rational(0);
        ++r;
    }
    return {pos, neg, n - pos - neg};
}

AlgebraInvariants invariants(const StructureConstants& sc) {
    const int n = sc.n;
    AlgebraInvariants inv;
    inv.dim = n;
    Echelon center(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            SparseVec row;
            for (int i = 0; i < n; ++i) row.set(i, sc.at(k, i, j));
            if (!row.empty()) center.insert(std::move(row));
        }
    inv.center_dim = n - center.rank();
    Echelon derived(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            SparseVec v;
            for (int k = 0; k < n; ++k) v.set(k, sc.at(k, i, j));
            if (!v.empty()) derived.insert(std::move(v));
        }
    inv.derived_dim = derived.rank();
    std::vector<std::vector<Rational>> K(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    if (!sc.at(l, i, k).is_zero() && !sc.at(k, j, l).is_zero()) K[i][j] += sc.at(l, i, k) * sc.at(k, j, l);
    std::tie(inv.killing_pos, inv.killing_neg, inv.killing_zero) = inertia(K);
    return inv;
}

namespace {

StructureConstants matrix_structure_constants(const std::vector<RMatrix>& basis) {
    const int n = static_cast<int>(basis.size());
    StructureConstants sc;
    sc.n = n;
    sc.c.assign(static_cast<std::size_t>(n) * n * n, Rational(0));
    std::vector<SparseVec> flat;
    for (const auto& m : basis) flat.push_back(flatten(m));
    SpanIndex span(basis.front().n * basis.front().n, flat);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto c = span.coordinates(flatten(commutator(basis[i], basis[j])));
            if (!c) throw std::logic_error("matrix basis is not closed");
            for (int k = 0; k < n; ++k) sc.at(k, i, j) = (*c)[k];
        }
    return sc;
}

}  // namespace

StructureConstants reference_so_sl2(int d) {
    const int n = d + 2;
    std::vector<RMatrix> basis;
    for (int A = 0; A < d; ++A)
        for (int B = A + 1; B < d; ++B) {
            RMatrix E(n);
            E(A, B) = Rational(1);
            E(B, A) = Rational(-1);
            basis.push_back(E);
        }
    RMatrix h(n), e(n), f(n);
    h(d, d) = Rational(1);
    h(d + 1, d + 1) = Rational(-1);
    e(d, d + 1) = Rational(1);
    f(d + 1, d) = Rational(1);
    basis.insert(basis.end(), {h, e, f});
    return matrix_structure_constants(basis);
}

std::string levi_status_name(LeviStatus s) {
    switch (s) {
        case LeviStatus::Ok: return "ok";
        case LeviStatus::NotIdeal: return "not an ideal";
        case LeviStatus::NotAbelian: return "not abelian";
        case LeviStatus::QuotientMismatch: return "quotient mismatch";
    }
    return "?";
}

LeviReport levi_check(const StructureConstants& sc, const std::vector<int>& radical, int d) {
    LeviReport rep;
    const int n = sc.n;
    std::vector<bool> in(n, false);
    for (int i : radical) {
        if (i < 0 || i >= n) throw std::out_of_range("levi_check: radical index out of range");
        in[i] = true;
    }
    rep.ideal = true;
    for (int i = 0; i < n && rep.ideal; ++i) {
        if (!in[i]) continue;
        for (int j = 0; j < n && rep.ideal; ++j)
            for (int k = 0; k < n; ++k)
                if (!in[k] && !sc.at(k, j, i).is_zero()) {
                    rep.ideal = false;
                    rep.i = j;
                    rep.j = i;
                    break;
                }
    }
    if (!rep.ideal) {
        rep.status = LeviStatus::NotIdeal;
        return rep;
    }
    rep.abelian = true;
    for (int i = 0; i < n && rep.abelian; ++i)
        for (int j = 0; j < n && rep.abelian; ++j) {
            if (!in[i] || !in[j]) continue;
            for (int k = 0; k < n; ++k)
                if (!sc.at(k, i, j).is_zero()) {
                    rep.abelian = false;
                    rep.i = i;
                    rep.j = j;
                    break;
                }
        }
    if (!rep.abelian) {
        rep.status = LeviStatus::NotAbelian;
        return rep;
    }
    std::vector<int> q;
    for (int i = 0; i < n; ++i)
        if (!in[i]) q.push_back(i);
    StructureConstants quo;
    quo.n = static_cast<int>(q.size());
    quo.c.assign(static_cast<std::size_t>(quo.n) * quo.n * quo.n, Rational(0));
    for (int i = 0; i < quo.n; ++i)
        for (int j = 0; j < quo.n; ++j)
            for (int k = 0; k < quo.n; ++k) quo.at(k, i, j) = sc.at(q[k], q[i], q[j]);
    rep.quotient = invariants(quo);
    rep.reference = invariants(reference_so_sl2(d));
    rep.quotient_match = quo.jacobi() && rep.quotient == rep.reference;
    if (!rep.quotient_match) rep.status = LeviStatus::QuotientMismatch;
    return rep;
}

std::vector<int> sch_radical(const std::vector<VectorField>& basis) {
    std::vector<int> out;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto p = sch_params(basis[i]);
        if (p && p->omega.is_zero() && p->kappa.is_zero() && p->lambda.is_zero() && p->epsilon.is_zero())
            out.push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<int> cga_radical(const std::vector<VectorField>& basis) {
    std::vector<int> out;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto p = cga_params(basis[i]);
        if (p && p->omega.is_zero() && p->kappa.is_zero() && p->lambda.is_zero() && p->epsilon.is_zero())
            out.push_back(static_cast<int>(i));
    }
    return out;
}

}  // namespace ncsym
