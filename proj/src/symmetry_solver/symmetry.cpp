#include "ncsym/symmetry.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace ncsym {

std::string family_name(Family f) {
    switch (f) {
        case Family::CGAL: return "cgal";
        case Family::CGAL_Z: return "cgal-z";
        case Family::SCH_EXPANDED: return "sch-expanded";
        case Family::SCH_Z: return "sch";
        case Family::GAL: return "gal";
        case Family::CNC: return "cnc";
        case Family::CMIL: return "cmil";
        case Family::CMIL_Z: return "cmil-z";
        case Family::ALT: return "alt";
    }
    return "?";
}

DynExponent DynExponent::finite(const Rational& z) {
    if (z.sign() <= 0) throw std::invalid_argument("dynamical exponent must be positive");
    return {false, z};
}

DynExponent DynExponent::parse(std::string_view text) {
    if (text == "inf") return infinity();
    return finite(Rational::parse(text));
}

std::string DynExponent::str() const { return infinite ? "inf" : value.str(); }

// ---------------------------------------------------------------------------------------------
// Field coordinates

FieldIndex::FieldIndex(int dim, const std::vector<VectorField>& fields) : dim_(dim) {
    for (const auto& X : fields) add(X);
}

void FieldIndex::add(const VectorField& X) {
    require_same_dim(dim_, X.dim(), "FieldIndex");
    for (int a = 0; a <= dim_; ++a)
        for (const auto& [e, c] : X[a].terms()) {
            auto key = std::make_pair(a, e);
            if (col_.emplace(key, static_cast<int>(keys_.size())).second) keys_.push_back(key);
        }
}

std::optional<SparseVec> FieldIndex::try_vec(const VectorField& X) const {
    require_same_dim(dim_, X.dim(), "FieldIndex");
    SparseVec v;
    for (int a = 0; a <= dim_; ++a)
        for (const auto& [e, c] : X[a].terms()) {
            auto it = col_.find({a, e});
            if (it == col_.end()) return std::nullopt;
            v.set(it->second, c);
        }
    return v;
}

SparseVec FieldIndex::vec(const VectorField& X) const {
    auto v = try_vec(X);
    if (!v) throw std::out_of_range("FieldIndex: field has a monomial outside the index");
    return *v;
}

VectorField FieldIndex::field(const SparseVec& v) const {
    VectorField X(dim_);
    for (const auto& [col, c] : v.entries()) X[keys_[col].first].add_term(keys_[col].second, c);
    return X;
}

namespace {

int x_degree(const Exponent& e) {
    int s = 0;
    for (std::size_t i = 1; i < e.size(); ++i) s += e[i];
    return s;
}

int column_class(int a, const Exponent& e) {
    const int xd = x_degree(e);
    if (a == 0) {
        if (xd > 0) return 7;
        return e[0] >= 2 ? 3 : (e[0] == 1 ? 5 : 6);
    }
    if (xd == 0) return 1;
    if (xd >= 2) return 2;
    return e[a] == 1 ? 4 : 0;
}

}  // namespace

std::vector<int> FieldIndex::priority_order() const {
    std::vector<int> order(keys_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    auto rank = [&](int col) {
        const auto& [a, e] = keys_[col];
        return std::make_tuple(column_class(a, e), -e[0], a, e);
    };
    std::sort(order.begin(), order.end(), [&](int l, int r) {
        auto kl = rank(l), kr = rank(r);
        // exponents descending inside a class
        if (std::get<0>(kl) != std::get<0>(kr) || std::get<1>(kl) != std::get<1>(kr) || std::get<2>(kl) != std::get<2>(kr))
            return kl < kr;
        return std::get<3>(kl) > std::get<3>(kr);
    });
    return order;
}

std::vector<VectorField> canonical_fields(const std::vector<VectorField>& fields, int dim) {
    FieldIndex idx(dim, fields);
    std::vector<SparseVec> vecs;
    vecs.reserve(fields.size());
    for (const auto& X : fields) vecs.push_back(idx.vec(X));
    std::vector<VectorField> out;
    for (const auto& row : canonical_basis(vecs, idx.size(), idx.priority_order())) out.push_back(idx.field(row));
    return out;
}

bool span_contains(const std::vector<VectorField>& span, const VectorField& X) {
    return span_contains(span, std::vector<VectorField>{X});
}

bool span_contains(const std::vector<VectorField>& span, const std::vector<VectorField>& sub) {
    if (sub.empty()) return true;
    const int dim = sub.front().dim();
    FieldIndex idx(dim, span);
    std::vector<SparseVec> vecs;
    for (const auto& X : span) vecs.push_back(idx.vec(X));
    SpanIndex s(idx.size(), vecs);
    for (const auto& X : sub) {
        auto v = idx.try_vec(X);
        if (!v || !s.coordinates(*v)) return false;
    }
    return true;
}

bool span_equal(const std::vector<VectorField>& a, const std::vector<VectorField>& b) {
    return span_contains(a, b) && span_contains(b, a);
}

// ---------------------------------------------------------------------------------------------
// Linear solving

std::vector<VectorField> solve_linear(const std::vector<VectorField>& candidates, const Residual& r) {
    if (candidates.empty()) return {};
    const int n = static_cast<int>(candidates.size());
    const int dim = candidates.front().dim();
    std::map<std::pair<std::size_t, Exponent>, SparseVec> rows;
    for (int j = 0; j < n; ++j) {
        auto res = r(candidates[j]);
        for (std::size_t i = 0; i < res.size(); ++i)
            for (const auto& [e, c] : res[i].terms()) rows[{i, e}].set(j, c);
    }
    Echelon ech(n);
    for (auto& [key, row] : rows) ech.insert(std::move(row));
    std::vector<VectorField> sol;
    for (const auto& v : ech.nullspace()) {
        VectorField X(dim);
        for (const auto& [j, c] : v.entries()) X += c * candidates[j];
        sol.push_back(std::move(X));
    }
    return canonical_fields(sol, dim);
}

std::vector<VectorField> ansatz_fields(int d, int deg_t) {
    if (d < 2) throw std::invalid_argument("spatial dimension must be at least 2");
    if (deg_t < 0) throw std::invalid_argument("time degree bound must be non-negative");
    std::vector<Exponent> xmono;
    Exponent zero(d + 1, 0);
    xmono.push_back(zero);
    for (int B = 1; B <= d; ++B) {
        Exponent e = zero;
        e[B] = 1;
        xmono.push_back(e);
    }
    for (int B = 1; B <= d; ++B)
        for (int C = B; C <= d; ++C) {
            Exponent e = zero;
            e[B] += 1;
            e[C] += 1;
            xmono.push_back(e);
        }
    std::vector<VectorField> out;
    for (int k = 0; k <= deg_t; ++k) {
        VectorField X(d);
        Exponent e = zero;
        e[0] = k;
        X[0] = Poly::monomial(d, e);
        out.push_back(X);
    }
    for (int A = 1; A <= d; ++A)
        for (const auto& m : xmono)
            for (int k = 0; k <= deg_t; ++k) {
                VectorField X(d);
                Exponent e = m;
                e[0] = k;
                X[A] = Poly::monomial(d, e);
                out.push_back(X);
            }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Residuals on the flat structure

namespace {

// g restricted to its t-dependence; the conformal residual already catches d_A X^0.
Poly time_part(const Poly& p) {
    Poly q = p;
    for (int A = 1; A <= p.dim(); ++A) q = q.substitute(A, Rational(0));
    return q;
}

void append(std::vector<Poly>& out, const std::vector<Poly>& more) { out.insert(out.end(), more.begin(), more.end()); }

const NCStructure& flat(int d) {
    static thread_local std::map<int, NCStructure> cache;
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, flat_structure(d)).first;
    return it->second;
}

Poly dd(const Poly& p, int a, int b) { return p.differentiate(a).differentiate(b); }

}  // namespace

std::pair<Poly, Poly> linear_factors(const VectorField& X) {
    const int d = X.dim();
    Poly div(d);
    for (int A = 1; A <= d; ++A) div += X[A].differentiate(A);
    return {div * Rational(-2, d), X[0].differentiate(0)};
}

bool all_zero(const std::vector<Poly>& ps) {
    return std::all_of(ps.begin(), ps.end(), [](const Poly& p) { return p.is_zero(); });
}

std::vector<Poly> conformal_residual(const VectorField& X) {
    const int d = X.dim();
    const auto& base = flat(d).base;
    auto [f, g] = linear_factors(X);
    auto [Lg, Lt] = lie_derive_structure(X, base.gamma, base.theta);
    std::vector<Poly> out;
    for (int a = 0; a <= d; ++a)
        for (int b = a; b <= d; ++b) out.push_back(Lg(a, b) - f * base.gamma(a, b));
    for (int a = 0; a <= d; ++a) out.push_back(Lt[a] - g * base.theta[a]);
    return out;
}

std::vector<Poly> exponent_residual(const VectorField& X, const DynExponent& z) {
    auto [f, g] = linear_factors(X);
    if (z.infinite) return {f};
    return {f + g * (Rational(2) / z.value)};
}

std::vector<Poly> sch_residual(const VectorField& X) {
    const int d = X.dim();
    const auto& nc = flat(d);
    auto out = conformal_residual(X);
    auto [f, graw] = linear_factors(X);
    Poly g = time_part(graw);
    for (int A = 1; A <= d; ++A) out.push_back(f.differentiate(A));
    out.push_back(f.differentiate(0) + g.differentiate(0));
    Observer ether{VectorField(d)};
    ether.U[0] = Poly::constant(d, Rational(1));
    Connection dG = vary_connection(nc.base, ether, TwoForm(d), f, g, OneForm(d), false);
    Connection L = lie_derive_connection(X, nc.Gamma) - dG;
    append(out, L.data());
    return out;
}

std::vector<Poly> cnc_residual(const VectorField& X) {
    const int d = X.dim();
    auto out = conformal_residual(X);
    auto f = linear_factors(X).first;
    for (int A = 1; A <= d; ++A) out.push_back(f.differentiate(A));
    for (int A = 1; A <= d; ++A)
        for (int B = A; B <= d; ++B)
            for (int C = 1; C <= d; ++C) out.push_back(dd(X[C], A, B));
    return out;
}

std::vector<Poly> cmil_raw_residual(const VectorField& X) {
    const int d = X.dim();
    auto out = conformal_residual(X);
    auto f = linear_factors(X).first;
    Poly fp = f.differentiate(0);
    for (int A = 1; A <= d; ++A) out.push_back(f.differentiate(A));
    for (int A = 1; A <= d; ++A)
        for (int B = 1; B <= d; ++B) {
            Poly r = dd(X[A], 0, B);
            if (A == B) r += fp * Rational(1, 2);
            out.push_back(r);
            out.push_back(dd(X[A], 0, 0).differentiate(B));
            for (int C = B; C <= d; ++C) out.push_back(dd(X[A], B, C));
        }
    return out;
}

namespace {

void require_constant_ether(const VectorField& U) {
    const int d = U.dim();
    if (U[0] != Poly::constant(d, Rational(1)))
        throw std::invalid_argument("ether must have unit time component");
    for (int A = 1; A <= d; ++A)
        if (!U[A].is_constant()) throw std::invalid_argument("ether must have constant spatial components");
}

}  // namespace

std::vector<Poly> ether_residual(const VectorField& X, const VectorField& ether) {
    const int d = X.dim();
    require_same_dim(d, ether.dim(), "ether_residual");
    auto [f, graw] = linear_factors(X);
    Poly s = f.differentiate(0) + time_part(graw).differentiate(0);
    std::vector<Poly> out;
    for (int A = 1; A <= d; ++A) out.push_back(dd(X[A], 0, 0) - s * ether[A]);
    return out;
}

std::vector<Poly> cmil_branch_residual(const VectorField& X, const VectorField& ether, const Rational& c) {
    require_constant_ether(ether);
    auto out = cmil_raw_residual(X);
    auto f = linear_factors(X).first;
    out.push_back(dd(X[0], 0, 0) + f.differentiate(0) * (c / Rational(2)));
    append(out, ether_residual(X, ether));
    return out;
}

std::vector<Poly> raised_connection_variation(const VectorField& X) {
    const int d = X.dim();
    const auto& nc = flat(d);
    Connection L = lie_derive_connection(X, nc.Gamma);
    const auto& gm = nc.base.gamma;
    std::vector<Poly> out;
    for (int a = 0; a <= d; ++a)
        for (int b = 0; b <= d; ++b)
            for (int c = 0; c <= d; ++c) {
                Poly v(d);
                for (int k = 0; k <= d; ++k)
                    for (int l = 0; l <= d; ++l)
                        if (!gm(a, k).is_zero() && !gm(b, l).is_zero()) v += gm(a, k) * gm(b, l) * L(c, k, l);
                out.push_back(v);
            }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Families

namespace {

AlgebraBasis finish(Family fam, int d, std::optional<DynExponent> z, int deg_t, std::vector<VectorField> gens) {
    AlgebraBasis b;
    b.family = fam;
    b.d = d;
    b.z = z;
    b.deg_t = deg_t;
    const auto& base = flat(d).base;
    for (const auto& X : gens) {
        auto fg = conformal_factors(X, base.gamma, base.theta);
        if (!fg) throw std::logic_error("solver produced a field outside cgal");
        b.factors.push_back(*fg);
    }
    b.generators = std::move(gens);
    return b;
}

Residual with_exponent(Residual r, DynExponent z) {
    return [r = std::move(r), z](const VectorField& X) {
        auto out = r(X);
        append(out, exponent_residual(X, z));
        return out;
    };
}

}  // namespace

AlgebraBasis solve_cgal(int d, int deg_t) {
    return finish(Family::CGAL, d, std::nullopt, deg_t, solve_linear(ansatz_fields(d, deg_t), conformal_residual));
}

AlgebraBasis solve_cgal_z(int d, const DynExponent& z, int deg_t) {
    auto gens = solve_linear(ansatz_fields(d, deg_t), with_exponent(conformal_residual, z));
    return finish(Family::CGAL_Z, d, z, deg_t, std::move(gens));
}

AlgebraBasis solve_sch_expanded(int d) {
    const int deg_t = 3;
    return finish(Family::SCH_EXPANDED, d, std::nullopt, deg_t, solve_linear(ansatz_fields(d, deg_t), sch_residual));
}

AlgebraBasis restrict_sch_z(const AlgebraBasis& expanded, const DynExponent& z) {
    auto gens = solve_linear(expanded.generators, [&](const VectorField& X) { return exponent_residual(X, z); });
    return finish(Family::SCH_Z, expanded.d, z, expanded.deg_t, std::move(gens));
}

AlgebraBasis restrict_gal(const AlgebraBasis& expanded) {
    auto gens = solve_linear(expanded.generators, [](const VectorField& X) {
        auto [f, g] = linear_factors(X);
        return std::vector<Poly>{f, g};
    });
    return finish(Family::GAL, expanded.d, std::nullopt, expanded.deg_t, std::move(gens));
}

// ---------------------------------------------------------------------------------------------
// cnc

CncWitness cnc_witness(const VectorField& X) {
    const int d = X.dim();
    CncWitness w;
    w.X = X;
    auto [f, g] = linear_factors(X);
    w.f = f;
    w.g = time_part(g);
    Poly s = w.f + w.g;
    w.den = s.is_zero() ? Poly::constant(d, Rational(1)) : s;
    Poly fp = f.differentiate(0);
    w.U_num = VectorField(d);
    w.U_num[0] = w.den;
    if (!s.is_zero())
        for (int A = 1; A <= d; ++A)
            for (int B = 1; B <= d; ++B) {
                Poly om = dd(X[A], 0, B);
                if (A == B) om += fp * Rational(1, 2);
                w.U_num[A] += om * Poly::variable(d, B);
            }
    w.F_num = TwoForm(d);
    Poly denp = w.den.differentiate(0);
    for (int A = 1; A <= d; ++A) {
        w.F_num.set(0, A, w.den * dd(X[A], 0, 0) - denp * w.U_num[A]);
        for (int B = A + 1; B <= d; ++B) w.F_num.set(A, B, w.den * (dd(X[A], 0, B) * Rational(-2)));
    }
    w.verified = verify_cnc_witness(w);

    // FAB / F0A relations for U = u / den
    bool ok = true;
    if (s.is_zero()) {
        ok = w.F_num.is_zero();
    } else {
        for (int A = 1; A <= d && ok; ++A) {
            Poly r = s * w.U_num[A].differentiate(0) - s.differentiate(0) * w.U_num[A];
            for (int B = 1; B <= d; ++B) r += w.U_num[B] * w.U_num[B].differentiate(A);
            ok = r == w.F_num(0, A);
            for (int B = 1; B <= d && ok; ++B)
                ok = s * (w.U_num[B].differentiate(A) - w.U_num[A].differentiate(B)) == w.F_num(A, B);
        }
    }
    w.coriolis_consistent = ok;
    return w;
}

bool verify_cnc_witness(const CncWitness& w) {
    const auto& X = w.X;
    const int d = X.dim();
    if (!all_zero(cnc_residual(X))) return false;
    if (w.U_num[0] != w.den) return false;
    if (!w.F_num.is_antisymmetric()) return false;
    const Poly s = w.f + w.g;
    const Poly den2 = w.den * w.den;
    const Poly fp = w.f.differentiate(0);
    const Poly sp = s.differentiate(0);
    for (int A = 1; A <= d; ++A) {
        Poly six = den2 * dd(X[A], 0, 0) - sp * w.den * w.U_num[A] - s * w.F_num(0, A);
        if (!six.is_zero()) return false;
        for (int B = 1; B <= d; ++B) {
            Poly seven = den2 * dd(X[A], 0, B) + s * w.F_num(A, B) * Rational(1, 2);
            if (A == B) seven += fp * den2 * Rational(1, 2);
            if (!seven.is_zero()) return false;
        }
    }
    // closedness of F = F_num / den^2:  den dF_num - 2 den' (theta ^ F_num) = 0
    auto dF = exterior_derivative(w.F_num);
    const auto& theta = flat(d).base.theta;
    const Poly denp = w.den.differentiate(0);
    for (int a = 0; a <= d; ++a)
        for (int b = 0; b <= d; ++b)
            for (int c = 0; c <= d; ++c) {
                Poly wedge = theta[a] * w.F_num(b, c) + theta[b] * w.F_num(c, a) + theta[c] * w.F_num(a, b);
                if (!(w.den * dF(a, b, c) - denp * wedge * Rational(2)).is_zero()) return false;
            }
    return true;
}

CncResult solve_cnc_flat(int d, int deg_t) {
    CncResult r;
    r.basis = finish(Family::CNC, d, std::nullopt, deg_t, solve_linear(ansatz_fields(d, deg_t), cnc_residual));
    VectorField Tdt(d);
    Tdt[0] = Poly::variable(d, 0);
    for (const auto& X : r.basis.generators) {
        CncWitness w = cnc_witness(X);
        if (!w.verified && (w.f + w.g).is_zero()) {
            w = cnc_witness(X + Tdt);
            w.adapted = true;
        }
        r.witnesses.push_back(std::move(w));
    }
    return r;
}

// ---------------------------------------------------------------------------------------------
// Closure

namespace {

std::vector<VectorField> all_brackets(const std::vector<VectorField>& fields) {
    std::vector<VectorField> out;
    for (std::size_t i = 0; i < fields.size(); ++i)
        for (std::size_t j = i + 1; j < fields.size(); ++j) out.push_back(lie_bracket(fields[i], fields[j]));
    return out;
}

}  // namespace

ClosureReport closure_check(const std::vector<VectorField>& fields) {
    ClosureReport rep;
    if (fields.size() < 2) return rep;
    const int dim = fields.front().dim();
    auto brackets = all_brackets(fields);
    FieldIndex idx(dim, fields);
    for (const auto& B : brackets) idx.add(B);
    std::vector<SparseVec> vecs;
    for (const auto& X : fields) vecs.push_back(idx.vec(X));
    SpanIndex span(idx.size(), vecs);
    std::size_t k = 0;
    for (std::size_t i = 0; i < fields.size(); ++i)
        for (std::size_t j = i + 1; j < fields.size(); ++j, ++k) {
            SparseVec r = span.residual(idx.vec(brackets[k]));
            if (!r.empty()) {
                rep.closed = false;
                rep.i = static_cast<int>(i);
                rep.j = static_cast<int>(j);
                rep.residual = idx.field(r);
                return rep;
            }
        }
    return rep;
}

GrowthReport lie_closure(const std::vector<VectorField>& seed, const std::function<bool(const VectorField&)>& inside,
                         int max_dim) {
    GrowthReport rep;
    if (seed.empty()) return rep;
    const int dim = seed.front().dim();
    rep.generators = canonical_fields(seed, dim);
    while (true) {
        std::vector<VectorField> grown = rep.generators;
        bool added = false;
        for (std::size_t i = 0; i < rep.generators.size(); ++i)
            for (std::size_t j = i + 1; j < rep.generators.size(); ++j) {
                VectorField B = lie_bracket(rep.generators[i], rep.generators[j]);
                if (B.is_zero() || span_contains(grown, B)) continue;
                if (!inside(B)) {
                    rep.stayed_inside = false;
                    return rep;
                }
                grown.push_back(B);
                added = true;
                if (static_cast<int>(grown.size()) > max_dim) {
                    rep.stayed_inside = false;
                    return rep;
                }
            }
        if (!added) return rep;
        rep.generators = canonical_fields(grown, dim);
        ++rep.steps;
    }
}

// ---------------------------------------------------------------------------------------------
// cmil

namespace {

const int kCmilDeg = 2;

std::vector<VectorField> cmil_raw(int d) { return solve_linear(ansatz_fields(d, kCmilDeg), cmil_raw_residual); }

std::vector<VectorField> cmil_seed(const std::vector<VectorField>& raw, const VectorField& ether, const Rational& c) {
    return solve_linear(raw, [&](const VectorField& X) { return cmil_branch_residual(X, ether, c); });
}

}  // namespace

GrowthReport cmil_branch_closure(int d, const VectorField& ether, const Rational& c) {
    require_constant_ether(ether);
    auto raw = cmil_raw(d);
    auto seed = cmil_seed(raw, ether, c);
    return lie_closure(seed, [&](const VectorField& B) { return span_contains(raw, B); });
}

CmilResult solve_cmil_flat(int d, const VectorField& ether) {
    require_same_dim(d, ether.dim(), "solve_cmil_flat");
    require_constant_ether(ether);
    CmilResult r;
    r.raw = cmil_raw(d);
    r.raw_dim = static_cast<int>(r.raw.size());
    r.seed_c1 = cmil_seed(r.raw, ether, Rational(1));
    r.seed_c2 = cmil_seed(r.raw, ether, Rational(2));
    auto inside = [&](const VectorField& B) { return span_contains(r.raw, B); };
    auto g1 = lie_closure(r.seed_c1, inside);
    auto g2 = lie_closure(r.seed_c2, inside);
    if (!g1.stayed_inside || !g2.stayed_inside) throw std::logic_error("cmil branch closure left the raw space");
    r.c1 = finish(Family::CMIL, d, std::nullopt, kCmilDeg, g1.generators);
    r.c2 = finish(Family::CMIL, d, std::nullopt, kCmilDeg, g2.generators);

    // Ether-adapted c = 1 basis: seed plus one expansion-type generator per shifted ether.
    r.c1_ether_adapted = r.seed_c1;
    r.c1_ethers.assign(r.seed_c1.size(), ether);
    for (int A = 1; A <= d; ++A) {
        VectorField U = ether;
        U[A] += Poly::constant(d, Rational(1));
        for (const auto& X : cmil_seed(r.raw, U, Rational(1)))
            if (!span_contains(r.c1_ether_adapted, X)) {
                r.c1_ether_adapted.push_back(X);
                r.c1_ethers.push_back(U);
                break;
            }
    }
    return r;
}

AlgebraBasis restrict_cmil_z(const AlgebraBasis& c1, const DynExponent& z) {
    auto gens = solve_linear(c1.generators, [&](const VectorField& X) { return exponent_residual(X, z); });
    return finish(Family::CMIL_Z, c1.d, z, c1.deg_t, std::move(gens));
}

// ---------------------------------------------------------------------------------------------
// alt

VectorField z_dilation_field(int d, const Poly& xi, const DynExponent& z) {
    VectorField Y(d);
    Y[0] = xi;
    if (!z.infinite) {
        Poly c = xi.differentiate(0) * (Rational(1) / z.value);
        for (int A = 1; A <= d; ++A) Y[A] = c * Poly::variable(d, A);
    }
    return Y;
}

namespace {

std::vector<VectorField> sl2_seeds(int d, const DynExponent& z) {
    std::vector<VectorField> out;
    for (int k = 0; k <= 2; ++k) {
        Exponent e(d + 1, 0);
        e[0] = k;
        out.push_back(z_dilation_field(d, Poly::monomial(d, e), z));
    }
    return out;
}

}  // namespace

AlgebraBasis alt_subalgebra(int d, int N) {
    if (N < 1) throw std::invalid_argument("alt: N must be at least 1");
    const DynExponent z = DynExponent::finite(Rational(2, N));
    const int D = std::max(N, 2);
    std::vector<VectorField> L = solve_cgal_z(d, z, D).generators;
    const auto seeds = sl2_seeds(d, z);
    while (true) {
        FieldIndex idx(d, L);
        std::vector<std::vector<VectorField>> br(seeds.size());
        for (std::size_t s = 0; s < seeds.size(); ++s)
            for (const auto& X : L) {
                br[s].push_back(lie_bracket(X, seeds[s]));
                idx.add(br[s].back());
            }
        std::vector<SparseVec> vecs;
        for (const auto& X : L) vecs.push_back(idx.vec(X));
        SpanIndex span(idx.size(), vecs);
        const int n = static_cast<int>(L.size());
        std::map<std::pair<std::size_t, int>, SparseVec> rows;
        for (std::size_t s = 0; s < seeds.size(); ++s)
            for (int i = 0; i < n; ++i) {
                SparseVec r = span.residual(idx.vec(br[s][i]));
                for (const auto& [col, c] : r.entries()) rows[{s, col}].set(i, c);
            }
        Echelon ech(n);
        for (auto& [k, row] : rows) ech.insert(std::move(row));
        if (ech.rank() == 0) break;
        std::vector<VectorField> next;
        for (const auto& v : ech.nullspace()) {
            VectorField X(d);
            for (const auto& [j, c] : v.entries()) X += c * L[j];
            next.push_back(std::move(X));
        }
        L = canonical_fields(next, d);
    }
    if (!closure_check(L).closed) throw std::logic_error("alt: pruned span is not closed");
    return finish(Family::ALT, d, z, D, std::move(L));
}

std::vector<VectorField> alt_candidate(int d, int N, const DynExponent& z) {
    auto out = sl2_seeds(d, z);
    for (int A = 1; A <= d; ++A)
        for (int B = A + 1; B <= d; ++B) {
            VectorField R(d);
            R[A] = Poly::variable(d, B);
            R[B] = -Poly::variable(d, A);
            out.push_back(R);
        }
    for (int A = 1; A <= d; ++A)
        for (int k = 0; k <= N; ++k) {
            VectorField T(d);
            Exponent e(d + 1, 0);
            e[0] = k;
            T[A] = Poly::monomial(d, e);
            out.push_back(T);
        }
    return out;
}

Rational alt_obstruction(int d, int N, const DynExponent& z, const Rational& k1, const Rational& e1,
                         const Rational& k2, const Rational& e2) {
    Exponent half_t2(d + 1, 0);
    half_t2[0] = 2;
    VectorField K = z_dilation_field(d, Poly::monomial(d, half_t2, Rational(1, 2)), z);
    Exponent tn(d + 1, 0);
    tn[0] = N;
    VectorField T(d);
    T[1] = Poly::monomial(d, tn);
    VectorField X1 = k1 * K + e1 * T;
    VectorField X2 = k2 * K + e2 * T;
    Exponent top = tn;
    top[0] = N + 1;
    return lie_bracket(X1, X2)[1].coefficient(top);
}

// ---------------------------------------------------------------------------------------------
// Structure constants

bool StructureConstants::antisymmetric() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (at(k, i, j) != -at(k, j, i)) return false;
    return true;
}

bool StructureConstants::jacobi() const {
    // sparse list of nonzero c^m_{ij} per (i, j)
    std::vector<std::vector<std::pair<int, Rational>>> nz(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m)
                if (!at(m, i, j).is_zero()) nz[i * n + j].push_back({m, at(m, i, j)});
    std::vector<Rational> acc(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                std::fill(acc.begin(), acc.end(), Rational(0));
                auto add = [&](int a, int b, int c) {
                    for (const auto& [m, x] : nz[a * n + b])
                        for (const auto& [l, y] : nz[m * n + c]) acc[l] += x * y;
                };
                add(i, j, k);
                add(j, k, i);
                add(k, i, j);
                for (const auto& v : acc)
                    if (!v.is_zero()) return false;
            }
    return true;
}

StructureResult structure_constants(const std::vector<VectorField>& basis) {
    StructureResult res;
    const int n = static_cast<int>(basis.size());
    StructureConstants sc;
    sc.n = n;
    sc.c.assign(static_cast<std::size_t>(n) * n * n, Rational(0));
    if (n == 0) {
        res.constants = sc;
        return res;
    }
    const int dim = basis.front().dim();
    FieldIndex idx(dim, basis);
    std::vector<VectorField> br(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            br[i * n + j] = lie_bracket(basis[i], basis[j]);
            idx.add(br[i * n + j]);
        }
    std::vector<SparseVec> vecs;
    for (const auto& X : basis) vecs.push_back(idx.vec(X));
    SpanIndex span(idx.size(), vecs);
    if (!span.independent()) throw std::invalid_argument("structure_constants: basis is linearly dependent");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SparseVec v = idx.vec(br[i * n + j]);
            auto coords = span.coordinates(v);
            if (!coords) {
                res.failure.closed = false;
                res.failure.i = i;
                res.failure.j = j;
                res.failure.residual = idx.field(span.residual(v));
                return res;
            }
            for (int k = 0; k < n; ++k) sc.at(k, i, j) = (*coords)[k];
        }
    res.constants = std::move(sc);
    return res;
}

// ---------------------------------------------------------------------------------------------

AlgebraBasis solve(const SolveRequest& req) {
    const int d = req.d;
    if (d < 2) throw std::invalid_argument("--d must be at least 2");
    auto need_z = [&]() {
        if (!req.z) throw std::invalid_argument("family '" + req.family + "' needs --z");
        return *req.z;
    };
    VectorField ether(d);
    ether[0] = Poly::constant(d, Rational(1));
    const std::string& f = req.family;
    if (f == "cgal") return solve_cgal(d, req.deg_t);
    if (f == "cgal-z") return solve_cgal_z(d, need_z(), req.deg_t);
    if (f == "sch") return restrict_sch_z(solve_sch_expanded(d), req.z.value_or(DynExponent::finite(Rational(2))));
    if (f == "sch-expanded") return solve_sch_expanded(d);
    if (f == "gal") return restrict_gal(solve_sch_expanded(d));
    if (f == "cnc") return solve_cnc_flat(d, req.deg_t).basis;
    if (f == "cmil" || f == "cmil-z" || f == "cga") {
        auto r = solve_cmil_flat(d, ether);
        if (f == "cga") return restrict_cmil_z(r.c1, DynExponent::finite(Rational(1)));
        if (f == "cmil-z") return restrict_cmil_z(r.c1, need_z());
        if (req.branch == "c1") return r.c1;
        if (req.branch == "c2") return r.c2;
        throw std::invalid_argument("--branch must be c1 or c2");
    }
    if (f == "alt") return alt_subalgebra(d, req.N);
    throw std::invalid_argument("unknown family '" + f + "'");
}

}  // namespace ncsym
