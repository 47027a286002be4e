#include "ncsym/mechanics.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

namespace ncsym {

Vec rk4_increment(const std::function<Vec(double, const Vec&)>& f, double tau, const Vec& y, double h) {
    Vec k1 = f(tau, y);
    Vec k2 = f(tau + h / 2, y + (h / 2) * k1);
    Vec k3 = f(tau + h / 2, y + (h / 2) * k2);
    Vec k4 = f(tau + h, y + h * k3);
    return (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
}

Vec rk4_step(const std::function<Vec(double, const Vec&)>& f, double tau, const Vec& y, double h) {
    return y + rk4_increment(f, tau, y, h);
}

NumericConnection::NumericConnection(const Connection& G) : d_(G.dim()) {
    for (int c = 0; c <= d_; ++c)
        for (int a = 0; a <= d_; ++a)
            for (int b = 0; b <= d_; ++b) {
                const Poly& p = G(c, a, b);
                if (p.is_zero()) continue;
                Entry e{c, a, b, {}};
                for (const auto& [ex, co] : p.terms()) e.terms.emplace_back(std::vector<int>(ex.begin(), ex.end()), co.to_double());
                entries_.push_back(std::move(e));
            }
}

Vec NumericConnection::contract(const Vec& x, const Vec& v) const {
    Vec out = Vec::Zero(d_ + 1);
    for (const auto& e : entries_) {
        double val = 0;
        for (const auto& [ex, co] : e.terms) {
            double m = co;
            for (int i = 0; i <= d_; ++i)
                for (int k = 0; k < ex[i]; ++k) m *= x[i];
            val += m;
        }
        out[e.c] += val * v[e.a] * v[e.b];
    }
    return out;
}

GeodesicTrajectory integrate_geodesic(const Connection& G, const Vec& x0, const Vec& xdot0, int steps, double h) {
    const int n = G.dim() + 1;
    if (x0.size() != n || xdot0.size() != n) throw std::invalid_argument("integrate_geodesic: state dimension mismatch");
    if (!(h > 0)) throw std::invalid_argument("integrate_geodesic: step must be positive");
    NumericConnection Gn(G);
    auto rhs = [&](double, const Vec& y) {
        Vec dy(2 * n);
        Vec x = y.head(n), v = y.tail(n);
        dy.head(n) = v;
        dy.tail(n) = -Gn.contract(x, v);
        return dy;
    };
    GeodesicTrajectory tr;
    tr.timelike = xdot0[0] != 0.0;
    Vec y(2 * n);
    y << x0, xdot0;
    tr.tau.push_back(0);
    tr.x.push_back(x0);
    tr.xdot.push_back(xdot0);
    for (int s = 0; s < steps; ++s) {
        y = rk4_step(rhs, s * h, y, h);
        tr.tau.push_back((s + 1) * h);
        tr.x.push_back(y.head(n));
        tr.xdot.push_back(y.tail(n));
        if (y[n] != xdot0[0]) tr.tdot_preserved = false;
    }
    return tr;
}

MassiveCharges massive_charges(const MassiveState& y, double m, double s) {
    if (!(m > 0)) throw std::invalid_argument("massive_charges: mass must be positive");
    MassiveCharges c;
    Vec3 p = m * y.v;
    Vec3 q = y.x - y.v * y.t;
    c.P = p;
    c.G = m * q;
    c.J = y.x.cross(p) + s * y.u;
    c.H = p.squaredNorm() / (2 * m);
    c.K = m * q.squaredNorm() / 2;
    c.D = p.dot(q);
    return c;
}

std::vector<MassiveState> massive_flow(const MassiveState& y0, int steps, double h) {
    auto rhs = [](double, const Vec& y) {
        Vec dy = Vec::Zero(10);
        dy[0] = 1;
        dy.segment(1, 3) = y.segment(4, 3);
        return dy;
    };
    std::vector<MassiveState> out{y0};
    Vec y = pack(y0);
    Vec carry = Vec::Zero(10);  // Kahan compensation
    for (int s = 0; s < steps; ++s) {
        Vec inc = rk4_increment(rhs, s * h, y, h) - carry;
        Vec next = y + inc;
        carry = (next - y) - inc;
        y = next;
        y.segment(7, 3).normalize();
        out.push_back(unpack_massive(y));
    }
    return out;
}

SchNumeric to_numeric(const SchParams& p) {
    if (p.omega.n != 3) throw std::invalid_argument("massive model needs d = 3");
    SchNumeric n;
    for (int A = 0; A < 3; ++A) {
        for (int B = 0; B < 3; ++B) n.omega(A, B) = p.omega(A, B).to_double();
        n.beta[A] = p.beta[A].to_double();
        n.gamma[A] = p.gamma[A].to_double();
    }
    n.kappa = p.kappa.to_double();
    n.lambda = p.lambda.to_double();
    n.epsilon = p.epsilon.to_double();
    return n;
}

Vec3 axial(const Mat3& w) { return {-w(1, 2), -w(2, 0), -w(0, 1)}; }

Vec massive_lift(const SchNumeric& p, const MassiveState& y) {
    Vec Z(10);
    Z[0] = p.kappa * y.t * y.t + 2 * p.lambda * y.t + p.epsilon;
    Z.segment(1, 3) = p.omega * y.x + (p.kappa * y.t + p.lambda) * y.x + p.beta * y.t + p.gamma;
    Z.segment(4, 3) = p.omega * y.v + p.beta - p.lambda * y.v + p.kappa * (y.x - y.v * y.t);
    Z.segment(7, 3) = p.omega * y.u;
    return Z;
}

double massive_noether(const SchNumeric& p, const MassiveState& y, double m, double s) {
    auto c = massive_charges(y, m, s);
    return c.J.dot(axial(p.omega)) - c.G.dot(p.beta) + c.P.dot(p.gamma) - c.H * p.epsilon - c.K * p.kappa +
           c.D * p.lambda;
}

PhotonState photon_flow(const PhotonState& y, double arclength) {
    if (std::abs(y.u.norm() - 1) > 1e-12) throw std::invalid_argument("photon_flow: u must be a unit vector");
    PhotonState out = y;
    out.x += arclength * y.u;
    return out;
}

bool PhotonSymmetry::omega_constant() const {
    for (std::size_t i = 1; i < omega.size(); ++i)
        if (!omega[i].isZero(0)) return false;
    return true;
}

namespace {

double falling(int n, int k) {
    double r = 1;
    for (int i = 0; i < k; ++i) r *= n - i;
    return r;
}

template <class T>
T eval_poly(const std::vector<T>& c, double t, int der, const T& zero) {
    T acc = zero;
    for (int n = static_cast<int>(c.size()) - 1; n >= der; --n) acc = acc * t + c[n] * falling(n, der);
    return acc;
}

double spin_form(const Vec3& u, const Vec3& a, const Vec3& b, double s) {
    double r = u.norm();
    return -s * u.dot(a.cross(b)) / (r * r * r);
}

}  // namespace

Mat3 eval_omega(const PhotonSymmetry& X, double t, int der) { return eval_poly(X.omega, t, der, Mat3(Mat3::Zero())); }
Vec3 eval_eta(const PhotonSymmetry& X, double t, int der) { return eval_poly(X.eta, t, der, Vec3(Vec3::Zero())); }
double eval_xi(const PhotonSymmetry& X, double t, int der) { return eval_poly(X.xi, t, der, 0.0); }

Vec photon_lift(const PhotonSymmetry& X, const PhotonState& y, double k) {
    Mat3 w = eval_omega(X, y.t), wd = eval_omega(X, y.t, 1);
    Vec Z(8);
    Z[0] = eval_xi(X, y.t);
    Z.segment(1, 3) = w * y.x + eval_eta(X, y.t);
    Z[4] = k * (y.u.dot(wd * y.x) + eval_eta(X, y.t, 1).dot(y.u)) - eval_xi(X, y.t, 1) * y.E;
    Z.segment(5, 3) = w * y.u;
    return Z;
}

double photon_charges(const PhotonState& y, double k, double s, const PhotonSymmetry& X) {
    if (!(k > 0)) throw std::invalid_argument("photon_charges: color must be positive");
    if (s != 0 && !X.omega_constant())
        throw std::invalid_argument("photon_charges: a spinning photon only admits constant rotations (omega' = 0)");
    Vec3 w = axial(eval_omega(X, y.t));
    return (y.x.cross(k * y.u) + s * y.u).dot(w) + k * y.u.dot(eval_eta(X, y.t)) - eval_xi(X, y.t) * y.E;
}

Vec pack(const MassiveState& y) {
    Vec v(10);
    v << y.t, y.x, y.v, y.u;
    return v;
}

MassiveState unpack_massive(const Vec& v) {
    return {v[0], v.segment(1, 3), v.segment(4, 3), v.segment(7, 3)};
}

Vec pack(const PhotonState& y) {
    Vec v(8);
    v << y.t, y.x, y.E, y.u;
    return v;
}

PhotonState unpack_photon(const Vec& v) { return {v[0], v.segment(1, 3), v[4], v.segment(5, 3)}; }

std::vector<Vec> PresymplecticModel::tangent_basis(const Vec& y) const {
    std::vector<Vec> out;
    for (int i = 0; i < dim - 3; ++i) out.push_back(Vec::Unit(dim, i));
    Vec3 u = y.tail(3).normalized();
    Vec3 e1 = u.unitOrthogonal();
    Vec3 e2 = u.cross(e1);
    for (const Vec3& e : {e1, e2}) {
        Vec w = Vec::Zero(dim);
        w.tail(3) = e;
        out.push_back(w);
    }
    return out;
}

PresymplecticModel massive_model(double m, double s) {
    PresymplecticModel M;
    M.name = "massive";
    M.dim = 10;
    M.sigma = [m, s](const Vec& y, const Vec& a, const Vec& b) {
        Vec3 v = y.segment(4, 3);
        Vec3 ax = a.segment(1, 3) - v * a[0], bx = b.segment(1, 3) - v * b[0];
        return m * (a.segment(4, 3).dot(bx) - b.segment(4, 3).dot(ax)) +
               spin_form(y.tail(3), a.tail(3), b.tail(3), s);
    };
    return M;
}

PresymplecticModel photon_model(double k, double s) {
    PresymplecticModel M;
    M.name = "photon";
    M.dim = 8;
    M.sigma = [k, s](const Vec& y, const Vec& a, const Vec& b) {
        return k * (a.tail(3).dot(b.segment(1, 3)) - b.tail(3).dot(a.segment(1, 3))) - (a[4] * b[0] - b[4] * a[0]) +
               spin_form(y.tail(3), a.tail(3), b.tail(3), s);
    };
    return M;
}

SymmetryCheck presymplectic_symmetry_check(const PresymplecticModel& model, const std::function<Vec(const Vec&)>& Z,
                                           const Vec& y, double tol, double step) {
    auto alpha = [&](const Vec& p, const Vec& w) { return model.sigma(p, Z(p), w); };
    auto basis = model.tangent_basis(y);
    SymmetryCheck r;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const Vec &a = basis[i], &b = basis[j];
            double da = (alpha(y + step * a, b) - alpha(y - step * a, b)) / (2 * step);
            double db = (alpha(y + step * b, a) - alpha(y - step * b, a)) / (2 * step);
            r.residual = std::max(r.residual, std::abs(da - db));
        }
    r.pass = r.residual < tol;
    return r;
}

NoetherCheck noether_check(const PresymplecticModel& model, const std::function<Vec(const Vec&)>& Z,
                           const std::function<double(const Vec&)>& J, const Vec& y, double step) {
    Vec z = Z(y);
    double plus = 0, minus = 0;
    for (const Vec& a : model.tangent_basis(y)) {
        double lhs = model.sigma(y, z, a);
        double dJ = (J(y + step * a) - J(y - step * a)) / (2 * step);
        plus = std::max(plus, std::abs(lhs + dJ));
        minus = std::max(minus, std::abs(lhs - dJ));
    }
    NoetherCheck r;
    r.sign = plus <= minus ? 1 : -1;
    r.residual = std::min(plus, minus);
    return r;
}

PoissonTable poisson_check(double m, double s, int points, unsigned seed) {
    if (!(m > 0)) throw std::invalid_argument("poisson_check: mass must be positive");
    if (s == 0) throw std::invalid_argument("poisson_check: spin must be nonzero");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-2, 2);
    // ambient point (q, p, u) in R^9
    using Fn = std::function<double(const Vec&)>;
    std::vector<std::pair<std::string, Fn>> charges;
    for (int A = 0; A < 3; ++A) {
        std::string i = std::to_string(A + 1);
        charges.emplace_back("P" + i, [A](const Vec& z) { return z[3 + A]; });
        charges.emplace_back("G" + i, [A, m](const Vec& z) { return m * z[A]; });
        charges.emplace_back("J" + i, [A, s](const Vec& z) {
            Vec3 q = z.head(3), p = z.segment(3, 3), u = z.tail(3);
            return (q.cross(p) + s * u)[A];
        });
    }
    charges.emplace_back("H", [m](const Vec& z) { return z.segment(3, 3).squaredNorm() / (2 * m); });
    charges.emplace_back("K", [m](const Vec& z) { return m * z.head(3).squaredNorm() / 2; });
    charges.emplace_back("D", [](const Vec& z) { return z.head(3).dot(z.segment(3, 3)); });

    PoissonTable tab;
    const double h = 1e-4;
    for (int n = 0; n < points; ++n) {
        Vec z(9);
        for (int i = 0; i < 6; ++i) z[i] = U(rng);
        Vec3 u(U(rng), U(rng), U(rng));
        z.tail(3) = u.normalized();
        std::vector<Vec> B;
        for (int i = 0; i < 6; ++i) B.push_back(Vec::Unit(9, i));
        Vec3 e1 = Vec3(z.tail(3)).unitOrthogonal(), e2 = Vec3(z.tail(3)).cross(e1);
        for (const Vec3& e : {e1, e2}) {
            Vec w = Vec::Zero(9);
            w.tail(3) = e;
            B.push_back(w);
        }
        auto Omega = [&](const Vec& a, const Vec& b) {
            return a.segment(3, 3).dot(b.head(3)) - b.segment(3, 3).dot(a.head(3)) +
                   spin_form(z.tail(3), a.tail(3), b.tail(3), s);
        };
        Eigen::MatrixXd M(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) M(i, j) = Omega(B[i], B[j]);
        Eigen::MatrixXd Pi = -M.inverse();
        std::map<std::string, Vec> grad;
        for (const auto& [name, F] : charges) {
            Vec g(8);
            for (int i = 0; i < 8; ++i) g[i] = (F(z + h * B[i]) - F(z - h * B[i])) / (2 * h);
            grad[name] = g;
        }
        auto br = [&](const std::string& a, const std::string& b) { return grad[a].dot(Pi * grad[b]); };
        auto value = [&](const std::string& a) {
            for (const auto& [name, F] : charges)
                if (name == a) return F(z);
            return 0.0;
        };
        for (int A = 1; A <= 3; ++A)
            for (int C = 1; C <= 3; ++C) {
                std::string a = std::to_string(A), c = std::to_string(C);
                tab.max_error = std::max(tab.max_error, std::abs(br("P" + a, "G" + c) - (A == C ? m : 0.0)));
                tab.max_error = std::max(tab.max_error, std::abs(br("P" + a, "P" + c)));
                tab.max_error = std::max(tab.max_error, std::abs(br("G" + a, "G" + c)));
            }
        double j12 = br("J1", "J2"), j3 = value("J3");
        int sg = j12 * j3 >= 0 ? 1 : -1;
        if (tab.spin_sign == 0) tab.spin_sign = sg;
        for (int A = 0; A < 3; ++A) {
            std::string a = std::to_string(A + 1), b = std::to_string((A + 1) % 3 + 1), c = std::to_string((A + 2) % 3 + 1);
            tab.max_error = std::max(tab.max_error, std::abs(br("J" + a, "J" + b) - tab.spin_sign * value("J" + c)));
        }
        if (n == 0) {
            for (std::string pair : {"P1,G1", "P1,G2", "P1,P2", "G1,G2", "J1,J2", "H,G1", "D,H", "D,K", "H,K"}) {
                auto comma = pair.find(',');
                tab.entries["{" + pair + "}"] = br(pair.substr(0, comma), pair.substr(comma + 1));
            }
        }
        ++tab.points;
    }
    return tab;
}

double JacobiSeries::max_drift(const std::vector<double>& s) const {
    double r = 0;
    for (double v : s) r = std::max(r, std::abs(v - s.front()));
    return r;
}

JacobiSeries jacobi_charges(double m, double c, int k, const Vec3& x0, const Vec3& p0, int steps, double h,
                            double r_min) {
    if (!(m > 0)) throw std::invalid_argument("jacobi_charges: mass must be positive");
    auto potential = [c, k](const Vec3& x) { return c * std::pow(x.norm(), k); };
    auto rhs = [&](double, const Vec& y) {
        Vec dy(6);
        Vec3 x = y.head(3);
        dy.head(3) = y.tail(3) / m;
        dy.tail(3) = -c * k * std::pow(x.norm(), k - 2) * x;
        return dy;
    };
    JacobiSeries out;
    out.min_radius = x0.norm();
    Vec y(6);
    y << x0, p0;
    auto record = [&](double t) {
        Vec3 x = y.head(3), p = y.tail(3);
        double E = p.squaredNorm() / (2 * m) + potential(x);
        double D = p.dot(x) - 2 * E * t;
        out.t.push_back(t);
        out.E.push_back(E);
        out.D.push_back(D);
        out.K.push_back(m * x.squaredNorm() / 2 - t * D - E * t * t);
    };
    record(0);
    for (int s = 0; s < steps; ++s) {
        y = rk4_step(rhs, s * h, y, h);
        double r = y.head(3).norm();
        out.min_radius = std::min(out.min_radius, r);
        if (r < r_min) throw std::runtime_error("jacobi_charges: trajectory entered the r_min ball");
        record((s + 1) * h);
    }
    return out;
}

void write_trajectory_csv(std::ostream& os, const GeodesicTrajectory& tr) {
    if (tr.x.empty()) return;
    const int n = static_cast<int>(tr.x.front().size());
    os << "tau";
    for (int i = 0; i < n; ++i) os << ",x" << i;
    for (int i = 0; i < n; ++i) os << ",xdot" << i;
    os << '\n';
    os.precision(17);
    for (std::size_t s = 0; s < tr.x.size(); ++s) {
        os << tr.tau[s];
        for (int i = 0; i < n; ++i) os << ',' << tr.x[s][i];
        for (int i = 0; i < n; ++i) os << ',' << tr.xdot[s][i];
        os << '\n';
    }
}

}  // namespace ncsym
