#include "ncsym/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace ncsym {

Poly::Poly(int dim) : dim_(dim) {
    if (dim < 0) throw std::invalid_argument("Poly: negative dimension");
}

Poly Poly::constant(int dim, const Rational& c) {
    Poly p(dim);
    p.add_term(Exponent(dim + 1, 0), c);
    return p;
}

Poly Poly::variable(int dim, int var) {
    Poly p(dim);
    p.check_var(var);
    Exponent e(dim + 1, 0);
    e[var] = 1;
    p.add_term(e, Rational(1));
    return p;
}

Poly Poly::monomial(int dim, const Exponent& e, const Rational& c) {
    if (static_cast<int>(e.size()) != dim + 1)
        throw std::invalid_argument("Poly::monomial: exponent length mismatch");
    Poly p(dim);
    p.add_term(e, c);
    return p;
}

Poly Poly::parse(int dim, std::string_view text) {
    Poly out(dim);
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("Poly::parse: empty input");
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("Poly::parse: " + why + " in '" + std::string(text) + "'");
    };
    auto read_uint = [&]() {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) fail("expected digits");
        std::string digits = s.substr(i, j - i);
        i = j;
        return digits;
    };
    while (i < s.size()) {
        Rational sign(1);
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = Rational(-1);
            ++i;
        } else if (i != 0) {
            fail("expected '+' or '-'");
        }
        Rational coef = sign;
        Exponent e(dim + 1, 0);
        bool first = true;
        while (true) {
            if (!first) {
                if (i < s.size() && s[i] == '*')
                    ++i;
                else
                    break;
            }
            first = false;
            if (i >= s.size()) fail("dangling operator");
            if (std::isdigit(static_cast<unsigned char>(s[i]))) {
                std::string num = read_uint();
                std::string den = "1";
                if (i < s.size() && s[i] == '/') {
                    ++i;
                    den = read_uint();
                }
                coef *= Rational::parse(num + "/" + den);
                continue;
            }
            int var = -1;
            if (s[i] == 't') {
                var = 0;
                ++i;
            } else if (s[i] == 'x') {
                ++i;
                var = std::stoi(read_uint());
                if (var < 1 || var > dim) fail("variable index out of range");
            } else {
                fail(std::string("unexpected character '") + s[i] + "'");
            }
            int power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                power = std::stoi(read_uint());
            }
            e[var] += power;
        }
        out.add_term(e, coef);
    }
    return out;
}

void Poly::check_var(int var) const {
    if (var < 0 || var > dim_) throw std::out_of_range("Poly: variable index out of range");
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

bool Poly::depends_on(int var) const {
    check_var(var);
    for (const auto& [e, c] : terms_)
        if (e[var] != 0) return true;
    return false;
}

int Poly::degree(int var) const {
    check_var(var);
    int deg = -1;
    for (const auto& [e, c] : terms_) deg = std::max(deg, e[var]);
    return deg;
}

int Poly::total_degree() const {
    int deg = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        deg = std::max(deg, s);
    }
    return deg;
}

Rational Poly::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::constant_term() const { return coefficient(Exponent(dim_ + 1, 0)); }

void Poly::add_term(const Exponent& e, const Rational& c) {
    if (static_cast<int>(e.size()) != dim_ + 1)
        throw std::invalid_argument("Poly: exponent length mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("Poly: dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("Poly: dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("Poly: dimension mismatch");
    Poly out(a.dim_);
    Exponent e(a.dim_ + 1);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i <= a.dim_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

Poly Poly::operator-() const {
    Poly out(*this);
    for (auto& [e, v] : out.terms_) v = -v;
    return out;
}

Poly Poly::differentiate(int var) const {
    check_var(var);
    Poly out(dim_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent f = e;
        f[var] -= 1;
        out.terms_.emplace(std::move(f), c * Rational(e[var]));
    }
    return out;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
    if (static_cast<int>(point.size()) != dim_ + 1)
        throw std::invalid_argument("Poly::evaluate: point length mismatch");
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (int i = 0; i <= dim_; ++i)
            if (e[i] != 0) term *= pow(point[i], e[i]);
        sum += term;
    }
    return sum;
}

double Poly::evaluate(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != dim_ + 1)
        throw std::invalid_argument("Poly::evaluate: point length mismatch");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c.to_double();
        for (int i = 0; i <= dim_; ++i)
            for (int k = 0; k < e[i]; ++k) term *= point[i];
        sum += term;
    }
    return sum;
}

std::optional<Poly> Poly::divide_exact(const Poly& q) const {
    if (q.dim_ != dim_) throw std::invalid_argument("Poly: dimension mismatch");
    if (q.is_zero()) throw std::domain_error("Poly::divide_exact: division by zero polynomial");
    Poly rem(*this), quot(dim_);
    const auto& [lq_e, lq_c] = *q.terms_.rbegin();
    while (!rem.is_zero()) {
        const auto& [lr_e, lr_c] = *rem.terms_.rbegin();
        Exponent m(dim_ + 1);
        for (int i = 0; i <= dim_; ++i) {
            m[i] = lr_e[i] - lq_e[i];
            if (m[i] < 0) return std::nullopt;
        }
        Poly step = Poly::monomial(dim_, m, lr_c / lq_c);
        quot += step;
        rem -= step * q;
    }
    return quot;
}

Poly Poly::embed(int new_dim, const std::vector<int>& var_map) const {
    if (static_cast<int>(var_map.size()) != dim_ + 1)
        throw std::invalid_argument("Poly::embed: variable map length mismatch");
    Poly out(new_dim);
    for (const auto& [e, c] : terms_) {
        Exponent f(new_dim + 1, 0);
        for (int i = 0; i <= dim_; ++i) {
            if (e[i] == 0) continue;
            if (var_map[i] < 0 || var_map[i] > new_dim)
                throw std::out_of_range("Poly::embed: target variable out of range");
            f[var_map[i]] += e[i];
        }
        out.add_term(f, c);
    }
    return out;
}

Poly Poly::substitute(int var, const Rational& value) const {
    check_var(var);
    Poly out(dim_);
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        f[var] = 0;
        out.add_term(f, c * pow(value, e[var]));
    }
    return out;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = abs(c);
        os << (c.sign() < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        bool has_var = std::any_of(e.begin(), e.end(), [](int k) { return k != 0; });
        bool need_coef = !has_var || !mag.is_one();
        if (need_coef) os << (mag.is_integer() ? mag.numerator().get_str() : mag.str());
        bool first_var = !need_coef;
        for (int i = 0; i <= dim_; ++i) {
            if (e[i] == 0) continue;
            if (!first_var) os << "*";
            os << (i == 0 ? std::string("t") : "x" + std::to_string(i));
            if (e[i] > 1) os << "^" << e[i];
            first_var = false;
        }
        first = false;
    }
    return os.str();
}

Poly pow(const Poly& p, int e) {
    if (e < 0) throw std::invalid_argument("Poly pow: negative exponent");
    Poly out = Poly::constant(p.dim(), Rational(1));
    for (int i = 0; i < e; ++i) out = out * p;
    return out;
}

}  // namespace ncsym
