#pragma once

#include "ncsym/rational.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncsym {

/// Exponent vector (e_0 for t, e_1..e_d for x^1..x^d).
using Exponent = std::vector<int>;

/// Sparse multivariate polynomial over Q in the variables t = x^0, x^1, ..., x^d.
///
/// Terms are kept in a std::map keyed by exponent, so iteration order is the
/// lexicographic monomial order with t most significant, and two polynomials are
/// equal exactly when their term maps are equal. Zero coefficients are never stored.
class Poly {
public:
    Poly() = default;
    explicit Poly(int dim);

    static Poly constant(int dim, const Rational& c);
    static Poly variable(int dim, int var);
    static Poly monomial(int dim, const Exponent& e, const Rational& c = Rational(1));
    /// Parses sums of monomials such as "2*t^2*x1 - 1/2*x3 + 5"; variables are t, x1..xd.
    static Poly parse(int dim, std::string_view text);

    int dim() const { return dim_; }
    int nvars() const { return dim_ + 1; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool depends_on(int var) const;
    int degree(int var) const;   ///< -1 for the zero polynomial
    int total_degree() const;    ///< -1 for the zero polynomial
    Rational coefficient(const Exponent& e) const;
    Rational constant_term() const;

    void add_term(const Exponent& e, const Rational& c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    Poly operator-() const;

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    Poly differentiate(int var) const;
    Rational evaluate(std::span<const Rational> point) const;
    double evaluate(std::span<const double> point) const;

    /// Exact quotient p / q when q divides p, otherwise empty.
    std::optional<Poly> divide_exact(const Poly& q) const;

    /// Re-indexes variables into a ring with `new_dim`; variable i goes to var_map[i].
    Poly embed(int new_dim, const std::vector<int>& var_map) const;

    /// Substitutes x^var := value (rational) and returns a polynomial in the same ring.
    Poly substitute(int var, const Rational& value) const;

    std::string str() const;

private:
    void check_var(int var) const;

    int dim_ = 0;
    std::map<Exponent, Rational> terms_;
};

Poly pow(const Poly& p, int e);

}  // namespace ncsym
