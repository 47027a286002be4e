#pragma once

#include "ncsym/poly.hpp"
#include "ncsym/tensors.hpp"

#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace ncsym;

inline Poly P(int d, const std::string& s) { return Poly::parse(d, s); }

/// Vector field from component strings (t-component first).
inline VectorField V(int d, const std::vector<std::string>& comps) {
    VectorField X(d);
    for (int a = 0; a <= d && a < static_cast<int>(comps.size()); ++a) X[a] = Poly::parse(d, comps[a]);
    return X;
}

/// Random polynomial with small integer/half-integer coefficients and bounded total degree.
inline Poly random_poly(std::mt19937& rng, int d, int max_deg, int max_terms = 5) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> coef(-6, 6);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> var(0, d);
    Poly p(d);
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Exponent e(d + 1, 0);
        std::uniform_int_distribution<int> deg(0, max_deg);
        int total = deg(rng);
        for (int j = 0; j < total; ++j) e[var(rng)] += 1;
        p.add_term(e, Rational(coef(rng), den(rng)));
    }
    return p;
}

inline VectorField random_field(std::mt19937& rng, int d, int max_deg) {
    VectorField X(d);
    for (int a = 0; a <= d; ++a) X[a] = random_poly(rng, d, max_deg, 3);
    return X;
}

}  // namespace testsupport
