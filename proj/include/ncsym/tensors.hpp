#pragma once

#include "ncsym/poly.hpp"

#include <vector>

namespace ncsym {

/// Fixed-rank array of polynomials over a (d+1)-dimensional spacetime chart.
/// Index 0 is time, 1..d are space.
class PolyArray {
public:
    PolyArray() = default;
    PolyArray(int dim, int rank);

    int dim() const { return dim_; }
    int n() const { return dim_ + 1; }
    int rank() const { return rank_; }

    const std::vector<Poly>& data() const { return data_; }
    std::vector<Poly>& data() { return data_; }

    bool is_zero() const;

    friend bool operator==(const PolyArray& a, const PolyArray& b) {
        return a.dim_ == b.dim_ && a.rank_ == b.rank_ && a.data_ == b.data_;
    }

protected:
    std::size_t flat(int i) const;
    std::size_t flat(int i, int j) const;
    std::size_t flat(int i, int j, int k) const;

    int dim_ = 0;
    int rank_ = 0;
    std::vector<Poly> data_;
};

/// X = X^a d_a.
class VectorField : public PolyArray {
public:
    VectorField() = default;
    explicit VectorField(int dim) : PolyArray(dim, 1) {}
    explicit VectorField(std::vector<Poly> components);

    Poly& operator[](int a) { return data_[flat(a)]; }
    const Poly& operator[](int a) const { return data_[flat(a)]; }

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(const Rational& c);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(const Rational& c, VectorField a) { return a *= c; }

    std::string str() const;
};

/// theta_a dx^a.
class OneForm : public PolyArray {
public:
    OneForm() = default;
    explicit OneForm(int dim) : PolyArray(dim, 1) {}
    explicit OneForm(std::vector<Poly> components);

    Poly& operator[](int a) { return data_[flat(a)]; }
    const Poly& operator[](int a) const { return data_[flat(a)]; }

    OneForm& operator+=(const OneForm& o);
    OneForm& operator*=(const Rational& c);
    friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
};

/// Square polynomial matrix with two indices of the same type.
class PolyMatrix : public PolyArray {
public:
    PolyMatrix() = default;
    explicit PolyMatrix(int dim) : PolyArray(dim, 2) {}

    Poly& operator()(int a, int b) { return data_[flat(a, b)]; }
    const Poly& operator()(int a, int b) const { return data_[flat(a, b)]; }

    bool is_symmetric() const;
    bool is_antisymmetric() const;
};

/// Contravariant symmetric 2-tensor, e.g. gamma^{ab}.
class SymTensor2Up : public PolyMatrix {
public:
    SymTensor2Up() = default;
    explicit SymTensor2Up(int dim) : PolyMatrix(dim) {}
};

/// Covariant symmetric 2-tensor, e.g. the observer metric {}^U gamma_{ab}.
class SymTensor2Down : public PolyMatrix {
public:
    SymTensor2Down() = default;
    explicit SymTensor2Down(int dim) : PolyMatrix(dim) {}
};

/// F = 1/2 F_{ab} dx^a ^ dx^b; components stored as the full antisymmetric matrix.
class TwoForm : public PolyMatrix {
public:
    TwoForm() = default;
    explicit TwoForm(int dim) : PolyMatrix(dim) {}

    /// Sets F_{ab} = v and F_{ba} = -v.
    void set(int a, int b, const Poly& v);
    TwoForm& operator+=(const TwoForm& o);
    TwoForm& operator*=(const Rational& c);
    friend TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
};

/// Rank-3 covariant array, used for dF_{abc}.
class ThreeTensor : public PolyArray {
public:
    ThreeTensor() = default;
    explicit ThreeTensor(int dim) : PolyArray(dim, 3) {}

    Poly& operator()(int a, int b, int c) { return data_[flat(a, b, c)]; }
    const Poly& operator()(int a, int b, int c) const { return data_[flat(a, b, c)]; }
};

/// Gamma^c_{ab}, accessed as (c, a, b). Also carries connection-valued tensors such as
/// L_X Gamma and delta Gamma.
class Connection : public PolyArray {
public:
    Connection() = default;
    explicit Connection(int dim) : PolyArray(dim, 3) {}

    Poly& operator()(int c, int a, int b) { return data_[flat(c, a, b)]; }
    const Poly& operator()(int c, int a, int b) const { return data_[flat(c, a, b)]; }

    bool is_symmetric_lower() const;
    Connection& operator+=(const Connection& o);
    Connection& operator-=(const Connection& o);
    friend Connection operator+(Connection a, const Connection& b) { return a += b; }
    friend Connection operator-(Connection a, const Connection& b) { return a -= b; }
};

void require_same_dim(int a, int b, const char* where);

}  // namespace ncsym
