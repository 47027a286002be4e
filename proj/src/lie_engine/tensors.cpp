#include "ncsym/tensors.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

namespace ncsym {

void require_same_dim(int a, int b, const char* where) {
    if (a != b)
        throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
}

PolyArray::PolyArray(int dim, int rank) : dim_(dim), rank_(rank) {
    if (dim < 0) throw std::invalid_argument("PolyArray: negative dimension");
    std::size_t count = 1;
    for (int r = 0; r < rank; ++r) count *= static_cast<std::size_t>(dim + 1);
    data_.assign(count, Poly(dim));
}

bool PolyArray::is_zero() const {
    for (const auto& p : data_)
        if (!p.is_zero()) return false;
    return true;
}

std::size_t PolyArray::flat(int i) const {
    if (i < 0 || i > dim_) throw std::out_of_range("PolyArray: index out of range");
    return static_cast<std::size_t>(i);
}

std::size_t PolyArray::flat(int i, int j) const {
    const int n = dim_ + 1;
    if (i < 0 || i >= n || j < 0 || j >= n) throw std::out_of_range("PolyArray: index out of range");
    return static_cast<std::size_t>(i * n + j);
}

std::size_t PolyArray::flat(int i, int j, int k) const {
    const int n = dim_ + 1;
    if (i < 0 || i >= n || j < 0 || j >= n || k < 0 || k >= n)
        throw std::out_of_range("PolyArray: index out of range");
    return static_cast<std::size_t>((i * n + j) * n + k);
}

VectorField::VectorField(std::vector<Poly> components) {
    if (components.empty()) throw std::invalid_argument("VectorField: no components");
    dim_ = static_cast<int>(components.size()) - 1;
    rank_ = 1;
    for (const auto& p : components) require_same_dim(p.dim(), dim_, "VectorField");
    data_ = std::move(components);
}

VectorField& VectorField::operator+=(const VectorField& o) {
    require_same_dim(dim_, o.dim_, "VectorField +");
    for (int a = 0; a <= dim_; ++a) data_[a] += o.data_[a];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    require_same_dim(dim_, o.dim_, "VectorField -");
    for (int a = 0; a <= dim_; ++a) data_[a] -= o.data_[a];
    return *this;
}

VectorField& VectorField::operator*=(const Rational& c) {
    for (auto& p : data_) p *= c;
    return *this;
}

std::string VectorField::str() const {
    std::ostringstream os;
    bool first = true;
    for (int a = 0; a <= dim_; ++a) {
        if (data_[a].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << data_[a].str() << ")d" << (a == 0 ? std::string("t") : "x" + std::to_string(a));
        first = false;
    }
    return first ? "0" : os.str();
}

OneForm::OneForm(std::vector<Poly> components) {
    if (components.empty()) throw std::invalid_argument("OneForm: no components");
    dim_ = static_cast<int>(components.size()) - 1;
    rank_ = 1;
    for (const auto& p : components) require_same_dim(p.dim(), dim_, "OneForm");
    data_ = std::move(components);
}

OneForm& OneForm::operator+=(const OneForm& o) {
    require_same_dim(dim_, o.dim_, "OneForm +");
    for (int a = 0; a <= dim_; ++a) data_[a] += o.data_[a];
    return *this;
}

OneForm& OneForm::operator*=(const Rational& c) {
    for (auto& p : data_) p *= c;
    return *this;
}

bool PolyMatrix::is_symmetric() const {
    for (int a = 0; a < n(); ++a)
        for (int b = a + 1; b < n(); ++b)
            if (!((*this)(a, b) == (*this)(b, a))) return false;
    return true;
}

bool PolyMatrix::is_antisymmetric() const {
    for (int a = 0; a < n(); ++a) {
        if (!(*this)(a, a).is_zero()) return false;
        for (int b = a + 1; b < n(); ++b)
            if (!((*this)(a, b) + (*this)(b, a)).is_zero()) return false;
    }
    return true;
}

void TwoForm::set(int a, int b, const Poly& v) {
    if (a == b && !v.is_zero()) throw std::invalid_argument("TwoForm: nonzero diagonal entry");
    (*this)(a, b) = v;
    (*this)(b, a) = -v;
}

TwoForm& TwoForm::operator+=(const TwoForm& o) {
    require_same_dim(dim_, o.dim_, "TwoForm +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

TwoForm& TwoForm::operator*=(const Rational& c) {
    for (auto& p : data_) p *= c;
    return *this;
}

bool Connection::is_symmetric_lower() const {
    for (int c = 0; c < n(); ++c)
        for (int a = 0; a < n(); ++a)
            for (int b = a + 1; b < n(); ++b)
                if (!((*this)(c, a, b) == (*this)(c, b, a))) return false;
    return true;
}

Connection& Connection::operator+=(const Connection& o) {
    require_same_dim(dim_, o.dim_, "Connection +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Connection& Connection::operator-=(const Connection& o) {
    require_same_dim(dim_, o.dim_, "Connection -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

}  // namespace ncsym
