#pragma once

#include "ncsym/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace ncsym {

/// Sparse rational vector; entries sorted by column, zeros never stored.
class SparseVec {
public:
    SparseVec() = default;
    static SparseVec from_dense(const std::vector<Rational>& dense);

    void set(int col, const Rational& v);
    Rational get(int col) const;
    /// this += a * x
    void axpy(const Rational& a, const SparseVec& x);
    void scale(const Rational& a);

    bool empty() const { return e_.empty(); }
    int lead() const { return e_.empty() ? -1 : e_.front().first; }
    const std::vector<std::pair<int, Rational>>& entries() const { return e_; }
    std::vector<Rational> to_dense(int n) const;

    /// Keeps only columns < n.
    SparseVec truncated(int n) const;
    /// Keeps only columns >= n, shifted down by n.
    SparseVec tail(int n) const;
    /// Shifts all columns by `offset`.
    SparseVec shifted(int offset) const;

    friend bool operator==(const SparseVec&, const SparseVec&) = default;

private:
    std::vector<std::pair<int, Rational>> e_;
};

/// Incrementally maintained reduced row echelon form over Q.
class Echelon {
public:
    explicit Echelon(int ncols) : ncols_(ncols) {}

    int ncols() const { return ncols_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    /// Reduces v against the stored rows whose pivot lies below `limit`
    /// (default: all columns). The result has zero in every such pivot column.
    SparseVec reduce(SparseVec v, int limit = -1) const;
    /// Inserts v; returns false when v was already in the row space.
    bool insert(SparseVec v);

    const std::map<int, SparseVec>& rows() const { return rows_; }
    std::vector<int> pivots() const;
    /// Basis of the right kernel {x : r . x = 0 for all rows}, one vector per free column.
    std::vector<SparseVec> nullspace() const;

private:
    int ncols_;
    std::map<int, SparseVec> rows_;  // pivot column -> row with unit pivot
};

/// Membership and coordinates with respect to a fixed finite family of vectors.
class SpanIndex {
public:
    SpanIndex(int ncols, const std::vector<SparseVec>& basis);

    int size() const { return k_; }
    int rank() const { return rank_; }
    bool independent() const { return rank_ == k_; }
    /// Coefficients c with v = sum c_i basis_i, or empty when v is outside the span.
    std::optional<std::vector<Rational>> coordinates(const SparseVec& v) const;
    /// v minus its projection along the echelon pivots (zero iff v is in the span).
    SparseVec residual(const SparseVec& v) const;

private:
    int n_, k_, rank_ = 0;
    Echelon ech_;
};

/// Reduced row echelon basis of span(vectors), with columns visited in `order`
/// (order[i] is the original column placed at position i). Rows come back in the
/// original column indexing, sorted by pivot position in `order`.
std::vector<SparseVec> canonical_basis(const std::vector<SparseVec>& vectors, int ncols,
                                       const std::vector<int>& order);

}  // namespace ncsym
