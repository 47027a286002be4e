#include "ncsym/linear.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncsym {

SparseVec SparseVec::from_dense(const std::vector<Rational>& dense) {
    SparseVec v;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (!dense[i].is_zero()) v.e_.emplace_back(static_cast<int>(i), dense[i]);
    return v;
}

void SparseVec::set(int col, const Rational& v) {
    auto it = std::lower_bound(e_.begin(), e_.end(), col,
                               [](const auto& p, int c) { return p.first < c; });
    if (it != e_.end() && it->first == col) {
        if (v.is_zero())
            e_.erase(it);
        else
            it->second = v;
    } else if (!v.is_zero()) {
        e_.insert(it, {col, v});
    }
}

Rational SparseVec::get(int col) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), col,
                               [](const auto& p, int c) { return p.first < c; });
    return (it != e_.end() && it->first == col) ? it->second : Rational(0);
}

void SparseVec::axpy(const Rational& a, const SparseVec& x) {
    if (a.is_zero() || x.e_.empty()) return;
    std::vector<std::pair<int, Rational>> out;
    out.reserve(e_.size() + x.e_.size());
    auto i = e_.begin();
    auto j = x.e_.begin();
    while (i != e_.end() || j != x.e_.end()) {
        if (j == x.e_.end() || (i != e_.end() && i->first < j->first)) {
            out.push_back(std::move(*i++));
        } else if (i == e_.end() || j->first < i->first) {
            out.emplace_back(j->first, a * j->second);
            ++j;
        } else {
            Rational s = i->second + a * j->second;
            if (!s.is_zero()) out.emplace_back(i->first, std::move(s));
            ++i;
            ++j;
        }
    }
    e_ = std::move(out);
}

void SparseVec::scale(const Rational& a) {
    if (a.is_zero()) {
        e_.clear();
        return;
    }
    for (auto& [c, v] : e_) v *= a;
}

std::vector<Rational> SparseVec::to_dense(int n) const {
    std::vector<Rational> d(n, Rational(0));
    for (const auto& [c, v] : e_) {
        if (c >= n) throw std::out_of_range("SparseVec::to_dense: column beyond size");
        d[c] = v;
    }
    return d;
}

SparseVec SparseVec::truncated(int n) const {
    SparseVec out;
    for (const auto& p : e_)
        if (p.first < n) out.e_.push_back(p);
    return out;
}

SparseVec SparseVec::tail(int n) const {
    SparseVec out;
    for (const auto& [c, v] : e_)
        if (c >= n) out.e_.emplace_back(c - n, v);
    return out;
}

SparseVec SparseVec::shifted(int offset) const {
    SparseVec out;
    for (const auto& [c, v] : e_) out.e_.emplace_back(c + offset, v);
    return out;
}

SparseVec Echelon::reduce(SparseVec v, int limit) const {
    if (limit < 0) limit = ncols_;
    for (const auto& [piv, row] : rows_) {
        if (piv >= limit) break;
        Rational c = v.get(piv);
        if (!c.is_zero()) v.axpy(-c, row);
    }
    return v;
}

bool Echelon::insert(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    int piv = v.lead();
    if (piv >= ncols_) throw std::out_of_range("Echelon::insert: column beyond width");
    v.scale(Rational(1) / v.get(piv));
    for (auto& [p, row] : rows_) {
        Rational c = row.get(piv);
        if (!c.is_zero()) row.axpy(-c, v);
    }
    rows_.emplace(piv, std::move(v));
    return true;
}

std::vector<int> Echelon::pivots() const {
    std::vector<int> p;
    for (const auto& [piv, row] : rows_) p.push_back(piv);
    return p;
}

std::vector<SparseVec> Echelon::nullspace() const {
    std::vector<SparseVec> basis;
    for (int f = 0; f < ncols_; ++f) {
        if (rows_.count(f)) continue;
        SparseVec x;
        x.set(f, Rational(1));
        for (const auto& [piv, row] : rows_) {
            Rational c = row.get(f);
            if (!c.is_zero()) x.set(piv, -c);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

SpanIndex::SpanIndex(int ncols, const std::vector<SparseVec>& basis)
    : n_(ncols), k_(static_cast<int>(basis.size())), ech_(ncols + static_cast<int>(basis.size())) {
    for (int i = 0; i < k_; ++i) {
        SparseVec aug = basis[i];
        if (!aug.empty() && aug.entries().back().first >= n_)
            throw std::out_of_range("SpanIndex: basis vector beyond column count");
        aug.set(n_ + i, Rational(1));
        ech_.insert(std::move(aug));
    }
    for (int p : ech_.pivots())
        if (p < n_) ++rank_;
}

SparseVec SpanIndex::residual(const SparseVec& v) const {
    return ech_.reduce(v, n_).truncated(n_);
}

std::optional<std::vector<Rational>> SpanIndex::coordinates(const SparseVec& v) const {
    SparseVec r = ech_.reduce(v, n_);
    if (!r.truncated(n_).empty()) return std::nullopt;
    // Reduction subtracted sum c_r row_r, so the tag block holds minus the coordinates.
    SparseVec tags = r.tail(n_);
    std::vector<Rational> coords(k_, Rational(0));
    for (const auto& [i, c] : tags.entries()) coords[i] = -c;
    // Tags of dependent rows (pivot in the tag block) carry relations, not coordinates;
    // reduce them away so coordinates are the canonical representative.
    SparseVec t = SparseVec::from_dense(coords);
    for (const auto& [piv, row] : ech_.rows()) {
        if (piv < n_) continue;
        Rational c = t.get(piv - n_);
        if (!c.is_zero()) t.axpy(-c, row.tail(n_));
    }
    return t.to_dense(k_);
}

std::vector<SparseVec> canonical_basis(const std::vector<SparseVec>& vectors, int ncols,
                                       const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != ncols)
        throw std::invalid_argument("canonical_basis: order length mismatch");
    std::vector<int> pos(ncols, -1);
    for (int i = 0; i < ncols; ++i) pos[order[i]] = i;
    Echelon ech(ncols);
    for (const auto& v : vectors) {
        SparseVec p;
        for (const auto& [c, x] : v.entries()) p.set(pos[c], x);
        ech.insert(std::move(p));
    }
    std::vector<SparseVec> out;
    for (const auto& [piv, row] : ech.rows()) {
        SparseVec back;
        for (const auto& [c, x] : row.entries()) back.set(order[c], x);
        out.push_back(std::move(back));
    }
    return out;
}

}  // namespace ncsym
