#pragma once

// Exact sparse Gauss-Jordan elimination over a field (Rational or Scalar).
//
// Echelon keeps its rows in reduced row echelon form with unit pivots, so the
// row set is a canonical basis of the span regardless of insertion order.
// Every row also records which combination of inserted vectors produced it,
// which gives kernels and solutions of linear systems for free.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "hopfmorita/scalar.hpp"

namespace hopfmorita {

template <class F>
using SparseVec = std::map<std::size_t, F>;

inline bool field_is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool field_is_zero(const Scalar& z) { return z.is_zero(); }

template <class F>
void axpy(SparseVec<F>& y, const F& a, const SparseVec<F>& x) {
    if (field_is_zero(a)) return;
    for (const auto& [k, v] : x) {
        auto [it, fresh] = y.try_emplace(k, a * v);
        if (!fresh) {
            it->second += a * v;
            if (field_is_zero(it->second)) y.erase(it);
        }
    }
}

template <class F>
class Echelon {
public:
    struct Row {
        SparseVec<F> vec;
        SparseVec<F> combo;  // vec == sum combo[j] * inserted[j]
    };

    struct Reduction {
        SparseVec<F> remainder;
        SparseVec<F> combo;  // x == remainder + sum combo[j] * inserted[j]
    };

    Reduction reduce(const SparseVec<F>& x) const {
        Reduction r{x, {}};
        for (const auto& [pivot, row] : rows_) {
            auto it = x.find(pivot);
            if (it == x.end()) continue;
            F c = it->second;
            axpy(r.remainder, F(-c), row.vec);
            axpy(r.combo, c, row.combo);
        }
        return r;
    }

    bool contains(const SparseVec<F>& x) const { return reduce(x).remainder.empty(); }

    /// Adds x to the span. Returns a kernel relation among inserted vectors
    /// (with coefficient 1 on x itself) when x was already in the span.
    std::optional<SparseVec<F>> insert(const SparseVec<F>& x) {
        std::size_t tag = inserted_++;
        Reduction r = reduce(x);
        SparseVec<F> own;
        own.emplace(tag, F(1));
        if (r.remainder.empty()) {
            axpy(own, F(-1), r.combo);
            return own;
        }
        axpy(own, F(-1), r.combo);
        Row fresh{std::move(r.remainder), std::move(own)};
        std::size_t pivot = fresh.vec.begin()->first;
        F inv = F(1) / fresh.vec.begin()->second;
        for (auto& [k, v] : fresh.vec) v *= inv;
        for (auto& [k, v] : fresh.combo) v *= inv;
        for (auto& [p, row] : rows_) {
            auto it = row.vec.find(pivot);
            if (it == row.vec.end()) continue;
            F c = it->second;
            axpy(row.vec, F(-c), fresh.vec);
            axpy(row.combo, F(-c), fresh.combo);
        }
        rows_.emplace(pivot, std::move(fresh));
        return std::nullopt;
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t inserted() const { return inserted_; }
    const std::map<std::size_t, Row>& rows() const { return rows_; }

    std::vector<SparseVec<F>> basis() const {
        std::vector<SparseVec<F>> out;
        for (const auto& [p, row] : rows_) out.push_back(row.vec);
        return out;
    }

    std::vector<std::size_t> pivots() const {
        std::vector<std::size_t> out;
        for (const auto& [p, row] : rows_) out.push_back(p);
        return out;
    }

private:
    std::map<std::size_t, Row> rows_;
    std::size_t inserted_ = 0;
};

/// Canonical basis (RREF rows) of the span of `vectors`.
template <class F>
std::vector<SparseVec<F>> rref_basis(const std::vector<SparseVec<F>>& vectors) {
    Echelon<F> e;
    for (const auto& v : vectors) e.insert(v);
    return e.basis();
}

template <class F>
std::size_t rank_of(const std::vector<SparseVec<F>>& vectors) {
    Echelon<F> e;
    for (const auto& v : vectors) e.insert(v);
    return e.rank();
}

/// Canonical basis of { c : sum_j c[j] * columns[j] == 0 }.
template <class F>
std::vector<SparseVec<F>> kernel_of(const std::vector<SparseVec<F>>& columns) {
    Echelon<F> e;
    std::vector<SparseVec<F>> relations;
    for (const auto& col : columns)
        if (auto rel = e.insert(col)) relations.push_back(std::move(*rel));
    return rref_basis(relations);
}

/// Some c with sum_j c[j] * columns[j] == target, if one exists.
template <class F>
std::optional<SparseVec<F>> solve_in_span(const std::vector<SparseVec<F>>& columns,
                                          const SparseVec<F>& target) {
    Echelon<F> e;
    for (const auto& col : columns) e.insert(col);
    auto r = e.reduce(target);
    if (!r.remainder.empty()) return std::nullopt;
    return r.combo;
}

}  // namespace hopfmorita
