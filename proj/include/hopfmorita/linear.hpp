#pragma once

// Sparse finite linear combinations over Scalar, keyed by an ordered basis label.
// Zero coefficients are never stored, so == is equality of vectors.

#include <map>
#include <utility>

#include "hopfmorita/scalar.hpp"

namespace hopfmorita {

template <class Key>
class Linear {
public:
    using map_type = std::map<Key, Scalar>;
    using const_iterator = typename map_type::const_iterator;

    Linear() = default;
    Linear(const Key& k, Scalar c = Scalar(1)) { add(k, std::move(c)); }

    static Linear basis(const Key& k) { return Linear(k); }

    void add(const Key& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add_scaled(const Linear& o, const Scalar& c) {
        if (c.is_zero()) return;
        for (const auto& [k, v] : o.terms_) add(k, v * c);
    }

    Scalar coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar() : it->second;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const_iterator begin() const { return terms_.begin(); }
    const_iterator end() const { return terms_.end(); }
    const map_type& terms() const { return terms_; }

    Linear& operator+=(const Linear& o) {
        for (const auto& [k, v] : o.terms_) add(k, v);
        return *this;
    }
    Linear& operator-=(const Linear& o) {
        for (const auto& [k, v] : o.terms_) add(k, -v);
        return *this;
    }
    Linear& operator*=(const Scalar& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, v] : terms_) v *= c;
        return *this;
    }

    friend Linear operator+(Linear a, const Linear& b) { return a += b; }
    friend Linear operator-(Linear a, const Linear& b) { return a -= b; }
    friend Linear operator*(Linear a, const Scalar& c) { return a *= c; }
    friend Linear operator*(const Scalar& c, Linear a) { return a *= c; }
    Linear operator-() const { return *this * Scalar(-1); }

    /// Coefficient-wise complex conjugate.
    Linear conj() const {
        Linear out;
        for (const auto& [k, v] : terms_) out.terms_.emplace(k, v.conj());
        return out;
    }

    friend bool operator==(const Linear& a, const Linear& b) { return a.terms_ == b.terms_; }

private:
    map_type terms_;
};

}  // namespace hopfmorita
