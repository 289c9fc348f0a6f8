#pragma once

// Complexified universal enveloping algebra of a real Lie algebra,
// truncated at PBW degree N.
//
// Elements are combinations of PBW monomials xi_1^k1 ... xi_d^kd in fixed
// generator order. Products are brought to normal form by straightening:
// the first descent xi_b xi_a (b > a) in a word is rewritten as
// xi_a xi_b + [xi_b, xi_a]. A product whose degree exceeds N is an error.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hopfmorita/errors.hpp"
#include "hopfmorita/hopf.hpp"
#include "hopfmorita/lie_action.hpp"

namespace hopfmorita {

/// Exponent tuple (k_1, ..., k_d).
using Monomial = std::vector<int>;

inline int monomial_degree(const Monomial& m) {
    int d = 0;
    for (int k : m) d += k;
    return d;
}

class UEA {
public:
    using Key = Monomial;
    using Word = std::vector<int>;

    UEA(LieBrackets brackets, int truncation) : brackets_(std::move(brackets)), n_(truncation) {
        if (truncation < 0) throw ConstructionError("truncation order must be >= 0");
    }

    int dim() const { return brackets_.dim(); }
    int truncation() const { return n_; }
    const LieBrackets& brackets() const { return brackets_; }

    Monomial unit_key() const { return Monomial(static_cast<std::size_t>(dim()), 0); }

    Monomial generator(int i) const {
        Monomial m = unit_key();
        m.at(static_cast<std::size_t>(i)) = 1;
        return m;
    }

    int degree(const Monomial& m) const { return monomial_degree(m); }

    /// All monomials of degree <= N, by degree and then lexicographically.
    std::vector<Monomial> basis() const {
        std::vector<Monomial> out;
        for (int deg = 0; deg <= n_; ++deg) {
            Monomial m = unit_key();
            enumerate(out, m, 0, deg);
        }
        return out;
    }

    Linear<Monomial> mul(const Monomial& a, const Monomial& b) const {
        check(a);
        check(b);
        if (degree(a) + degree(b) > n_)
            throw TruncationOverflow("product " + label(a) + " * " + label(b) + " exceeds truncation order " +
                                     std::to_string(n_));
        Word w = word(a);
        Word wb = word(b);
        w.insert(w.end(), wb.begin(), wb.end());
        return straighten(w);
    }

    Linear<Monomial> mul(const Linear<Monomial>& a, const Linear<Monomial>& b) const { return hopf_mul(*this, a, b); }

    /// Delta(xi^k) = sum_j prod_i binom(k_i, j_i) xi^j (x) xi^(k - j).
    std::vector<SweedlerTerm<Monomial>> coproduct(const Monomial& m) const {
        check(m);
        std::vector<SweedlerTerm<Monomial>> out;
        Monomial j = unit_key();
        split(out, m, j, 0, Integer(1));
        return out;
    }

    Scalar counit(const Monomial& m) const { return degree(m) == 0 ? Scalar(1) : Scalar(0); }

    /// S(xi_i1 ... xi_ik) = (-1)^k xi_ik ... xi_i1.
    Linear<Monomial> antipode(const Monomial& m) const {
        check(m);
        Word w = word(m);
        std::reverse(w.begin(), w.end());
        Linear<Monomial> out = straighten(w);
        if (degree(m) % 2) out *= Scalar(-1);
        return out;
    }

    /// xi^* = -xi on the real generators, extended antimultiplicatively.
    Linear<Monomial> star(const Monomial& m) const { return antipode(m).conj(); }

    std::string label(const Monomial& m) const {
        std::string s;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!s.empty()) s += " ";
            s += "xi" + std::to_string(i + 1);
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s.empty() ? "1" : s;
    }

    Word word(const Monomial& m) const {
        Word w;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int k = 0; k < m[i]; ++k) w.push_back(static_cast<int>(i));
        return w;
    }

    /// PBW normal form of an arbitrary word in the generators.
    Linear<Monomial> straighten(const Word& w) const {
        {
            std::lock_guard<std::mutex> lock(memo_mutex_);
            auto it = memo_.find(w);
            if (it != memo_.end()) return it->second;
        }
        Linear<Monomial> out;
        std::size_t p = 0;
        while (p + 1 < w.size() && w[p] <= w[p + 1]) ++p;
        if (p + 1 >= w.size()) {
            Monomial m = unit_key();
            for (int g : w) ++m[static_cast<std::size_t>(g)];
            out.add(m, Scalar(1));
        } else {
            Word swapped = w;
            std::swap(swapped[p], swapped[p + 1]);
            out += straighten(swapped);
            for (const auto& [k, c] : brackets_.bracket(w[p], w[p + 1])) {
                Word shorter(w.begin(), w.begin() + static_cast<long>(p));
                shorter.push_back(k);
                shorter.insert(shorter.end(), w.begin() + static_cast<long>(p) + 2, w.end());
                out.add_scaled(straighten(shorter), c);
            }
        }
        std::lock_guard<std::mutex> lock(memo_mutex_);
        memo_.emplace(w, out);
        return out;
    }

private:
    void check(const Monomial& m) const {
        if (m.size() != static_cast<std::size_t>(dim())) throw DomainError("monomial has wrong number of exponents");
        for (int k : m)
            if (k < 0) throw DomainError("negative exponent in monomial");
        if (degree(m) > n_)
            throw TruncationOverflow("monomial " + label(m) + " exceeds truncation order " + std::to_string(n_));
    }

    void enumerate(std::vector<Monomial>& out, Monomial& m, std::size_t pos, int left) const {
        if (pos + 1 == m.size()) {
            m[pos] = left;
            out.push_back(m);
            m[pos] = 0;
            return;
        }
        for (int k = left; k >= 0; --k) {
            m[pos] = k;
            enumerate(out, m, pos + 1, left - k);
        }
        m[pos] = 0;
    }

    void split(std::vector<SweedlerTerm<Monomial>>& out, const Monomial& m, Monomial& j, std::size_t pos,
               const Integer& coeff) const {
        if (pos == m.size()) {
            Monomial rest = m;
            for (std::size_t i = 0; i < m.size(); ++i) rest[i] -= j[i];
            out.push_back({Scalar(Rational(coeff)), j, rest});
            return;
        }
        for (int k = 0; k <= m[pos]; ++k) {
            j[pos] = k;
            Integer b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(m[pos]), static_cast<unsigned long>(k));
            split(out, m, j, pos + 1, coeff * b);
        }
        j[pos] = 0;
    }

    LieBrackets brackets_;
    int n_;
    mutable std::mutex memo_mutex_;
    mutable std::map<Word, Linear<Monomial>> memo_;
};

using UEAPtr = std::shared_ptr<const UEA>;

inline UEAPtr make_uea(LieBrackets brackets, int truncation) {
    return std::make_shared<const UEA>(std::move(brackets), truncation);
}

static_assert(HopfStarAlgebra<UEA>);

}  // namespace hopfmorita
