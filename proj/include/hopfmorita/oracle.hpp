#pragma once

// Brute-force reference computations used by the --oracle mode and the tests.
// They share no linear algebra with the main engine: everything here is
// dense Gaussian elimination over the rationals on explicitly assembled
// matrices.

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include <algorithm>

#include "hopfmorita/algebra.hpp"
#include "hopfmorita/convolution.hpp"
#include "hopfmorita/lie_action.hpp"

namespace hopfmorita::oracle {

using DenseQ = std::vector<std::vector<Rational>>;

inline std::size_t dense_rank(DenseQ m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && sgn(m[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || sgn(m[r][c]) == 0) continue;
            Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Real-linear map assembled column by column; rows are created on demand
/// for every (block, basis index, real/imaginary) coordinate that occurs.
class DenseMap {
public:
    void add_column(const std::vector<std::pair<int, Element>>& outputs) {
        std::map<std::size_t, Rational> col;
        for (const auto& [block, e] : outputs)
            for (const auto& [k, c] : e.coeffs()) {
                if (sgn(c.re()) != 0) col[row(block, k, false)] += c.re();
                if (sgn(c.im()) != 0) col[row(block, k, true)] += c.im();
            }
        cols_.push_back(std::move(col));
    }

    std::size_t columns() const { return cols_.size(); }

    std::size_t rank() const {
        DenseQ m(rows_.size(), std::vector<Rational>(cols_.size()));
        for (std::size_t j = 0; j < cols_.size(); ++j)
            for (const auto& [r, q] : cols_[j]) m[r][j] = q;
        return dense_rank(std::move(m));
    }

    std::size_t nullity() const { return columns() - rank(); }

private:
    std::size_t row(int block, BasisIndex k, bool im) {
        auto key = std::make_tuple(block, k, im);
        auto it = rows_.find(key);
        if (it != rows_.end()) return it->second;
        std::size_t r = rows_.size();
        rows_.emplace(key, r);
        return r;
    }

    std::map<std::tuple<int, BasisIndex, bool>, std::size_t> rows_;
    std::vector<std::map<std::size_t, Rational>> cols_;
};

/// dim H1 of the Lie action with anti-Hermitian central coefficients in the window:
/// nullity[C; d1] - (nullity C - nullity[C; d0]), C the centrality and
/// anti-Hermiticity constraints.
inline std::size_t h1_dimension(const LieAction& action, int window) {
    const auto& alg = action.algebra();
    const auto basis = alg->basis_window(window);
    const int d = action.dim();
    const Scalar units[2] = {Scalar(1), Scalar::i()};

    auto constraints = [&](const Element& e, int block, std::vector<std::pair<int, Element>>& out) {
        out.emplace_back(block, e.star() + e);
        int b = 0;
        for (BasisIndex k : basis) out.emplace_back(block * 1000 + 1000000 + b++, commutator(e, Element::basis(alg, k)));
    };

    DenseMap c_only, c_d0;
    for (BasisIndex k : basis)
        for (const auto& u : units) {
            Element e = Element::basis(alg, k, u);
            std::vector<std::pair<int, Element>> out;
            constraints(e, 0, out);
            c_only.add_column(out);
            for (int i = 0; i < d; ++i) out.emplace_back(-1 - i, action.apply(i, e));
            c_d0.add_column(out);
        }
    const std::size_t dim_v = c_only.nullity();
    const std::size_t dim_b1 = dim_v - c_d0.nullity();

    DenseMap c_d1;
    for (int i = 0; i < d; ++i)
        for (BasisIndex k : basis)
            for (const auto& u : units) {
                Element e = Element::basis(alg, k, u);
                std::vector<std::pair<int, Element>> out;
                constraints(e, i + 1, out);
                // alpha(xi_i) = e, all other values zero
                for (int p = 0; p < d; ++p)
                    for (int q = p + 1; q < d; ++q) {
                        Element v = Element::zero(alg);
                        if (q == i) v += action.apply(p, e);
                        if (p == i) v -= action.apply(q, e);
                        v -= e * action.brackets().at(p, q, i);
                        out.emplace_back(-1 - (p * d + q), v);
                    }
                c_d1.add_column(out);
            }
    const std::size_t dim_z1 = c_d1.nullity();
    return dim_z1 - dim_b1;
}

/// Rational inverse by dense Gauss-Jordan elimination, if the matrix is invertible.
inline std::optional<DenseQ> dense_inverse(DenseQ m) {
    const std::size_t n = m.size();
    DenseQ inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m[p][c]) == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        Rational f = m[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            m[c][k] /= f;
            inv[c][k] /= f;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || sgn(m[r][c]) == 0) continue;
            Rational g = m[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                m[r][k] -= g * m[c][k];
                inv[r][k] -= g * inv[c][k];
            }
        }
    }
    return inv;
}

/// All n x n matrices with entries in {0..bound} whose inverse exists and has
/// nonnegative integer entries (row-major), by exhaustive enumeration.
inline std::vector<std::vector<long>> invertible_dimension_matrices(std::size_t n, int bound) {
    std::vector<std::vector<long>> out;
    std::vector<long> m(n * n, 0);
    std::size_t total = 1;
    for (std::size_t k = 0; k < n * n; ++k) total *= static_cast<std::size_t>(bound + 1);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (auto& v : m) {
            v = static_cast<long>(c % static_cast<std::size_t>(bound + 1));
            c /= static_cast<std::size_t>(bound + 1);
        }
        DenseQ q(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) q[i][j] = m[i * n + j];
        auto inv = dense_inverse(q);
        if (!inv) continue;
        bool ok = true;
        for (const auto& row : *inv)
            for (const auto& v : row) ok = ok && sgn(v) >= 0 && v.get_den() == 1;
        if (ok) out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Permutation matrices with entry (sigma(x), x) = 1, row-major, sorted.
inline std::vector<std::vector<long>> permutation_matrices(std::size_t n) {
    std::vector<std::vector<long>> out;
    std::vector<std::size_t> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = k;
    do {
        std::vector<long> m(n * n, 0);
        for (std::size_t x = 0; x < n; ++x) m[s[x] * n + x] = 1;
        out.push_back(m);
    } while (std::next_permutation(s.begin(), s.end()));
    std::sort(out.begin(), out.end());
    return out;
}

/// (a * b)(w) for every PBW monomial, expanding the coproduct of the word
/// xi_i1 ... xi_ik as the sum over all 2^k splittings of its letters.
inline ConvolutionMap<UEA> convolve_by_splittings(const ConvolutionMap<UEA>& a, const ConvolutionMap<UEA>& b) {
    const UEA& h = a.hopf();
    ConvolutionMap<UEA> out(a.hopf_ptr(), a.target());
    for (const Monomial& m : h.basis()) {
        const UEA::Word w = h.word(m);
        Element v = Element::zero(a.target());
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w.size()); ++mask) {
            UEA::Word l, r;
            for (std::size_t k = 0; k < w.size(); ++k) ((mask >> k) & 1 ? l : r).push_back(w[k]);
            v += a.value(h.straighten(l)) * b.value(h.straighten(r));
        }
        out.set(m, v);
    }
    return out;
}

/// (a * b)(g) = a(g) b(g) on group elements.
inline ConvolutionMap<GroupHopf> convolve_by_splittings(const ConvolutionMap<GroupHopf>& a, const ConvolutionMap<GroupHopf>& b) {
    ConvolutionMap<GroupHopf> out(a.hopf_ptr(), a.target());
    for (int g : a.hopf().basis()) out.set(g, a.value(g) * b.value(g));
    return out;
}

}  // namespace hopfmorita::oracle
