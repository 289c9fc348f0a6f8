#pragma once

// Exact positivity over Q(i): Hermitian positive semidefiniteness by
// symmetric (LDL*) elimination with exact pivots, and positivity of
// elements in FiniteFunctions and in matrices over FiniteFunctions.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hopfmorita/algebra.hpp"

namespace hopfmorita {

using DenseMatrix = std::vector<std::vector<Scalar>>;

/// Why a matrix failed the PSD test; nullopt means PSD.
inline std::optional<std::string> psd_failure(DenseMatrix m) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) return "matrix is not square";
        for (std::size_t j = 0; j < n; ++j)
            if (m[i][j] != m[j][i].conj()) return "not Hermitian at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        // Any remaining index works as a pivot; the first one keeps it deterministic.
        std::size_t k = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i]) {
                k = i;
                break;
            }
        done[k] = true;
        const Rational d = m[k][k].re();
        if (sgn(d) < 0) return "negative pivot " + d.get_str() + " at " + std::to_string(k);
        if (sgn(d) == 0) {
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j] && !m[k][j].is_zero())
                    return "zero pivot with nonzero off-diagonal at (" + std::to_string(k) + "," + std::to_string(j) + ")";
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || m[i][k].is_zero()) continue;
            Scalar f = m[i][k] / Scalar(d);
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) m[i][j] -= f * m[k][j];
        }
    }
    return std::nullopt;
}

inline bool is_psd(const DenseMatrix& m) { return !psd_failure(m).has_value(); }

/// Value at point x of an element of FiniteFunctions.
inline Scalar point_value(const Element& f, std::size_t x) { return f.coeff(static_cast<BasisIndex>(x)); }

/// For A = MatrixOver(n, FiniteFunctions(X)): the n x n complex matrix of a at point x.
inline DenseMatrix point_matrix(const Element& a, std::size_t x) {
    const auto& alg = *a.algebra();
    std::size_t n = static_cast<std::size_t>(alg.matrix_size());
    std::size_t b = alg.matrix_base()->dim();
    DenseMatrix m(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a.coeff(static_cast<BasisIndex>((i * n + j) * b + x));
    return m;
}

inline bool is_matrix_over_functions(const StarAlgebra& alg) {
    return alg.kind() == ModelKind::MatrixOver && alg.matrix_base()->kind() == ModelKind::FiniteFunctions;
}

/// Positivity of f in FiniteFunctions(X): every value real and >= 0.
/// MatrixOver(n, FiniteFunctions) is also accepted (pointwise PSD).
inline bool is_positive_element(const Element& f) {
    const auto& alg = *f.algebra();
    if (alg.kind() == ModelKind::FiniteFunctions) {
        for (const auto& [k, c] : f.coeffs())
            if (!c.is_real() || sgn(c.re()) < 0) return false;
        return true;
    }
    if (is_matrix_over_functions(alg)) {
        for (std::size_t x = 0; x < alg.matrix_base()->dim(); ++x)
            if (!is_psd(point_matrix(f, x))) return false;
        return true;
    }
    throw UnsupportedModelError("positivity is only implemented for FiniteFunctions and matrices over it, not " +
                                alg.name());
}

/// Positivity of a k x k matrix with entries in A, i.e. an element of M_k(A),
/// for A = FiniteFunctions or MatrixOver(n, FiniteFunctions): pointwise PSD of
/// the (k*n) x (k*n) complex matrix.
inline std::optional<std::string> gram_positivity_failure(const std::vector<std::vector<Element>>& gram) {
    if (gram.empty()) return std::nullopt;
    const auto& alg = *gram[0][0].algebra();
    std::size_t k = gram.size();
    std::size_t points, n = 1;
    if (alg.kind() == ModelKind::FiniteFunctions) {
        points = alg.dim();
    } else if (is_matrix_over_functions(alg)) {
        points = alg.matrix_base()->dim();
        n = static_cast<std::size_t>(alg.matrix_size());
    } else {
        throw UnsupportedModelError("complete positivity needs FiniteFunctions-valued pairings, got " + alg.name());
    }
    for (std::size_t x = 0; x < points; ++x) {
        DenseMatrix big(k * n, std::vector<Scalar>(k * n));
        for (std::size_t p = 0; p < k; ++p)
            for (std::size_t q = 0; q < k; ++q) {
                if (n == 1) {
                    big[p][q] = point_value(gram[p][q], x);
                } else {
                    DenseMatrix blk = point_matrix(gram[p][q], x);
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j) big[p * n + i][q * n + j] = blk[i][j];
                }
            }
        if (auto why = psd_failure(big)) return "at point " + std::to_string(x) + ": " + *why;
    }
    return std::nullopt;
}

}  // namespace hopfmorita
