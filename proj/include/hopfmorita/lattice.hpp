#pragma once

// Smith normal form over the integers and presentations of Q^h / L for a
// finitely generated subgroup L of Q^h.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfmorita/errors.hpp"
#include "hopfmorita/scalar.hpp"

namespace hopfmorita {

using IntMatrix = std::vector<std::vector<Integer>>;

/// Nonzero invariant factors d1 | d2 | ... | dr (positive) of an integer matrix.
inline std::vector<Integer> invariant_factors(IntMatrix m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<Integer> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry of the remaining block as pivot
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows) break;
        std::swap(m[t], m[pr]);
        for (auto& row : m) std::swap(row[t], row[pc]);

        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
            if (q != 0)
                for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
            if (m[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
            if (q != 0)
                for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
            if (m[t][j] != 0) clean = false;
        }
        if (!clean) continue;

        // divisibility: fold a row with an entry not divisible by the pivot into row t
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
            for (std::size_t j = t + 1; j < cols; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
                    divides = false;
                    break;
                }
        if (!divides) continue;
        diag.push_back(abs(m[t][t]));
        ++t;
    }
    return diag;
}

inline Integer lcm_of_denominators(const std::vector<std::vector<Rational>>& rows) {
    Integer d = 1;
    for (const auto& r : rows)
        for (const auto& q : r) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
    return d;
}

/// Q^h / L with L generated by the rows of `generators` (each of length h):
/// Q^(h - r) + (Q/Z)^r, where r = rank L. The lattice is described by the
/// invariant factors of denominator * generators; its index in the saturated
/// coordinate lattice of its span is prod(factors) / denominator^r.
struct QuotientPresentation {
    std::size_t ambient_rank = 0;
    std::size_t lattice_rank = 0;
    Integer denominator = 1;
    std::vector<Integer> invariant_factors;
    Rational index = 1;

    std::size_t rational_rank() const { return ambient_rank - lattice_rank; }

    std::string structure() const {
        std::vector<std::string> parts;
        if (rational_rank() == 1) parts.push_back("Q");
        else if (rational_rank() > 1) parts.push_back("Q^" + std::to_string(rational_rank()));
        if (lattice_rank == 1) parts.push_back("Q/Z");
        else if (lattice_rank > 1) parts.push_back("(Q/Z)^" + std::to_string(lattice_rank));
        if (parts.empty()) return "0";
        std::string s = parts[0];
        for (std::size_t k = 1; k < parts.size(); ++k) s += " + " + parts[k];
        return s;
    }
};

inline QuotientPresentation present_quotient(std::size_t h, const std::vector<std::vector<Rational>>& generators) {
    QuotientPresentation p;
    p.ambient_rank = h;
    p.denominator = lcm_of_denominators(generators);
    IntMatrix m;
    for (const auto& g : generators) {
        if (g.size() != h) throw DomainError("lattice generator has the wrong length");
        std::vector<Integer> row;
        for (const auto& q : g) {
            Rational s = q * Rational(p.denominator);
            s.canonicalize();
            row.push_back(s.get_num());
        }
        m.push_back(std::move(row));
    }
    p.invariant_factors = invariant_factors(m);
    p.lattice_rank = p.invariant_factors.size();
    Rational prod = 1;
    for (const auto& d : p.invariant_factors) prod *= Rational(d) / Rational(p.denominator);
    prod.canonicalize();
    p.index = prod;
    return p;
}

/// Integer coefficients n with sum n_k generators[k] = target, if the target
/// lies in the subgroup of Q^h generated by the rows of `generators`.
/// Integer row echelon form by repeated Euclidean reduction, tracking the
/// unimodular combinations.
inline std::optional<std::vector<Integer>> lattice_contains(const std::vector<std::vector<Rational>>& generators,
                                                            const std::vector<Rational>& target) {
    const std::size_t h = target.size();
    std::vector<std::vector<Rational>> all = generators;
    all.push_back(target);
    const Integer D = lcm_of_denominators(all);
    auto scale = [&D](const std::vector<Rational>& v) {
        std::vector<Integer> out;
        for (const auto& q : v) {
            Rational s = q * Rational(D);
            s.canonicalize();
            out.push_back(s.get_num());
        }
        return out;
    };
    struct Row {
        std::vector<Integer> v, combo;
    };
    const std::size_t g = generators.size();
    std::vector<Row> pool;
    for (std::size_t k = 0; k < g; ++k) {
        if (generators[k].size() != h) throw DomainError("lattice generator has the wrong length");
        Row r{scale(generators[k]), std::vector<Integer>(g)};
        r.combo[k] = 1;
        pool.push_back(std::move(r));
    }
    auto sub = [](Row& a, const Row& b, const Integer& q) {
        for (std::size_t i = 0; i < a.v.size(); ++i) a.v[i] -= q * b.v[i];
        for (std::size_t i = 0; i < a.combo.size(); ++i) a.combo[i] -= q * b.combo[i];
    };
    std::vector<std::optional<Row>> pivot(h);
    for (std::size_t c = 0; c < h; ++c) {
        while (true) {
            std::size_t best = pool.size();
            for (std::size_t k = 0; k < pool.size(); ++k)
                if (pool[k].v[c] != 0 && (best == pool.size() || abs(pool[k].v[c]) < abs(pool[best].v[c]))) best = k;
            if (best == pool.size()) break;
            bool alone = true;
            for (std::size_t k = 0; k < pool.size(); ++k) {
                if (k == best || pool[k].v[c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), pool[k].v[c].get_mpz_t(), pool[best].v[c].get_mpz_t());
                sub(pool[k], pool[best], q);
                if (pool[k].v[c] != 0) alone = false;
            }
            if (alone) {
                pivot[c] = pool[best];
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
                break;
            }
        }
    }
    std::vector<Integer> t = scale(target), n(g);
    for (std::size_t c = 0; c < h; ++c) {
        if (t[c] == 0) continue;
        if (!pivot[c] || t[c] % pivot[c]->v[c] != 0) return std::nullopt;
        Integer q = t[c] / pivot[c]->v[c];
        for (std::size_t i = 0; i < h; ++i) t[i] -= q * pivot[c]->v[i];
        for (std::size_t i = 0; i < g; ++i) n[i] += q * pivot[c]->combo[i];
    }
    return n;
}

}  // namespace hopfmorita
