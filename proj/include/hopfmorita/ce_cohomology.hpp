#pragma once

// Chevalley-Eilenberg cochains of a Lie algebra acting by *-derivations,
// with values in the anti-Hermitian part of the center, in degrees 0 to 2.
//
// The coefficient space is a rational vector space: its basis consists of
// anti-Hermitian central elements (i times a Hermitian basis), computed in
// canonical form. On the Laurent model it is cut to modes |k| <= window and
// the window must be invariant under the action.

#include <optional>
#include <string>
#include <vector>

#include "hopfmorita/algebra.hpp"
#include "hopfmorita/lie_action.hpp"
#include "hopfmorita/report.hpp"

namespace hopfmorita {

/// degree 0: one value; degree 1: alpha(xi_i); degree 2: values on pairs i < j in lexicographic order.
struct CECochain {
    int degree = 1;
    std::vector<Element> values;

    friend bool operator==(const CECochain& a, const CECochain& b) {
        return a.degree == b.degree && a.values == b.values;
    }
};

inline std::size_t pair_index(int i, int j, int dim) {
    // position of (i, j), i < j, among the pairs in lexicographic order
    return static_cast<std::size_t>(i * dim - i * (i + 1) / 2 + (j - i - 1));
}

inline CECochain cochain1(std::vector<Element> values) { return {1, std::move(values)}; }

inline CECochain zero_cochain(const LieAction& action, int degree) {
    std::size_t n = degree == 0 ? 1
                  : degree == 1 ? static_cast<std::size_t>(action.dim())
                                : static_cast<std::size_t>(action.dim() * (action.dim() - 1) / 2);
    return {degree, std::vector<Element>(n, Element::zero(action.algebra()))};
}

/// (d0 a)(xi_i) = D_i a.
inline CECochain ce_d0(const Element& a, const LieAction& action) {
    if (!is_central(a)) throw DomainError("ce_d0: " + a.str() + " is not central");
    CECochain out{1, {}};
    for (int i = 0; i < action.dim(); ++i) out.values.push_back(action.apply(i, a));
    return out;
}

/// (d1 alpha)(xi_i, xi_j) = D_i alpha(xi_j) - D_j alpha(xi_i) - alpha([xi_i, xi_j]).
inline CECochain ce_d1(const CECochain& alpha, const LieAction& action) {
    if (alpha.degree != 1 || alpha.values.size() != static_cast<std::size_t>(action.dim()))
        throw DomainError("ce_d1 needs a 1-cochain with one value per generator");
    const int d = action.dim();
    CECochain out{2, {}};
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            Element v = action.apply(i, alpha.values[static_cast<std::size_t>(j)]) -
                        action.apply(j, alpha.values[static_cast<std::size_t>(i)]);
            for (const auto& [k, c] : action.brackets().bracket(i, j)) v -= alpha.values[static_cast<std::size_t>(k)] * c;
            out.values.push_back(v);
        }
    return out;
}

inline bool is_zero_cochain(const CECochain& c) {
    for (const auto& v : c.values)
        if (!v.is_zero()) return false;
    return true;
}

/// Anti-Hermitian central elements (within the mode window) as a rational vector space.
class CoefficientSpace {
public:
    CoefficientSpace() = default;

    static CoefficientSpace anti_hermitian_center(const AlgebraPtr& alg, int window) {
        CoefficientSpace s;
        s.alg_ = alg;
        if (!alg->finite()) {
            if (window < 0) throw DomainError("empty mode window");
            s.window_ = window;
        }
        std::vector<SparseVec<Rational>> gens;
        const Scalar i = Scalar::i();
        for (const auto& z : center_basis(alg, window)) {
            gens.push_back(coords::real((z - z.star()).coeffs()));
            gens.push_back(coords::real(((z + z.star()) * i).coeffs()));
        }
        for (const auto& v : rref_basis(gens)) {
            s.echelon_.insert(v);
            s.basis_.push_back(Element(alg, coords::from_real(v)));
        }
        return s;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<Element>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    std::optional<int> window() const { return window_; }

    /// Coordinates in basis(), or nullopt if x is not in the space.
    std::optional<SparseVec<Rational>> coords(const Element& x) const {
        auto r = echelon_.reduce(coords::real(x.coeffs()));
        if (!r.remainder.empty()) return std::nullopt;
        return r.combo;
    }

    Element element(const SparseVec<Rational>& c) const {
        Element out = Element::zero(alg_);
        for (const auto& [j, q] : c) out += basis_.at(j) * Scalar(q);
        return out;
    }

    Json describe() const {
        Json j;
        j["algebra"] = alg_->name();
        j["field"] = "Q (rational span of anti-Hermitian central elements)";
        j["window"] = window_ ? Json(*window_) : Json(nullptr);
        j["dimension"] = dim();
        return j;
    }

private:
    AlgebraPtr alg_;
    std::optional<int> window_;
    Echelon<Rational> echelon_;
    std::vector<Element> basis_;
};

/// Z1, B1 and H1 = Z1 / B1 over the rationals, in coordinates of
/// C1 = V^d (index i * dim V + j is alpha(xi_i) = v_j).
class CohomologyResult {
public:
    const CoefficientSpace& coefficients() const { return coeff_; }
    int lie_dim() const { return d_; }
    const std::vector<SparseVec<Rational>>& z1() const { return z1_; }
    const std::vector<SparseVec<Rational>>& b1() const { return b1_; }
    const std::vector<SparseVec<Rational>>& h1() const { return h1_; }
    /// preimage[k] in V coordinates with d0(preimage[k]) = b1()[k].
    const std::vector<SparseVec<Rational>>& b1_preimages() const { return b1_pre_; }

    CECochain cochain(const SparseVec<Rational>& c) const {
        const std::size_t m = coeff_.dim();
        std::vector<SparseVec<Rational>> parts(static_cast<std::size_t>(d_));
        for (const auto& [k, q] : c) parts.at(k / m)[k % m] = q;
        CECochain out{1, {}};
        for (const auto& p : parts) out.values.push_back(coeff_.element(p));
        return out;
    }

    /// C1 coordinates; nullopt if some value lies outside the coefficient space.
    std::optional<SparseVec<Rational>> coords(const CECochain& alpha) const {
        if (alpha.degree != 1 || alpha.values.size() != static_cast<std::size_t>(d_)) return std::nullopt;
        SparseVec<Rational> out;
        const std::size_t m = coeff_.dim();
        for (std::size_t i = 0; i < alpha.values.size(); ++i) {
            auto c = coeff_.coords(alpha.values[i]);
            if (!c) return std::nullopt;
            for (const auto& [j, q] : *c) out[i * m + j] = q;
        }
        return out;
    }

    bool is_cocycle(const SparseVec<Rational>& c) const { return z1_echelon_.contains(c); }
    bool is_coboundary(const SparseVec<Rational>& c) const { return b1_echelon_.contains(c); }

    /// Coordinates of the class of a cocycle in the h1() basis.
    SparseVec<Rational> class_of(const SparseVec<Rational>& c) const {
        if (!is_cocycle(c)) throw DomainError("class_of: cochain is not a cocycle");
        auto w = b1_echelon_.reduce(c).remainder;
        auto r = h1_echelon_.reduce(w);
        if (!r.remainder.empty()) throw InconsistencyError("cocycle does not reduce into the H1 complement");
        return r.combo;
    }

    Json to_json() const {
        Json j;
        j["coefficients"] = coeff_.describe();
        j["lie_dim"] = d_;
        j["dim_Z1"] = z1_.size();
        j["dim_B1"] = b1_.size();
        j["dim_H1"] = h1_.size();
        Json reps = Json::array();
        for (const auto& v : h1_) reps.push_back(cochain_json(cochain(v)));
        j["H1_representatives"] = reps;
        Json bs = Json::array();
        for (std::size_t k = 0; k < b1_.size(); ++k) {
            Json b;
            b["cochain"] = cochain_json(cochain(b1_[k]));
            b["preimage"] = coeff_.element(b1_pre_[k]).str();
            bs.push_back(b);
        }
        j["B1_basis"] = bs;
        return j;
    }

    static Json cochain_json(const CECochain& c) {
        Json j = Json::object();
        for (std::size_t i = 0; i < c.values.size(); ++i) j["xi" + std::to_string(i + 1)] = c.values[i].str();
        return j;
    }

    friend CohomologyResult h1(const LieAction& action, int window);

private:
    CoefficientSpace coeff_;
    int d_ = 0;
    std::vector<SparseVec<Rational>> z1_, b1_, h1_, b1_pre_;
    Echelon<Rational> z1_echelon_, b1_echelon_, h1_echelon_;
};

/// Matrix of D_i on the coefficient space (columns = images of basis vectors).
inline std::vector<SparseVec<Rational>> derivation_matrix(const CoefficientSpace& V, const LieAction& action, int i) {
    std::vector<SparseVec<Rational>> cols;
    for (const auto& v : V.basis()) {
        auto c = V.coords(action.apply(i, v));
        if (!c)
            throw DomainError("xi" + std::to_string(i + 1) + " maps " + v.str() +
                              " outside the coefficient space (window not invariant or not a *-action)");
        cols.push_back(*c);
    }
    return cols;
}

inline CohomologyResult h1(const LieAction& action, int window = 3) {
    if (!action.brackets().real()) throw DomainError("h1 needs real structure constants");
    CohomologyResult res;
    res.coeff_ = CoefficientSpace::anti_hermitian_center(action.algebra(), window);
    res.d_ = action.dim();
    const std::size_t m = res.coeff_.dim();
    const int d = res.d_;

    std::vector<std::vector<SparseVec<Rational>>> M;
    for (int i = 0; i < d; ++i) M.push_back(derivation_matrix(res.coeff_, action, i));

    // d0: column j = (M_i e_j)_i
    std::vector<SparseVec<Rational>> d0;
    for (std::size_t j = 0; j < m; ++j) {
        SparseVec<Rational> col;
        for (int i = 0; i < d; ++i)
            for (const auto& [r, q] : M[static_cast<std::size_t>(i)][j]) col[static_cast<std::size_t>(i) * m + r] = q;
        d0.push_back(col);
    }
    // d1: column (i, j) = image of alpha with alpha(xi_i) = v_j
    std::vector<SparseVec<Rational>> d1;
    for (int i = 0; i < d; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            SparseVec<Rational> col;
            for (int p = 0; p < d; ++p)
                for (int q = p + 1; q < d; ++q) {
                    const std::size_t block = pair_index(p, q, d) * m;
                    SparseVec<Rational> v;
                    if (q == i) axpy(v, Rational(1), M[static_cast<std::size_t>(p)][j]);
                    if (p == i) axpy(v, Rational(-1), M[static_cast<std::size_t>(q)][j]);
                    const Scalar c = action.brackets().at(p, q, i);
                    if (!c.is_zero()) axpy(v, Rational(-c.re()), SparseVec<Rational>{{j, Rational(1)}});
                    for (const auto& [r, x] : v) col[block + r] = x;
                }
            d1.push_back(col);
        }

    res.z1_ = kernel_of(d1);
    res.b1_ = rref_basis(d0);
    for (const auto& z : res.z1_) res.z1_echelon_.insert(z);
    for (const auto& b : res.b1_) {
        if (!res.z1_echelon_.contains(b)) throw InconsistencyError("coboundary is not a cocycle: d1 d0 != 0");
        res.b1_echelon_.insert(b);
        auto pre = solve_in_span(d0, b);
        if (!pre) throw InconsistencyError("coboundary without preimage");
        res.b1_pre_.push_back(*pre);
    }
    std::vector<SparseVec<Rational>> complement;
    for (const auto& z : res.z1_) {
        auto w = res.b1_echelon_.reduce(z).remainder;
        if (!w.empty()) complement.push_back(w);
    }
    res.h1_ = rref_basis(complement);
    for (const auto& h : res.h1_) res.h1_echelon_.insert(h);
    if (res.h1_.size() + res.b1_.size() != res.z1_.size())
        throw InconsistencyError("dim H1 + dim B1 != dim Z1");
    return res;
}

}  // namespace hopfmorita
