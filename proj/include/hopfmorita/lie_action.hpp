#pragma once

// Finite-dimensional real Lie algebras given by structure constants, and
// their actions on a model algebra by *-derivations.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hopfmorita/algebra.hpp"
#include "hopfmorita/report.hpp"

namespace hopfmorita {

/// Structure constants: [xi_i, xi_j] = sum_k c[i][j][k] xi_k.
class LieBrackets {
public:
    LieBrackets() = default;
    explicit LieBrackets(int dim)
        : dim_(dim), c_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
        if (dim < 1) throw ConstructionError("Lie algebra dimension must be >= 1");
    }

    static LieBrackets abelian(int dim) { return LieBrackets(dim); }

    int dim() const { return dim_; }

    /// Sets [xi_i, xi_j] and, unless `antisymmetrize` is false, [xi_j, xi_i] = -[xi_i, xi_j].
    void set(int i, int j, const std::vector<Scalar>& coeffs, bool antisymmetrize = true) {
        if (coeffs.size() != static_cast<std::size_t>(dim_))
            throw ConstructionError("bracket needs " + std::to_string(dim_) + " coefficients");
        for (int k = 0; k < dim_; ++k) {
            at(i, j, k) = coeffs[static_cast<std::size_t>(k)];
            if (antisymmetrize) at(j, i, k) = -coeffs[static_cast<std::size_t>(k)];
        }
    }

    const Scalar& at(int i, int j, int k) const { return c_[index(i, j, k)]; }
    Scalar& at(int i, int j, int k) { return c_[index(i, j, k)]; }

    /// [xi_i, xi_j] as a combination of generator indices.
    Linear<int> bracket(int i, int j) const {
        Linear<int> out;
        for (int k = 0; k < dim_; ++k) out.add(k, at(i, j, k));
        return out;
    }

    Linear<int> bracket(const Linear<int>& x, const Linear<int>& y) const {
        Linear<int> out;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) out.add_scaled(bracket(i, j), a * b);
        return out;
    }

    bool real() const {
        for (const auto& c : c_)
            if (!c.is_real()) return false;
        return true;
    }

    /// Antisymmetry and Jacobi identity on all generator index tuples.
    Report axiom_report() const {
        Report r("lie brackets");
        auto& anti = r.check("antisymmetry");
        for (int i = 0; i < dim_; ++i)
            for (int j = i; j < dim_; ++j)
                anti.expect(bracket(i, j) == -bracket(j, i),
                            "[xi" + std::to_string(i + 1) + ",xi" + std::to_string(j + 1) + "]");
        auto& jac = r.check("jacobi");
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                for (int k = 0; k < dim_; ++k) {
                    Linear<int> xi(i), xj(j), xk(k);
                    Linear<int> s = bracket(bracket(xi, xj), xk) + bracket(bracket(xj, xk), xi) +
                                    bracket(bracket(xk, xi), xj);
                    jac.expect(s.is_zero(), "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                                std::to_string(k + 1) + ")");
                }
        return r;
    }

private:
    std::size_t index(int i, int j, int k) const {
        if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_)
            throw DomainError("generator index out of range");
        auto d = static_cast<std::size_t>(dim_);
        return (static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)) * d + static_cast<std::size_t>(k);
    }

    int dim_ = 0;
    std::vector<Scalar> c_;
};

/// A linear operator on a model algebra, meant to be a *-derivation.
/// Finite models store the image of every basis vector. On the Laurent model
/// a derivation is determined by f = D(u), with D(u^k) = k u^(k-1) f.
class Derivation {
public:
    Derivation() = default;

    static Derivation from_table(AlgebraPtr alg, std::vector<BasisVec> images) {
        if (!alg->finite()) throw UnsupportedModelError("tables need a finite model; use from_generator_image");
        if (images.size() != alg->dim()) throw ConstructionError("derivation table must cover every basis vector");
        Derivation d;
        d.alg_ = std::move(alg);
        d.table_ = std::move(images);
        return d;
    }

    static Derivation zero(AlgebraPtr alg) {
        Derivation d;
        d.alg_ = alg;
        if (alg->finite()) d.table_.assign(alg->dim(), BasisVec{});
        else d.image_ = Element::zero(alg);
        return d;
    }

    /// D determined by D(x) = f on TruncatedPoly or D(u) = f on Laurent.
    static Derivation from_generator_image(AlgebraPtr alg, const Element& f) {
        Derivation d;
        d.alg_ = alg;
        if (alg->kind() == ModelKind::Laurent) {
            d.image_ = f;
            return d;
        }
        if (alg->kind() != ModelKind::TruncatedPoly)
            throw UnsupportedModelError("generator images are defined for TruncatedPoly and Laurent only");
        int n = alg->poly_order();
        d.table_.assign(static_cast<std::size_t>(n), BasisVec{});
        for (int k = 1; k < n; ++k)
            d.table_[static_cast<std::size_t>(k)] =
                (Element::basis(alg, k - 1) * f * Scalar(k)).coeffs();
        return d;
    }

    BasisVec apply_basis(BasisIndex k) const {
        if (alg_->kind() == ModelKind::Laurent) {
            if (k == 0) return {};
            return (Element::basis(alg_, k - 1) * image_ * Scalar(k)).coeffs();
        }
        return table_.at(static_cast<std::size_t>(k));
    }

    Element apply(const Element& a) const {
        BasisVec out;
        for (const auto& [k, c] : a.coeffs()) out.add_scaled(apply_basis(k), c);
        return Element(alg_, out);
    }

    const AlgebraPtr& algebra() const { return alg_; }

private:
    AlgebraPtr alg_;
    std::vector<BasisVec> table_;
    Element image_;
};

/// A Lie algebra acting on a model algebra: generator xi_i acts by derivations[i].
class LieAction {
public:
    LieAction(AlgebraPtr alg, LieBrackets brackets, std::vector<Derivation> derivations)
        : alg_(std::move(alg)), brackets_(std::move(brackets)), derivations_(std::move(derivations)) {
        if (derivations_.size() != static_cast<std::size_t>(brackets_.dim()))
            throw ConstructionError("need one derivation per Lie algebra generator");
        for (const auto& d : derivations_)
            if (d.algebra() != alg_) throw ConstructionError("derivation acts on a different algebra");
    }

    static LieAction trivial(AlgebraPtr alg, LieBrackets brackets) {
        std::vector<Derivation> ds(static_cast<std::size_t>(brackets.dim()), Derivation::zero(alg));
        return LieAction(std::move(alg), std::move(brackets), std::move(ds));
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const LieBrackets& brackets() const { return brackets_; }
    int dim() const { return brackets_.dim(); }
    const Derivation& derivation(int i) const { return derivations_.at(static_cast<std::size_t>(i)); }

    Element apply(int i, const Element& a) const { return derivation(i).apply(a); }

    Element apply(const Linear<int>& xi, const Element& a) const {
        Element out = Element::zero(alg_);
        for (const auto& [i, c] : xi) out += apply(i, a) * c;
        return out;
    }

private:
    AlgebraPtr alg_;
    LieBrackets brackets_;
    std::vector<Derivation> derivations_;
};

/// D_i a == 0 for every generator.
inline bool is_invariant(const Element& a, const LieAction& action) {
    for (int i = 0; i < action.dim(); ++i)
        if (!action.apply(i, a).is_zero()) return false;
    return true;
}

/// Verifies bracket axioms, Leibniz rule, *-compatibility and the
/// representation property D_[i,j] = [D_i, D_j] on basis elements
/// (the mode window |k| <= window on Laurent).
inline Report check_lie_action(const LieAction& action, int window = 3) {
    Report r("lie action on " + action.algebra()->name());
    r.merge(action.brackets().axiom_report());
    const auto& alg = action.algebra();
    auto basis = alg->basis_window(window);
    auto gen = [](int i) { return "xi" + std::to_string(i + 1); };

    auto& leib = r.check("leibniz");
    auto& star = r.check("star-compatible");
    auto& rep = r.check("bracket-representation");
    for (int i = 0; i < action.dim(); ++i) {
        for (BasisIndex a : basis) {
            Element ea = Element::basis(alg, a);
            for (BasisIndex b : basis) {
                Element eb = Element::basis(alg, b);
                Element lhs = action.apply(i, ea * eb);
                Element rhs = action.apply(i, ea) * eb + ea * action.apply(i, eb);
                leib.expect(lhs == rhs, gen(i) + " at (" + alg->label(a) + "," + alg->label(b) + ")");
            }
            if (action.brackets().real())
                star.expect(action.apply(i, ea.star()) == action.apply(i, ea).star(),
                            gen(i) + " at " + alg->label(a));
            for (int j = 0; j < action.dim(); ++j) {
                Element lhs = action.apply(action.brackets().bracket(i, j), ea);
                Element rhs = action.apply(i, action.apply(j, ea)) - action.apply(j, action.apply(i, ea));
                rep.expect(lhs == rhs, "[" + gen(i) + "," + gen(j) + "] at " + alg->label(a));
            }
        }
    }
    return r;
}

}  // namespace hopfmorita
