#pragma once

// Based *-algebras given by structure constants on a countable basis, and
// their elements in canonical sparse form.
//
// Four desk models are provided: functions on a finite set, truncated
// polynomials K[x]/(x^n), matrices, and the Laurent polynomials C[u, u^-1]
// (group algebra of Z, the algebraic circle). Products and n x n matrices
// over a finite model can be assembled from those.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "hopfmorita/errors.hpp"
#include "hopfmorita/linear.hpp"
#include "hopfmorita/sparse_linalg.hpp"

namespace hopfmorita {

using BasisIndex = long;
using BasisVec = Linear<BasisIndex>;

struct ModelSpec;

namespace model {
struct FiniteFunctions {
    std::vector<std::string> points;
};
struct TruncatedPoly {
    int order = 0;  // K[x]/(x^order)
};
struct Matrix {
    int n = 0;
};
struct Laurent {};
struct Product {
    std::vector<ModelSpec> factors;
};
/// n x n matrices with entries in a finite model.
struct MatrixOver {
    int n = 0;
    std::vector<ModelSpec> base;  // exactly one entry
};
}  // namespace model

struct ModelSpec {
    std::variant<model::FiniteFunctions, model::TruncatedPoly, model::Matrix, model::Laurent,
                 model::Product, model::MatrixOver>
        kind;
};

enum class ModelKind { FiniteFunctions, TruncatedPoly, Matrix, Laurent, Product, MatrixOver };

class StarAlgebra;
using AlgebraPtr = std::shared_ptr<const StarAlgebra>;

class StarAlgebra {
public:
    ModelKind kind() const { return kind_; }
    const ModelSpec& spec() const { return spec_; }
    const std::string& name() const { return name_; }

    bool finite() const { return kind_ != ModelKind::Laurent; }
    std::size_t dim() const {
        if (!finite()) throw UnsupportedModelError("Laurent model is infinite-dimensional");
        return labels_.size();
    }
    bool commutative() const { return commutative_; }

    BasisVec mul_basis(BasisIndex i, BasisIndex j) const {
        if (kind_ == ModelKind::Laurent) return BasisVec(i + j);
        check_index(i);
        check_index(j);
        return mul_[static_cast<std::size_t>(i) * labels_.size() + static_cast<std::size_t>(j)];
    }

    BasisVec star_basis(BasisIndex i) const {
        if (kind_ == ModelKind::Laurent) return BasisVec(-i);
        check_index(i);
        return star_[static_cast<std::size_t>(i)];
    }

    const BasisVec& unit() const { return unit_; }

    /// All basis indices (finite models) or |k| <= window (Laurent).
    std::vector<BasisIndex> basis_window(int window) const {
        std::vector<BasisIndex> out;
        if (kind_ == ModelKind::Laurent) {
            if (window < 0) throw DomainError("negative mode window");
            for (long k = -window; k <= window; ++k) out.push_back(k);
        } else {
            for (std::size_t i = 0; i < labels_.size(); ++i) out.push_back(static_cast<BasisIndex>(i));
        }
        return out;
    }

    std::string label(BasisIndex i) const {
        if (kind_ == ModelKind::Laurent) return i == 0 ? "1" : "u^" + std::to_string(i);
        check_index(i);
        return labels_[static_cast<std::size_t>(i)];
    }

    /// Inverse of label(); Laurent accepts "1", "u" and "u^k".
    std::optional<BasisIndex> find_label(const std::string& s) const {
        if (kind_ == ModelKind::Laurent) {
            if (s == "1") return 0;
            if (s == "u") return 1;
            if (s.size() > 2 && s.compare(0, 2, "u^") == 0) {
                std::size_t pos = 0;
                try {
                    long k = std::stol(s.substr(2), &pos);
                    if (pos == s.size() - 2) return k;
                } catch (const std::exception&) {
                }
            }
            return std::nullopt;
        }
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == s) return static_cast<BasisIndex>(i);
        return std::nullopt;
    }

    // Structural metadata for products and matrix algebras.
    const std::vector<AlgebraPtr>& factors() const { return factors_; }
    const std::vector<std::size_t>& offsets() const { return offsets_; }
    int matrix_size() const { return matrix_n_; }
    const AlgebraPtr& matrix_base() const { return matrix_base_; }
    const std::vector<std::string>& points() const { return points_; }
    int poly_order() const { return poly_order_; }

    friend AlgebraPtr build_model(const ModelSpec& spec);

private:
    void check_index(BasisIndex i) const {
        if (i < 0 || static_cast<std::size_t>(i) >= labels_.size())
            throw DomainError("basis index " + std::to_string(i) + " out of range for " + name_);
    }

    ModelKind kind_{};
    ModelSpec spec_;
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<BasisVec> mul_;   // dim x dim, row-major
    std::vector<BasisVec> star_;
    BasisVec unit_;
    bool commutative_ = false;

    std::vector<AlgebraPtr> factors_;
    std::vector<std::size_t> offsets_;
    int matrix_n_ = 0;
    AlgebraPtr matrix_base_;
    std::vector<std::string> points_;
    int poly_order_ = 0;
};

namespace detail {

inline std::string describe(const ModelSpec& spec) {
    struct V {
        std::string operator()(const model::FiniteFunctions& m) const {
            std::string s = "FiniteFunctions({";
            for (std::size_t i = 0; i < m.points.size(); ++i) s += (i ? "," : "") + m.points[i];
            return s + "})";
        }
        std::string operator()(const model::TruncatedPoly& m) const {
            return "TruncatedPoly(" + std::to_string(m.order) + ")";
        }
        std::string operator()(const model::Matrix& m) const { return "Matrix(" + std::to_string(m.n) + ")"; }
        std::string operator()(const model::Laurent&) const { return "Laurent"; }
        std::string operator()(const model::Product& m) const {
            std::string s = "Product(";
            for (std::size_t i = 0; i < m.factors.size(); ++i) s += (i ? "," : "") + describe(m.factors[i]);
            return s + ")";
        }
        std::string operator()(const model::MatrixOver& m) const {
            return "MatrixOver(" + std::to_string(m.n) + "," + (m.base.empty() ? "?" : describe(m.base[0])) + ")";
        }
    };
    return std::visit(V{}, spec.kind);
}

inline BasisVec mul_vec(const StarAlgebra& alg, const BasisVec& a, const BasisVec& b) {
    BasisVec out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) out.add_scaled(alg.mul_basis(i, j), x * y);
    return out;
}

inline BasisVec star_vec(const StarAlgebra& alg, const BasisVec& a) {
    BasisVec out;
    for (const auto& [i, x] : a) out.add_scaled(alg.star_basis(i), x.conj());
    return out;
}

}  // namespace detail

/// Builds the model and, for finite models, verifies associativity, unit
/// laws and the involution axioms on all basis tuples.
inline AlgebraPtr build_model(const ModelSpec& spec) {
    auto alg = std::make_shared<StarAlgebra>();
    alg->spec_ = spec;
    alg->name_ = detail::describe(spec);
    auto& A = *alg;

    auto init_tables = [&A](std::size_t d) {
        A.mul_.assign(d * d, BasisVec{});
        A.star_.assign(d, BasisVec{});
    };

    if (auto* m = std::get_if<model::FiniteFunctions>(&spec.kind)) {
        if (m->points.empty()) throw ConstructionError("FiniteFunctions needs a nonempty point set");
        std::set<std::string> seen(m->points.begin(), m->points.end());
        if (seen.size() != m->points.size()) throw ConstructionError("FiniteFunctions points must be distinct");
        A.kind_ = ModelKind::FiniteFunctions;
        A.points_ = m->points;
        std::size_t d = m->points.size();
        init_tables(d);
        for (std::size_t x = 0; x < d; ++x) {
            A.labels_.push_back("e_" + m->points[x]);
            A.mul_[x * d + x] = BasisVec(static_cast<BasisIndex>(x));
            A.star_[x] = BasisVec(static_cast<BasisIndex>(x));
            A.unit_.add(static_cast<BasisIndex>(x), Scalar(1));
        }
        A.commutative_ = true;
    } else if (auto* m = std::get_if<model::TruncatedPoly>(&spec.kind)) {
        if (m->order < 1) throw ConstructionError("TruncatedPoly order must be >= 1");
        A.kind_ = ModelKind::TruncatedPoly;
        A.poly_order_ = m->order;
        std::size_t d = static_cast<std::size_t>(m->order);
        init_tables(d);
        for (std::size_t k = 0; k < d; ++k) {
            A.labels_.push_back(k == 0 ? "1" : (k == 1 ? "x" : "x^" + std::to_string(k)));
            A.star_[k] = BasisVec(static_cast<BasisIndex>(k));
            for (std::size_t l = 0; k + l < d; ++l) A.mul_[k * d + l] = BasisVec(static_cast<BasisIndex>(k + l));
        }
        A.unit_ = BasisVec(0);
        A.commutative_ = true;
    } else if (auto* m = std::get_if<model::Matrix>(&spec.kind)) {
        if (m->n < 1) throw ConstructionError("Matrix size must be >= 1");
        A.kind_ = ModelKind::Matrix;
        A.matrix_n_ = m->n;
        std::size_t n = static_cast<std::size_t>(m->n), d = n * n;
        init_tables(d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t ij = i * n + j;
                A.labels_.push_back("E_" + std::to_string(i + 1) + std::to_string(j + 1));
                A.star_[ij] = BasisVec(static_cast<BasisIndex>(j * n + i));
                for (std::size_t l = 0; l < n; ++l)
                    A.mul_[ij * d + (j * n + l)] = BasisVec(static_cast<BasisIndex>(i * n + l));
            }
        for (std::size_t i = 0; i < n; ++i) A.unit_.add(static_cast<BasisIndex>(i * n + i), Scalar(1));
        A.commutative_ = n == 1;
    } else if (std::get_if<model::Laurent>(&spec.kind)) {
        A.kind_ = ModelKind::Laurent;
        A.unit_ = BasisVec(0);
        A.commutative_ = true;
        return alg;
    } else if (auto* m = std::get_if<model::Product>(&spec.kind)) {
        if (m->factors.empty()) throw ConstructionError("Product needs at least one factor");
        A.kind_ = ModelKind::Product;
        std::size_t d = 0;
        A.commutative_ = true;
        for (std::size_t f = 0; f < m->factors.size(); ++f) {
            auto fac = build_model(m->factors[f]);
            if (!fac->finite()) throw ConstructionError("Product factors must be finite-dimensional");
            A.offsets_.push_back(d);
            d += fac->dim();
            A.commutative_ = A.commutative_ && fac->commutative();
            A.factors_.push_back(std::move(fac));
        }
        init_tables(d);
        for (std::size_t f = 0; f < A.factors_.size(); ++f) {
            const auto& fac = *A.factors_[f];
            auto off = static_cast<BasisIndex>(A.offsets_[f]);
            auto shift = [off](const BasisVec& v) {
                BasisVec out;
                for (const auto& [k, c] : v) out.add(k + off, c);
                return out;
            };
            for (std::size_t i = 0; i < fac.dim(); ++i) {
                A.labels_.push_back(std::to_string(f) + ":" + fac.label(static_cast<BasisIndex>(i)));
                A.star_[A.offsets_[f] + i] = shift(fac.star_basis(static_cast<BasisIndex>(i)));
                for (std::size_t j = 0; j < fac.dim(); ++j)
                    A.mul_[(A.offsets_[f] + i) * d + A.offsets_[f] + j] =
                        shift(fac.mul_basis(static_cast<BasisIndex>(i), static_cast<BasisIndex>(j)));
            }
            A.unit_ += shift(fac.unit());
        }
    } else if (auto* m = std::get_if<model::MatrixOver>(&spec.kind)) {
        if (m->n < 1) throw ConstructionError("MatrixOver size must be >= 1");
        if (m->base.size() != 1) throw ConstructionError("MatrixOver needs exactly one base model");
        auto base = build_model(m->base[0]);
        if (!base->finite()) throw ConstructionError("MatrixOver base must be finite-dimensional");
        A.kind_ = ModelKind::MatrixOver;
        A.matrix_n_ = m->n;
        A.matrix_base_ = base;
        std::size_t n = static_cast<std::size_t>(m->n), b = base->dim(), d = n * n * b;
        init_tables(d);
        auto idx = [n, b](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * b + k; };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < b; ++k) {
                    A.labels_.push_back("E_" + std::to_string(i + 1) + std::to_string(j + 1) + "(x)" +
                                        base->label(static_cast<BasisIndex>(k)));
                    BasisVec st;
                    for (const auto& [kk, c] : base->star_basis(static_cast<BasisIndex>(k)))
                        st.add(static_cast<BasisIndex>(idx(j, i, static_cast<std::size_t>(kk))), c);
                    A.star_[idx(i, j, k)] = st;
                    for (std::size_t l = 0; l < n; ++l)
                        for (std::size_t k2 = 0; k2 < b; ++k2) {
                            BasisVec p;
                            for (const auto& [kk, c] :
                                 base->mul_basis(static_cast<BasisIndex>(k), static_cast<BasisIndex>(k2)))
                                p.add(static_cast<BasisIndex>(idx(i, l, static_cast<std::size_t>(kk))), c);
                            A.mul_[idx(i, j, k) * d + idx(j, l, k2)] = p;
                        }
                }
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [kk, c] : base->unit())
                A.unit_.add(static_cast<BasisIndex>(idx(i, i, static_cast<std::size_t>(kk))), c);
        A.commutative_ = n == 1 && base->commutative();
    }

    // Build-time verification for finite models.
    std::size_t d = A.labels_.size();
    auto bi = [](std::size_t i) { return static_cast<BasisIndex>(i); };
    for (std::size_t i = 0; i < d; ++i) {
        BasisVec e(bi(i));
        if (detail::mul_vec(A, A.unit_, e) != e || detail::mul_vec(A, e, A.unit_) != e)
            throw ConstructionError(A.name_ + ": unit law fails at " + A.labels_[i]);
        if (detail::star_vec(A, A.star_[i]) != e)
            throw ConstructionError(A.name_ + ": star is not involutive at " + A.labels_[i]);
        for (std::size_t j = 0; j < d; ++j) {
            const BasisVec& ij = A.mul_[i * d + j];
            if (detail::star_vec(A, ij) != detail::mul_vec(A, A.star_[j], A.star_[i]))
                throw ConstructionError(A.name_ + ": star is not antimultiplicative");
            for (std::size_t k = 0; k < d; ++k) {
                if (detail::mul_vec(A, ij, BasisVec(bi(k))) != detail::mul_vec(A, BasisVec(bi(i)), A.mul_[j * d + k]))
                    throw ConstructionError(A.name_ + ": associativity fails at (" + A.labels_[i] + "," +
                                            A.labels_[j] + "," + A.labels_[k] + ")");
            }
        }
    }
    if (detail::star_vec(A, A.unit_) != A.unit_) throw ConstructionError(A.name_ + ": star(1) != 1");
    return alg;
}

inline ModelSpec finite_functions(std::vector<std::string> points) {
    return {model::FiniteFunctions{std::move(points)}};
}
inline ModelSpec finite_functions(int count) {
    std::vector<std::string> pts;
    for (int i = 0; i < count; ++i) pts.push_back(std::to_string(i + 1));
    return finite_functions(std::move(pts));
}
inline ModelSpec truncated_poly(int order) { return {model::TruncatedPoly{order}}; }
inline ModelSpec matrix_model(int n) { return {model::Matrix{n}}; }
inline ModelSpec laurent_model() { return {model::Laurent{}}; }
inline ModelSpec product_model(std::vector<ModelSpec> factors) { return {model::Product{std::move(factors)}}; }
inline ModelSpec matrix_over(int n, ModelSpec base) { return {model::MatrixOver{n, {std::move(base)}}}; }

/// An element of a based *-algebra, stored as a canonical sparse combination.
class Element {
public:
    Element() = default;
    Element(AlgebraPtr alg, BasisVec coeffs = {}) : alg_(std::move(alg)), c_(std::move(coeffs)) {}

    static Element zero(const AlgebraPtr& alg) { return Element(alg); }
    static Element one(const AlgebraPtr& alg) { return Element(alg, alg->unit()); }
    static Element basis(const AlgebraPtr& alg, BasisIndex i, Scalar c = Scalar(1)) {
        return Element(alg, BasisVec(i, std::move(c)));
    }
    static Element scalar(const AlgebraPtr& alg, const Scalar& c) { return Element(alg, alg->unit() * c); }

    const AlgebraPtr& algebra() const { return alg_; }
    const BasisVec& coeffs() const { return c_; }
    Scalar coeff(BasisIndex i) const { return c_.coeff(i); }
    bool is_zero() const { return c_.is_zero(); }

    Element star() const { return Element(alg_, detail::star_vec(*alg_, c_)); }

    Element& operator+=(const Element& o) {
        same(o);
        c_ += o.c_;
        return *this;
    }
    Element& operator-=(const Element& o) {
        same(o);
        c_ -= o.c_;
        return *this;
    }
    Element& operator*=(const Scalar& s) {
        c_ *= s;
        return *this;
    }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Element a, const Scalar& s) { return a *= s; }
    friend Element operator*(const Scalar& s, Element a) { return a *= s; }
    Element operator-() const { return Element(alg_, -c_); }

    friend Element operator*(const Element& a, const Element& b) {
        a.same(b);
        return Element(a.alg_, detail::mul_vec(*a.alg_, a.c_, b.c_));
    }

    friend bool operator==(const Element& a, const Element& b) {
        if (a.alg_ && b.alg_ && a.alg_ != b.alg_) return false;
        return a.c_ == b.c_;
    }

    std::string str() const {
        if (c_.is_zero()) return "0";
        std::string s;
        for (const auto& [k, v] : c_) {
            if (!s.empty()) s += " + ";
            s += "(" + v.str() + ")" + alg_->label(k);
        }
        return s;
    }

private:
    void same(const Element& o) const {
        if (alg_ != o.alg_ && alg_ && o.alg_) throw DomainError("elements of different algebras");
    }

    AlgebraPtr alg_;
    BasisVec c_;
};

inline std::ostream& operator<<(std::ostream& os, const Element& a) { return os << a.str(); }

inline Element commutator(const Element& a, const Element& b) { return a * b - b * a; }

/// Coordinates used whenever elements are fed into exact linear algebra.
/// The map k -> k + offset is order preserving, so RREF output is canonical
/// with respect to the natural basis order, including negative Laurent modes.
namespace coords {
inline constexpr std::size_t kIndexOffset = std::size_t{1} << 40;
inline constexpr std::size_t kBlockStride = std::size_t{1} << 42;

inline std::size_t of(BasisIndex k, std::size_t block = 0) {
    return block * kBlockStride + static_cast<std::size_t>(k + static_cast<long>(kIndexOffset));
}
inline BasisIndex index_of(std::size_t c) {
    return static_cast<BasisIndex>(static_cast<long>(c % kBlockStride) - static_cast<long>(kIndexOffset));
}
inline std::size_t block_of(std::size_t c) { return c / kBlockStride; }

/// Complex coordinates.
inline void append(SparseVec<Scalar>& out, const BasisVec& v, std::size_t block = 0) {
    for (const auto& [k, c] : v) out[of(k, block)] = c;
}
/// Real coordinates: re at 2*coord, im at 2*coord + 1.
inline void append_real(SparseVec<Rational>& out, const BasisVec& v, std::size_t block = 0) {
    for (const auto& [k, c] : v) {
        std::size_t base = 2 * of(k, 0) + block * 2 * kBlockStride;
        if (sgn(c.re()) != 0) out[base] = c.re();
        if (sgn(c.im()) != 0) out[base + 1] = c.im();
    }
}
inline SparseVec<Rational> real(const BasisVec& v) {
    SparseVec<Rational> out;
    append_real(out, v);
    return out;
}
/// Inverse of append_real restricted to one block.
inline BasisVec from_real(const SparseVec<Rational>& r, std::size_t block = 0) {
    BasisVec out;
    for (const auto& [c, q] : r) {
        std::size_t b = c / (2 * kBlockStride);
        if (b != block) continue;
        std::size_t local = c % (2 * kBlockStride);
        BasisIndex k = index_of(local / 2);
        out.add(k, local % 2 == 0 ? Scalar(q) : Scalar(Rational(0), q));
    }
    return out;
}
}  // namespace coords

/// Basis of the center. Finite models: exact kernel of z -> ([z, b_i])_i over
/// Q(i), returned in canonical (RREF) form. Laurent: commutative, so the
/// basis vectors u^k with |k| <= window.
inline std::vector<Element> center_basis(const AlgebraPtr& alg, int window = 0) {
    std::vector<Element> out;
    if (alg->commutative()) {
        for (BasisIndex k : alg->basis_window(window)) out.push_back(Element::basis(alg, k));
        return out;
    }
    auto basis = alg->basis_window(window);
    std::vector<SparseVec<Scalar>> columns;
    for (BasisIndex j : basis) {
        SparseVec<Scalar> col;
        Element bj = Element::basis(alg, j);
        for (std::size_t i = 0; i < basis.size(); ++i)
            coords::append(col, commutator(bj, Element::basis(alg, basis[i])).coeffs(), i);
        columns.push_back(std::move(col));
    }
    for (const auto& ker : kernel_of(columns)) {
        BasisVec v;
        for (const auto& [j, c] : ker) v.add(basis[j], c);
        out.push_back(Element(alg, v));
    }
    return out;
}

inline bool is_central(const Element& a, int window = 0) {
    if (a.algebra()->commutative()) return true;
    for (BasisIndex k : a.algebra()->basis_window(window))
        if (!commutator(a, Element::basis(a.algebra(), k)).is_zero()) return false;
    return true;
}

inline bool is_unitary(const Element& a) {
    Element one = Element::one(a.algebra());
    Element s = a.star();
    return a * s == one && s * a == one;
}

inline bool is_hermitian(const Element& a) { return a.star() == a; }
inline bool is_anti_hermitian(const Element& a) { return a.star() == -a; }

/// Nilpotency index k (a^k == 0), or nullopt if a is not nilpotent.
/// Finite-dimensional only: a nilpotent a satisfies a^(dim+1) == 0.
inline std::optional<int> nilpotency_index(const Element& a) {
    if (!a.algebra()->finite()) {
        if (a.is_zero()) return 1;
        return std::nullopt;  // Laurent polynomials have no nonzero nilpotents
    }
    Element p = a;
    int limit = static_cast<int>(a.algebra()->dim()) + 1;
    for (int k = 1; k <= limit; ++k) {
        if (p.is_zero()) return k;
        p = p * a;
    }
    return std::nullopt;
}

}  // namespace hopfmorita
