#pragma once

// (B, A)-bimodules over the desk models: action tables on a finite basis,
// the canonical self-bimodule of any model, block-graded bimodules between
// FiniteFunctions algebras, the column module A^n over M_n(A), and twisted
// bimodules l(Phi) of algebra isomorphisms. Tensor products over the middle
// algebra impose the balanced relations exactly.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfmorita/algebra.hpp"
#include "hopfmorita/lattice.hpp"
#include "hopfmorita/report.hpp"
#include "hopfmorita/sparse_linalg.hpp"

namespace hopfmorita {

/// Module vectors are combinations of module basis indices.
using ModVec = BasisVec;

namespace detail {
inline SparseVec<Scalar> to_sparse(const ModVec& v, std::size_t offset = 0) {
    SparseVec<Scalar> s;
    for (const auto& [k, c] : v) s[offset + static_cast<std::size_t>(k)] = c;
    return s;
}
}  // namespace detail

class Bimodule {
public:
    using Table = std::vector<std::vector<ModVec>>;

    Bimodule() = default;

    /// A as an (A, A)-bimodule by multiplication.
    static Bimodule canonical(AlgebraPtr A) {
        auto d = std::make_shared<Data>();
        d->name = A->name();
        d->left_alg = A;
        d->right_alg = A;
        d->canonical = true;
        return Bimodule(std::move(d));
    }

    /// left[b][x] = e_b . x_x and right[x][a] = x_x . e_a.
    static Bimodule from_tables(std::string name, AlgebraPtr B, AlgebraPtr A, std::vector<std::string> labels,
                                Table left, Table right) {
        if (!B->finite() || !A->finite()) throw UnsupportedModelError("table bimodules need finite algebras");
        const std::size_t n = labels.size();
        if (left.size() != B->dim()) throw ConstructionError("left action table needs one row per basis element of " + B->name());
        for (const auto& row : left)
            if (row.size() != n) throw ConstructionError("left action table rows need one entry per module basis vector");
        if (right.size() != n) throw ConstructionError("right action table needs one row per module basis vector");
        for (const auto& row : right)
            if (row.size() != A->dim()) throw ConstructionError("right action table rows need one entry per basis element of " + A->name());
        auto check_range = [n](const ModVec& v) {
            for (const auto& [k, c] : v)
                if (k < 0 || static_cast<std::size_t>(k) >= n) throw ConstructionError("module index out of range");
        };
        for (const auto& row : left)
            for (const auto& v : row) check_range(v);
        for (const auto& row : right)
            for (const auto& v : row) check_range(v);
        auto d = std::make_shared<Data>();
        d->name = std::move(name);
        d->left_alg = std::move(B);
        d->right_alg = std::move(A);
        d->labels = std::move(labels);
        d->left = std::move(left);
        d->right = std::move(right);
        return Bimodule(std::move(d));
    }

    /// Between B = FiniteFunctions(Y) and A = FiniteFunctions(X): the block
    /// e_y E e_x has dimension dims[y][x]; e_y acts on the left and e_x on
    /// the right by projecting onto their blocks.
    static Bimodule graded(AlgebraPtr B, AlgebraPtr A, const IntMatrix& dims) {
        if (B->kind() != ModelKind::FiniteFunctions || A->kind() != ModelKind::FiniteFunctions)
            throw UnsupportedModelError("graded bimodules need FiniteFunctions on both sides");
        if (dims.size() != B->dim()) throw ConstructionError("dimension matrix needs one row per point of the left algebra");
        std::vector<std::string> labels;
        std::vector<std::pair<std::size_t, std::size_t>> block;
        for (std::size_t y = 0; y < dims.size(); ++y) {
            if (dims[y].size() != A->dim())
                throw ConstructionError("dimension matrix needs one column per point of the right algebra");
            for (std::size_t x = 0; x < dims[y].size(); ++x) {
                if (dims[y][x] < 0) throw ConstructionError("block dimensions must be nonnegative");
                for (long k = 0; k < dims[y][x].get_si(); ++k) {
                    labels.push_back("v(" + B->points()[y] + "," + A->points()[x] + ")" +
                                     (dims[y][x] > 1 ? "_" + std::to_string(k + 1) : ""));
                    block.emplace_back(y, x);
                }
            }
        }
        const std::size_t n = labels.size();
        Table left(B->dim(), std::vector<ModVec>(n)), right(n, std::vector<ModVec>(A->dim()));
        for (std::size_t v = 0; v < n; ++v) {
            left[block[v].first][v] = ModVec(static_cast<long>(v));
            right[v][block[v].second] = ModVec(static_cast<long>(v));
        }
        std::string name = "graded(" + B->name() + ", " + A->name() + ")";
        return from_tables(name, std::move(B), std::move(A), std::move(labels), std::move(left), std::move(right));
    }

    /// A^n as an (M_n(A), A)-bimodule; `MnA` must be MatrixOver(n, A).
    /// Basis index i * dim A + k is the column with e_k in row i.
    static Bimodule column(const AlgebraPtr& MnA) {
        if (MnA->kind() != ModelKind::MatrixOver) throw UnsupportedModelError("column module needs a MatrixOver model");
        const AlgebraPtr& A = MnA->matrix_base();
        const std::size_t n = static_cast<std::size_t>(MnA->matrix_size()), b = A->dim();
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < b; ++k) labels.push_back("row" + std::to_string(i + 1) + "[" + A->label(static_cast<BasisIndex>(k)) + "]");
        Table left(MnA->dim(), std::vector<ModVec>(n * b)), right(n * b, std::vector<ModVec>(b));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < b; ++l)
                    for (std::size_t k = 0; k < b; ++k) {
                        ModVec v;
                        for (const auto& [p, c] : A->mul_basis(static_cast<BasisIndex>(l), static_cast<BasisIndex>(k)))
                            v.add(static_cast<long>(i * b + static_cast<std::size_t>(p)), c);
                        left[(i * n + j) * b + l][j * b + k] = v;
                    }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < b; ++k)
                for (std::size_t a = 0; a < b; ++a) {
                    ModVec v;
                    for (const auto& [p, c] : A->mul_basis(static_cast<BasisIndex>(k), static_cast<BasisIndex>(a)))
                        v.add(static_cast<long>(i * b + static_cast<std::size_t>(p)), c);
                    right[i * b + k][a] = v;
                }
        return from_tables(A->name() + "^" + std::to_string(n), MnA, A, std::move(labels), std::move(left), std::move(right));
    }

    const std::string& name() const { return d_->name; }
    const AlgebraPtr& left_algebra() const { return d_->left_alg; }
    const AlgebraPtr& right_algebra() const { return d_->right_alg; }
    bool is_canonical() const { return d_->canonical; }
    bool finite() const { return !d_->canonical || d_->left_alg->finite(); }

    std::size_t dim() const {
        if (d_->canonical) return d_->left_alg->dim();
        return d_->labels.size();
    }

    std::vector<long> basis_window(int window) const {
        if (d_->canonical) return d_->left_alg->basis_window(window);
        std::vector<long> out;
        for (std::size_t k = 0; k < dim(); ++k) out.push_back(static_cast<long>(k));
        return out;
    }

    std::string label(long x) const {
        if (d_->canonical) return d_->left_alg->label(x);
        return d_->labels.at(static_cast<std::size_t>(x));
    }

    std::optional<long> find_label(const std::string& s) const {
        if (d_->canonical) return d_->left_alg->find_label(s);
        for (std::size_t k = 0; k < d_->labels.size(); ++k)
            if (d_->labels[k] == s) return static_cast<long>(k);
        return std::nullopt;
    }

    ModVec left(BasisIndex b, long x) const {
        if (d_->canonical) return d_->left_alg->mul_basis(b, x);
        return d_->left.at(static_cast<std::size_t>(b)).at(static_cast<std::size_t>(x));
    }

    ModVec right(long x, BasisIndex a) const {
        if (d_->canonical) return d_->left_alg->mul_basis(x, a);
        return d_->right.at(static_cast<std::size_t>(x)).at(static_cast<std::size_t>(a));
    }

    ModVec left(const Element& b, const ModVec& x) const {
        if (b.algebra() != left_algebra()) throw DomainError("left action by an element of a different algebra");
        ModVec out;
        for (const auto& [bi, bc] : b.coeffs())
            for (const auto& [xi, xc] : x) out.add_scaled(left(bi, xi), bc * xc);
        return out;
    }

    ModVec right(const ModVec& x, const Element& a) const {
        if (a.algebra() != right_algebra()) throw DomainError("right action by an element of a different algebra");
        ModVec out;
        for (const auto& [xi, xc] : x)
            for (const auto& [ai, ac] : a.coeffs()) out.add_scaled(right(xi, ai), xc * ac);
        return out;
    }

    std::string str(const ModVec& v) const {
        if (v.is_zero()) return "0";
        std::string s;
        for (const auto& [k, c] : v) s += (s.empty() ? "" : " + ") + ("(" + c.str() + ")" + label(k));
        return s;
    }

    /// Identical data, or the canonical self-bimodule of the same algebra.
    friend bool same_bimodule(const Bimodule& a, const Bimodule& b) {
        return a.d_ == b.d_ || (a.d_->canonical && b.d_->canonical && a.d_->left_alg == b.d_->left_alg);
    }

private:
    struct Data {
        std::string name;
        AlgebraPtr left_alg, right_alg;
        bool canonical = false;
        std::vector<std::string> labels;
        Table left, right;
    };

    explicit Bimodule(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

    std::shared_ptr<const Data> d_;
};

/// Module laws for both actions and their commutation, on basis tuples
/// (the mode window on Laurent).
inline Report bimodule_report(const Bimodule& E, int window = 3) {
    Report r("bimodule " + E.name());
    const auto& B = E.left_algebra();
    const auto& A = E.right_algebra();
    auto& lm = r.check("left-module");
    auto& rm = r.check("right-module");
    auto& bi = r.check("bimodule");
    const auto bs = B->basis_window(window), as = A->basis_window(window), xs = E.basis_window(window);
    for (long x : xs) {
        ModVec ex(x);
        lm.expect(E.left(Element::one(B), ex) == ex, "1 . " + E.label(x));
        rm.expect(E.right(ex, Element::one(A)) == ex, E.label(x) + " . 1");
        for (BasisIndex b1 : bs)
            for (BasisIndex b2 : bs) {
                Element p = Element::basis(B, b1) * Element::basis(B, b2);
                lm.expect(E.left(p, ex) == E.left(Element::basis(B, b1), E.left(b2, x)),
                          "(" + B->label(b1) + ", " + B->label(b2) + ", " + E.label(x) + ")");
            }
        for (BasisIndex a1 : as)
            for (BasisIndex a2 : as) {
                Element p = Element::basis(A, a1) * Element::basis(A, a2);
                rm.expect(E.right(ex, p) == E.right(E.right(x, a1), Element::basis(A, a2)),
                          "(" + E.label(x) + ", " + A->label(a1) + ", " + A->label(a2) + ")");
            }
        for (BasisIndex b : bs)
            for (BasisIndex a : as)
                bi.expect(E.right(E.left(b, x), Element::basis(A, a)) == E.left(Element::basis(B, b), E.right(x, a)),
                          "(" + B->label(b) + ", " + E.label(x) + ", " + A->label(a) + ")");
    }
    return r;
}

/// dims[y][x] = dim e_y E e_x for FiniteFunctions on both sides.
inline IntMatrix block_dimensions(const Bimodule& E) {
    const auto& B = E.left_algebra();
    const auto& A = E.right_algebra();
    if (B->kind() != ModelKind::FiniteFunctions || A->kind() != ModelKind::FiniteFunctions)
        throw UnsupportedModelError("block dimensions need FiniteFunctions on both sides");
    IntMatrix dims(B->dim(), std::vector<Integer>(A->dim()));
    for (std::size_t y = 0; y < B->dim(); ++y)
        for (std::size_t x = 0; x < A->dim(); ++x) {
            Echelon<Scalar> e;
            for (long v : E.basis_window(0)) {
                ModVec w = E.right(E.left(static_cast<BasisIndex>(y), v), Element::basis(A, static_cast<BasisIndex>(x)));
                SparseVec<Scalar> s;
                for (const auto& [k, c] : w) s[static_cast<std::size_t>(k)] = c;
                e.insert(s);
            }
            dims[y][x] = static_cast<long>(e.rank());
        }
    return dims;
}

/// A *-algebra map given by the images of the basis of its source.
struct AlgebraMap {
    AlgebraPtr source, target;
    std::vector<Element> images;

    Element operator()(const Element& a) const {
        if (a.algebra() != source) throw DomainError("algebra map applied to an element of a different algebra");
        Element out = Element::zero(target);
        for (const auto& [k, c] : a.coeffs()) out += images.at(static_cast<std::size_t>(k)) * c;
        return out;
    }

    static AlgebraMap identity(const AlgebraPtr& A) {
        AlgebraMap m{A, A, {}};
        for (std::size_t k = 0; k < A->dim(); ++k) m.images.push_back(Element::basis(A, static_cast<BasisIndex>(k)));
        return m;
    }

    /// e_x -> e_perm[x] on FiniteFunctions.
    static AlgebraMap permutation(const AlgebraPtr& A, const std::vector<long>& perm) {
        if (A->kind() != ModelKind::FiniteFunctions || perm.size() != A->dim())
            throw DomainError("permutation maps need FiniteFunctions and one image per point");
        AlgebraMap m{A, A, {}};
        for (long p : perm) m.images.push_back(Element::basis(A, p));
        return m;
    }

    /// (this o other)(a) = this(other(a)).
    AlgebraMap after(const AlgebraMap& other) const {
        if (other.target != source) throw DomainError("algebra maps do not compose");
        AlgebraMap m{other.source, target, {}};
        for (const auto& img : other.images) m.images.push_back((*this)(img));
        return m;
    }
};

/// Unital, multiplicative, *-preserving and bijective.
inline Report algebra_isomorphism_report(const AlgebraMap& phi) {
    Report r("algebra isomorphism " + phi.source->name() + " -> " + phi.target->name());
    if (!phi.source->finite() || !phi.target->finite()) throw UnsupportedModelError("algebra maps need finite models");
    if (phi.images.size() != phi.source->dim()) throw ConstructionError("algebra map needs one image per basis element");
    auto& unital = r.check("unital");
    auto& mult = r.check("multiplicative");
    auto& star = r.check("star-preserving");
    auto& bij = r.check("bijective");
    unital.expect(phi(Element::one(phi.source)) == Element::one(phi.target), "1");
    Echelon<Scalar> e;
    for (std::size_t i = 0; i < phi.source->dim(); ++i) {
        Element ei = Element::basis(phi.source, static_cast<BasisIndex>(i));
        star.expect(phi(ei.star()) == phi(ei).star(), phi.source->label(static_cast<BasisIndex>(i)));
        for (std::size_t j = 0; j < phi.source->dim(); ++j) {
            Element ej = Element::basis(phi.source, static_cast<BasisIndex>(j));
            mult.expect(phi(ei * ej) == phi(ei) * phi(ej),
                        "(" + phi.source->label(static_cast<BasisIndex>(i)) + ", " + phi.source->label(static_cast<BasisIndex>(j)) + ")");
        }
        e.insert(detail::to_sparse(phi(ei).coeffs()));
    }
    bij.expect(e.rank() == phi.source->dim() && phi.source->dim() == phi.target->dim(),
               "rank " + std::to_string(e.rank()));
    return r;
}

/// The target B as a (B, A)-bimodule with x . a = x Phi(a).
inline Bimodule ell(const AlgebraMap& phi) {
    Report r = algebra_isomorphism_report(phi);
    if (!r.passed()) {
        std::string failed;
        for (const auto& c : r.checks())
            if (!c.passed()) failed += (failed.empty() ? "" : ", ") + c.name;
        throw DomainError("ell: not a *-isomorphism (" + failed + ")");
    }
    const auto& B = phi.target;
    const auto& A = phi.source;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < B->dim(); ++k) labels.push_back(B->label(static_cast<BasisIndex>(k)));
    Bimodule::Table left(B->dim(), std::vector<ModVec>(B->dim())), right(B->dim(), std::vector<ModVec>(A->dim()));
    for (std::size_t b = 0; b < B->dim(); ++b)
        for (std::size_t x = 0; x < B->dim(); ++x) left[b][x] = B->mul_basis(static_cast<BasisIndex>(b), static_cast<BasisIndex>(x));
    for (std::size_t x = 0; x < B->dim(); ++x)
        for (std::size_t a = 0; a < A->dim(); ++a)
            right[x][a] = (Element::basis(B, static_cast<BasisIndex>(x)) * phi.images[a]).coeffs();
    return Bimodule::from_tables("ell(" + A->name() + " -> " + B->name() + ")", B, A, std::move(labels), std::move(left),
                                 std::move(right));
}

/// F (x)_B E for F a (C, B)-bimodule and E a (B, A)-bimodule, both finite.
/// The quotient basis consists of the elementary tensors f_i (x) e_j whose
/// index i * dim E + j is not a pivot of the reduced relation space; every
/// class is represented by its reduced remainder.
class TensorProduct {
public:
    TensorProduct(Bimodule F, Bimodule E) : F_(std::move(F)), E_(std::move(E)) {
        if (F_.right_algebra() != E_.left_algebra())
            throw DomainError("tensor product: middle algebras differ (" + F_.right_algebra()->name() + " vs " +
                              E_.left_algebra()->name() + ")");
        if (!F_.finite() || !E_.finite()) throw UnsupportedModelError("tensor products need finite bimodules");
        const auto& B = F_.right_algebra();
        const std::size_t nf = F_.dim(), ne = E_.dim();
        for (std::size_t i = 0; i < nf; ++i)
            for (std::size_t b = 0; b < B->dim(); ++b)
                for (std::size_t j = 0; j < ne; ++j) {
                    SparseVec<Scalar> rel;
                    for (const auto& [k, c] : F_.right(static_cast<long>(i), static_cast<BasisIndex>(b))) rel[static_cast<std::size_t>(k) * ne + j] += c;
                    for (const auto& [k, c] : E_.left(static_cast<BasisIndex>(b), static_cast<long>(j))) rel[i * ne + static_cast<std::size_t>(k)] -= c;
                    std::erase_if(rel, [](const auto& kv) { return kv.second.is_zero(); });
                    if (rel.empty()) continue;
                    relations_.insert(rel);
                }
        std::set<std::size_t> pivots;
        for (std::size_t p : relations_.pivots()) pivots.insert(p);
        std::vector<std::string> labels;
        for (std::size_t idx = 0; idx < nf * ne; ++idx) {
            if (pivots.count(idx)) continue;
            position_[idx] = free_.size();
            free_.push_back(idx);
            labels.push_back(F_.label(static_cast<long>(idx / ne)) + " ⊗ " + E_.label(static_cast<long>(idx % ne)));
        }
        const auto& C = F_.left_algebra();
        const auto& A = E_.right_algebra();
        Bimodule::Table left(C->dim(), std::vector<ModVec>(free_.size())), right(free_.size(), std::vector<ModVec>(A->dim()));
        for (std::size_t t = 0; t < free_.size(); ++t) {
            auto [i, j] = representative(static_cast<long>(t));
            for (std::size_t c = 0; c < C->dim(); ++c) left[c][t] = tensor(F_.left(static_cast<BasisIndex>(c), i), ModVec(j));
            for (std::size_t a = 0; a < A->dim(); ++a) right[t][a] = tensor(ModVec(i), E_.right(j, static_cast<BasisIndex>(a)));
        }
        module_ = Bimodule::from_tables(F_.name() + " ⊗ " + E_.name(), C, A, std::move(labels), std::move(left), std::move(right));
    }

    const Bimodule& module() const { return module_; }
    const Bimodule& left_factor() const { return F_; }
    const Bimodule& right_factor() const { return E_; }

    /// (f_i, e_j) representing quotient basis vector t.
    std::pair<long, long> representative(long t) const {
        std::size_t idx = free_.at(static_cast<std::size_t>(t));
        return {static_cast<long>(idx / E_.dim()), static_cast<long>(idx % E_.dim())};
    }

    /// Class of sum x_i y_j f_i (x) e_j in the quotient basis.
    ModVec tensor(const ModVec& x, const ModVec& y) const {
        SparseVec<Scalar> v;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) {
                auto& slot = v[static_cast<std::size_t>(i) * E_.dim() + static_cast<std::size_t>(j)];
                slot += a * b;
            }
        std::erase_if(v, [](const auto& kv) { return kv.second.is_zero(); });
        return project(v);
    }

    ModVec tensor(long x, long y) const { return tensor(ModVec(x), ModVec(y)); }

    /// Reduces a vector of F (x)_C E (index i * dim E + j) to the quotient basis.
    ModVec project(const SparseVec<Scalar>& v) const {
        auto r = relations_.reduce(v);
        ModVec out;
        for (const auto& [idx, c] : r.remainder) out.add(static_cast<long>(position_.at(idx)), c);
        return out;
    }

    /// Spanning set of the balanced relations f.b (x) e - f (x) b.e in index coordinates.
    std::vector<SparseVec<Scalar>> relations() const { return relations_.basis(); }

private:
    Bimodule F_, E_, module_;
    Echelon<Scalar> relations_;
    std::vector<std::size_t> free_;
    std::map<std::size_t, std::size_t> position_;
};

/// Linear maps between finite bimodules as column images.
using ModuleMap = std::vector<ModVec>;

inline ModVec apply_map(const ModuleMap& T, const ModVec& x) {
    ModVec out;
    for (const auto& [k, c] : x) out.add_scaled(T.at(static_cast<std::size_t>(k)), c);
    return out;
}

inline std::size_t map_rank(const ModuleMap& T) {
    Echelon<Scalar> e;
    for (const auto& col : T) e.insert(detail::to_sparse(col));
    return e.rank();
}

/// T(b.x) = b.T(x) and T(x.a) = T(x).a on basis vectors.
inline bool is_bimodule_map(const ModuleMap& T, const Bimodule& E, const Bimodule& F) {
    for (long x : E.basis_window(0)) {
        for (std::size_t b = 0; b < E.left_algebra()->dim(); ++b)
            if (apply_map(T, E.left(static_cast<BasisIndex>(b), x)) !=
                F.left(Element::basis(F.left_algebra(), static_cast<BasisIndex>(b)), T.at(static_cast<std::size_t>(x))))
                return false;
        for (std::size_t a = 0; a < E.right_algebra()->dim(); ++a)
            if (apply_map(T, E.right(x, static_cast<BasisIndex>(a))) !=
                F.right(T.at(static_cast<std::size_t>(x)), Element::basis(F.right_algebra(), static_cast<BasisIndex>(a))))
                return false;
    }
    return true;
}

/// Basis of the space of bimodule maps E -> F (finite bimodules over the same algebras).
inline std::vector<ModuleMap> intertwiners(const Bimodule& E, const Bimodule& F) {
    if (E.left_algebra() != F.left_algebra() || E.right_algebra() != F.right_algebra())
        throw DomainError("intertwiners need bimodules over the same algebras");
    if (!E.finite() || !F.finite()) throw UnsupportedModelError("intertwiners need finite bimodules");
    const std::size_t n = E.dim(), m = F.dim();
    // unknown T[k][j] (coefficient of f_k in T(e_j)) at index j * m + k
    auto unknown = [m](std::size_t j, std::size_t k) { return j * m + k; };
    std::vector<SparseVec<Scalar>> rows;
    auto equations = [&](const std::function<ModVec(long)>& act_e, const std::function<ModVec(long)>& act_f) {
        // T(act_e(e_j)) - act_f(T(e_j)) = 0, coordinate by coordinate
        for (std::size_t j = 0; j < n; ++j) {
            std::map<std::size_t, SparseVec<Scalar>> eq;  // output coordinate -> row
            for (const auto& [i, c] : act_e(static_cast<long>(j)))
                for (std::size_t k = 0; k < m; ++k) eq[k][unknown(static_cast<std::size_t>(i), k)] += c;
            for (std::size_t k = 0; k < m; ++k)
                for (const auto& [l, c] : act_f(static_cast<long>(k))) eq[static_cast<std::size_t>(l)][unknown(j, k)] -= c;
            for (auto& [out, row] : eq) {
                std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
                if (!row.empty()) rows.push_back(row);
            }
        }
    };
    for (std::size_t b = 0; b < E.left_algebra()->dim(); ++b)
        equations([&](long x) { return E.left(static_cast<BasisIndex>(b), x); },
                  [&](long y) { return F.left(static_cast<BasisIndex>(b), y); });
    for (std::size_t a = 0; a < E.right_algebra()->dim(); ++a)
        equations([&](long x) { return E.right(x, static_cast<BasisIndex>(a)); },
                  [&](long y) { return F.right(y, static_cast<BasisIndex>(a)); });
    // kernel of the system: transpose rows into columns indexed by unknowns
    std::vector<SparseVec<Scalar>> cols(n * m);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [u, c] : rows[r]) cols[u][r] = c;
    std::vector<ModuleMap> out;
    for (const auto& k : kernel_of(cols)) {
        ModuleMap T(n);
        for (const auto& [u, c] : k) T[u / m].add(static_cast<long>(u % m), c);
        out.push_back(T);
    }
    return out;
}

namespace detail {
inline bool semisimple_model(const StarAlgebra& A) {
    switch (A.kind()) {
        case ModelKind::FiniteFunctions:
        case ModelKind::Matrix:
            return true;
        case ModelKind::MatrixOver:
            return semisimple_model(*A.matrix_base());
        case ModelKind::Product:
            for (const auto& f : A.factors())
                if (!semisimple_model(*f)) return false;
            return true;
        default:
            return false;
    }
}
}  // namespace detail

struct IsomorphismResult {
    bool isomorphic = false;
    std::optional<ModuleMap> map;
    std::string method;
};

/// Isomorphism of finite bimodules. Over semisimple algebras the decision is
/// dim Hom(E,F) = dim End(E) = dim End(F); an explicit isomorphism is searched
/// among small integer combinations of an intertwiner basis as certificate.
inline IsomorphismResult find_isomorphism(const Bimodule& E, const Bimodule& F) {
    IsomorphismResult res;
    if (E.left_algebra() != F.left_algebra() || E.right_algebra() != F.right_algebra()) {
        res.method = "different algebras";
        return res;
    }
    if (E.dim() != F.dim()) {
        res.method = "dimension " + std::to_string(E.dim()) + " vs " + std::to_string(F.dim());
        return res;
    }
    auto hom = intertwiners(E, F);
    const std::size_t n = E.dim();
    for (int trial = 0; trial < 8 && !hom.empty(); ++trial) {
        ModuleMap T(n);
        for (std::size_t k = 0; k < hom.size(); ++k) {
            Scalar c(static_cast<long>((k * (2 * trial + 3) + static_cast<std::size_t>(trial)) % 7 + 1));
            for (std::size_t j = 0; j < n; ++j) T[j].add_scaled(hom[k][j], c);
        }
        if (map_rank(T) == n) {
            res.isomorphic = true;
            res.map = T;
            res.method = "explicit intertwiner";
            return res;
        }
    }
    if (detail::semisimple_model(*E.left_algebra()) && detail::semisimple_model(*E.right_algebra())) {
        std::size_t h = hom.size(), ee = intertwiners(E, E).size(), ff = intertwiners(F, F).size();
        res.isomorphic = h == ee && h == ff;
        res.method = "dim Hom = " + std::to_string(h) + ", dim End = " + std::to_string(ee) + ", " + std::to_string(ff);
        if (res.isomorphic) throw InconsistencyError("isomorphic by dimension count but no intertwiner found");
        return res;
    }
    throw UnsupportedModelError("bimodule isomorphism undecided over non-semisimple algebras");
}

/// x (x) a -> x . a from E (x)_A A onto E, and b (x) x -> b . x from B (x)_B E.
inline Report unit_law_report(const Bimodule& E) {
    Report r("unit laws for " + E.name());
    TensorProduct right_unit(E, Bimodule::canonical(E.right_algebra()));
    TensorProduct left_unit(Bimodule::canonical(E.left_algebra()), E);
    auto check = [&](const TensorProduct& T, bool right, const std::string& name) {
        auto& c = r.check(name);
        ModuleMap phi;
        for (long t = 0; t < static_cast<long>(T.module().dim()); ++t) {
            auto [i, j] = T.representative(t);
            phi.push_back(right ? E.right(i, j) : E.left(i, j));
        }
        // well-defined on every elementary tensor
        for (long i = 0; i < static_cast<long>(T.left_factor().dim()); ++i)
            for (long j = 0; j < static_cast<long>(T.right_factor().dim()); ++j)
                c.expect(apply_map(phi, T.tensor(i, j)) == (right ? E.right(i, j) : E.left(i, j)),
                         T.left_factor().label(i) + " ⊗ " + T.right_factor().label(j));
        c.expect(phi.size() == E.dim() && map_rank(phi) == E.dim(), "bijective");
        c.expect(is_bimodule_map(phi, T.module(), E), "bimodule map");
    };
    check(right_unit, true, "right-unit");
    check(left_unit, false, "left-unit");
    return r;
}

}  // namespace hopfmorita
