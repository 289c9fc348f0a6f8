#pragma once

// Algebra-valued inner products on bimodules: the seven axioms of a
// *-Morita equivalence bimodule, complete positivity, Rieffel inner products
// on tensor products, the associator, and certification flavours
// (ring, star, strong) with the forgetful maps between them.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hopfmorita/bimodule.hpp"
#include "hopfmorita/positivity.hpp"

namespace hopfmorita {

/// <x, y>_A (antilinear in x) and B<x, y> (antilinear in y), given on basis pairs.
struct InnerProductPair {
    using Pairing = std::function<Element(long, long)>;

    Bimodule module;
    Pairing right_basis;
    Pairing left_basis;

    Element right(const ModVec& x, const ModVec& y) const {
        Element out = Element::zero(module.right_algebra());
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) out += right_basis(i, j) * (a.conj() * b);
        return out;
    }

    Element left(const ModVec& x, const ModVec& y) const {
        Element out = Element::zero(module.left_algebra());
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) out += left_basis(i, j) * (a * b.conj());
        return out;
    }

    /// <a, b> = a* b and <a, b> = a b* on A.
    static InnerProductPair canonical(const AlgebraPtr& A) {
        return {Bimodule::canonical(A),
                [A](long x, long y) { return Element::basis(A, x).star() * Element::basis(A, y); },
                [A](long x, long y) { return Element::basis(A, x) * Element::basis(A, y).star(); }};
    }

    /// On A^n = Bimodule::column(MnA): <x, y>_A = sum x_i* y_i and
    /// Mn<x, y> = (x_i y_j*)_ij.
    static InnerProductPair column(const Bimodule& E) {
        const AlgebraPtr& M = E.left_algebra();
        const AlgebraPtr& A = E.right_algebra();
        if (M->kind() != ModelKind::MatrixOver || M->matrix_base() != A || E.dim() != static_cast<std::size_t>(M->matrix_size()) * A->dim())
            throw DomainError("column inner products need the column module A^n over M_n(A)");
        const long b = static_cast<long>(A->dim()), n = M->matrix_size();
        return {E,
                [A, b](long x, long y) {
                    if (x / b != y / b) return Element::zero(A);
                    return Element::basis(A, x % b).star() * Element::basis(A, y % b);
                },
                [M, A, b, n](long x, long y) {
                    Element p = Element::basis(A, x % b) * Element::basis(A, y % b).star();
                    BasisVec out;
                    for (const auto& [q, c] : p.coeffs()) out.add(((x / b) * n + y / b) * b + q, c);
                    return Element(M, out);
                }};
    }

    /// Block-orthonormal products on a graded bimodule between FiniteFunctions:
    /// <v, w>_A = delta e_x and B<v, w> = delta e_y for v in block (y, x).
    static InnerProductPair graded(const Bimodule& E) {
        const AlgebraPtr& B = E.left_algebra();
        const AlgebraPtr& A = E.right_algebra();
        if (B->kind() != ModelKind::FiniteFunctions || A->kind() != ModelKind::FiniteFunctions)
            throw UnsupportedModelError("graded inner products need FiniteFunctions on both sides");
        std::vector<std::pair<long, long>> block(E.dim());
        for (long v = 0; v < static_cast<long>(E.dim()); ++v) {
            for (long y = 0; y < static_cast<long>(B->dim()); ++y)
                if (!E.left(y, v).is_zero()) block[static_cast<std::size_t>(v)].first = y;
            for (long x = 0; x < static_cast<long>(A->dim()); ++x)
                if (!E.right(v, x).is_zero()) block[static_cast<std::size_t>(v)].second = x;
        }
        return {E,
                [A, block](long v, long w) {
                    return v == w ? Element::basis(A, block[static_cast<std::size_t>(v)].second) : Element::zero(A);
                },
                [B, block](long v, long w) {
                    return v == w ? Element::basis(B, block[static_cast<std::size_t>(v)].first) : Element::zero(B);
                }};
    }

    /// Explicit tables right[x][y] = <x, y>_A and left[x][y] = B<x, y>.
    static InnerProductPair from_tables(const Bimodule& E, std::vector<std::vector<Element>> right,
                                        std::vector<std::vector<Element>> left) {
        if (!E.finite()) throw UnsupportedModelError("pairing tables need a finite bimodule");
        auto shape_ok = [&E](const std::vector<std::vector<Element>>& t, const AlgebraPtr& alg) {
            if (t.size() != E.dim()) return false;
            for (const auto& row : t) {
                if (row.size() != E.dim()) return false;
                for (const auto& v : row)
                    if (v.algebra() != alg) return false;
            }
            return true;
        };
        if (!shape_ok(right, E.right_algebra())) throw ConstructionError("right pairing table has the wrong shape or algebra");
        if (!shape_ok(left, E.left_algebra())) throw ConstructionError("left pairing table has the wrong shape or algebra");
        auto r = std::make_shared<const std::vector<std::vector<Element>>>(std::move(right));
        auto l = std::make_shared<const std::vector<std::vector<Element>>>(std::move(left));
        return {E, [r](long x, long y) { return (*r)[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; },
                [l](long x, long y) { return (*l)[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; }};
    }

    /// Both products multiplied by real scalars.
    InnerProductPair scaled(const Rational& right_factor, const Rational& left_factor) const {
        auto r = right_basis;
        auto l = left_basis;
        Scalar sr(right_factor), sl(left_factor);
        return {module, [r, sr](long x, long y) { return r(x, y) * sr; }, [l, sl](long x, long y) { return l(x, y) * sl; }};
    }

    /// Both products set to zero whenever basis vector `v` is involved.
    InnerProductPair zeroed_on(long v) const {
        auto r = right_basis;
        auto l = left_basis;
        AlgebraPtr A = module.right_algebra(), B = module.left_algebra();
        return {module, [r, v, A](long x, long y) { return x == v || y == v ? Element::zero(A) : r(x, y); },
                [l, v, B](long x, long y) { return x == v || y == v ? Element::zero(B) : l(x, y); }};
    }
};

/// The conjugate (A, B)-bimodule of E with a . conj(x) = conj(x . a*),
/// conj(x) . b = conj(b* . x) and the products exchanged.
inline InnerProductPair conjugate(const InnerProductPair& P) {
    const Bimodule& E = P.module;
    if (!E.finite()) throw UnsupportedModelError("conjugate bimodules need a finite bimodule");
    const AlgebraPtr& B = E.left_algebra();
    const AlgebraPtr& A = E.right_algebra();
    auto conj_vec = [](const ModVec& v) { return v.conj(); };
    std::vector<std::string> labels;
    for (long x = 0; x < static_cast<long>(E.dim()); ++x) labels.push_back("conj(" + E.label(x) + ")");
    Bimodule::Table left(A->dim(), std::vector<ModVec>(E.dim())), right(E.dim(), std::vector<ModVec>(B->dim()));
    for (long x = 0; x < static_cast<long>(E.dim()); ++x) {
        for (long a = 0; a < static_cast<long>(A->dim()); ++a)
            left[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)] =
                conj_vec(E.right(ModVec(x), Element::basis(A, a).star()));
        for (long b = 0; b < static_cast<long>(B->dim()); ++b)
            right[static_cast<std::size_t>(x)][static_cast<std::size_t>(b)] =
                conj_vec(E.left(Element::basis(B, b).star(), ModVec(x)));
    }
    auto Ebar = Bimodule::from_tables("conj(" + E.name() + ")", A, B, std::move(labels), std::move(left), std::move(right));
    return {Ebar, P.left_basis, P.right_basis};
}

/// Axioms (1)-(7) on basis pairs and triples of the window. Non-degeneracy
/// and fullness are exact rank tests; on infinite models they are decided on
/// the window and flagged in the report info.
inline Report morita_axiom_report(const InnerProductPair& P, int window = 2) {
    const Bimodule& E = P.module;
    const AlgebraPtr& B = E.left_algebra();
    const AlgebraPtr& A = E.right_algebra();
    Report r("*-Morita axioms for " + E.name());
    r.info()["window"] = window;
    r.info()["windowed"] = !E.finite() || !A->finite() || !B->finite();
    const auto xs = E.basis_window(window);
    const auto as = A->basis_window(window);
    const auto bs = B->basis_window(window);
    auto lbl = [&E](long x) { return E.label(x); };

    auto& lin = r.check("axiom-1-linearity");
    auto& mod = r.check("axiom-2-module-compatibility");
    auto& herm = r.check("axiom-3-hermitian");
    auto& nondeg = r.check("axiom-4-nondegenerate");
    auto& full = r.check("axiom-5-full");
    auto& star = r.check("axiom-6-star-compatibility");
    auto& assoc = r.check("axiom-7-associativity");

    const Scalar probe(Rational(2), Rational(-3));
    for (long x : xs)
        for (long y : xs) {
            const std::string xy = "(" + lbl(x) + ", " + lbl(y) + ")";
            const Element rxy = P.right_basis(x, y), lxy = P.left_basis(x, y);
            // linear in the right (resp. left) argument, antilinear in the other
            ModVec cy(y, probe), cx(x, probe);
            lin.expect(P.right(ModVec(x), cy) == rxy * probe && P.right(cx, ModVec(y)) == rxy * probe.conj(), "right " + xy);
            lin.expect(P.left(cx, ModVec(y)) == lxy * probe && P.left(ModVec(x), cy) == lxy * probe.conj(), "left " + xy);
            herm.expect(rxy == P.right_basis(y, x).star(), "right " + xy);
            herm.expect(lxy == P.left_basis(y, x).star(), "left " + xy);
            for (BasisIndex a : as) {
                const Element ea = Element::basis(A, a);
                mod.expect(P.right(ModVec(x), E.right(y, a)) == rxy * ea, "<" + lbl(x) + ", " + lbl(y) + "." + A->label(a) + ">_A");
                star.expect(P.left(ModVec(x), E.right(y, a)) == P.left(E.right(ModVec(x), ea.star()), ModVec(y)),
                            "B<" + lbl(x) + ", " + lbl(y) + "." + A->label(a) + ">");
            }
            for (BasisIndex b : bs) {
                const Element eb = Element::basis(B, b);
                mod.expect(P.left(E.left(b, x), ModVec(y)) == eb * lxy, "B<" + B->label(b) + "." + lbl(x) + ", " + lbl(y) + ">");
                star.expect(P.right(ModVec(x), E.left(b, y)) == P.right(E.left(eb.star(), ModVec(x)), ModVec(y)),
                            "<" + lbl(x) + ", " + B->label(b) + "." + lbl(y) + ">_A");
            }
            for (long z : xs)
                assoc.expect(E.left(lxy, ModVec(z)) == E.right(ModVec(x), P.right_basis(y, z)),
                             "(" + lbl(x) + ", " + lbl(y) + ", " + lbl(z) + ")");
        }

    // coordinates for (slot, algebra index) pairs, allocated on first use
    std::map<std::pair<std::size_t, long>, std::size_t> coord;
    auto at = [&coord](std::size_t slot, long k) { return coord.try_emplace({slot, k}, coord.size()).first->second; };

    // x -> (<x, e_j>)_j injective on the span of the window, and likewise on the left
    auto injective = [&](const InnerProductPair::Pairing& pair, std::size_t side_tag, const std::string& side) {
        Echelon<Scalar> e;
        for (long x : xs) {
            SparseVec<Scalar> v;
            std::size_t slot = side_tag * xs.size();
            for (long y : xs) {
                const Element value = pair(x, y);
                for (const auto& [k, c] : value.coeffs()) v[at(slot, k)] = c.conj();
                ++slot;
            }
            if (auto rel = e.insert(v)) {
                ModVec kernel;
                for (const auto& [j, c] : *rel) kernel.add(xs[j], c.conj());
                nondeg.expect(false, side + ": " + E.str(kernel) + " pairs to zero with the window");
            } else {
                nondeg.expect(true);
            }
        }
    };
    injective(P.right_basis, 0, "right");
    injective(P.left_basis, 1, "left");

    auto spans = [&](const InnerProductPair::Pairing& pair, const AlgebraPtr& alg, const std::vector<BasisIndex>& target,
                     std::size_t side_tag, const std::string& side) {
        Echelon<Scalar> e;
        const std::size_t slot = (2 + side_tag) * xs.size();
        auto sparse = [&](const BasisVec& v) {
            SparseVec<Scalar> s;
            for (const auto& [k, c] : v) s[at(slot, k)] = c;
            return s;
        };
        for (long x : xs)
            for (long y : xs) e.insert(sparse(pair(x, y).coeffs()));
        for (BasisIndex t : target)
            full.expect(e.contains(sparse(BasisVec(t))), side + ": " + alg->label(t) + " not in the span");
    };
    spans(P.right_basis, A, as, 0, "right");
    spans(P.left_basis, B, bs, 1, "left");
    return r;
}

namespace detail {
inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
        if (pos == k) {
            f(idx);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}

inline bool positivity_supported(const StarAlgebra& alg) {
    return alg.kind() == ModelKind::FiniteFunctions || is_matrix_over_functions(alg);
}
}  // namespace detail

/// Gram matrices (<x_i, x_j>) of all sets of at most n distinct module basis
/// vectors, pointwise positive semidefinite; plus the full-basis Gram matrix,
/// whose positivity implies positivity for arbitrary tuples of any length.
/// Products with values outside FiniteFunctions / M_k(FiniteFunctions) are
/// reported as unsupported.
inline Report complete_positivity_report(const InnerProductPair& P, std::size_t n = 3) {
    const Bimodule& E = P.module;
    Report r("complete positivity for " + E.name());
    r.info()["max_tuple"] = n;
    if (!E.finite()) throw UnsupportedModelError("complete positivity needs a finite bimodule");
    auto side = [&](const InnerProductPair::Pairing& pair, const AlgebraPtr& alg, const std::string& name) {
        if (!detail::positivity_supported(*alg)) {
            r.info()[name + "_unsupported"] = alg->name();
            return;
        }
        auto& c = r.check(name + "-completely-positive");
        auto gram_of = [&](const std::vector<std::size_t>& idx) {
            std::vector<std::vector<Element>> g(idx.size(), std::vector<Element>(idx.size()));
            for (std::size_t p = 0; p < idx.size(); ++p)
                for (std::size_t q = 0; q < idx.size(); ++q)
                    g[p][q] = pair(static_cast<long>(idx[p]), static_cast<long>(idx[q]));
            return g;
        };
        auto describe = [&E](const std::vector<std::size_t>& idx) {
            std::string s = "(";
            for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? ", " : "") + E.label(static_cast<long>(idx[k]));
            return s + ")";
        };
        for (std::size_t k = 1; k <= std::min(n, E.dim()); ++k)
            detail::for_each_subset(E.dim(), k, [&](const std::vector<std::size_t>& idx) {
                auto why = gram_positivity_failure(gram_of(idx));
                c.expect(!why, describe(idx) + (why ? ": " + *why : ""));
            });
        std::vector<std::size_t> all(E.dim());
        for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
        auto why = gram_positivity_failure(gram_of(all));
        r.check(name + "-full-basis-gram").expect(!why, why ? *why : "");
    };
    side(P.right_basis, E.right_algebra(), "right");
    side(P.left_basis, E.left_algebra(), "left");
    return r;
}

/// Both products preserved by a linear map T between the underlying modules.
inline Report isometry_report(const ModuleMap& T, const InnerProductPair& P, const InnerProductPair& Q) {
    Report r("isometry " + P.module.name() + " -> " + Q.module.name());
    auto& right = r.check("right-isometric");
    auto& left = r.check("left-isometric");
    for (long x = 0; x < static_cast<long>(P.module.dim()); ++x)
        for (long y = 0; y < static_cast<long>(P.module.dim()); ++y) {
            const ModVec tx = T.at(static_cast<std::size_t>(x)), ty = T.at(static_cast<std::size_t>(y));
            const std::string w = "(" + P.module.label(x) + ", " + P.module.label(y) + ")";
            right.expect(Q.right(tx, ty) == P.right_basis(x, y), w);
            left.expect(Q.left(tx, ty) == P.left_basis(x, y), w);
        }
    return r;
}

/// Rieffel's products on F (x)_B E:
/// <x (x) phi, y (x) psi>_A = <phi, <x, y>_B . psi>_A and
/// C<x (x) phi, y (x) psi> = C<x . B<phi, psi>, y>.
/// Well-definedness on the balanced relations is verified exactly.
inline InnerProductPair rieffel_tensor(const TensorProduct& T, const InnerProductPair& PF, const InnerProductPair& PE) {
    if (!same_bimodule(PF.module, T.left_factor()) || !same_bimodule(PE.module, T.right_factor()))
        throw DomainError("rieffel_tensor: inner products belong to different bimodules");
    auto Tp = std::make_shared<const TensorProduct>(T);
    const std::size_t ne = T.right_factor().dim();
    auto right_idx = [PF, PE, ne](std::size_t p, std::size_t q) {
        long x = static_cast<long>(p / ne), phi = static_cast<long>(p % ne);
        long y = static_cast<long>(q / ne), psi = static_cast<long>(q % ne);
        return PE.right(ModVec(phi), PE.module.left(PF.right_basis(x, y), ModVec(psi)));
    };
    auto left_idx = [PF, PE, ne](std::size_t p, std::size_t q) {
        long x = static_cast<long>(p / ne), phi = static_cast<long>(p % ne);
        long y = static_cast<long>(q / ne), psi = static_cast<long>(q % ne);
        return PF.left(PF.module.right(ModVec(x), PE.left_basis(phi, psi)), ModVec(y));
    };

    // a relation r must pair to zero with every elementary tensor, on either side
    const std::size_t total = T.left_factor().dim() * ne;
    for (const auto& rel : T.relations())
        for (std::size_t q = 0; q < total; ++q) {
            Element r1 = Element::zero(T.right_factor().right_algebra()), r2 = r1;
            Element l1 = Element::zero(T.left_factor().left_algebra()), l2 = l1;
            for (const auto& [p, c] : rel) {
                r1 += right_idx(p, q) * c.conj();
                r2 += right_idx(q, p) * c;
                l1 += left_idx(p, q) * c;
                l2 += left_idx(q, p) * c.conj();
            }
            if (!r1.is_zero() || !r2.is_zero() || !l1.is_zero() || !l2.is_zero())
                throw InconsistencyError("Rieffel products are not well defined on the balanced relations of " + T.module().name());
        }

    auto rep = [Tp, ne](long t) {
        auto [x, y] = Tp->representative(t);
        return static_cast<std::size_t>(x) * ne + static_cast<std::size_t>(y);
    };
    return {T.module(), [right_idx, rep](long s, long t) { return right_idx(rep(s), rep(t)); },
            [left_idx, rep](long s, long t) { return left_idx(rep(s), rep(t)); }};
}

/// (G (x) F) (x) E -> G (x) (F (x) E): well defined, bijective, a bimodule
/// map, and isometric for the Rieffel products.
inline Report associator_report(const InnerProductPair& PG, const InnerProductPair& PF, const InnerProductPair& PE) {
    TensorProduct GF(PG.module, PF.module), FE(PF.module, PE.module);
    TensorProduct L(GF.module(), PE.module), R(PG.module, FE.module());
    InnerProductPair PL = rieffel_tensor(L, rieffel_tensor(GF, PG, PF), PE);
    InnerProductPair PR = rieffel_tensor(R, PG, rieffel_tensor(FE, PF, PE));
    Report r("associator for " + PG.module.name() + ", " + PF.module.name() + ", " + PE.module.name());
    ModuleMap alpha;
    for (long t = 0; t < static_cast<long>(L.module().dim()); ++t) {
        auto [s, e] = L.representative(t);
        auto [g, f] = GF.representative(s);
        alpha.push_back(R.tensor(ModVec(g), FE.tensor(f, e)));
    }
    auto& wd = r.check("well-defined");
    for (long g = 0; g < static_cast<long>(PG.module.dim()); ++g)
        for (long f = 0; f < static_cast<long>(PF.module.dim()); ++f)
            for (long e = 0; e < static_cast<long>(PE.module.dim()); ++e)
                wd.expect(apply_map(alpha, L.tensor(GF.tensor(g, f), ModVec(e))) == R.tensor(ModVec(g), FE.tensor(f, e)),
                          "(" + PG.module.label(g) + ", " + PF.module.label(f) + ", " + PE.module.label(e) + ")");
    r.check("bijective").expect(L.module().dim() == R.module().dim() && map_rank(alpha) == R.module().dim(),
                                std::to_string(L.module().dim()) + " vs " + std::to_string(R.module().dim()));
    r.check("bimodule-map").expect(is_bimodule_map(alpha, L.module(), R.module()));
    r.merge(isometry_report(alpha, PL, PR));
    return r;
}

enum class Flavour { Ring, Star, Strong };

inline std::string flavour_name(Flavour f) {
    switch (f) {
        case Flavour::Ring: return "ring";
        case Flavour::Star: return "star";
        case Flavour::Strong: return "strong";
    }
    return "?";
}

/// A bimodule certified at some level; `retained` lists the passed checks
/// the certification rests on.
struct Certification {
    Bimodule module;
    std::optional<InnerProductPair> products;
    Flavour flavour = Flavour::Ring;
    bool covariant = false;
    std::set<std::string> retained;
    std::vector<std::string> history;

    friend bool operator==(const Certification& a, const Certification& b) {
        return same_bimodule(a.module, b.module) && a.flavour == b.flavour && a.covariant == b.covariant &&
               a.products.has_value() == b.products.has_value() && a.retained == b.retained;
    }

    Json to_json() const {
        Json j;
        j["bimodule"] = module.name();
        j["flavour"] = flavour_name(flavour);
        j["covariant"] = covariant;
        j["retained"] = std::vector<std::string>(retained.begin(), retained.end());
        j["history"] = history;
        return j;
    }
};

namespace detail {
inline void absorb(Certification& c, const Report& r, const std::string& prefix) {
    if (!r.passed()) {
        std::string failed;
        for (const auto& ch : r.checks())
            if (!ch.passed()) failed += (failed.empty() ? "" : ", ") + ch.name;
        throw DomainError("certification failed: " + failed);
    }
    for (const auto& ch : r.checks()) c.retained.insert(prefix + ch.name);
}
}  // namespace detail

inline Certification certify_ring(const Bimodule& E, int window = 2) {
    Certification c{E, std::nullopt, Flavour::Ring, false, {}, {"certified ring"}};
    detail::absorb(c, bimodule_report(E, window), "ring:");
    return c;
}

inline Certification certify_star(const InnerProductPair& P, int window = 2) {
    Certification c = certify_ring(P.module, window);
    c.products = P;
    c.flavour = Flavour::Star;
    c.history = {"certified star"};
    detail::absorb(c, morita_axiom_report(P, window), "star:");
    return c;
}

inline Certification certify_strong(const InnerProductPair& P, std::size_t n = 3, int window = 2) {
    Certification c = certify_star(P, window);
    c.flavour = Flavour::Strong;
    c.history = {"certified strong"};
    detail::absorb(c, complete_positivity_report(P, n), "strong:");
    return c;
}

/// Downgrades strong -> star -> ring, stripping positivity and then the
/// inner products together with the checks resting on them.
inline Certification forget(Certification c, Flavour target) {
    if (target > c.flavour) throw DomainError("forget cannot raise " + flavour_name(c.flavour) + " to " + flavour_name(target));
    auto strip = [&c](const std::string& prefix) {
        for (auto it = c.retained.begin(); it != c.retained.end();)
            it = it->rfind(prefix, 0) == 0 ? c.retained.erase(it) : std::next(it);
    };
    if (c.flavour == Flavour::Strong && target < Flavour::Strong) {
        strip("strong:");
        strip("covariant-strong:");
        c.flavour = Flavour::Star;
        c.history.push_back("strong -> star");
    }
    if (c.flavour == Flavour::Star && target < Flavour::Star) {
        strip("star:");
        strip("covariant-star:");
        c.products.reset();
        c.flavour = Flavour::Ring;
        c.history.push_back("star -> ring");
    }
    return c;
}

}  // namespace hopfmorita
