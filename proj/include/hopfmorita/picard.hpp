#pragma once

// Invertible bimodules over FiniteFunctions(X): enumeration of block
// dimension matrices, verification of invertibility by explicit tensor
// products, the group table, the static part, and the comparison of strong
// and * certifications on the enumerated classes.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hopfmorita/morita.hpp"

namespace hopfmorita {

struct PicardClass {
    IntMatrix dims;
    Bimodule module;
    std::vector<long> permutation;  // block (perm[x], x) is one-dimensional
};

struct PicardGroup {
    AlgebraPtr algebra;
    int block_bound = 0;
    std::size_t candidates = 0;       // dimension matrices examined
    std::size_t screened = 0;         // with det +-1 and nonnegative inverse
    std::vector<PicardClass> classes;
    std::vector<std::vector<std::size_t>> table;  // index of classes[i] (x) classes[j]
    std::size_t identity = 0;
    std::vector<std::size_t> static_part;
    Report report{"Picard group"};

    std::size_t order() const { return classes.size(); }

    Json to_json() const {
        Json j;
        j["algebra"] = algebra->name();
        j["points"] = algebra->dim();
        j["block_bound"] = block_bound;
        j["candidates"] = candidates;
        j["screened"] = screened;
        j["order"] = order();
        Json cls = Json::array();
        for (const auto& c : classes) {
            Json e;
            Json d = Json::array();
            for (const auto& row : c.dims) {
                Json r = Json::array();
                for (const auto& v : row) r.push_back(v.get_si());
                d.push_back(r);
            }
            e["dims"] = d;
            e["permutation"] = c.permutation;
            cls.push_back(e);
        }
        j["classes"] = cls;
        j["table"] = table;
        j["identity"] = identity;
        j["static_part_order"] = static_part.size();
        return j;
    }
};

namespace detail {

inline std::int64_t det_int(const std::int64_t* m, std::size_t n, std::size_t stride) {
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[stride + 1] - m[1] * m[stride];
    std::int64_t d = 0;
    std::int64_t minor[16];
    for (std::size_t c = 0; c < n; ++c) {
        if (m[c] == 0) continue;
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, k = 0; j < n; ++j)
                if (j != c) minor[(i - 1) * (n - 1) + k++] = m[i * stride + j];
        d += (c % 2 ? -1 : 1) * m[c] * det_int(minor, n - 1, n - 1);
    }
    return d;
}

inline std::int64_t det_int(const std::vector<std::int64_t>& m, std::size_t n) { return det_int(m.data(), n, n); }

/// Integer inverse adj(m) / det(m) for det = +-1.
inline std::vector<std::int64_t> unimodular_inverse(const std::vector<std::int64_t>& m, std::size_t n, std::int64_t det) {
    std::vector<std::int64_t> inv(n * n);
    if (n == 1) {
        inv[0] = det;
        return inv;
    }
    std::vector<std::int64_t> minor((n - 1) * (n - 1));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t i = 0, a = 0; i < n; ++i) {
                if (i == r) continue;
                for (std::size_t j = 0, b = 0; j < n; ++j)
                    if (j != c) minor[a * (n - 1) + b++] = m[i * n + j];
                ++a;
            }
            std::int64_t cof = ((r + c) % 2 ? -1 : 1) * det_int(minor, n - 1);
            inv[c * n + r] = cof * det;  // det^-1 = det for det = +-1
        }
    return inv;
}

inline IntMatrix to_int_matrix(const std::vector<std::int64_t>& m, std::size_t n) {
    IntMatrix out(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = static_cast<long>(m[i * n + j]);
    return out;
}

inline bool is_symmetric_bimodule(const Bimodule& E) {
    const AlgebraPtr& A = E.right_algebra();
    for (long x = 0; x < static_cast<long>(E.dim()); ++x)
        for (BasisIndex a = 0; a < static_cast<BasisIndex>(A->dim()); ++a)
            if (E.left(a, x) != E.right(x, a)) return false;
    return true;
}

}  // namespace detail

/// Invertible (A, A)-bimodule classes for A = FiniteFunctions(X), |X| <= 4,
/// among graded bimodules with block dimensions <= block_bound. Candidates
/// are screened by det = +-1 with a nonnegative integer inverse; each
/// survivor is certified by building E (x) F and F (x) E and deciding their
/// isomorphism with the canonical bimodule.
inline PicardGroup picard_enumerate(const AlgebraPtr& A, int block_bound = 2, std::size_t max_points = 4) {
    if (A->kind() != ModelKind::FiniteFunctions) throw UnsupportedModelError("Picard enumeration needs FiniteFunctions");
    const std::size_t n = A->dim();
    if (n > max_points) throw DomainError("Picard enumeration is limited to " + std::to_string(max_points) + " points");
    if (block_bound < 1) throw DomainError("block bound must be at least 1");
    PicardGroup G;
    G.algebra = A;
    G.block_bound = block_bound;
    const auto start = std::chrono::steady_clock::now();

    const Bimodule unit = Bimodule::canonical(A);
    auto& certified = G.report.check("inverse-certified-by-tensor");
    std::vector<std::int64_t> m(n * n, 0);
    const std::size_t cells = n * n;
    std::function<void(std::size_t)> rec = [&](std::size_t cell) {
        if (cell == cells) {
            ++G.candidates;
            std::int64_t det = detail::det_int(m, n);
            if (det != 1 && det != -1) return;
            auto inv = detail::unimodular_inverse(m, n, det);
            if (std::any_of(inv.begin(), inv.end(), [](std::int64_t v) { return v < 0; })) return;
            ++G.screened;
            IntMatrix p = detail::to_int_matrix(m, n), q = detail::to_int_matrix(inv, n);
            Bimodule E = Bimodule::graded(A, A, p), F = Bimodule::graded(A, A, q);
            bool ok = find_isomorphism(TensorProduct(E, F).module(), unit).isomorphic &&
                      find_isomorphism(TensorProduct(F, E).module(), unit).isomorphic;
            if (!certified.expect(ok, "dims with det " + std::to_string(det))) return;
            PicardClass c{p, E, std::vector<long>(n, -1)};
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (p[y][x] == 1) c.permutation[x] = static_cast<long>(y);
            G.classes.push_back(std::move(c));
            return;
        }
        // a zero row or column forces det = 0; count the skipped completions
        for (int v = 0; v <= block_bound; ++v) {
            m[cell] = v;
            const std::size_t r = cell / n, col = cell % n;
            bool dead = false;
            if (col == n - 1) {
                dead = true;
                for (std::size_t j = 0; j < n; ++j) dead = dead && m[r * n + j] == 0;
            }
            if (!dead && r == n - 1) {
                dead = true;
                for (std::size_t i = 0; i < n; ++i) dead = dead && m[i * n + col] == 0;
            }
            if (dead) {
                std::size_t rest = 1;
                for (std::size_t k = cell + 1; k < cells; ++k) rest *= static_cast<std::size_t>(block_bound + 1);
                G.candidates += rest;
                continue;
            }
            rec(cell + 1);
        }
        m[cell] = 0;
    };
    rec(0);

    // group table from actual tensor products
    auto& closed = G.report.check("closed-under-tensor");
    auto index_of = [&G](const IntMatrix& d) -> std::size_t {
        for (std::size_t k = 0; k < G.classes.size(); ++k)
            if (G.classes[k].dims == d) return k;
        return G.classes.size();
    };
    G.table.assign(G.order(), std::vector<std::size_t>(G.order(), 0));
    for (std::size_t i = 0; i < G.order(); ++i)
        for (std::size_t j = 0; j < G.order(); ++j) {
            TensorProduct T(G.classes[i].module, G.classes[j].module);
            std::size_t k = index_of(block_dimensions(T.module()));
            closed.expect(k < G.order(), std::to_string(i) + " (x) " + std::to_string(j));
            G.table[i][j] = k;
        }
    IntMatrix id(n, std::vector<Integer>(n));
    for (std::size_t x = 0; x < n; ++x) id[x][x] = 1;
    G.identity = index_of(id);
    auto& ident = G.report.check("identity-is-canonical");
    ident.expect(G.identity < G.order() &&
                     find_isomorphism(G.classes[G.identity].module, unit).isomorphic,
                 "identity class");

    auto& sym = G.report.check("isomorphic-to-Sym(X)");
    std::size_t factorial = 1;
    for (std::size_t k = 2; k <= n; ++k) factorial *= k;
    sym.expect(G.order() == factorial, "order " + std::to_string(G.order()) + " vs " + std::to_string(factorial));
    for (std::size_t i = 0; i < G.order(); ++i) {
        const auto& s = G.classes[i].permutation;
        sym.expect(std::find(s.begin(), s.end(), -1) == s.end(), "class " + std::to_string(i) + " is not a permutation");
        for (std::size_t j = 0; j < G.order() && closed.passed(); ++j) {
            std::vector<long> comp(n);
            for (std::size_t x = 0; x < n; ++x) comp[x] = s[static_cast<std::size_t>(G.classes[j].permutation[x])];
            sym.expect(G.classes[G.table[i][j]].permutation == comp, std::to_string(i) + " * " + std::to_string(j));
        }
    }

    for (std::size_t i = 0; i < G.order(); ++i)
        if (detail::is_symmetric_bimodule(G.classes[i].module)) G.static_part.push_back(i);
    G.report.check("static-part-trivial")
        .expect(G.static_part.size() == 1 && G.static_part[0] == G.identity,
                "static part of order " + std::to_string(G.static_part.size()));

    G.report.info()["order"] = G.order();
    G.report.info()["candidates"] = G.candidates;
    G.report.info()["screened"] = G.screened;
    G.report.info()["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return G;
}

/// Every class admits a completely positive *-certified pairing, and all
/// completely positive ones are isometric. Pairings searched: Hermitian
/// tables with entries sum_x c_x e_x, c_x in `coefficients`, pruned entrywise
/// by <v, w . a> = <v, w> a; the left product is solved from
/// B<v, w> . z = v . <w, z>.
inline Report strong_star_report(const PicardGroup& G, const std::vector<long>& coefficients = {-1, 0, 1, 2}) {
    Report r("strong and * certifications on " + G.algebra->name());
    const AlgebraPtr& A = G.algebra;
    const std::size_t n = A->dim();
    auto& exists = r.check("positive-pairing-exists");
    auto& unique = r.check("unique-up-to-isometry");
    std::size_t tables = 0, star_count = 0, strong_count = 0;

    // values sum_x c_x e_x
    std::vector<Element> values;
    std::vector<long> c(n, 0);
    std::function<void(std::size_t)> gen = [&](std::size_t k) {
        if (k == n) {
            BasisVec v;
            for (std::size_t x = 0; x < n; ++x) v.add(static_cast<long>(x), Scalar(c[x]));
            values.emplace_back(A, v);
            return;
        }
        for (long q : coefficients) {
            c[k] = q;
            gen(k + 1);
        }
    };
    gen(0);

    const std::vector<Scalar> gauss = [] {
        std::vector<Scalar> out;
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b)
                if (a || b) out.emplace_back(Rational(a, 2), Rational(b, 2));
        std::stable_sort(out.begin(), out.end(), [](const Scalar& x, const Scalar& y) {
            return (x * x.conj()).re() < (y * y.conj()).re();
        });
        return out;
    }();

    for (const auto& cls : G.classes) {
        const Bimodule& E = cls.module;
        const std::size_t d = E.dim();
        // exact entrywise consequence of <v, w . a> = <v, w> a when w . a = lambda w
        auto right_ok = [&](long w, const Element& val) {
            for (BasisIndex a = 0; a < static_cast<BasisIndex>(n); ++a) {
                const ModVec wa = E.right(w, a);
                const Element va = val * Element::basis(A, a);
                if (wa.is_zero()) {
                    if (!va.is_zero()) return false;
                } else if (wa.size() == 1 && wa.begin()->first == w) {
                    if (val * wa.begin()->second != va) return false;
                }
            }
            return true;
        };
        std::vector<std::vector<std::vector<std::size_t>>> cand(d, std::vector<std::vector<std::size_t>>(d));
        for (long v = 0; v < static_cast<long>(d); ++v)
            for (long w = 0; w < static_cast<long>(d); ++w)
                for (std::size_t k = 0; k < values.size(); ++k)
                    if (right_ok(w, values[k]) && right_ok(v, values[k].star()))
                        cand[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)].push_back(k);

        std::vector<std::pair<std::size_t, std::size_t>> upper;
        for (std::size_t v = 0; v < d; ++v)
            for (std::size_t w = v; w < d; ++w) upper.emplace_back(v, w);
        std::vector<std::size_t> choice(upper.size());
        std::vector<InnerProductPair> strong;

        std::function<void(std::size_t)> search = [&](std::size_t k) {
            if (k < upper.size()) {
                for (std::size_t idx : cand[upper[k].first][upper[k].second]) {
                    if (upper[k].first == upper[k].second && values[idx] != values[idx].star()) continue;
                    choice[k] = idx;
                    search(k + 1);
                }
                return;
            }
            ++tables;
            std::vector<std::vector<Element>> right(d, std::vector<Element>(d));
            for (std::size_t u = 0; u < upper.size(); ++u) {
                right[upper[u].first][upper[u].second] = values[choice[u]];
                right[upper[u].second][upper[u].first] = values[choice[u]].star();
            }
            // solve B<v, w> . z = v . <w, z> for B<v, w> in FiniteFunctions(X)
            std::vector<std::vector<Element>> left(d, std::vector<Element>(d, Element::zero(A)));
            std::vector<SparseVec<Scalar>> columns;
            for (BasisIndex b = 0; b < static_cast<BasisIndex>(n); ++b) {
                SparseVec<Scalar> col;
                for (long z = 0; z < static_cast<long>(d); ++z)
                    for (const auto& [k2, s] : E.left(b, z)) col[static_cast<std::size_t>(z) * d + static_cast<std::size_t>(k2)] += s;
                columns.push_back(col);
            }
            for (long v = 0; v < static_cast<long>(d); ++v)
                for (long w = 0; w < static_cast<long>(d); ++w) {
                    SparseVec<Scalar> target;
                    for (long z = 0; z < static_cast<long>(d); ++z)
                        for (const auto& [k2, s] : E.right(ModVec(v), right[static_cast<std::size_t>(w)][static_cast<std::size_t>(z)]))
                            target[static_cast<std::size_t>(z) * d + static_cast<std::size_t>(k2)] += s;
                    std::erase_if(target, [](const auto& kv) { return kv.second.is_zero(); });
                    auto sol = solve_in_span(columns, target);
                    if (!sol) return;
                    BasisVec lv;
                    for (const auto& [b, s] : *sol) lv.add(static_cast<long>(b), s);
                    left[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] = Element(A, lv);
                }
            InnerProductPair P = InnerProductPair::from_tables(E, right, left);
            if (!morita_axiom_report(P).passed()) return;
            ++star_count;
            if (!complete_positivity_report(P, d).passed()) return;
            ++strong_count;
            strong.push_back(std::move(P));
        };
        search(0);

        const std::string name = "class " + E.name() + " " + std::to_string(&cls - G.classes.data());
        exists.expect(!strong.empty(), name);
        if (strong.empty()) continue;

        // isometries among bimodule automorphisms sum t_k T_k with t_k Gaussian
        const auto autos = intertwiners(E, E);
        for (std::size_t s = 1; s < strong.size(); ++s) {
            std::vector<std::size_t> pick(autos.size(), 0);
            bool found = false;
            std::function<void(std::size_t)> try_all = [&](std::size_t k) {
                if (found) return;
                if (k == autos.size()) {
                    ModuleMap T(d);
                    for (std::size_t a = 0; a < autos.size(); ++a)
                        for (std::size_t j = 0; j < d; ++j) T[j].add_scaled(autos[a][j], gauss[pick[a]]);
                    found = isometry_report(T, strong[s], strong[0]).passed() && map_rank(T) == d;
                    return;
                }
                for (std::size_t g = 0; g < gauss.size() && !found; ++g) {
                    pick[k] = g;
                    try_all(k + 1);
                }
            };
            try_all(0);
            unique.expect(found, name + ": pairing " + std::to_string(s));
        }
    }
    r.info()["hermitian_tables"] = tables;
    r.info()["star_certified"] = star_count;
    r.info()["strong_certified"] = strong_count;
    return r;
}

}  // namespace hopfmorita
