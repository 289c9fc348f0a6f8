#pragma once

// Covariant structures on bimodules for enveloping algebra actions: the
// compatibility rules for the left and right module actions and the two
// inner products, the lift action x -> b(g_(1)) . (g_(2) |> x) of U(H, B) on
// covariant structures, the equivalence decision for two lifts, and the
// covariant certification levels with their forgetful maps.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfmorita/bimodule.hpp"
#include "hopfmorita/lattice.hpp"
#include "hopfmorita/lift_classifier.hpp"
#include "hopfmorita/morita.hpp"

namespace hopfmorita {

/// An H-module structure on a (B, A)-bimodule, H = U(g) acting on B and A,
/// given by the action of the generators on the module basis.
class CovariantStructure {
public:
    using GeneratorAction = std::function<ModVec(int, long)>;

    CovariantStructure(std::string name, Bimodule module, UEAAction left, UEAAction right, GeneratorAction generator)
        : name_(std::move(name)),
          module_(std::move(module)),
          left_(std::move(left)),
          right_(std::move(right)),
          gen_(std::move(generator)) {
        if (left_.hopf_ptr() != right_.hopf_ptr())
            throw ConstructionError("covariant structure: left and right actions use different Hopf algebras");
        if (left_.algebra() != module_.left_algebra() || right_.algebra() != module_.right_algebra())
            throw ConstructionError("covariant structure: actions do not act on the module's algebras");
    }

    /// Canonical self-bimodule with the module action equal to the algebra action.
    static CovariantStructure canonical(const UEAAction& action) {
        Bimodule E = Bimodule::canonical(action.algebra());
        LieAction lie = action.lie();
        return {"canonical", E, action, action, [lie](int i, long x) { return lie.derivation(i).apply_basis(x); }};
    }

    /// table[i][x] = xi_i |> v_x on a finite module.
    static CovariantStructure from_table(std::string name, Bimodule module, UEAAction left, UEAAction right,
                                         std::vector<std::vector<ModVec>> table) {
        if (!module.finite()) throw UnsupportedModelError("generator tables need a finite module");
        if (table.size() != static_cast<std::size_t>(left.hopf().dim()))
            throw ConstructionError("generator table needs one row per Lie generator");
        for (const auto& row : table)
            if (row.size() != module.dim()) throw ConstructionError("generator table row must cover every module basis vector");
        auto t = std::make_shared<const std::vector<std::vector<ModVec>>>(std::move(table));
        return {std::move(name), std::move(module), std::move(left), std::move(right),
                [t](int i, long x) { return (*t)[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)]; }};
    }

    const std::string& name() const { return name_; }
    const Bimodule& module() const { return module_; }
    const UEAAction& left_action() const { return left_; }
    const UEAAction& right_action() const { return right_; }
    const UEA& hopf() const { return left_.hopf(); }

    ModVec generator(int i, long x) const { return gen_(i, x); }

    ModVec generator(int i, const ModVec& x) const {
        ModVec out;
        for (const auto& [k, c] : x) out.add_scaled(gen_(i, k), c);
        return out;
    }

    /// PBW monomial acting with the rightmost generator first.
    ModVec act(const Monomial& m, const ModVec& x) const {
        ModVec out = x;
        for (int i = hopf().dim() - 1; i >= 0; --i)
            for (int k = 0; k < m.at(static_cast<std::size_t>(i)); ++k) out = generator(i, out);
        return out;
    }

    ModVec act(const Linear<Monomial>& g, const ModVec& x) const {
        ModVec out;
        for (const auto& [m, c] : g) out.add_scaled(act(m, x), c);
        return out;
    }

    /// Same structure with xi_i |> v_x = 0 for every generator.
    CovariantStructure zeroed_on(long x) const {
        GeneratorAction g = gen_;
        return {name_ + " zeroed on " + module_.label(x), module_, left_, right_,
                [g, x](int i, long y) { return y == x ? ModVec() : g(i, y); }};
    }

    std::string str() const { return name_ + " on " + module_.name(); }

private:
    std::string name_;
    Bimodule module_;
    UEAAction left_, right_;
    GeneratorAction gen_;
};

namespace detail {

inline std::vector<Monomial> keys_up_to(const UEA& h, int max_degree) {
    std::vector<Monomial> out;
    for (const auto& m : h.basis())
        if (h.degree(m) <= max_degree) out.push_back(m);
    return out;
}

inline Linear<Monomial> antipode_star(const UEA& h, const Monomial& g) { return hopf_star(h, hopf_antipode(h, g)); }

}  // namespace detail

/// Module relation on generators and the four compatibility rules on PBW
/// monomials of degree <= max_degree against windowed basis samples.
inline Report covariance_report(const CovariantStructure& S, const std::optional<InnerProductPair>& products = std::nullopt,
                                int window = 2, int max_degree = 2) {
    const auto& E = S.module();
    const auto& h = S.hopf();
    const AlgebraPtr& B = E.left_algebra();
    const AlgebraPtr& A = E.right_algebra();
    if (products && !same_bimodule(products->module, E)) throw DomainError("covariance: products live on a different bimodule");
    Report r("H-covariance of " + S.str());
    const int degree = std::min(max_degree, h.truncation());
    r.info()["max_degree"] = degree;
    r.info()["truncation"] = h.truncation();
    r.info()["window"] = window;
    r.info()["windowed"] = !E.finite() || !A->finite() || !B->finite();

    const auto xs = E.basis_window(window);
    const auto as = A->basis_window(window);
    const auto bs = B->basis_window(window);
    const auto keys = detail::keys_up_to(h, degree);

    auto& module = r.check("module");
    const auto& brackets = h.brackets();
    for (int i = 0; i < h.dim(); ++i)
        for (int j = i + 1; j < h.dim(); ++j)
            for (long x : xs) {
                ModVec lhs = S.generator(i, S.generator(j, ModVec(x))) - S.generator(j, S.generator(i, ModVec(x)));
                ModVec rhs;
                for (const auto& [k, c] : brackets.bracket(i, j)) rhs.add_scaled(S.generator(k, ModVec(x)), c);
                module.expect(lhs == rhs, "[xi" + std::to_string(i + 1) + ", xi" + std::to_string(j + 1) + "] on " + E.label(x));
            }

    auto& left = r.check("left-action-compatibility");
    auto& right = r.check("right-action-compatibility");
    for (const auto& g : keys) {
        const auto delta = h.coproduct(g);
        const std::string lg = h.label(g);
        for (long x : xs) {
            const ModVec vx(x);
            for (BasisIndex b : bs) {
                const Element eb = Element::basis(B, b);
                ModVec rhs;
                for (const auto& t : delta) rhs.add_scaled(E.left(S.left_action().act(t.left, eb), S.act(t.right, vx)), t.coeff);
                left.expect(S.act(g, E.left(eb, vx)) == rhs, lg + " on " + B->label(b) + " . " + E.label(x));
            }
            for (BasisIndex a : as) {
                const Element ea = Element::basis(A, a);
                ModVec rhs;
                for (const auto& t : delta) rhs.add_scaled(E.right(S.act(t.left, vx), S.right_action().act(t.right, ea)), t.coeff);
                right.expect(S.act(g, E.right(vx, ea)) == rhs, lg + " on " + E.label(x) + " . " + A->label(a));
            }
        }
    }
    if (!products) return r;

    auto& lprod = r.check("left-product-equivariance");
    auto& rprod = r.check("right-product-equivariance");
    for (const auto& g : keys) {
        const auto delta = h.coproduct(g);
        const std::string lg = h.label(g);
        for (long x : xs)
            for (long y : xs) {
                const ModVec vx(x), vy(y);
                Element lhs_l = S.left_action().act(g, products->left(vx, vy));
                Element rhs_l = Element::zero(B);
                for (const auto& t : delta)
                    rhs_l += products->left(S.act(t.left, vx), S.act(detail::antipode_star(h, t.right), vy)) * t.coeff;
                lprod.expect(lhs_l == rhs_l, lg + " on B<" + E.label(x) + ", " + E.label(y) + ">");
                Element lhs_r = S.right_action().act(g, products->right(vx, vy));
                Element rhs_r = Element::zero(A);
                for (const auto& t : delta)
                    rhs_r += products->right(S.act(detail::antipode_star(h, t.left), vx), S.act(t.right, vy)) * t.coeff;
                rprod.expect(lhs_r == rhs_r, lg + " on <" + E.label(x) + ", " + E.label(y) + ">_A");
            }
    }
    return r;
}

namespace detail {
inline void require_twist_matches(const CovariantStructure& S, const ConvolutionMap<UEA>& b) {
    if (b.hopf_ptr() != S.left_action().hopf_ptr()) throw DomainError("lift: twist and structure use different Hopf algebras");
    if (b.target() != S.module().left_algebra()) throw DomainError("lift: twist must take values in the left algebra");
}
}  // namespace detail

/// g |>^b x = b(g_(1)) . (g_(2) |> x), evaluated by the coproduct.
inline ModVec lift_value(const CovariantStructure& S, const ConvolutionMap<UEA>& b, const Monomial& g, const ModVec& x) {
    detail::require_twist_matches(S, b);
    ModVec out;
    for (const auto& t : S.hopf().coproduct(g)) out.add_scaled(S.module().left(b.value(t.left), S.act(t.right, x)), t.coeff);
    return out;
}

/// The lifted structure; on generators xi |>^b x = b(xi) . x + xi |> x.
inline CovariantStructure lift_action(const CovariantStructure& S, const ConvolutionMap<UEA>& b) {
    detail::require_twist_matches(S, b);
    if (!(b.value(S.hopf().unit_key()) == Element::one(b.target()))) throw DomainError("lift: twist is not normalized");
    std::vector<Element> values;
    for (int i = 0; i < S.hopf().dim(); ++i) values.push_back(b.value(S.hopf().generator(i)));
    const Bimodule E = S.module();
    auto base = S;
    return {S.name() + " twisted", E, S.left_action(), S.right_action(), [E, base, values](int i, long x) {
                return E.left(values[static_cast<std::size_t>(i)], ModVec(x)) + base.generator(i, x);
            }};
}

/// The lifted structure re-verified: the generator form agrees with the
/// coproduct formula on PBW monomials, and the covariance rules hold.
inline Report lift_report(const CovariantStructure& S, const ConvolutionMap<UEA>& b,
                          const std::optional<InnerProductPair>& products = std::nullopt, int window = 2, int max_degree = 2) {
    const CovariantStructure L = lift_action(S, b);
    Report r("lift of " + S.str());
    auto& agree = r.check("lift-is-module");
    const auto& h = S.hopf();
    for (const auto& g : detail::keys_up_to(h, std::min(max_degree, h.truncation())))
        for (long x : S.module().basis_window(window))
            agree.expect(L.act(g, ModVec(x)) == lift_value(S, b, g, ModVec(x)), h.label(g) + " on " + S.module().label(x));
    r.merge(covariance_report(L, products, window, max_degree), "lifted ");
    return r;
}

/// Outcome of comparing two lifts on the same bimodule.
struct LiftEquivalence {
    std::optional<bool> isomorphic;  // unset when no connecting twist exists
    std::vector<Rational> h1_class;
    std::vector<std::vector<Rational>> winding_classes;
    std::vector<Integer> winding_exponents;
    std::optional<ExpSum> certificate;  // c with hat(c) = b; the intertwiner is x -> c . x
    Report report{"lift equivalence"};

    std::string verdict() const {
        if (!isomorphic) return "undecided";
        return *isomorphic ? "isomorphic" : "not-isomorphic";
    }

    Json to_json() const {
        Json j;
        j["verdict"] = verdict();
        auto vec = [](const std::vector<Rational>& v) {
            Json a = Json::array();
            for (const auto& q : v) a.push_back(q.get_str());
            return a;
        };
        j["h1_class"] = vec(h1_class);
        Json w = Json::array();
        for (const auto& c : winding_classes) w.push_back(vec(c));
        j["winding_classes"] = w;
        if (isomorphic && *isomorphic) {
            Json n = Json::array();
            for (const auto& k : winding_exponents) n.push_back(k.get_str());
            j["winding_exponents"] = n;
            j["intertwiner"] = "x -> c . x with c = " + certificate->str();
        }
        j["report"] = report.to_json();
        return j;
    }
};

/// Decides whether two lifts of the same action on a canonical self-bimodule
/// are isomorphic. The connecting twist is read off on the generator 1,
/// restricted to a cocycle and reduced against B1 plus the winding lattice.
inline LiftEquivalence lift_equivalence_check(const CovariantStructure& S1, const CovariantStructure& S2,
                                              const WindingSet& windings, int window = 3, int max_degree = 2) {
    if (!same_bimodule(S1.module(), S2.module())) throw DomainError("lift equivalence: lifts live on different bimodules");
    if (S1.left_action().hopf_ptr() != S2.left_action().hopf_ptr() || S1.left_action().algebra() != S2.left_action().algebra())
        throw DomainError("lift equivalence: lifts of different actions");
    const Bimodule& E = S1.module();
    if (!E.is_canonical()) throw UnsupportedModelError("lift equivalence is implemented for canonical self-bimodules");
    const UEAAction& action = S1.left_action();
    const UEA& h = action.hopf();
    const AlgebraPtr& B = action.algebra();

    LiftEquivalence out;
    Report& r = out.report;
    r.info()["window"] = window;
    r.info()["truncation"] = h.truncation();

    const ModVec one = Element::one(B).coeffs();
    CECochain alpha{1, {}};
    for (int i = 0; i < h.dim(); ++i) alpha.values.push_back(Element(B, S2.generator(i, one) - S1.generator(i, one)));

    auto& connecting = r.check("connecting-twist");
    for (int i = 0; i < h.dim(); ++i)
        for (long x : E.basis_window(window)) {
            ModVec diff = S2.generator(i, x) - S1.generator(i, x);
            connecting.expect(diff == E.left(alpha.values[static_cast<std::size_t>(i)], ModVec(x)),
                              "xi" + std::to_string(i + 1) + " on " + E.label(x));
        }
    Report cocycle = cocycle_report(alpha, action.lie(), window);
    r.merge(cocycle, "twist ");
    if (!connecting.passed() || !cocycle.passed()) return out;

    const LiftTwist b = extend_cocycle(alpha, action, window);
    auto& reproduces = r.check("twist-reproduces-lift");
    const auto keys = detail::keys_up_to(h, std::min(max_degree, h.truncation()));
    for (const auto& g : keys)
        for (long x : E.basis_window(window))
            reproduces.expect(S2.act(g, ModVec(x)) == lift_value(S1, b.map, g, ModVec(x)), h.label(g) + " on " + E.label(x));
    if (!reproduces.passed()) return out;

    const U0Presentation u0 = u0_quotient(action, window, windings);
    const CohomologyResult& res = u0.cohomology;
    out.h1_class = h1_class(res, alpha);
    out.winding_classes = u0.winding_classes;
    r.info()["h1_dimension"] = res.h1().size();

    const auto n = lattice_contains(u0.winding_classes, out.h1_class);
    out.isomorphic = n.has_value();
    if (!n) {
        r.check("class-outside-winding-lattice").expect(true);
        return out;
    }
    out.winding_exponents = *n;

    // residual coboundary alpha - sum n_k hat(w_k) = d0 a, solved in V
    auto residual = *res.coords(alpha);
    ExpSum c(Element::one(B));
    for (std::size_t k = 0; k < n->size(); ++k) {
        const auto& w = windings.entries()[k];
        CECochain wk{1, {}};
        for (int i = 0; i < h.dim(); ++i) wk.values.push_back(w.hat_map.value(h.generator(i)));
        const auto wc = *res.coords(wk);
        const Rational q((*n)[k]);
        for (const auto& [idx, v] : wc) {
            residual[idx] -= q * v;
            if (residual[idx] == 0) residual.erase(idx);
        }
        const ExpSum base = (*n)[k] >= 0 ? w.value : w.value.star();
        for (Integer e = abs((*n)[k]); e > 0; --e) c = c * base;
    }
    auto& solved = r.check("residual-is-coboundary");
    const auto combo = solve_in_span(res.b1(), residual);
    solved.expect(combo.has_value(), "residual class not in B1");
    if (!combo) {
        out.isomorphic.reset();
        return out;
    }
    SparseVec<Rational> pre;
    for (const auto& [k, q] : *combo)
        for (const auto& [j, v] : res.b1_preimages()[k]) {
            pre[j] += q * v;
            if (pre[j] == 0) pre.erase(j);
        }
    // hat(exp(-a)) = d0 a on generators
    c = ExpSum::exp(-res.coefficients().element(pre)) * c;
    out.certificate = c;
    r.check("certificate-hat-equals-twist").expect(hat(c, action) == b.map, c.str());
    if (auto ce = c.to_element()) {
        auto& inter = r.check("certificate-intertwines");
        for (const auto& g : keys)
            for (long x : E.basis_window(window)) {
                ModVec lhs = E.left(*ce, S1.act(g, ModVec(x)));
                ModVec rhs = S2.act(g, E.left(*ce, ModVec(x)));
                inter.expect(lhs == rhs, h.label(g) + " on " + E.label(x));
            }
    }
    return out;
}

/// Adds the covariance rules to a certification: module and action rules at
/// every level, the product rules once inner products are present.
inline Certification certify_covariant(Certification c, const CovariantStructure& S, int window = 2, int max_degree = 2) {
    if (!same_bimodule(c.module, S.module())) throw DomainError("covariant certification: structure on a different bimodule");
    Report r = covariance_report(S, c.products, window, max_degree);
    Report ring("ring part"), star("star part");
    for (const auto& ch : r.checks()) {
        const bool product = ch.name.find("product") != std::string::npos;
        (product ? star : ring).check(ch.name) = ch;
    }
    detail::absorb(c, ring, "covariant-ring:");
    if (c.products) detail::absorb(c, star, "covariant-star:");
    c.covariant = true;
    c.history.push_back("covariant " + flavour_name(c.flavour));
    return c;
}

inline Certification forget_covariance(Certification c) {
    if (!c.covariant) throw DomainError("forget_covariance: certification is not covariant");
    for (auto it = c.retained.begin(); it != c.retained.end();)
        it = it->rfind("covariant-", 0) == 0 ? c.retained.erase(it) : std::next(it);
    c.covariant = false;
    c.history.push_back("covariant -> plain");
    return c;
}

/// The square of forgetful maps commutes on a covariant strong certification,
/// and forgetting in steps agrees with forgetting at once.
inline Report forget_diagram_report(const InnerProductPair& P, const CovariantStructure& S, std::size_t n = 3, int window = 2) {
    Report r("forgetful diagram");
    const Certification top = certify_covariant(certify_strong(P, n, window), S, window);
    auto& square = r.check("square-commutes");
    auto& steps = r.check("stepwise-equals-direct");
    auto& recert = r.check("matches-direct-certification");
    for (Flavour f : {Flavour::Strong, Flavour::Star, Flavour::Ring}) {
        const Certification a = forget(forget_covariance(top), f);
        const Certification b = forget_covariance(forget(top, f));
        square.expect(a == b, flavour_name(f));
        const Certification cov = forget(top, f);
        Certification direct = f == Flavour::Ring   ? certify_ring(P.module, window)
                               : f == Flavour::Star ? certify_star(P, window)
                                                    : certify_strong(P, n, window);
        recert.expect(cov == certify_covariant(direct, S, window), "covariant " + flavour_name(f));
        recert.expect(a == direct, flavour_name(f));
    }
    steps.expect(forget(forget(top, Flavour::Star), Flavour::Ring) == forget(top, Flavour::Ring), "covariant");
    const Certification plain = forget_covariance(top);
    steps.expect(forget(forget(plain, Flavour::Star), Flavour::Ring) == forget(plain, Flavour::Ring), "plain");
    return r;
}

}  // namespace hopfmorita
