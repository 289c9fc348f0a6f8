#pragma once

// Classification of lifts of a Lie algebra action through U(U(g), A):
// restriction of members to Chevalley-Eilenberg 1-cocycles, the inverse
// inductive extension of cocycles to the truncated enveloping algebra, the
// relation hat(exp(a)) = -d0 a on g, and the quotient U0 of H1 by the
// hat-images of declared winding unitaries.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hopfmorita/ce_cohomology.hpp"
#include "hopfmorita/convolution.hpp"
#include "hopfmorita/lattice.hpp"

namespace hopfmorita {

enum class TwistProvenance { RestrictedCocycle, Raw };

/// A member of U(U(g), A) certified to the truncation order of its Hopf algebra.
struct LiftTwist {
    ConvolutionMap<UEA> map;
    TwistProvenance provenance = TwistProvenance::Raw;
    Report certificate;

    int certified_order() const { return map.hopf().truncation(); }
};

inline LiftTwist certify(ConvolutionMap<UEA> a, const UEAAction& action, int window = 3) {
    Report r = u_membership(a, action, window);
    if (!r.passed()) throw DomainError("not a member of U(U(g),A): failed " + failed_checks(r));
    return {std::move(a), TwistProvenance::Raw, std::move(r)};
}

/// Values anti-Hermitian and central, and d1 alpha = 0.
inline Report cocycle_report(const CECochain& alpha, const LieAction& action, int window = 3) {
    Report r("1-cocycle");
    auto& anti = r.check("anti-hermitian");
    auto& central = r.check("central");
    auto& closed = r.check("d1-closed");
    for (std::size_t i = 0; i < alpha.values.size(); ++i) {
        const std::string name = "xi" + std::to_string(i + 1);
        anti.expect(is_anti_hermitian(alpha.values[i]), name);
        central.expect(is_central(alpha.values[i], window), name);
    }
    auto d = ce_d1(alpha, action);
    for (std::size_t k = 0; k < d.values.size(); ++k) closed.expect(d.values[k].is_zero(), "pair " + std::to_string(k));
    return r;
}

/// alpha(xi_i) = a(xi_i).
inline CECochain restrict_twist(const LiftTwist& a, const UEAAction& action, int window = 3) {
    if (&a.map.hopf() != &action.hopf()) throw DomainError("restrict: twist and action use different Hopf algebras");
    CECochain alpha{1, {}};
    if (action.hopf().truncation() < 1) throw DomainError("restrict needs truncation >= 1");
    for (int i = 0; i < action.hopf().dim(); ++i) alpha.values.push_back(a.map.value(action.hopf().generator(i)));
    Report r = cocycle_report(alpha, action.lie(), window);
    if (!r.passed()) throw InconsistencyError("restriction of a member is not a cocycle: failed " + failed_checks(r));
    return alpha;
}

inline CECochain restrict_twist(const ConvolutionMap<UEA>& a, const UEAAction& action, int window = 3) {
    return restrict_twist(certify(a, action, window), action, window);
}

namespace detail {

/// a(xi_i1 ... xi_ik) = alpha(xi_i1) a(rest) + xi_i1 |> a(rest).
class WordExtension {
public:
    WordExtension(const CECochain& alpha, const UEAAction& action) : alpha_(alpha), action_(action) {}

    const Element& operator()(const UEA::Word& w) {
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
        Element v = Element::one(action_.algebra());
        if (!w.empty()) {
            UEA::Word rest(w.begin() + 1, w.end());
            Element tail = (*this)(rest);
            v = alpha_.values.at(static_cast<std::size_t>(w[0])) * tail + action_.lie().apply(w[0], tail);
        }
        return memo_.emplace(w, std::move(v)).first->second;
    }

private:
    const CECochain& alpha_;
    const UEAAction& action_;
    std::map<UEA::Word, Element> memo_;
};

}  // namespace detail

/// Inductive extension of a cocycle to a member of U(U(g), A), with the
/// descent condition checked on all generator pairs and PBW words Z of
/// degree <= N - 2 and membership re-verified.
inline LiftTwist extend_cocycle(const CECochain& alpha, const UEAAction& action, int window = 3) {
    const auto& h = action.hopf();
    if (alpha.degree != 1 || alpha.values.size() != static_cast<std::size_t>(h.dim()))
        throw DomainError("extend needs a 1-cochain with one value per generator");
    for (const auto& v : alpha.values)
        if (v.algebra() != action.algebra()) throw DomainError("extend: cochain values lie in a different algebra");
    Report pre = cocycle_report(alpha, action.lie(), window);
    if (!pre.passed()) throw DomainError("extend needs an anti-Hermitian central cocycle: failed " + failed_checks(pre));

    detail::WordExtension ext(alpha, action);
    Report cert("extension of a cocycle to U(g)");
    cert.info()["truncation"] = h.truncation();
    auto& descent = cert.check("descent");
    for (const auto& z : h.basis()) {
        if (h.degree(z) > h.truncation() - 2) continue;
        const UEA::Word zw = h.word(z);
        for (int i = 0; i < h.dim(); ++i)
            for (int j = i + 1; j < h.dim(); ++j) {
                UEA::Word ij{i, j}, ji{j, i};
                ij.insert(ij.end(), zw.begin(), zw.end());
                ji.insert(ji.end(), zw.begin(), zw.end());
                Element lhs = ext(ij) - ext(ji);
                Element rhs = Element::zero(action.algebra());
                for (const auto& [k, c] : action.lie().brackets().bracket(i, j)) {
                    UEA::Word kz{k};
                    kz.insert(kz.end(), zw.begin(), zw.end());
                    rhs += ext(kz) * c;
                }
                descent.expect(lhs == rhs, "(xi" + std::to_string(i + 1) + ", xi" + std::to_string(j + 1) + ", " +
                                               h.label(z) + ")");
            }
    }
    if (!descent.passed()) throw InconsistencyError("extension does not descend to U(g): " + descent.witnesses.front());

    ConvolutionMap<UEA> a(action.hopf_ptr(), action.algebra());
    for (const auto& m : h.basis()) a.set(m, ext(h.word(m)));
    Report member = u_membership(a, action, window);
    if (!member.passed()) throw InconsistencyError("extension is not a member of U(U(g),A): failed " + failed_checks(member));
    cert.merge(member);
    cert.info()["membership"] = member.info();
    return {std::move(a), TwistProvenance::RestrictedCocycle, std::move(cert)};
}

/// hat(exp(a)) restricted to g equals -d0 a, for anti-Hermitian central a.
inline Report hat_exp_relation_check(const Element& a, const UEAAction& action, int window = 3) {
    if (!is_anti_hermitian(a) || !is_central(a, window))
        throw DomainError("hat_exp_relation_check: " + a.str() + " is not anti-Hermitian and central");
    Report r("hat(exp(a)) = -d0 a on g");
    r.info()["a"] = a.str();
    const auto h = hat(ExpSum::exp(a), action);
    auto& rel = r.check("hat-exp-relation");
    auto d0 = ce_d0(a, action.lie());
    for (int i = 0; i < action.hopf().dim(); ++i) {
        Element lhs = h.value(action.hopf().generator(i));
        rel.expect(lhs == -d0.values[static_cast<std::size_t>(i)],
                   "xi" + std::to_string(i + 1) + ": " + lhs.str() + " vs " + (-d0.values[static_cast<std::size_t>(i)]).str());
    }
    r.merge(u_membership(h, action, window), "exp-image ");
    if (nilpotency_index(a)) {
        r.info()["exp_route"] = "series";
        auto e = exp_central(a).value();
        r.check("series-agrees-with-formal").expect(e && hat(*e, action, window) == h, a.str());
    } else {
        r.info()["exp_route"] = "formal";
    }
    return r;
}

/// A declared central unitary with its hat-cocycle.
struct Winding {
    std::string name;
    ExpSum value;
    ConvolutionMap<UEA> hat_map;
};

class WindingSet {
public:
    void add(const std::string& name, const ExpSum& c, const UEAAction& action, int window = 3) {
        if (c.algebra() != action.algebra()) throw DomainError("winding " + name + " lies in a different algebra");
        for (const auto& [key, coeff] : c.terms()) {
            BasisVec exponent;
            for (const auto& [b, z] : key.first) exponent.add(b, z);
            Element g(c.algebra(), exponent), k(c.algebra(), coeff);
            if (!is_central(g, window) || !is_central(k, window))
                throw DomainError("winding " + name + " is not central");
        }
        if ((c * c.star()).to_element() != Element::one(action.algebra()))
            throw DomainError("winding " + name + " is not unitary");
        entries_.push_back({name, c, hat(c, action)});
    }

    void add(const std::string& name, const Element& c, const UEAAction& action, int window = 3) {
        add(name, ExpSum(c), action, window);
    }

    const std::vector<Winding>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<Winding> entries_;
};

/// H1 modulo the subgroup generated by the winding hat-images.
struct U0Presentation {
    CohomologyResult cohomology;
    std::vector<std::string> winding_names;
    std::vector<std::vector<Rational>> winding_classes;  // coordinates in the H1 basis
    QuotientPresentation quotient;

    Json to_json() const {
        Json j;
        j["H1"] = cohomology.to_json();
        Json w = Json::array();
        for (std::size_t k = 0; k < winding_names.size(); ++k) {
            Json e;
            e["name"] = winding_names[k];
            Json cls = Json::array();
            for (const auto& q : winding_classes[k]) cls.push_back(q.get_str());
            e["class"] = cls;
            w.push_back(e);
        }
        j["windings"] = w;
        Json q;
        q["structure"] = quotient.structure();
        q["rational_rank"] = quotient.rational_rank();
        q["divisible_circle_factors"] = quotient.lattice_rank;
        q["lattice_denominator"] = quotient.denominator.get_str();
        Json f = Json::array();
        for (const auto& d : quotient.invariant_factors) f.push_back(d.get_str());
        q["invariant_factors"] = f;
        q["lattice_index"] = quotient.index.get_str();
        j["U0"] = q;
        return j;
    }
};

/// Class of the restriction of a member in the H1 basis, as a dense vector.
inline std::vector<Rational> h1_class(const CohomologyResult& res, const CECochain& alpha) {
    auto c = res.coords(alpha);
    if (!c || !res.is_cocycle(*c)) throw InconsistencyError("restriction is not a cocycle in the coefficient window");
    std::vector<Rational> out(res.h1().size());
    for (const auto& [k, q] : res.class_of(*c)) out.at(k) = q;
    return out;
}

inline U0Presentation u0_quotient(const UEAAction& action, int window, const WindingSet& windings) {
    U0Presentation p;
    p.cohomology = h1(action.lie(), window);
    for (const auto& w : windings.entries()) {
        CECochain alpha{1, {}};
        for (int i = 0; i < action.hopf().dim(); ++i) alpha.values.push_back(w.hat_map.value(action.hopf().generator(i)));
        if (!cocycle_report(alpha, action.lie(), window).passed())
            throw InconsistencyError("hat-image of winding " + w.name + " is not a cocycle");
        p.winding_names.push_back(w.name);
        p.winding_classes.push_back(h1_class(p.cohomology, alpha));
    }
    p.quotient = present_quotient(p.cohomology.h1().size(), p.winding_classes);
    return p;
}

}  // namespace hopfmorita
