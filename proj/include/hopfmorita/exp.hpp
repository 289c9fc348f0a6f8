#pragma once

// Exponentials of central elements.
//
// exp_central covers the constructive domain: a central nilpotent element a
// plus an optional symbolic phase 2*pi*i*q (q rational). The result is the
// finite series sum a^k/k! together with the exact root-of-unity marker q.
//
// ExpSum is the formal exponential calculus used where the series does not
// terminate (Laurent model): finite sums  c_j * exp(g_j) * e^(2 pi i q_j)
// with central coefficients c_j, subject to exp(g)exp(h) = exp(g + h),
// exp(0) = 1, D exp(g) = exp(g) Dg and exp(g)^* = exp(g^*). Exponents that
// are nilpotent are expanded, and phases in {0, 1/4, 1/2, 3/4} are absorbed
// into the coefficient, so exp(a) exp(-a) collapses to 1 exactly.

#include <map>
#include <optional>
#include <utility>

#include "hopfmorita/algebra.hpp"
#include "hopfmorita/lie_action.hpp"

namespace hopfmorita {

namespace detail {
/// Reduces q to [0, 1).
inline Rational frac_part(const Rational& q) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rational r = q - Rational(fl);
    r.canonicalize();
    return r;
}

/// e^(2 pi i q) when it lies in Q(i).
inline std::optional<Scalar> root_of_unity(const Rational& turns) {
    Rational q = frac_part(turns);
    if (q == 0) return Scalar(1);
    if (q == Rational(1, 4)) return Scalar::i();
    if (q == Rational(1, 2)) return Scalar(-1);
    if (q == Rational(3, 4)) return -Scalar::i();
    return std::nullopt;
}

inline Element nilpotent_exp_series(const Element& a, int index) {
    Element sum = Element::one(a.algebra());
    Element power = Element::one(a.algebra());
    Rational fact = 1;
    for (int k = 1; k < index; ++k) {
        power = power * a;
        fact *= k;
        sum += power * Scalar(Rational(1) / fact);
    }
    return sum;
}
}  // namespace detail

/// exp(2 pi i phase) * unipotent.
struct CentralExp {
    Rational phase;  // in [0, 1)
    Element unipotent;

    /// The value as an algebra element, when the phase is a fourth root of unity.
    std::optional<Element> value() const {
        if (auto z = detail::root_of_unity(phase)) return unipotent * *z;
        return std::nullopt;
    }

    CentralExp operator*(const CentralExp& o) const {
        return {detail::frac_part(phase + o.phase), unipotent * o.unipotent};
    }
    CentralExp star() const { return {detail::frac_part(-phase), unipotent.star()}; }
    friend bool operator==(const CentralExp& a, const CentralExp& b) {
        return a.phase == b.phase && a.unipotent == b.unipotent;
    }
};

inline std::ostream& operator<<(std::ostream& os, const CentralExp& e) {
    return os << "exp(2 pi i " << e.phase << ") * (" << e.unipotent << ")";
}

/// exp(a + 2 pi i phase_turns) for central nilpotent a.
inline CentralExp exp_central(const Element& a, const Rational& phase_turns = 0) {
    if (!is_central(a)) throw DomainError("exp_central: argument is not central");
    auto idx = nilpotency_index(a);
    if (!idx)
        throw DomainError("exp_central: argument must be nilpotent (scalar part only as a declared phase 2*pi*i*q)");
    return {detail::frac_part(phase_turns), detail::nilpotent_exp_series(a, *idx)};
}

class ExpSum {
public:
    using Key = std::pair<BasisVec::map_type, Rational>;  // (exponent, phase in [0,1))

    ExpSum() = default;
    explicit ExpSum(const Element& c) : alg_(c.algebra()) {
        add_term({{}, Rational(0)}, c.coeffs());
        normalize();
    }

    /// Formal exp(a + 2 pi i phase_turns); a must be central.
    static ExpSum exp(const Element& a, const Rational& phase_turns = 0) {
        if (!is_central(a)) throw DomainError("exp: argument is not central");
        ExpSum s;
        s.alg_ = a.algebra();
        s.add_term({a.coeffs().terms(), detail::frac_part(phase_turns)}, a.algebra()->unit());
        s.normalize();
        return s;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<Key, BasisVec>& terms() const { return terms_; }

    /// The plain element, if no formal exponential remains.
    std::optional<Element> to_element() const {
        if (terms_.empty()) return Element::zero(alg_);
        if (terms_.size() != 1) return std::nullopt;
        const auto& [key, c] = *terms_.begin();
        if (!key.first.empty() || key.second != 0) return std::nullopt;
        return Element(alg_, c);
    }

    ExpSum& operator+=(const ExpSum& o) {
        adopt(o);
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        normalize();
        return *this;
    }
    friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
    friend ExpSum operator-(ExpSum a, const ExpSum& b) { return a += b * Scalar(-1); }

    friend ExpSum operator*(const ExpSum& a, const Scalar& s) {
        ExpSum out = a;
        for (auto& [k, c] : out.terms_) c *= s;
        out.normalize();
        return out;
    }

    friend ExpSum operator*(const ExpSum& a, const ExpSum& b) {
        ExpSum out;
        out.alg_ = a.alg_ ? a.alg_ : b.alg_;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                BasisVec ea = from_map(ka.first), eb = from_map(kb.first);
                out.add_term({(ea + eb).terms(), detail::frac_part(ka.second + kb.second)},
                             (Element(out.alg_, ca) * Element(out.alg_, cb)).coeffs());
            }
        out.normalize();
        return out;
    }

    ExpSum star() const {
        ExpSum out;
        out.alg_ = alg_;
        for (const auto& [k, c] : terms_) {
            Element g(alg_, from_map(k.first));
            out.add_term({g.star().coeffs().terms(), detail::frac_part(-k.second)}, Element(alg_, c).star().coeffs());
        }
        out.normalize();
        return out;
    }

    /// D(c exp(g)) = (Dc + c Dg) exp(g).
    ExpSum apply(const Derivation& d) const {
        ExpSum out;
        out.alg_ = alg_;
        for (const auto& [k, c] : terms_) {
            Element ce(alg_, c), g(alg_, from_map(k.first));
            out.add_term(k, (d.apply(ce) + ce * d.apply(g)).coeffs());
        }
        out.normalize();
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + Element(alg_, c).str() + ")";
            Element g(alg_, from_map(k.first));
            if (!g.is_zero() || k.second != 0) {
                s += " exp(" + (g.is_zero() ? std::string() : g.str());
                if (k.second != 0) s += std::string(g.is_zero() ? "" : " + ") + "2 pi i " + k.second.get_str();
                s += ")";
            }
        }
        return s;
    }

    friend bool operator==(const ExpSum& a, const ExpSum& b) { return a.terms_ == b.terms_; }

private:
    static BasisVec from_map(const BasisVec::map_type& m) {
        BasisVec v;
        for (const auto& [k, c] : m) v.add(k, c);
        return v;
    }

    void adopt(const ExpSum& o) {
        if (!alg_) alg_ = o.alg_;
        else if (o.alg_ && o.alg_ != alg_) throw DomainError("ExpSum over different algebras");
    }

    void add_term(const Key& k, const BasisVec& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Expands nilpotent exponents and absorbs representable phases.
    void normalize() {
        std::map<Key, BasisVec> old;
        old.swap(terms_);
        for (auto& [k, c] : old) {
            Element g(alg_, from_map(k.first));
            Element coeff(alg_, c);
            Key key = k;
            if (!g.is_zero()) {
                if (auto idx = nilpotency_index(g)) {
                    coeff = coeff * detail::nilpotent_exp_series(g, *idx);
                    key.first.clear();
                }
            }
            if (auto z = detail::root_of_unity(key.second)) {
                coeff *= *z;
                key.second = 0;
            }
            add_term(key, coeff.coeffs());
        }
    }

    AlgebraPtr alg_;
    std::map<Key, BasisVec> terms_;
};

}  // namespace hopfmorita
