#pragma once

// Exact Gaussian rationals re + im*i over arbitrary-precision rationals.

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "hopfmorita/errors.hpp"

namespace hopfmorita {

using Rational = mpq_class;
using Integer = mpz_class;

class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}
    Scalar(const Rational& re) : re_(re) { re_.canonicalize(); }
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Scalar conj() const { return {re_, -im_}; }
    /// |z|^2, always a nonnegative rational.
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    Scalar operator-() const { return {-re_, -im_}; }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw ArithmeticError("division by zero scalar");
        Rational n = o.norm2();
        Scalar c = o.conj();
        *this *= c;
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const { return Scalar(1) / *this; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Lexicographic on (re, im); only used for canonical orderings.
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        int c = cmp(a.re_, b.re_);
        if (c == 0) c = cmp(a.im_, b.im_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// "p/q", "r/s*i" or "p/q+r/s*i"; denominators positive.
    std::string str() const {
        if (is_real()) return re_.get_str();
        std::string im = im_.get_str() + "*i";
        if (sgn(re_) == 0) return im;
        if (sgn(im_) > 0) return re_.get_str() + "+" + im;
        return re_.get_str() + im;
    }

    static Scalar parse(std::string_view text);

private:
    Rational re_{0};
    Rational im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& z) { return os << z.str(); }

namespace detail {

inline Rational parse_rational(const std::string& token, std::string_view whole) {
    if (token.empty()) throw ParseError("empty rational in scalar '" + std::string(whole) + "'");
    std::size_t slash = token.find('/');
    auto digits_ok = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    std::string_view num = std::string_view(token).substr(0, slash);
    if (!digits_ok(num)) throw ParseError("malformed scalar '" + std::string(whole) + "'");
    Rational q;
    if (slash == std::string::npos) {
        q = Rational(Integer(std::string(num)));
    } else {
        std::string_view den = std::string_view(token).substr(slash + 1);
        if (!digits_ok(den)) throw ParseError("malformed scalar '" + std::string(whole) + "'");
        Integer d(std::string{den});
        if (d == 0) throw ParseError("zero denominator in scalar '" + std::string(whole) + "'");
        q = Rational(Integer(std::string(num)), d);
        q.canonicalize();
    }
    return q;
}

}  // namespace detail

inline Scalar Scalar::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty scalar");

    Scalar out;
    std::size_t pos = 0;
    bool any = false;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (any) {
            throw ParseError("malformed scalar '" + s + "'");
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string term = s.substr(pos, end - pos);
        if (term.empty()) throw ParseError("malformed scalar '" + s + "'");
        bool imaginary = false;
        if (term == "i") {
            term = "1";
            imaginary = true;
        } else if (term.size() > 2 && term.compare(term.size() - 2, 2, "*i") == 0) {
            term.resize(term.size() - 2);
            imaginary = true;
        }
        Rational q = detail::parse_rational(term, s);
        if (sign < 0) q = -q;
        if (imaginary)
            out += Scalar(Rational(0), q);
        else
            out += Scalar(q);
        pos = end;
        any = true;
    }
    return out;
}

}  // namespace hopfmorita
