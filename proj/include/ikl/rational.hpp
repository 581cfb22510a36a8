#pragma once

/*
  The fraction field Q(q), represented as reduced fractions of Laurent
  polynomials. Reduction works over Z: strip integer content, run a
  primitive pseudo-remainder gcd, and fix the normalization so that the
  denominator is an honest polynomial in q with lowest exponent 0 and
  positive lowest coefficient. Two equal rational functions then compare
  equal componentwise.
*/

#include <algorithm>
#include <vector>

#include "ikl/laurent.hpp"

namespace ikl {

namespace detail {

// Dense ordinary polynomial over Z, lowest exponent 0, as coefficient vector.
using ZPoly = std::vector<Int>;

inline void zp_trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Int zp_content(const ZPoly& p) {
    Int g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline void zp_div_scalar(ZPoly& p, const Int& s) {
    for (auto& c : p) c /= s;
}

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    zp_trim(r);
    return r;
}

// Pseudo-remainder of a by b (b nonzero).
inline ZPoly zp_prem(ZPoly a, const ZPoly& b) {
    zp_trim(a);
    const Int& lb = b.back();
    while (a.size() >= b.size()) {
        Int la = a.back();
        size_t shift = a.size() - b.size();
        for (auto& c : a) c *= lb;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= la * b[j];
        zp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline ZPoly zp_primitive_gcd(ZPoly a, ZPoly b) {
    zp_trim(a);
    zp_trim(b);
    while (!b.empty()) {
        ZPoly r = zp_prem(a, b);
        if (!r.empty()) {
            Int c = zp_content(r);
            zp_div_scalar(r, c);
        }
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() < 0)
        for (auto& c : a) c = -c;
    return a;
}

inline ZPoly to_zpoly(const LaurentPoly& p, int& shift) {
    if (p.is_zero()) {
        shift = 0;
        return {};
    }
    shift = p.min_exp();
    ZPoly r(static_cast<size_t>(p.max_exp() - shift) + 1, Int(0));
    for (const auto& [e, c] : p.coeffs()) r[static_cast<size_t>(e - shift)] = c;
    return r;
}

inline LaurentPoly from_zpoly(const ZPoly& p, int shift) {
    LaurentPoly r;
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) r += LaurentPoly::monomial(static_cast<int>(i) + shift, p[i]);
    return r;
}

} // namespace detail

// gcd over Q up to units, returned as a primitive polynomial with min_exp 0.
inline LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() && b.is_zero()) return LaurentPoly::zero();
    if (a.is_zero() || b.is_zero()) {
        const LaurentPoly& nz = a.is_zero() ? b : a;
        int s;
        auto zp = detail::to_zpoly(nz, s);
        Int c = detail::zp_content(zp);
        detail::zp_div_scalar(zp, c);
        if (zp.back() < 0)
            for (auto& x : zp) x = -x;
        return detail::from_zpoly(zp, 0);
    }
    int sa, sb;
    auto za = detail::to_zpoly(a, sa);
    auto zb = detail::to_zpoly(b, sb);
    {
        Int ca = detail::zp_content(za), cb = detail::zp_content(zb);
        detail::zp_div_scalar(za, ca);
        detail::zp_div_scalar(zb, cb);
    }
    auto g = detail::zp_primitive_gcd(za, zb);
    return detail::from_zpoly(g, 0);
}

class RationalFunction {
  public:
    RationalFunction() : num_(), den_(LaurentPoly::one()) {}
    RationalFunction(const LaurentPoly& p) : num_(p), den_(LaurentPoly::one()) {}
    explicit RationalFunction(long c) : num_(LaurentPoly(c)), den_(LaurentPoly::one()) {}
    RationalFunction(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivideByZero("rational function with zero denominator");
        reduce();
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return den_.is_one(); }

    // Throws InternalError unless the denominator is 1.
    const LaurentPoly& as_laurent() const {
        if (!is_laurent()) throw InternalError("rational function is not a Laurent polynomial");
        return num_;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw DivideByZero("division by zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    RationalFunction bar() const { return RationalFunction(num_.bar(), den_.bar()); }

    RationalFunction inverse() const {
        if (is_zero()) throw DivideByZero("inverse of zero");
        return RationalFunction(den_, num_);
    }

    std::string str() const {
        if (is_laurent()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

  private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = LaurentPoly::one();
            return;
        }
        LaurentPoly g = laurent_gcd(num_, den_);
        if (!g.is_one() && !g.is_zero()) {
            num_ = num_.divide_exact(g);
            den_ = den_.divide_exact(g);
        }
        // Integer content of the denominator folds into the numerator only
        // when it divides; otherwise it stays (coefficients remain integral).
        {
            int s;
            auto zd = detail::to_zpoly(den_, s);
            Int cd = detail::zp_content(zd);
            bool divides = true;
            for (const auto& [e, c] : num_.coeffs())
                if (c % cd != 0) { divides = false; break; }
            if (divides && cd != 1) {
                num_ = num_.divide_exact(LaurentPoly(cd));
                den_ = den_.divide_exact(LaurentPoly(cd));
            }
        }
        // Normalize: den has min_exp 0 and positive lowest coefficient.
        int s = den_.min_exp();
        if (s != 0) {
            den_ = den_.shifted(-s);
            num_ = num_.shifted(-s);
        }
        if (den_.coeff(den_.min_exp()) < 0) {
            den_ = -den_;
            num_ = -num_;
        }
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

// div of two LaurentPoly returns a RationalFunction (exactalg [OP] arith).
inline RationalFunction laurent_div(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw DivideByZero("division by zero Laurent polynomial");
    return RationalFunction(a, b);
}

} // namespace ikl
