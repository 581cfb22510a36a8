#pragma once

/*
  Exact arithmetic in Z[q,q^-1], the scalar ring of the whole library.

  A LaurentPoly is a sparse map exponent -> coefficient with no zero
  coefficients stored, so equality of maps is equality of values.
  Coefficients are GMP integers: canonical-basis entries outgrow machine
  words quickly once blocks get deep.
*/

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ikl/errors.hpp"

namespace ikl {

using Int = mpz_class;
using Rat = mpq_class;

enum class Cone {
    qZq,        // qZ[q]: exponents >= 1
    qinvZqinv,  // q^-1 Z[q^-1]: exponents <= -1
    Nq,         // N[q]: exponents >= 0 and coefficients >= 0
    ZLaurent    // all of Z[q,q^-1]
};

class LaurentPoly {
  public:
    LaurentPoly() = default;
    explicit LaurentPoly(long c) {
        if (c != 0) coeffs_[0] = Int(c);
    }
    explicit LaurentPoly(const Int& c) {
        if (c != 0) coeffs_[0] = c;
    }

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return LaurentPoly(1); }
    static LaurentPoly q() { return monomial(1); }
    static LaurentPoly monomial(int exp, Int c = Int(1)) {
        LaurentPoly p;
        if (c != 0) p.coeffs_[exp] = std::move(c);
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const {
        return coeffs_.size() == 1 && coeffs_.begin()->first == 0 &&
               coeffs_.begin()->second == 1;
    }
    const std::map<int, Int>& coeffs() const { return coeffs_; }

    Int coeff(int exp) const {
        auto it = coeffs_.find(exp);
        return it == coeffs_.end() ? Int(0) : it->second;
    }

    int min_exp() const {
        if (is_zero()) throw InternalError("min_exp of zero polynomial");
        return coeffs_.begin()->first;
    }
    int max_exp() const {
        if (is_zero()) throw InternalError("max_exp of zero polynomial");
        return coeffs_.rbegin()->first;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
        return a.coeffs_ < b.coeffs_;
    }

    // q -> q^-1 on values; together with conjugation of scalars this is the
    // bar involution of the ring.
    LaurentPoly bar() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[-e] = c;
        return r;
    }

    // Multiply by q^s.
    LaurentPoly shifted(int s) const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e + s] = c;
        return r;
    }

    Int eval_one() const {
        Int s = 0;
        for (const auto& [e, c] : coeffs_) s += c;
        return s;
    }

    Rat eval(const Rat& q0) const {
        if (is_zero()) return Rat(0);
        if (q0 == 0) throw DomainError("cannot evaluate Laurent polynomial at q=0");
        Rat acc(0);
        // Horner over the exponent range, then shift by q0^{min_exp}.
        int lo = min_exp(), hi = max_exp();
        for (int e = hi; e >= lo; --e) {
            acc *= q0;
            acc += Rat(coeff(e));
        }
        Rat shift(1);
        Rat base = q0;
        int s = lo;
        if (s < 0) {
            base = Rat(1) / q0;
            s = -s;
        }
        for (int i = 0; i < s; ++i) shift *= base;
        return acc * shift;
    }

    // Exact division; throws InternalError when the division is inexact.
    // (Inexactness always signals an upstream bug: divided powers and
    // quantum factorials divide exactly by construction.)
    LaurentPoly divide_exact(const LaurentPoly& d) const {
        if (d.is_zero()) throw DivideByZero("division by zero Laurent polynomial");
        if (is_zero()) return LaurentPoly();
        LaurentPoly r = *this;
        LaurentPoly quot;
        const int dlead = d.max_exp();
        const Int& dc = d.coeffs_.rbegin()->second;
        while (!r.is_zero()) {
            int e = r.max_exp();
            Int c = r.coeffs_.rbegin()->second;
            if (c % dc != 0)
                throw InternalError("inexact Laurent division (coefficient)");
            Int qc = c / dc;
            int qe = e - dlead;
            quot.add_term(qe, qc);
            r -= d * monomial(qe, qc);
            if (!r.is_zero() && r.max_exp() >= e)
                throw InternalError("inexact Laurent division (degree)");
        }
        return quot;
    }

    bool in_cone(Cone cone) const {
        switch (cone) {
            case Cone::ZLaurent:
                return true;
            case Cone::qZq:
                for (const auto& [e, c] : coeffs_)
                    if (e < 1) return false;
                return true;
            case Cone::qinvZqinv:
                for (const auto& [e, c] : coeffs_)
                    if (e > -1) return false;
                return true;
            case Cone::Nq:
                for (const auto& [e, c] : coeffs_)
                    if (e < 0 || c < 0) return false;
                return true;
        }
        return false;
    }

    // Part with exponents > 0 (used by the canonical-basis correction step).
    LaurentPoly positive_part() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_)
            if (e > 0) r.coeffs_[e] = c;
        return r;
    }

    // Deterministic human-readable form, exponents ascending: "q^-1 + 2 - q^3".
    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : coeffs_) {
            Int a = c;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            if (e == 0) {
                os << a.get_str();
            } else {
                if (a != 1) os << a.get_str() << "*";
                os << "q";
                if (e != 1) os << "^" << e;
            }
        }
        return std::move(os).str();
    }

  private:
    void add_term(int e, Int c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    std::map<int, Int> coeffs_;
};

inline LaurentPoly operator*(const Int& c, const LaurentPoly& p) {
    return LaurentPoly(c) * p;
}

// [a] = (q^a - q^-a)/(q - q^-1) = q^{a-1} + q^{a-3} + ... + q^{1-a}
inline LaurentPoly quantum_int(int a) {
    if (a < 0) throw DomainError("quantum_int of negative integer");
    LaurentPoly r;
    for (int e = 1 - a; e <= a - 1; e += 2) r += LaurentPoly::monomial(e);
    return r;
}

inline LaurentPoly quantum_factorial(int a) {
    if (a < 0) throw DomainError("quantum_factorial of negative integer");
    LaurentPoly r = LaurentPoly::one();
    for (int i = 1; i <= a; ++i) r *= quantum_int(i);
    return r;
}

inline LaurentPoly quantum_binomial(int n, int k) {
    if (k < 0 || k > n) return LaurentPoly::zero();
    LaurentPoly num = LaurentPoly::one();
    for (int i = 0; i < k; ++i) num *= quantum_int(n - i);
    return num.divide_exact(quantum_factorial(k));
}

} // namespace ikl
