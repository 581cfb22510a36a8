#pragma once

/*
  Z[q^{±1}, p^{±1}]: scalars of the generic two-parameter Hecke algebra of
  type B. Only the generic algebra needs two variables; actions on Fock
  spaces go through the specializations p=1 and p=q.
*/

#include <map>
#include <utility>

#include "ikl/laurent.hpp"

namespace ikl {

class Laurent2 {
  public:
    Laurent2() = default;
    explicit Laurent2(long c) {
        if (c != 0) coeffs_[{0, 0}] = Int(c);
    }
    static Laurent2 monomial(int qe, int pe, Int c = Int(1)) {
        Laurent2 r;
        if (c != 0) r.coeffs_[{qe, pe}] = std::move(c);
        return r;
    }
    static Laurent2 from_q(const LaurentPoly& p) {
        Laurent2 r;
        for (const auto& [e, c] : p.coeffs()) r.coeffs_[{e, 0}] = c;
        return r;
    }

    bool is_zero() const { return coeffs_.empty(); }
    const std::map<std::pair<int, int>, Int>& coeffs() const { return coeffs_; }

    Laurent2& operator+=(const Laurent2& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, c);
        return *this;
    }
    Laurent2& operator-=(const Laurent2& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
        return *this;
    }
    friend Laurent2 operator+(Laurent2 a, const Laurent2& b) { return a += b; }
    friend Laurent2 operator-(Laurent2 a, const Laurent2& b) { return a -= b; }
    friend Laurent2 operator*(const Laurent2& a, const Laurent2& b) {
        Laurent2 r;
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_)
                r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
        return r;
    }
    Laurent2& operator*=(const Laurent2& o) { return *this = *this * o; }

    friend bool operator==(const Laurent2& a, const Laurent2& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Laurent2& a, const Laurent2& b) { return !(a == b); }

    // q -> q^-1, p -> p^-1
    Laurent2 bar() const {
        Laurent2 r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[{-e.first, -e.second}] = c;
        return r;
    }

    LaurentPoly at_p_one() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r += LaurentPoly::monomial(e.first, c);
        return r;
    }
    LaurentPoly at_p_q() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r += LaurentPoly::monomial(e.first + e.second, c);
        return r;
    }

  private:
    void add_term(std::pair<int, int> e, Int c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    std::map<std::pair<int, int>, Int> coeffs_;
};

} // namespace ikl
