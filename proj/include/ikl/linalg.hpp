#pragma once

/*
  Small dense exact linear algebra: Gaussian elimination over Q(q) for
  block inversions and the intertwiner solver, and over F_p for the
  double-centralizer dimension counts where Q(q) elimination would be
  needlessly expensive.
*/

#include <cstdint>
#include <vector>

#include "ikl/rational.hpp"

namespace ikl {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

inline Matrix<RationalFunction> rf_identity(size_t n) {
    Matrix<RationalFunction> m(n, std::vector<RationalFunction>(n));
    for (size_t i = 0; i < n; ++i) m[i][i] = RationalFunction(LaurentPoly::one());
    return m;
}

// Invert over Q(q); throws InternalError if singular.
inline Matrix<RationalFunction> rf_inverse(Matrix<RationalFunction> a) {
    size_t n = a.size();
    Matrix<RationalFunction> inv = rf_identity(n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw InternalError("singular matrix in rf_inverse");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        RationalFunction d = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            RationalFunction f = a[row][col];
            for (size_t j = 0; j < n; ++j) {
                a[row][j] -= f * a[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

/*
  Solve A x = rhs where A is n_eq x n_un over Q(q). Returns true and fills
  x with the particular solution that sets all free variables to zero;
  returns false if the system is inconsistent. If nullity is non-null it
  receives the dimension of the solution space of A x = 0.
*/
inline bool rf_solve(Matrix<RationalFunction> a, std::vector<RationalFunction> rhs,
                     std::vector<RationalFunction>& x, size_t* nullity = nullptr) {
    size_t n_eq = a.size();
    size_t n_un = n_eq == 0 ? 0 : a[0].size();
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < n_un && row < n_eq; ++col) {
        size_t piv = row;
        while (piv < n_eq && a[piv][col].is_zero()) ++piv;
        if (piv == n_eq) continue;
        std::swap(a[piv], a[row]);
        std::swap(rhs[piv], rhs[row]);
        RationalFunction d = a[row][col];
        for (size_t j = col; j < n_un; ++j) a[row][j] /= d;
        rhs[row] /= d;
        for (size_t r = 0; r < n_eq; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            RationalFunction f = a[r][col];
            for (size_t j = col; j < n_un; ++j) a[r][j] -= f * a[row][j];
            rhs[r] -= f * rhs[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (size_t r = row; r < n_eq; ++r)
        if (!rhs[r].is_zero()) return false;
    x.assign(n_un, RationalFunction());
    for (size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = rhs[r];
    if (nullity) *nullity = n_un - pivot_col.size();
    return true;
}

// ---- F_p arithmetic for dimension certificates -------------------------

struct Fp {
    uint64_t p;
    explicit Fp(uint64_t prime) : p(prime) {}
    uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b % p) % p; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>((__uint128_t)a * b % p);
    }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const { return pow(a, p - 2); }
};

inline size_t fp_rank(std::vector<std::vector<uint64_t>> m, const Fp& fp) {
    size_t rows = m.size();
    size_t cols = rows == 0 ? 0 : m[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        uint64_t d = fp.inv(m[rank][col]);
        for (size_t j = col; j < cols; ++j) m[rank][j] = fp.mul(m[rank][j], d);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            uint64_t f = m[r][col];
            for (size_t j = col; j < cols; ++j)
                m[r][j] = fp.sub(m[r][j], fp.mul(f, m[rank][j]));
        }
        ++rank;
    }
    return rank;
}

inline uint64_t laurent_eval_fp(const LaurentPoly& poly, uint64_t q0, const Fp& fp) {
    uint64_t acc = 0;
    for (const auto& [e, c] : poly.coeffs()) {
        Int cm = c % Int(static_cast<unsigned long>(fp.p));
        if (cm < 0) cm += Int(static_cast<unsigned long>(fp.p));
        uint64_t cv = cm.get_ui();
        uint64_t qe = e >= 0 ? fp.pow(q0, static_cast<uint64_t>(e))
                             : fp.inv(fp.pow(q0, static_cast<uint64_t>(-e)));
        acc = fp.add(acc, fp.mul(cv, qe));
    }
    return acc;
}

} // namespace ikl
