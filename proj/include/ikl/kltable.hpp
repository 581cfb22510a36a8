#pragma once

/*
  KL-type tables and the generic triangular bar-basis solver (the
  uniqueness argument of the canonical-basis theorems, run forwards).

  Given an ordered basis g_1 < ... < g_N, a unitriangular anti-linear bar
  matrix R (column j = bar of the j-th basis vector, supported on indices
  <= j) with R bar(R) = I, the solver produces for each j the unique
  column T_j = e_j + sum_{i<j} t_i e_i, bar-invariant, with every t_i in
  the requested cone (qZ[q] for the canonical basis, q^{-1}Z[q^{-1}] for
  the dual one). Corrections are found one defect at a time: a defect
  coefficient d satisfies bar(d) = -d, so it has no constant term and
  p - bar(p) = d has exactly one solution p in each cone (the positive-
  exponent part of d, resp. minus its bar).
*/

#include <map>
#include <string>
#include <vector>

#include "ikl/fock.hpp"
#include "ikl/linalg.hpp"

namespace ikl {

// Linear extension of the b-Bruhat order used everywhere tables are
// emitted: ascending by phi(g) = -sum_i i (-1)^{b_i} g(i) (any functional
// strictly positive on the ordering cone works; this one makes minimal
// elements come first and the block top last), ties by word order.
inline long block_sort_phi(const LetterWord& g, const BSeq& b) {
    long phi = 0;
    for (size_t i = 0; i < g.size(); ++i) {
        long d = static_cast<long>(i + 1) * g[i];
        phi -= b[i] == '0' ? d : -d;
    }
    return phi;
}

inline bool block_order_less(const LetterWord& a, const LetterWord& b2, const BSeq& b) {
    long pa = block_sort_phi(a, b), pb = block_sort_phi(b2, b);
    if (pa != pb) return pa < pb;
    return a < b2;
}

struct KLEntry {
    LaurentPoly t; // i-canonical coefficient, in qZ[q] off the top
    LaurentPoly l; // dual i-canonical coefficient, in q^{-1}Z[q^{-1}]
};

struct KLTable {
    int k = 1;
    BSeq b;
    LetterWord top;
    std::string provenance; // "qsp-pipeline" or "hecke-oracle"
    std::string flavor;     // for oracle tables: "D", "C", "B1"
    // ordered as the block linearization, top last
    std::vector<LetterWord> elements;
    std::map<LetterWord, KLEntry> entries;

    const KLEntry& at(const LetterWord& g) const {
        static const KLEntry zero{};
        auto it = entries.find(g);
        return it == entries.end() ? zero : it->second;
    }
};

/*
  R is N x N over Z[q,q^-1] in the given ordered basis; column j holds the
  bar image of basis vector j. Returns the matrix whose column j holds the
  cone-corrected bar-invariant basis element.
*/
inline Matrix<LaurentPoly> lusztig_solve(const Matrix<LaurentPoly>& R, Cone cone) {
    if (cone != Cone::qZq && cone != Cone::qinvZqinv)
        throw DomainError("lusztig_solve: cone must be qZ[q] or q^-1 Z[q^-1]");
    const size_t n = R.size();
    for (size_t j = 0; j < n; ++j) {
        if (!(R[j][j] == LaurentPoly::one()))
            throw InternalError("lusztig_solve: bar matrix not unitriangular on the diagonal");
        for (size_t i = j + 1; i < n; ++i)
            if (!R[i][j].is_zero())
                throw InternalError("lusztig_solve: bar matrix not triangular");
    }
    auto bar_apply = [&](const std::vector<LaurentPoly>& v) {
        // bar(sum v_j e_j) = sum bar(v_j) R[:,j]
        std::vector<LaurentPoly> out(n);
        for (size_t j = 0; j < n; ++j) {
            if (v[j].is_zero()) continue;
            LaurentPoly c = v[j].bar();
            for (size_t i = 0; i <= j; ++i)
                if (!R[i][j].is_zero()) out[i] += c * R[i][j];
        }
        return out;
    };
    Matrix<LaurentPoly> T(n, std::vector<LaurentPoly>(n));
    for (size_t j = 0; j < n; ++j) {
        std::vector<LaurentPoly> u(n);
        u[j] = LaurentPoly::one();
        while (true) {
            std::vector<LaurentPoly> delta = bar_apply(u);
            for (size_t i = 0; i < n; ++i) delta[i] -= u[i];
            // topmost offending coefficient = largest index with delta != 0
            size_t top = n;
            for (size_t i = n; i-- > 0;)
                if (!delta[i].is_zero()) { top = i; break; }
            if (top == n) break;
            if (top >= j)
                throw InternalError("lusztig_solve: defect at or above the diagonal");
            const LaurentPoly& d = delta[top];
            if (d.coeff(0) != 0)
                throw BarMatrixInconsistent("defect with nonzero constant term");
            if (!(d.bar() == -d))
                throw BarMatrixInconsistent("defect is not bar-antisymmetric");
            LaurentPoly p = d.positive_part();
            if (cone == Cone::qinvZqinv) p = -p.bar();
            // replacing u_top by u_top + p kills the defect there
            u[top] += p;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i != j && !u[i].in_cone(cone))
                throw InternalError("lusztig_solve: correction escaped the cone");
            T[i][j] = u[i];
        }
    }
    return T;
}

} // namespace ikl
