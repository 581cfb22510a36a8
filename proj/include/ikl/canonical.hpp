#pragma once

/*
  Block enumeration for the b-Bruhat ordering, the bar matrix of psi_i on
  a block, i-canonical and dual i-canonical tables, and the entrywise
  comparison against the Hecke-side oracle.

  A block here is the order ideal { g : g <=_b f } of a top word f: finite
  at fixed rank, theta-weight homogeneous by definition of the ordering,
  and linearized by the functional of kltable.hpp (minimal elements first,
  the top last).
*/

#include <algorithm>
#include <vector>

#include "ikl/hecke.hpp"
#include "ikl/intertwiner.hpp"
#include "ikl/kltable.hpp"

namespace ikl {

struct BlockPoset {
    FockShape shape;
    LetterWord top;
    std::vector<LetterWord> elems;       // linearized, top last
    std::vector<std::vector<bool>> leq;  // leq[i][j] <=> elems[i] <=_b elems[j]

    size_t index_of(const LetterWord& g) const {
        for (size_t i = 0; i < elems.size(); ++i)
            if (elems[i] == g) return i;
        throw DomainError("word not in block");
    }
};

inline BlockPoset enumerate_block(const LetterWord& f, const BSeq& b, const RankProfile& rank) {
    FockShape sh(rank, b);
    if (!sh.valid_word(f)) throw ShapeError("enumerate_block: word invalid for shape");
    BlockPoset out{sh, f, {}, {}};
    ThetaWeight gamma = sh.block_of(f);
    for (const auto& g : sh.basis()) {
        if (sh.block_of(g) != gamma) continue; // theta-weight filter first
        if (leq_b(g, f, b)) out.elems.push_back(g);
    }
    std::sort(out.elems.begin(), out.elems.end(), [&](const LetterWord& x, const LetterWord& y) {
        return block_order_less(x, y, b);
    });
    size_t n = out.elems.size();
    out.leq.assign(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out.leq[i][j] = leq_b(out.elems[i], out.elems[j], b);
    return out;
}

/*
  Columns of psi_i on the block, in the block basis. psi_i preserves the
  order ideal (it is unitriangular for <=_b); a column escaping the block
  or a non-Laurent entry is an invariant violation upstream.
*/
inline Matrix<LaurentPoly> bar_matrix(const BlockPoset& P) {
    size_t n = P.elems.size();
    Matrix<LaurentPoly> R(n, std::vector<LaurentPoly>(n));
    for (size_t j = 0; j < n; ++j) {
        FockVector img = psi_i(FockVector(P.shape, P.elems[j]));
        size_t seen = 0;
        for (const auto& [g, c] : img.entries()) {
            bool found = false;
            for (size_t i = 0; i < n; ++i)
                if (P.elems[i] == g) {
                    if (!P.leq[i][j])
                        throw InternalError("psi_i image not <=_b the source monomial");
                    R[i][j] = c;
                    found = true;
                    ++seen;
                    break;
                }
            if (!found) throw InternalError("psi_i image escapes the block ideal");
        }
        (void)seen;
        if (!(R[j][j] == LaurentPoly::one()))
            throw InternalError("psi_i not unitriangular on the block diagonal");
    }
    return R;
}

inline KLTable ikl_table(const LetterWord& f, const BSeq& b, const RankProfile& rank) {
    BlockPoset P = enumerate_block(f, b, rank);
    Matrix<LaurentPoly> R = bar_matrix(P);
    Matrix<LaurentPoly> T = lusztig_solve(R, Cone::qZq);
    Matrix<LaurentPoly> L = lusztig_solve(R, Cone::qinvZqinv);
    size_t top_idx = P.elems.size() - 1; // top is last in the linearization
    if (!(P.elems[top_idx] == f)) top_idx = P.index_of(f);

    KLTable out;
    out.k = rank.k;
    out.b = b;
    out.top = f;
    out.provenance = "qsp-pipeline";
    out.elements = P.elems;
    for (size_t i = 0; i < P.elems.size(); ++i) {
        KLEntry e;
        e.t = T[i][top_idx];
        e.l = L[i][top_idx];
        if (!e.t.is_zero() || !e.l.is_zero()) out.entries[P.elems[i]] = std::move(e);
    }
    return out;
}

struct ComparisonReport {
    int k = 1;
    BSeq b;
    LetterWord top;
    std::string flavor;
    bool equal = false;
    // first mismatch, if any
    LetterWord at;
    std::string lhs, rhs;
};

/*
  ikl_table vs kl_basis_hecke, entrywise with zero-fill: the i-canonical
  block is the full <=_b ideal while the Hecke table lives on the orbit;
  the theorems say the extra positions carry zero coefficients.
*/
inline ComparisonReport compare_with_oracle(const LetterWord& f, const BSeq& b,
                                            const RankProfile& rank) {
    FockShape sh(rank, b);
    HeckeFlavor flavor;
    if (sh.is_pure_v())
        flavor = HeckeFlavor::D;
    else if (sh.is_pure_w())
        flavor = HeckeFlavor::C;
    else
        throw DomainError("compare_with_oracle needs a pure tensor shape");

    KLTable mine = ikl_table(f, b, rank);
    KLTable oracle = kl_basis_hecke(sh, f, flavor);

    ComparisonReport rep;
    rep.k = rank.k;
    rep.b = b;
    rep.top = f;
    rep.flavor = oracle.flavor;
    rep.equal = true;
    auto compare_at = [&](const LetterWord& g) {
        const KLEntry& a = mine.at(g);
        const KLEntry& o = oracle.at(g);
        if (!(a.t == o.t) || !(a.l == o.l)) {
            rep.equal = false;
            rep.at = g;
            rep.lhs = "t=" + a.t.str() + " l=" + a.l.str();
            rep.rhs = "t=" + o.t.str() + " l=" + o.l.str();
            return false;
        }
        return true;
    };
    for (const auto& g : mine.elements)
        if (!compare_at(g)) return rep;
    for (const auto& g : oracle.elements) {
        bool in_mine = false;
        for (const auto& h : mine.elements)
            if (h == g) { in_mine = true; break; }
        if (!in_mine && !compare_at(g)) return rep;
    }
    return rep;
}

} // namespace ikl
