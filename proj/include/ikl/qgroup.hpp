#pragma once

/*
  Finite-rank U_q(sl_{k+1}) acting on b-Fock spaces.

  Single-factor actions (letters doubled, alpha_i = eps_{i-1} - eps_{i+1}):

    on V:  E_i v_a = [a = i+1] v_{a-2}    F_i v_a = [a = i-1] v_{a+2}
           K_i v_a = q^{(alpha_i, eps_a)} v_a
    on W:  E_i w_a = [a = i-1] w_{a+2}    F_i w_a = [a = i+1] w_{a-2}
           K_i w_a = q^{-(alpha_i, eps_a)} w_a

  Tensor factors are coupled by the coproduct
    Delta(E) = 1 (x) E + E (x) K^{-1},  Delta(F) = F (x) 1 + K (x) F,
  so E acts at position j with K^{-1} on every factor to its right, and F
  acts at position j with K on every factor to its left.

  The braid operator is Lusztig's T''_{i,+}: on a weight vector m of
  weight la,
    T_i(m) = sum_{a,b,c >= 0, -a+b-c = (la,alpha_i)}
             (-1)^b q^{b-ac} E^{(a)} F^{(b)} E^{(c)} m,
  and T_{w_0} is the composition along a fixed reduced word of the longest
  element. The quasi-R-matrix Theta is assembled as the convex-order
  product of rank-one factors
    Theta_beta = sum_n q^{n(n-1)/2} (q-q^{-1})^n [n]! E_beta^{(n)} (x) F_beta^{(n)}
  over the positive roots beta enumerated by that reduced word, ascending,
  with root vectors obtained by conjugating Chevalley matrices with braid
  operators. The coefficient (sign included) and the factor order are
  forced by the intertwining condition; solving it exactly on the rank-one
  and rank-two modules pins both, and psi^2 = id plus the intertwining
  identities recertify the whole construction on every shape in the tests.
  The bar involution on a tensor space is the fold-left Theta twist of the
  factorwise bar. Both constructions are certified post hoc: psi^2 = id
  and the intertwining identities are exact tests, not assumptions.
*/

#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "ikl/fock.hpp"
#include "ikl/linalg.hpp"
#include "ikl/report.hpp"

namespace ikl {

enum class Gen { E, F, K, Kinv };

namespace detail {

// (alpha_i, eps_a) with doubled keys.
inline long alpha_eps(int dd_i, int dd_a) {
    return (dd_a == dd_i - 1 ? 1 : 0) - (dd_a == dd_i + 1 ? 1 : 0);
}

} // namespace detail

inline FockVector act_chevalley(Gen g, int dd_i, const FockVector& v) {
    const FockShape& sh = v.shape();
    if (!sh.rank.is_index(dd_i)) throw DomainError("act_chevalley: index out of range");
    const size_t L = sh.len();
    FockVector out(sh);
    for (const auto& [f, c] : v.entries()) {
        if (g == Gen::K || g == Gen::Kinv) {
            long e = 0;
            for (size_t j = 0; j < L; ++j) {
                long s = detail::alpha_eps(dd_i, f[j]);
                e += sh.b[j] == '0' ? s : -s;
            }
            if (g == Gen::Kinv) e = -e;
            out.add(f, c * LaurentPoly::monomial(static_cast<int>(e)));
            continue;
        }
        for (size_t j = 0; j < L; ++j) {
            const bool vfac = sh.b[j] == '0';
            int a = f[j];
            int target;
            if (g == Gen::E) {
                if (vfac) {
                    if (a != dd_i + 1) continue;
                    target = a - 2;
                } else {
                    if (a != dd_i - 1) continue;
                    target = a + 2;
                }
            } else { // F
                if (vfac) {
                    if (a != dd_i - 1) continue;
                    target = a + 2;
                } else {
                    if (a != dd_i + 1) continue;
                    target = a - 2;
                }
            }
            // K^{-1} tail (for E) / K head (for F) from the coproduct.
            long e = 0;
            if (g == Gen::E) {
                for (size_t t = j + 1; t < L; ++t) {
                    long s = detail::alpha_eps(dd_i, f[t]);
                    e -= sh.b[t] == '0' ? s : -s;
                }
            } else {
                for (size_t t = 0; t < j; ++t) {
                    long s = detail::alpha_eps(dd_i, f[t]);
                    e += sh.b[t] == '0' ? s : -s;
                }
            }
            LetterWord fn = f;
            fn.dd[j] = target;
            out.add(fn, c * LaurentPoly::monomial(static_cast<int>(e)));
        }
    }
    return out;
}

// E^{(a)} = E^a / [a]!, division exact by construction.
inline FockVector act_divided(Gen g, int dd_i, int a, const FockVector& v) {
    if (a < 0) throw DomainError("act_divided: negative power");
    if (g != Gen::E && g != Gen::F) throw DomainError("act_divided: generator must be E or F");
    FockVector r = v;
    for (int t = 0; t < a; ++t) r = act_chevalley(g, dd_i, r);
    if (a >= 2) {
        LaurentPoly fact = quantum_factorial(a);
        FockVector out(v.shape());
        for (const auto& [f, c] : r.entries()) out.add(f, c.divide_exact(fact));
        return out;
    }
    return r;
}

inline GradedOperator chevalley_op(const FockShape& sh, Gen g, int dd_i) {
    return GradedOperator::from_function(
        sh, [&](const FockVector& v) { return act_chevalley(g, dd_i, v); });
}

// ---- braid operators ----------------------------------------------------

inline FockVector braid_T_forward(int dd_i, const FockVector& v) {
    const FockShape& sh = v.shape();
    if (!sh.rank.is_index(dd_i)) throw DomainError("braid_T: index out of range");
    FockVector out(sh);
    for (const auto& [w, comp] : v.weight_components()) {
        long n = pairing(w, simple_root(dd_i));
        FockVector ec = comp; // E^c comp, undivided
        for (long c = 0;; ++c) {
            if (c > 0) {
                ec = act_chevalley(Gen::E, dd_i, ec);
                if (ec.is_zero()) break;
            }
            FockVector ecd(sh);
            if (c >= 2) {
                LaurentPoly fact = quantum_factorial(static_cast<int>(c));
                for (const auto& [f, cc] : ec.entries()) ecd.add(f, cc.divide_exact(fact));
            } else {
                ecd = ec;
            }
            // b = n + a + c grows with a, and F^{(b)}x = 0 implies
            // F^{(b+1)}x = 0, so the a-loop stops at the first dead b.
            for (long a = std::max(0L, -n - c);; ++a) {
                long b = n + a + c;
                FockVector fb = act_divided(Gen::F, dd_i, static_cast<int>(b), ecd);
                if (fb.is_zero()) break;
                FockVector term = act_divided(Gen::E, dd_i, static_cast<int>(a), fb);
                if (!term.is_zero()) {
                    int sign = b % 2 == 0 ? 1 : -1;
                    out += LaurentPoly::monomial(static_cast<int>(b - a * c), Int(sign)) * term;
                }
            }
        }
    }
    return out;
}

inline GradedOperator braid_T_op_forward(const FockShape& sh, int dd_i) {
    return GradedOperator::from_function(
        sh, [&](const FockVector& v) { return braid_T_forward(dd_i, v); });
}

/*
  Inverse braid operator by exact inversion on weight blocks: T maps the
  la-weight space onto the (s_i la)-weight space, so the inverse on weight
  mu is the inverse of the square block from weight s_i(mu).
*/
inline GradedOperator invert_weight_bijection(const GradedOperator& op) {
    const FockShape& sh = op.shape();
    std::map<Weight, std::vector<LetterWord>> spaces;
    for (const auto& f : sh.basis()) spaces[sh.weight_of(f)].push_back(f);

    GradedOperator inv(sh);
    // Group columns by target weight: columns from source block S land in
    // block T; invert each such square block.
    std::map<Weight, std::vector<LetterWord>> sources_by_target;
    for (const auto& [w, words] : spaces) {
        if (words.empty()) continue;
        FockVector img = op.column(words.front());
        if (img.is_zero()) throw InternalError("invert: operator kills a weight space");
        Weight tw = sh.weight_of(img.entries().begin()->first);
        auto& lst = sources_by_target[tw];
        lst.insert(lst.end(), words.begin(), words.end());
    }
    for (const auto& [tw, src] : sources_by_target) {
        const auto& tgt = spaces.at(tw);
        if (tgt.size() != src.size())
            throw InternalError("invert: weight blocks of unequal size");
        size_t n = src.size();
        Matrix<RationalFunction> m(n, std::vector<RationalFunction>(n));
        for (size_t j = 0; j < n; ++j) {
            FockVector cj = op.column(src[j]);
            for (size_t i = 0; i < n; ++i) m[i][j] = RationalFunction(cj.coeff(tgt[i]));
        }
        Matrix<RationalFunction> mi = rf_inverse(std::move(m));
        for (size_t j = 0; j < n; ++j) {
            FockVector col(sh);
            for (size_t i = 0; i < n; ++i) {
                if (mi[i][j].is_zero()) continue;
                col.add(src[i], mi[i][j].as_laurent());
            }
            inv.set_column(tgt[j], std::move(col));
        }
    }
    return inv;
}

inline GradedOperator braid_T_op(const FockShape& sh, int dd_i, bool inverse = false) {
    GradedOperator fwd = braid_T_op_forward(sh, dd_i);
    return inverse ? invert_weight_bijection(fwd) : fwd;
}

inline FockVector braid_T(int dd_i, const FockVector& v, bool inverse = false) {
    if (!inverse) return braid_T_forward(dd_i, v);
    return braid_T_op(v.shape(), dd_i, true).apply(v);
}

// Triangle word s_{i_1} (s_{i_2} s_{i_1}) (s_{i_3} s_{i_2} s_{i_1}) ... for
// the longest element of S_{k+1}, in doubled node indices.
inline std::vector<int> w0_reduced_word(const RankProfile& rank) {
    auto idx = rank.indices();
    std::vector<int> word;
    for (size_t j = 0; j < idx.size(); ++j)
        for (size_t t = j + 1; t-- > 0;) word.push_back(idx[t]);
    return word;
}

inline GradedOperator braid_word_op(const FockShape& sh, const std::vector<int>& word,
                                    bool inverse = false) {
    GradedOperator acc = GradedOperator::identity(sh);
    if (!inverse) {
        // T_{i_1} o T_{i_2} o ... o T_{i_N}
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            acc = braid_T_op(sh, *it).compose(acc);
    } else {
        for (int i : word) acc = braid_T_op(sh, i, true).compose(acc);
    }
    return acc;
}

inline GradedOperator braid_Tw0_op(const FockShape& sh, bool inverse = false) {
    return braid_word_op(sh, w0_reduced_word(sh.rank), inverse);
}

inline FockVector braid_Tw0(const FockVector& v, bool inverse = false) {
    return braid_Tw0_op(v.shape(), inverse).apply(v);
}

// ---- quasi-R-matrix and the tensor bar involution ------------------------

namespace detail {

struct RootVectors {
    // Matrices of E_beta on shapeL and F_beta on shapeR for each positive
    // root beta in the convex order of the fixed reduced word of w0.
    std::vector<GradedOperator> e_on_left;
    std::vector<GradedOperator> f_on_right;
};

inline std::vector<GradedOperator> root_vector_ops(const FockShape& sh, Gen g) {
    auto word = w0_reduced_word(sh.rank);
    std::vector<GradedOperator> out;
    GradedOperator conj = GradedOperator::identity(sh);
    GradedOperator conj_inv = GradedOperator::identity(sh);
    for (size_t t = 0; t < word.size(); ++t) {
        // E_{beta_t} = T_{i_1} ... T_{i_{t-1}} (E_{i_t})
        GradedOperator base = chevalley_op(sh, g, word[t]);
        out.push_back(conj.compose(base).compose(conj_inv));
        GradedOperator tt = braid_T_op(sh, word[t]);
        conj = conj.compose(tt);
        conj_inv = braid_T_op(sh, word[t], true).compose(conj_inv);
    }
    return out;
}

inline GradedOperator divided_power_op(const GradedOperator& op, int n) {
    GradedOperator r = GradedOperator::identity(op.shape());
    for (int t = 0; t < n; ++t) r = op.compose(r);
    if (n >= 2) {
        LaurentPoly fact = quantum_factorial(n);
        GradedOperator out(op.shape());
        for (const auto& f : op.shape().basis()) {
            FockVector col = r.column(f);
            FockVector dc(op.shape());
            for (const auto& [g2, c] : col.entries()) dc.add(g2, c.divide_exact(fact));
            out.set_column(f, std::move(dc));
        }
        return out;
    }
    return r;
}

// Operator on shapeL (x) shapeR from A acting on the left factor group and
// B on the right factor group.
inline GradedOperator tensor_op(const GradedOperator& a, const GradedOperator& b) {
    FockShape sh = a.shape().concat(b.shape());
    size_t nl = a.shape().len();
    GradedOperator out(sh);
    for (const auto& f : sh.basis()) {
        LetterWord fl, fr;
        fl.dd.assign(f.dd.begin(), f.dd.begin() + static_cast<long>(nl));
        fr.dd.assign(f.dd.begin() + static_cast<long>(nl), f.dd.end());
        FockVector ca = a.column(fl);
        FockVector cb = b.column(fr);
        if (ca.is_zero() || cb.is_zero()) continue;
        FockVector col(sh);
        for (const auto& [ga, cca] : ca.entries())
            for (const auto& [gb, ccb] : cb.entries()) {
                LetterWord g = ga;
                g.dd.insert(g.dd.end(), gb.dd.begin(), gb.dd.end());
                col.add(g, cca * ccb);
            }
        out.set_column(f, std::move(col));
    }
    return out;
}

} // namespace detail

// Theta on T^{bL} (x) T^{bR}: product of the rank-one factors over the
// positive roots in convex order.
inline GradedOperator quasi_R_theta(const FockShape& shapeL, const FockShape& shapeR) {
    if (shapeL.rank != shapeR.rank) throw ShapeError("quasi_R_theta: rank mismatch");
    auto e_roots = detail::root_vector_ops(shapeL, Gen::E);
    auto f_roots = detail::root_vector_ops(shapeR, Gen::F);
    FockShape sh = shapeL.concat(shapeR);
    GradedOperator theta = GradedOperator::identity(sh);
    LaurentPoly qmq = LaurentPoly::q() - LaurentPoly::monomial(-1);
    for (size_t t = 0; t < e_roots.size(); ++t) {
        GradedOperator factor = GradedOperator::identity(sh);
        for (int n = 1;; ++n) {
            GradedOperator fb = detail::divided_power_op(f_roots[t], n);
            if (fb.is_zero()) break;
            GradedOperator eb = detail::divided_power_op(e_roots[t], n);
            if (eb.is_zero()) break;
            // q^{n(n-1)/2} (q - q^{-1})^n [n]!
            LaurentPoly coef = LaurentPoly::monomial(n * (n - 1) / 2);
            for (int j = 0; j < n; ++j) coef *= qmq;
            coef *= quantum_factorial(n);
            factor += coef * detail::tensor_op(eb, fb);
        }
        theta = theta.compose(factor);
    }
    return theta;
}

/*
  Linear part P of the bar involution psi = P o (entrywise bar) on T^b,
  built fold-left: P_1 = id, P_j = Theta(prefix, factor j) o (P_{j-1} (x) id).
*/
inline GradedOperator psi_matrix_uncached(const FockShape& sh) {
    size_t L = sh.len();
    if (L == 0) return GradedOperator::identity(sh);
    GradedOperator p = GradedOperator::identity(sh.prefix(1));
    for (size_t j = 1; j < L; ++j) {
        FockShape pre = sh.prefix(j);
        FockShape fac = sh.factor(j);
        GradedOperator lifted = detail::tensor_op(p, GradedOperator::identity(fac));
        p = quasi_R_theta(pre, fac).compose(lifted);
    }
    return p;
}

inline const GradedOperator& psi_matrix(const FockShape& sh) {
    static std::map<FockShape, GradedOperator> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lk(mtx);
    auto it = cache.find(sh);
    if (it == cache.end()) it = cache.emplace(sh, psi_matrix_uncached(sh)).first;
    return it->second;
}

inline FockVector psi_bar(const FockVector& v) {
    return psi_matrix(v.shape()).apply(v.bar_coeffs());
}

/*
  R-matrix candidate on V (x) V (or W (x) W): flip o q-weight-pairing o Theta,
  normalized so that on V (x) V it reproduces the H_1 action of the Hecke
  algebra. The identity of the type-D Corollary holds with this candidate in
  place of the paper's (never defined) R^{-1}; see the duality tests.
*/
inline GradedOperator r_matrix_candidate(const FockShape& single) {
    if (single.len() != 1) throw ShapeError("r_matrix_candidate expects a single-factor shape");
    FockShape sh = single.concat(single);
    GradedOperator theta = quasi_R_theta(single, single);
    GradedOperator out(sh);
    for (const auto& f : sh.basis()) {
        FockVector tcol = theta.column(f);
        FockVector col(sh);
        for (const auto& [g, c] : tcol.entries()) {
            Weight wl = single.weight_of(LetterWord({g.dd[0]}));
            Weight wr = single.weight_of(LetterWord({g.dd[1]}));
            LetterWord flipped({g.dd[1], g.dd[0]});
            col.add(flipped, c * LaurentPoly::monomial(static_cast<int>(pairing(wl, wr))));
        }
        out.set_column(f, std::move(col));
    }
    return out;
}

// ---- relation suite for U ------------------------------------------------

namespace detail {

inline std::string op_max_degree_witness(const GradedOperator& diff) {
    if (diff.is_zero()) return "exact";
    int lo = 0, hi = 0;
    bool any = false;
    LetterWord at;
    for (const auto& f : diff.shape().basis()) {
        FockVector c = diff.column(f);
        for (const auto& [g, p] : c.entries()) {
            if (!any) { lo = p.min_exp(); hi = p.max_exp(); any = true; at = f; }
            else {
                lo = std::min(lo, p.min_exp());
                hi = std::max(hi, p.max_exp());
            }
        }
    }
    return "residual degree range [" + std::to_string(lo) + "," + std::to_string(hi) +
           "], first column " + at.str();
}

inline void check_equal(RelationReport& rep, const std::string& name, const std::string& family,
                        const std::string& shape, const GradedOperator& lhs,
                        const GradedOperator& rhs) {
    GradedOperator diff = lhs - rhs;
    RelationCheck c;
    c.relation = name;
    c.family = family;
    c.shape = shape;
    if (diff.is_zero()) {
        c.status = "pass";
        int hi = 0;
        for (const auto& f : lhs.shape().basis()) {
            FockVector col = lhs.column(f);
            for (const auto& [g, p] : col.entries())
                hi = std::max(hi, std::max(std::abs(p.min_exp()), std::abs(p.max_exp())));
        }
        c.witness = "max |exponent| " + std::to_string(hi);
    } else {
        c.status = "fail";
        c.witness = op_max_degree_witness(diff);
    }
    rep.items.push_back(std::move(c));
}

} // namespace detail

// Every defining relation of U_q(sl_{k+1}) as matrix identities on the shape.
inline RelationReport check_urelations(const FockShape& sh) {
    RelationReport rep;
    const std::string fam = sh.rank.even_family() ? "even" : "odd";
    const std::string shs = "k=" + std::to_string(sh.rank.k) + " b=" + sh.b;
    auto idx = sh.rank.indices();
    auto E = [&](int i) { return chevalley_op(sh, Gen::E, i); };
    auto F = [&](int i) { return chevalley_op(sh, Gen::F, i); };
    auto K = [&](int i) { return chevalley_op(sh, Gen::K, i); };
    auto Ki = [&](int i) { return chevalley_op(sh, Gen::Kinv, i); };
    GradedOperator id = GradedOperator::identity(sh);
    LaurentPoly qq1 = LaurentPoly::q() + LaurentPoly::monomial(-1);

    auto nm = [&](const std::string& base, int i, int j = INT32_MIN) {
        auto half = [](int d) {
            return d % 2 == 0 ? std::to_string(d / 2) : std::to_string(d) + "/2";
        };
        std::string s = base + "[i=" + half(i);
        if (j != INT32_MIN) s += ",j=" + half(j);
        return s + "]";
    };

    for (int i : idx) {
        detail::check_equal(rep, nm("K Kinv = 1", i), fam, shs, K(i).compose(Ki(i)), id);
        for (int j : idx) {
            detail::check_equal(rep, nm("K K commute", i, j), fam, shs,
                                K(i).compose(K(j)), K(j).compose(K(i)));
            long aij = pairing(simple_root(i), simple_root(j));
            detail::check_equal(rep, nm("K E Kinv = q^(ai,aj) E", i, j), fam, shs,
                                K(i).compose(E(j)).compose(Ki(i)),
                                LaurentPoly::monomial(static_cast<int>(aij)) * E(j));
            detail::check_equal(rep, nm("K F Kinv = q^-(ai,aj) F", i, j), fam, shs,
                                K(i).compose(F(j)).compose(Ki(i)),
                                LaurentPoly::monomial(static_cast<int>(-aij)) * F(j));
            // [E_i, F_j] = delta_ij (K_i - K_i^-1)/(q - q^-1)
            GradedOperator lhs = E(i).compose(F(j)) - F(j).compose(E(i));
            GradedOperator rhs(sh);
            if (i == j) {
                // multiply through by (q - q^-1) to stay in Z[q,q^-1]
                lhs = (LaurentPoly::q() - LaurentPoly::monomial(-1)) * lhs;
                rhs = K(i) - Ki(i);
            }
            detail::check_equal(rep, nm("[E,F] Cartan", i, j), fam, shs, lhs, rhs);
            if (i == j) continue;
            if (std::abs(i - j) == 2) { // adjacent nodes (doubled indices)
                detail::check_equal(rep, nm("E Serre adjacent", i, j), fam, shs,
                                    E(i).compose(E(i)).compose(E(j)) +
                                        E(j).compose(E(i)).compose(E(i)),
                                    qq1 * E(i).compose(E(j)).compose(E(i)));
                detail::check_equal(rep, nm("F Serre adjacent", i, j), fam, shs,
                                    F(i).compose(F(i)).compose(F(j)) +
                                        F(j).compose(F(i)).compose(F(i)),
                                    qq1 * F(i).compose(F(j)).compose(F(i)));
            } else {
                detail::check_equal(rep, nm("E E commute distant", i, j), fam, shs,
                                    E(i).compose(E(j)), E(j).compose(E(i)));
                detail::check_equal(rep, nm("F F commute distant", i, j), fam, shs,
                                    F(i).compose(F(j)), F(j).compose(F(i)));
            }
        }
    }
    return rep;
}

} // namespace ikl
