#pragma once

/*
  Iwahori-Hecke algebras of types B (two parameters), C (p=q) and D, their
  actions on Fock spaces, the Hecke-side bar involutions, and the
  Kazhdan-Lusztig machinery used as the independent oracle against the
  i-canonical pipeline.

  Signed permutations are stored in window notation w = [w(1)..w(m)],
  w(i) in {±1..±m}, composed as functions, acting on letter words on the
  right by (f.w)(i) = f(w(i)) with f(-x) = -f(x).

  Generators: type B has s_0 (negate first entry) and s_1..s_{m-1}
  (adjacent swaps); type D replaces s_0 by s_0^d = s_0 s_1 s_0 (negate the
  first two entries and swap them).

  The module actions, from the paper's case tables:

    pure V, H_i (i >= 1):  q^{-1} M_f            if f(i) = f(i+1)
                           M_{f.s_i}              if f(i) < f(i+1)
                           M_{f.s_i}+(q^{-1}-q)M_f if f(i) > f(i+1)
    pure V, s_0:           M_{f.s_0}                    (p = 1)
    pure V, H_0^D:         M_{f.s_0^d}                 if -f(1) < f(2)
                           M_{f.s_0^d}+(q^{-1}-q)M_f   if -f(1) > f(2)
                           q^{-1} M_f                  if -f(1) = f(2)
    pure W, H_i (i >= 1):  q^{-1} M_f            if f(i) = f(i+1)
                           M_{f.s_i}              if f(i) > f(i+1)
                           M_{f.s_i}+(q^{-1}-q)M_f if f(i) < f(i+1)
    pure W, H_0^q:         M_{f.s_0}                   if f(1) < 0
                           M_{f.s_0}+(q^{-1}-q)M_f     if f(1) > 0
                           q^{-1} M_f                  if f(1) = 0

  Anti-dominant representatives (the monomials fixed by the compatible bar
  involution):  type B1: 0 <= f(1) <= ... <= f(m);
                type D:  |f(1)| <= f(2) <= ... <= f(m);
                type C:  0 >= f(1) >= ... >= f(n).
  The type-C direction is opposite to the one printed in the paper: with
  the printed action table, the unique bar involution compatible with
  H_{C_n} fixes the nonpositive descending words, as both the module
  computation and the b-Bruhat triangularity of psi_i force.
*/

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <vector>

#include "ikl/fock.hpp"
#include "ikl/kltable.hpp"
#include "ikl/laurent2.hpp"

namespace ikl {

// ---- signed permutations -------------------------------------------------

class SignedPerm {
  public:
    SignedPerm() = default;
    static SignedPerm identity(int m) {
        SignedPerm w;
        w.img_.resize(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) w.img_[static_cast<size_t>(i)] = i + 1;
        return w;
    }

    int m() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { // i in ±{1..m}
        return i > 0 ? img_[static_cast<size_t>(i - 1)] : -img_[static_cast<size_t>(-i - 1)];
    }

    // composition of functions: (v*w)(i) = v(w(i))
    friend SignedPerm operator*(const SignedPerm& v, const SignedPerm& w) {
        SignedPerm r;
        r.img_.resize(w.img_.size());
        for (int i = 1; i <= w.m(); ++i) r.img_[static_cast<size_t>(i - 1)] = v(w(i));
        return r;
    }

    friend bool operator==(const SignedPerm& a, const SignedPerm& b) { return a.img_ == b.img_; }
    friend bool operator<(const SignedPerm& a, const SignedPerm& b) { return a.img_ < b.img_; }

    bool is_identity() const { return *this == identity(m()); }
    int neg_count() const {
        int n = 0;
        for (int v : img_)
            if (v < 0) ++n;
        return n;
    }
    bool in_D() const { return neg_count() % 2 == 0; }

    // right multiplication by a type-B generator (j = 0 is s_0)
    SignedPerm right_mul_B(int j) const {
        SignedPerm r = *this;
        if (j == 0) {
            r.img_[0] = -r.img_[0];
        } else {
            std::swap(r.img_[static_cast<size_t>(j - 1)], r.img_[static_cast<size_t>(j)]);
        }
        return r;
    }
    // right multiplication by a type-D generator (j = 0 is s_0^d)
    SignedPerm right_mul_D(int j) const {
        if (j == 0) {
            SignedPerm r = *this;
            std::swap(r.img_[0], r.img_[1]);
            r.img_[0] = -r.img_[0];
            r.img_[1] = -r.img_[1];
            return r;
        }
        return right_mul_B(j);
    }

    // l(w s_j) < l(w)?
    bool descent_B(int j) const {
        if (j == 0) return img_[0] < 0;
        return img_[static_cast<size_t>(j - 1)] > img_[static_cast<size_t>(j)];
    }
    bool descent_D(int j) const {
        if (j == 0) return img_[0] + img_[1] < 0;
        return descent_B(j);
    }

    std::vector<int> reduced_word_B() const {
        SignedPerm w = *this;
        std::vector<int> word;
        while (!w.is_identity()) {
            int j = -1;
            for (int t = 0; t < w.m(); ++t)
                if (w.descent_B(t)) { j = t; break; }
            if (j < 0) throw InternalError("no descent on a non-identity signed permutation");
            w = w.right_mul_B(j);
            word.push_back(j);
        }
        std::reverse(word.begin(), word.end());
        return word;
    }
    std::vector<int> reduced_word_D() const {
        if (!in_D()) throw DomainError("reduced_word_D on an element outside W_D");
        SignedPerm w = *this;
        std::vector<int> word;
        while (!w.is_identity()) {
            int j = -1;
            for (int t = 0; t < w.m(); ++t)
                if (w.descent_D(t)) { j = t; break; }
            if (j < 0) throw InternalError("no D-descent on a non-identity element of W_D");
            w = w.right_mul_D(j);
            word.push_back(j);
        }
        std::reverse(word.begin(), word.end());
        return word;
    }

    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < img_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(img_[i]);
        }
        return s + "]";
    }

  private:
    std::vector<int> img_;
};

inline LetterWord word_act(const LetterWord& f, const SignedPerm& w) {
    LetterWord r;
    r.dd.resize(f.size());
    for (int i = 1; i <= w.m(); ++i) {
        int wi = w(i);
        r.dd[static_cast<size_t>(i - 1)] = wi > 0 ? f[static_cast<size_t>(wi - 1)]
                                                  : -f[static_cast<size_t>(-wi - 1)];
    }
    return r;
}

// ---- the algebras ---------------------------------------------------------

enum class HeckeParam { generic, p_one, p_q };

// Element of the two-parameter Hecke algebra of type B_m; the parameter
// mode only affects multiplication through the quadratic relation of H_0.
class HeckeBElt {
  public:
    HeckeBElt(int m, HeckeParam param) : m_(m), param_(param) {}
    static HeckeBElt unit(int m, HeckeParam param) {
        HeckeBElt r(m, param);
        r.terms_[SignedPerm::identity(m)] = Laurent2(1);
        return r;
    }
    static HeckeBElt generator(int m, HeckeParam param, int j) {
        return unit(m, param).right_mul_gen(j);
    }

    int m() const { return m_; }
    HeckeParam param() const { return param_; }
    const std::map<SignedPerm, Laurent2>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const SignedPerm& w, const Laurent2& c) {
        if (c.is_zero()) return;
        auto [it, ins] = terms_.try_emplace(w, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    HeckeBElt& operator+=(const HeckeBElt& o) {
        check(o);
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    friend HeckeBElt operator+(HeckeBElt a, const HeckeBElt& b) { return a += b; }
    friend HeckeBElt operator*(const Laurent2& s, const HeckeBElt& x) {
        HeckeBElt r(x.m_, x.param_);
        for (const auto& [w, c] : x.terms_) r.add(w, s * c);
        return r;
    }
    friend bool operator==(const HeckeBElt& a, const HeckeBElt& b) {
        return a.m_ == b.m_ && a.param_ == b.param_ && a.terms_ == b.terms_;
    }

    // H_w H_j: plain when j is not a right descent of w, else the quadratic
    // relation contributes (eps_j) H_w with eps depending on the parameter.
    HeckeBElt right_mul_gen(int j, bool inverse = false) const {
        if (j < 0 || j >= m_) throw DomainError("Hecke generator index out of range");
        HeckeBElt r(m_, param_);
        Laurent2 eps = j == 0 ? eps0() : Laurent2::monomial(-1, 0) - Laurent2::monomial(1, 0);
        for (const auto& [w, c] : terms_) {
            SignedPerm ws = w.right_mul_B(j);
            if (!w.descent_B(j)) {
                r.add(ws, c);
                if (inverse) r.add(w, Laurent2() - (c * eps));
            } else {
                r.add(ws, c);
                if (!inverse) r.add(w, c * eps);
            }
        }
        return r;
    }

    HeckeBElt right_mul(const HeckeBElt& o) const {
        check(o);
        HeckeBElt out(m_, param_);
        for (const auto& [w, c] : o.terms_) {
            HeckeBElt acc = *this;
            for (int j : w.reduced_word_B()) acc = acc.right_mul_gen(j);
            out += c * acc;
        }
        return out;
    }

    // anti-linear algebra automorphism: bar(H_j) = H_j^{-1}, coefficients
    // q -> q^-1, p -> p^-1
    HeckeBElt bar() const {
        HeckeBElt out(m_, param_);
        for (const auto& [w, c] : terms_) {
            HeckeBElt acc = unit(m_, param_);
            for (int j : w.reduced_word_B()) acc = acc.right_mul_gen(j, true);
            out += c.bar() * acc;
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            if (!first) s += " + ";
            s += "(" + c.at_p_one().str() + "|generic)*H" + w.str();
            first = false;
        }
        return s;
    }

  private:
    Laurent2 eps0() const {
        switch (param_) {
            case HeckeParam::generic:
                return Laurent2::monomial(0, -1) - Laurent2::monomial(0, 1);
            case HeckeParam::p_one:
                return Laurent2();
            case HeckeParam::p_q:
                return Laurent2::monomial(-1, 0) - Laurent2::monomial(1, 0);
        }
        return Laurent2();
    }
    void check(const HeckeBElt& o) const {
        if (o.m_ != m_ || o.param_ != param_)
            throw DomainError("mixing Hecke elements of different algebras");
    }

    int m_;
    HeckeParam param_;
    std::map<SignedPerm, Laurent2> terms_;
};

// Element of H_{D_m} (single parameter q).
class HeckeDElt {
  public:
    explicit HeckeDElt(int m) : m_(m) {
        if (m < 2) throw DomainError("H_D requires m >= 2");
    }
    static HeckeDElt unit(int m) {
        HeckeDElt r(m);
        r.terms_[SignedPerm::identity(m)] = LaurentPoly::one();
        return r;
    }
    static HeckeDElt generator(int m, int j) { return unit(m).right_mul_gen(j); }

    int m() const { return m_; }
    const std::map<SignedPerm, LaurentPoly>& terms() const { return terms_; }

    void add(const SignedPerm& w, const LaurentPoly& c) {
        if (c.is_zero()) return;
        if (!w.in_D()) throw InternalError("H_D element acquired a term outside W_D");
        auto [it, ins] = terms_.try_emplace(w, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    HeckeDElt& operator+=(const HeckeDElt& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    friend HeckeDElt operator+(HeckeDElt a, const HeckeDElt& b) { return a += b; }
    friend HeckeDElt operator*(const LaurentPoly& s, const HeckeDElt& x) {
        HeckeDElt r(x.m_);
        for (const auto& [w, c] : x.terms_) r.add(w, s * c);
        return r;
    }
    friend bool operator==(const HeckeDElt& a, const HeckeDElt& b) {
        return a.m_ == b.m_ && a.terms_ == b.terms_;
    }

    HeckeDElt right_mul_gen(int j, bool inverse = false) const {
        if (j < 0 || j >= m_) throw DomainError("H_D generator index out of range");
        HeckeDElt r(m_);
        LaurentPoly eps = LaurentPoly::monomial(-1) - LaurentPoly::monomial(1);
        for (const auto& [w, c] : terms_) {
            SignedPerm ws = w.right_mul_D(j);
            r.add(ws, c);
            if (!w.descent_D(j)) {
                if (inverse) r.add(w, -(c * eps));
            } else {
                if (!inverse) r.add(w, c * eps);
            }
        }
        return r;
    }

    HeckeDElt bar() const {
        HeckeDElt out(m_);
        for (const auto& [w, c] : terms_) {
            HeckeDElt acc = unit(m_);
            for (int j : w.reduced_word_D()) acc = acc.right_mul_gen(j, true);
            out += c.bar() * acc;
        }
        return out;
    }

  private:
    int m_;
    std::map<SignedPerm, LaurentPoly> terms_;
};

// rho: H_{D_m} -> H^1_{B_m}, H_0 |-> s_0 H_1 s_0, H_i |-> H_i. Group
// elements are untouched (W_D sits inside W_B); only the generator words
// are rewritten.
inline HeckeBElt rho_embed(const HeckeDElt& x) {
    HeckeBElt out(x.m(), HeckeParam::p_one);
    for (const auto& [w, c] : x.terms()) {
        HeckeBElt acc = HeckeBElt::unit(x.m(), HeckeParam::p_one);
        for (int j : w.reduced_word_D()) {
            if (j == 0) {
                acc = acc.right_mul_gen(0).right_mul_gen(1).right_mul_gen(0);
            } else {
                acc = acc.right_mul_gen(j);
            }
        }
        out += Laurent2::from_q(c) * acc;
    }
    return out;
}

// ---- module actions --------------------------------------------------------

enum class HeckeFlavor { B1, C, D };

// The raw action formulas make sense on any pure-W shape (the negative
// control of the duality suite applies them in the odd family on purpose);
// `strict_family` is demanded wherever the type-C duality theory is used.
inline void require_flavor_shape(HeckeFlavor flavor, const FockShape& sh,
                                 bool strict_family = false) {
    if (flavor == HeckeFlavor::C) {
        if (!sh.is_pure_w()) throw DomainError("flavor C acts on pure W tensors");
        if (strict_family && !sh.rank.even_family())
            throw DomainError("type-C duality requires the even family");
    } else {
        if (!sh.is_pure_v()) throw DomainError("flavors B1/D act on pure V tensors");
    }
}

/*
  Right action of the j-th generator: j >= 1 is H_j, j = 0 is the flavor's
  zero generator (s_0, H_0^q or H_0^D). `inverse` applies the inverse
  generator (H^{-1} = H + (q - q^{-1}); s_0^{-1} = s_0).
*/
inline FockVector act_hecke(HeckeFlavor flavor, int j, const FockVector& v,
                            bool inverse = false) {
    const FockShape& sh = v.shape();
    require_flavor_shape(flavor, sh);
    const int L = static_cast<int>(sh.len());
    if (j < 0 || j >= L) throw DomainError("Hecke generator position out of range");
    if (flavor == HeckeFlavor::D && j == 0 && L < 2)
        throw DomainError("H_0^D requires at least two factors");

    const LaurentPoly qinv = LaurentPoly::monomial(-1);
    const LaurentPoly qinv_m_q = LaurentPoly::monomial(-1) - LaurentPoly::monomial(1);
    const bool wside = flavor == HeckeFlavor::C;

    FockVector out(sh);
    for (const auto& [f, c] : v.entries()) {
        // classify: 0 = fixed (q^{-1}-eigenvector), +1 = plain move,
        // -1 = move with (q^{-1}-q) correction
        int cls;
        LetterWord g = f;
        if (j >= 1) {
            int x = f[static_cast<size_t>(j - 1)], y = f[static_cast<size_t>(j)];
            std::swap(g.dd[static_cast<size_t>(j - 1)], g.dd[static_cast<size_t>(j)]);
            if (x == y) cls = 0;
            else if (!wside) cls = x < y ? 1 : -1;
            else cls = x > y ? 1 : -1;
        } else if (flavor == HeckeFlavor::B1) {
            g.dd[0] = -g.dd[0];
            cls = 2; // s_0 is an honest involution: always plain
        } else if (flavor == HeckeFlavor::C) {
            int x = f[0];
            g.dd[0] = -g.dd[0];
            if (x == 0) cls = 0;
            else cls = x < 0 ? 1 : -1;
        } else { // D
            int x = f[0], y = f[1];
            g.dd[0] = -f[1];
            g.dd[1] = -f[0];
            if (-x == y) cls = 0;
            else cls = -x < y ? 1 : -1;
        }
        if (cls == 2) {
            out.add(g, c);
        } else if (cls == 0) {
            // q^{-1}-eigenvector; inverse eigenvalue is q
            out.add(f, c * (inverse ? LaurentPoly::q() : qinv));
        } else if (!inverse) {
            out.add(g, c);
            if (cls < 0) out.add(f, c * qinv_m_q);
        } else {
            // H^{-1} = H + (q - q^{-1})
            out.add(g, c);
            if (cls < 0) out.add(f, c * qinv_m_q);
            out.add(f, c * (LaurentPoly::q() - qinv));
        }
    }
    return out;
}

inline GradedOperator hecke_op(const FockShape& sh, HeckeFlavor flavor, int j,
                               bool inverse = false) {
    return GradedOperator::from_function(
        sh, [&](const FockVector& v) { return act_hecke(flavor, j, v, inverse); });
}

// ---- orbits, anti-dominance and the compatible bar ------------------------

inline bool is_antidominant(const LetterWord& f, HeckeFlavor flavor) {
    const size_t L = f.size();
    switch (flavor) {
        case HeckeFlavor::B1:
            for (size_t i = 0; i < L; ++i) {
                if (f[i] < 0) return false;
                if (i + 1 < L && f[i] > f[i + 1]) return false;
            }
            return true;
        case HeckeFlavor::D:
            if (L >= 2 && std::abs(f[0]) > f[1]) return false;
            for (size_t i = 1; i + 1 < L; ++i)
                if (f[i] > f[i + 1]) return false;
            return true;
        case HeckeFlavor::C:
            for (size_t i = 0; i < L; ++i) {
                if (f[i] > 0) return false;
                if (i + 1 < L && f[i] < f[i + 1]) return false;
            }
            return true;
    }
    return false;
}

// Letter-word moves of the flavor's Coxeter group (group level, no q).
inline LetterWord word_move(const LetterWord& f, HeckeFlavor flavor, int j) {
    LetterWord g = f;
    if (j >= 1) {
        std::swap(g.dd[static_cast<size_t>(j - 1)], g.dd[static_cast<size_t>(j)]);
    } else if (flavor == HeckeFlavor::D) {
        g.dd[0] = -f[1];
        g.dd[1] = -f[0];
    } else {
        g.dd[0] = -g.dd[0];
    }
    return g;
}

inline std::vector<LetterWord> hecke_orbit(const LetterWord& f, HeckeFlavor flavor) {
    const int L = static_cast<int>(f.size());
    int g0 = (flavor == HeckeFlavor::D && L < 2) ? 1 : 0;
    std::set<LetterWord> seen{f};
    std::deque<LetterWord> todo{f};
    while (!todo.empty()) {
        LetterWord cur = todo.front();
        todo.pop_front();
        for (int j = g0; j < L; ++j) {
            LetterWord nxt = word_move(cur, flavor, j);
            if (seen.insert(nxt).second) todo.push_back(nxt);
        }
    }
    return {seen.begin(), seen.end()};
}

struct AntidominantResult {
    LetterWord rep;
    std::vector<int> word; // f = ((rep . s_{w[0]}) . s_{w[1]}) ...
};

/*
  The unique flavor-anti-dominant element of the orbit and a minimal
  generator sequence from it to f (breadth-first from the representative,
  generators probed in ascending order: deterministic).
*/
inline AntidominantResult antidominant(const LetterWord& f, HeckeFlavor flavor) {
    const int L = static_cast<int>(f.size());
    int g0 = (flavor == HeckeFlavor::D && L < 2) ? 1 : 0;
    auto orbit = hecke_orbit(f, flavor);
    AntidominantResult res;
    bool found = false;
    for (const auto& g : orbit) {
        if (is_antidominant(g, flavor)) {
            if (found) throw InternalError("orbit has two anti-dominant elements");
            res.rep = g;
            found = true;
        }
    }
    if (!found) throw InternalError("orbit has no anti-dominant element");
    std::map<LetterWord, std::vector<int>> words;
    words[res.rep] = {};
    std::deque<LetterWord> todo{res.rep};
    while (!todo.empty()) {
        LetterWord cur = todo.front();
        todo.pop_front();
        if (cur == f) break;
        for (int j = g0; j < L; ++j) {
            LetterWord nxt = word_move(cur, flavor, j);
            if (words.count(nxt)) continue;
            auto w = words[cur];
            w.push_back(j);
            words[nxt] = std::move(w);
            todo.push_back(nxt);
        }
    }
    res.word = words.at(f);
    return res;
}

/*
  The unique anti-linear involution fixing anti-dominant monomials and
  satisfying bar(x h) = bar(x) bar(h). Basis images are computed per orbit
  via the triangular N-basis N_g = M_rep . H_{w_g}: its bar is
  M_rep . bar(H_{w_g}) (inverse generators along the same word), and the
  unitriangular change of basis transports the bar to the monomials.
*/
class PermBar {
  public:
    PermBar(FockShape shape, HeckeFlavor flavor) : shape_(std::move(shape)), flavor_(flavor) {
        require_flavor_shape(flavor_, shape_, /*strict_family=*/true);
    }

    FockVector apply(const FockVector& v) const {
        if (v.shape() != shape_) throw ShapeError("perm_bar: shape mismatch");
        FockVector out(shape_);
        for (const auto& [f, c] : v.entries()) {
            const FockVector& bf = monomial_image(f);
            out += c.bar() * bf;
        }
        return out;
    }

  private:
    const FockVector& monomial_image(const LetterWord& f) const {
        auto it = images_.find(f);
        if (it != images_.end()) return it->second;
        build_orbit(f);
        return images_.at(f);
    }

    void build_orbit(const LetterWord& f) const {
        auto orbit = hecke_orbit(f, flavor_);
        // order by minimal word length, ties by word order
        std::vector<std::pair<size_t, LetterWord>> order;
        std::map<LetterWord, std::vector<int>> words;
        LetterWord rep;
        for (const auto& g : orbit) {
            auto ad = antidominant(g, flavor_);
            rep = ad.rep;
            order.push_back({ad.word.size(), g});
            words[g] = std::move(ad.word);
        }
        std::sort(order.begin(), order.end());

        // N_g and bar(N_g), then triangular transport
        std::map<LetterWord, FockVector> barm;
        std::map<LetterWord, FockVector> nvec;
        for (const auto& [len, g] : order) {
            const auto& w = words.at(g);
            FockVector n(shape_, rep), nb(shape_, rep);
            for (int j : w) {
                n = act_hecke(flavor_, j, n);
                nb = act_hecke(flavor_, j, nb, true);
            }
            // n = M_g + lower terms (already-processed elements)
            LaurentPoly lead = n.coeff(g);
            if (!(lead == LaurentPoly::one()))
                throw InternalError("N-basis leading coefficient is not 1");
            FockVector img = nb;
            for (const auto& [h, c] : n.entries()) {
                if (h == g) continue;
                auto done = barm.find(h);
                if (done == barm.end())
                    throw InternalError("N-basis not triangular in word-length order");
                img -= c.bar() * done->second;
            }
            barm.emplace(g, std::move(img));
        }
        for (auto& [g, img] : barm) images_.emplace(g, std::move(img));
    }

    FockShape shape_;
    HeckeFlavor flavor_;
    mutable std::map<LetterWord, FockVector> images_;
};

inline FockVector perm_bar(const FockVector& v, HeckeFlavor flavor) {
    PermBar pb(v.shape(), flavor);
    return pb.apply(v);
}

/*
  Parabolic KL table of the permutation module, the Hecke-side oracle: the
  orbit of the given word, ordered by the block linearization, bar matrix
  from perm_bar, canonical and dual columns for the orbit top from the
  triangular solver.
*/
inline KLTable kl_basis_hecke(const FockShape& sh, const LetterWord& top, HeckeFlavor flavor) {
    require_flavor_shape(flavor, sh, /*strict_family=*/true);
    if (!sh.valid_word(top)) throw ShapeError("kl_basis_hecke: word invalid for shape");
    auto orbit = hecke_orbit(top, flavor);
    std::sort(orbit.begin(), orbit.end(), [&](const LetterWord& a, const LetterWord& b) {
        return block_order_less(a, b, sh.b);
    });
    size_t n = orbit.size();
    size_t top_idx = 0;
    while (top_idx < n && !(orbit[top_idx] == top)) ++top_idx;

    PermBar pb(sh, flavor);
    Matrix<LaurentPoly> R(n, std::vector<LaurentPoly>(n));
    for (size_t j = 0; j < n; ++j) {
        FockVector img = pb.apply(FockVector(sh, orbit[j]));
        for (size_t i = 0; i < n; ++i) R[i][j] = img.coeff(orbit[i]);
        // triangularity w.r.t. the block order is part of the theory; a
        // violation would silently corrupt the solver, so check here
        LaurentPoly rest = LaurentPoly::zero();
        for (const auto& [g, c] : img.entries()) {
            bool inside = false;
            for (size_t i = 0; i <= j; ++i)
                if (orbit[i] == g) { inside = true; break; }
            if (!inside) throw InternalError("perm_bar image leaves the ordered orbit");
        }
        (void)rest;
    }
    Matrix<LaurentPoly> T = lusztig_solve(R, Cone::qZq);
    Matrix<LaurentPoly> Ld = lusztig_solve(R, Cone::qinvZqinv);

    KLTable out;
    out.k = sh.rank.k;
    out.b = sh.b;
    out.top = top;
    out.provenance = "hecke-oracle";
    out.flavor = flavor == HeckeFlavor::D ? "D" : flavor == HeckeFlavor::C ? "C" : "B1";
    out.elements = orbit;
    for (size_t i = 0; i < n; ++i) {
        KLEntry e;
        e.t = T[i][top_idx];
        e.l = Ld[i][top_idx];
        if (!e.t.is_zero() || !e.l.is_zero()) out.entries[orbit[i]] = std::move(e);
    }
    return out;
}

} // namespace ikl
