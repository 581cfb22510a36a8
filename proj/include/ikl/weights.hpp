#pragma once

/*
  Index sets, the weight lattice of sl_{k+1} with the diagram involution
  theta, its quotient Lambda_theta, letter words, 0^m1^n-sequences and the
  partial orderings <=_B, <=_D, <=_b.

  Conventions. The Dynkin type is A_k, the algebra U_q(sl_{k+1}).
  Letters and node indices are stored DOUBLED so that both parity families
  share one integer representation:

     doubled letters  I_k  = { -k, -k+2, ..., k }          (k+1 of them)
     doubled indices  II_k = { -k+1, -k+3, ..., k-1 }      (k of them)

  For k even ("even family") the letters are integers and 0 is a letter;
  for k odd ("odd family") the letters are half-integers and the node 0 is
  the theta-fixed middle of the diagram. alpha_i = eps_{i-1/2} - eps_{i+1/2}
  reads alpha_i = eps_{i-1} - eps_{i+1} in doubled keys.

  theta sends eps_a -> -eps_{-a} and alpha_i -> alpha_{-i}. Lambda_theta is
  the quotient of Lambda by the theta-INVARIANT sublattice; the canonical
  representative of a class is mu - theta(mu). (The paper's definition of
  Lambda^theta is garbled; invariants is the reading under which wt_i is
  constant on signed-permutation orbits, as the Hasse diagrams of the type
  B/D Bruhat orderings require, and under which the pairing
  (alpha_i - alpha_{-i}, -) descends to the quotient.)
*/

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ikl/errors.hpp"

namespace ikl {

struct RankProfile {
    int k = 1; // Dynkin type A_k; algebra U_q(sl_{k+1})

    explicit RankProfile(int rank) : k(rank) {
        if (k < 1) throw DomainError("rank k must be >= 1");
    }
    bool even_family() const { return k % 2 == 0; }

    bool is_letter(int dd) const { return dd >= -k && dd <= k && (dd - k) % 2 == 0; }
    bool is_index(int dd) const { return dd >= -k + 1 && dd <= k - 1 && (dd - k) % 2 != 0; }

    std::vector<int> letters() const {
        std::vector<int> r;
        for (int a = -k; a <= k; a += 2) r.push_back(a);
        return r;
    }
    std::vector<int> indices() const {
        std::vector<int> r;
        for (int i = -k + 1; i <= k - 1; i += 2) r.push_back(i);
        return r;
    }
    // II^imath: positive part of the index set.
    std::vector<int> pos_indices() const {
        std::vector<int> r;
        for (int i : indices())
            if (i > 0) r.push_back(i);
        return r;
    }
    int max_letter() const { return k; }

    friend bool operator==(const RankProfile& a, const RankProfile& b) { return a.k == b.k; }
    friend bool operator!=(const RankProfile& a, const RankProfile& b) { return a.k != b.k; }
};

// Finitely supported integer combination of eps_a, keys doubled.
class Weight {
  public:
    Weight() = default;

    static Weight eps(int dd_letter, long c = 1) {
        Weight w;
        w.add(dd_letter, c);
        return w;
    }

    const std::map<int, long>& coords() const { return c_; }
    long coord(int dd_letter) const {
        auto it = c_.find(dd_letter);
        return it == c_.end() ? 0 : it->second;
    }
    bool is_zero() const { return c_.empty(); }

    void add(int dd_letter, long c) {
        if (c == 0) return;
        auto [it, ins] = c_.try_emplace(dd_letter, c);
        if (!ins) {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }

    Weight& operator+=(const Weight& o) {
        for (const auto& [a, c] : o.c_) add(a, c);
        return *this;
    }
    Weight& operator-=(const Weight& o) {
        for (const auto& [a, c] : o.c_) add(a, -c);
        return *this;
    }
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    Weight operator-() const {
        Weight r;
        for (const auto& [a, c] : c_) r.c_[a] = -c;
        return r;
    }
    friend Weight operator*(long s, const Weight& w) {
        Weight r;
        if (s != 0)
            for (const auto& [a, c] : w.c_) r.c_[a] = s * c;
        return r;
    }

    friend bool operator==(const Weight& a, const Weight& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
    friend bool operator<(const Weight& a, const Weight& b) { return a.c_ < b.c_; }

    // (eps_a, eps_b) = delta_ab
    friend long pairing(const Weight& a, const Weight& b) {
        long s = 0;
        for (const auto& [x, c] : a.c_) s += c * b.coord(x);
        return s;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [a, c] : c_) {
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            long m = c < 0 ? -c : c;
            if (m != 1) os << m << "*";
            os << "e(" << (a % 2 == 0 ? std::to_string(a / 2) : std::to_string(a) + "/2") << ")";
            first = false;
        }
        return std::move(os).str();
    }

  private:
    std::map<int, long> c_;
};

// theta(eps_a) = -eps_{-a}, extended linearly.
inline Weight theta(const Weight& w) {
    Weight r;
    for (const auto& [a, c] : w.coords()) r.add(-a, -c);
    return r;
}

// alpha_i = eps_{i - 1/2} - eps_{i + 1/2} (doubled index i).
inline Weight simple_root(int dd_index) {
    Weight r;
    r.add(dd_index - 1, 1);
    r.add(dd_index + 1, -1);
    return r;
}

inline long height(const Weight& mu, const RankProfile& rank) {
    // mu must be in the root lattice: height = sum of simple-root coefficients.
    // Coefficient of alpha_i in mu is the partial sum of eps-coordinates left
    // of node i.
    long h = 0;
    long run = 0;
    for (int a = -rank.k; a <= rank.k - 2; a += 2) {
        run += mu.coord(a);
        h += run;
    }
    run += mu.coord(rank.k);
    if (run != 0) throw DomainError("weight is not in the root lattice");
    return h;
}

// Class of mu in Lambda_theta; canonical representative mu - theta(mu).
class ThetaWeight {
  public:
    ThetaWeight() = default;
    explicit ThetaWeight(const Weight& mu) : canon_(mu - theta(mu)) {}

    const Weight& canonical() const { return canon_; }

    friend bool operator==(const ThetaWeight& a, const ThetaWeight& b) {
        return a.canon_ == b.canon_;
    }
    friend bool operator!=(const ThetaWeight& a, const ThetaWeight& b) { return !(a == b); }
    friend bool operator<(const ThetaWeight& a, const ThetaWeight& b) {
        return a.canon_ < b.canon_;
    }

    std::string str() const { return canon_.str(); }

  private:
    Weight canon_;
};

// Length-L sequence of doubled letters.
struct LetterWord {
    std::vector<int> dd;

    LetterWord() = default;
    explicit LetterWord(std::vector<int> v) : dd(std::move(v)) {}

    size_t size() const { return dd.size(); }
    int operator[](size_t i) const { return dd[i]; }

    friend bool operator==(const LetterWord& a, const LetterWord& b) { return a.dd == b.dd; }
    friend bool operator!=(const LetterWord& a, const LetterWord& b) { return !(a == b); }
    friend bool operator<(const LetterWord& a, const LetterWord& b) { return a.dd < b.dd; }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < dd.size(); ++i) {
            if (i) s += ",";
            s += dd[i] % 2 == 0 ? std::to_string(dd[i] / 2)
                                : std::to_string(dd[i]) + "/2";
        }
        return s + ")";
    }
};

// 0^m 1^n sequence as a string of '0' (V factor) and '1' (W factor).
using BSeq = std::string;

inline void check_bseq(const BSeq& b) {
    for (char c : b)
        if (c != '0' && c != '1') throw DomainError("b-sequence must consist of '0'/'1'");
}

inline int bseq_zeros(const BSeq& b) {
    return static_cast<int>(std::count(b.begin(), b.end(), '0'));
}
inline int bseq_ones(const BSeq& b) {
    return static_cast<int>(std::count(b.begin(), b.end(), '1'));
}

// U-weight of the monomial M_f: sum_i (-1)^{b_i} eps_{f(i)}.
inline Weight u_weight(const LetterWord& f, const BSeq& b) {
    if (f.size() != b.size()) throw ShapeError("letter word and b-sequence length mismatch");
    Weight w;
    for (size_t i = 0; i < f.size(); ++i) w.add(f[i], b[i] == '0' ? 1 : -1);
    return w;
}

inline ThetaWeight theta_weight(const LetterWord& f, const BSeq& b) {
    return ThetaWeight(u_weight(f, b));
}

/*
  Bruhat orderings. Differences of the lambda^b_f all live in the position
  lattice, where the rho-shift cancels, so the cone test reduces to suffix
  sums: with d_i = (-1)^{b_i} (f(i) - g(i)),

     g <=_b f  iff  wt_i(g) = wt_i(f) and sum_{i>j} d_i <= 0 for j = 0..L-1.

  (The cone coefficients are a_j = -sum_{i>j} d_i, a_0 from the full sum.)
*/
inline bool leq_b(const LetterWord& g, const LetterWord& f, const BSeq& b) {
    if (g.size() != f.size()) throw ShapeError("leq_b: length mismatch");
    if (f.size() != b.size()) throw ShapeError("leq_b: b-sequence length mismatch");
    if (theta_weight(g, b) != theta_weight(f, b)) return false;
    long suffix = 0;
    for (size_t j = f.size(); j-- > 0;) {
        long d = static_cast<long>(f[j] - g[j]) * (b[j] == '0' ? 1 : -1);
        suffix += d;
        if (suffix > 0) return false;
    }
    return true;
}

// Pure-V ordering of Section "Bruhat orderings": b = 0^m implied.
inline bool leq_B(const LetterWord& g, const LetterWord& f) {
    return leq_b(g, f, BSeq(f.size(), '0'));
}

inline LetterWord apply_s0(const LetterWord& f) {
    LetterWord r = f;
    if (!r.dd.empty()) r.dd[0] = -r.dd[0];
    return r;
}

inline bool leq_D(const LetterWord& g, const LetterWord& f) {
    return leq_B(g, f) && leq_B(apply_s0(g), apply_s0(f));
}

// All length-L words over the alphabet, lexicographically ascending.
inline std::vector<LetterWord> all_words(const RankProfile& rank, size_t len) {
    std::vector<LetterWord> out;
    auto letters = rank.letters();
    std::vector<size_t> idx(len, 0);
    if (len == 0) {
        out.emplace_back();
        return out;
    }
    while (true) {
        LetterWord w;
        w.dd.reserve(len);
        for (size_t i = 0; i < len; ++i) w.dd.push_back(letters[idx[i]]);
        out.push_back(std::move(w));
        size_t pos = len;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < letters.size()) break;
            idx[pos] = 0;
            if (pos == 0) return out;
        }
    }
}

} // namespace ikl
