#pragma once

/*
  The b-Fock space T^b at a fixed finite rank: V^{b_1} x ... x V^{b_L}
  with V^0 = V (natural module) and V^1 = W (restricted dual), spanned by
  the standard monomials M_f indexed by letter words. FockVector is a
  sparse vector in one of these spaces; GradedOperator is a column-sparse
  linear operator on it.
*/

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "ikl/laurent.hpp"
#include "ikl/weights.hpp"

namespace ikl {

struct FockShape {
    RankProfile rank;
    BSeq b;

    FockShape(RankProfile r, BSeq bs) : rank(r), b(std::move(bs)) { check_bseq(b); }
    FockShape(int k, BSeq bs) : rank(k), b(std::move(bs)) { check_bseq(b); }

    size_t len() const { return b.size(); }
    bool is_pure_v() const { return bseq_ones(b) == 0; }
    bool is_pure_w() const { return bseq_zeros(b) == 0; }

    bool valid_word(const LetterWord& f) const {
        if (f.size() != len()) return false;
        for (int a : f.dd)
            if (!rank.is_letter(a)) return false;
        return true;
    }

    std::vector<LetterWord> basis() const { return all_words(rank, len()); }

    Weight weight_of(const LetterWord& f) const { return u_weight(f, b); }
    ThetaWeight block_of(const LetterWord& f) const { return theta_weight(f, b); }

    // Concatenation T^{b} (x) T^{b'}, same rank.
    FockShape concat(const FockShape& o) const {
        if (rank != o.rank) throw ShapeError("concat of shapes with different ranks");
        return FockShape(rank, b + o.b);
    }
    FockShape prefix(size_t n) const { return FockShape(rank, b.substr(0, n)); }
    FockShape factor(size_t i) const { return FockShape(rank, b.substr(i, 1)); }

    friend bool operator==(const FockShape& x, const FockShape& y) {
        return x.rank == y.rank && x.b == y.b;
    }
    friend bool operator!=(const FockShape& x, const FockShape& y) { return !(x == y); }
    friend bool operator<(const FockShape& x, const FockShape& y) {
        if (x.rank.k != y.rank.k) return x.rank.k < y.rank.k;
        return x.b < y.b;
    }
};

class FockVector {
  public:
    explicit FockVector(FockShape shape) : shape_(std::move(shape)) {}
    FockVector(FockShape shape, const LetterWord& f) : shape_(std::move(shape)) {
        if (!shape_.valid_word(f)) throw ShapeError("monomial word invalid for shape");
        e_[f] = LaurentPoly::one();
    }

    const FockShape& shape() const { return shape_; }
    const std::map<LetterWord, LaurentPoly>& entries() const { return e_; }
    bool is_zero() const { return e_.empty(); }

    LaurentPoly coeff(const LetterWord& f) const {
        auto it = e_.find(f);
        return it == e_.end() ? LaurentPoly::zero() : it->second;
    }

    void add(const LetterWord& f, const LaurentPoly& c) {
        if (c.is_zero()) return;
        auto [it, ins] = e_.try_emplace(f, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) e_.erase(it);
        }
    }

    FockVector& operator+=(const FockVector& o) {
        require_same_shape(o);
        for (const auto& [f, c] : o.e_) add(f, c);
        return *this;
    }
    FockVector& operator-=(const FockVector& o) {
        require_same_shape(o);
        for (const auto& [f, c] : o.e_) add(f, -c);
        return *this;
    }
    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
    FockVector operator-() const {
        FockVector r(shape_);
        for (const auto& [f, c] : e_) r.e_[f] = -c;
        return r;
    }
    friend FockVector operator*(const LaurentPoly& s, const FockVector& v) {
        FockVector r(v.shape_);
        if (!s.is_zero())
            for (const auto& [f, c] : v.e_) r.add(f, s * c);
        return r;
    }

    friend bool operator==(const FockVector& a, const FockVector& b) {
        return a.shape_ == b.shape_ && a.e_ == b.e_;
    }
    friend bool operator!=(const FockVector& a, const FockVector& b) { return !(a == b); }

    // Entrywise bar of coefficients (the factorwise bar fixes monomials).
    FockVector bar_coeffs() const {
        FockVector r(shape_);
        for (const auto& [f, c] : e_) r.e_[f] = c.bar();
        return r;
    }

    // Split into U-weight components.
    std::map<Weight, FockVector> weight_components() const {
        std::map<Weight, FockVector> out;
        for (const auto& [f, c] : e_) {
            Weight w = shape_.weight_of(f);
            auto it = out.find(w);
            if (it == out.end()) it = out.emplace(w, FockVector(shape_)).first;
            it->second.add(f, c);
        }
        return out;
    }

    std::string str() const {
        if (e_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [f, c] : e_) {
            if (!first) s += " + ";
            s += "(" + c.str() + ")*M" + f.str();
            first = false;
        }
        return s;
    }

  private:
    void require_same_shape(const FockVector& o) const {
        if (shape_ != o.shape_) throw ShapeError("Fock vectors of different shapes");
    }

    FockShape shape_;
    std::map<LetterWord, LaurentPoly> e_;
};

// Column-sparse linear operator on a Fock space. Used for the matrices of
// E, F, K, braid operators, Theta, Upsilon and the psi twists; absent
// columns are zero.
class GradedOperator {
  public:
    explicit GradedOperator(FockShape shape) : shape_(std::move(shape)) {}

    static GradedOperator identity(const FockShape& shape) {
        GradedOperator r(shape);
        for (const auto& f : shape.basis()) r.col_.emplace(f, FockVector(shape, f));
        return r;
    }

    static GradedOperator from_function(const FockShape& shape,
                                        const std::function<FockVector(const FockVector&)>& fn) {
        GradedOperator r(shape);
        for (const auto& f : shape.basis()) {
            FockVector img = fn(FockVector(shape, f));
            if (!img.is_zero()) r.col_.emplace(f, std::move(img));
        }
        return r;
    }

    const FockShape& shape() const { return shape_; }

    const FockVector column(const LetterWord& f) const {
        auto it = col_.find(f);
        return it == col_.end() ? FockVector(shape_) : it->second;
    }
    void set_column(const LetterWord& f, FockVector v) {
        if (v.is_zero()) col_.erase(f);
        else col_.insert_or_assign(f, std::move(v));
    }
    bool is_zero() const {
        for (const auto& [f, v] : col_)
            if (!v.is_zero()) return false;
        return true;
    }

    FockVector apply(const FockVector& v) const {
        if (v.shape() != shape_) throw ShapeError("operator applied to vector of wrong shape");
        FockVector out(shape_);
        for (const auto& [f, c] : v.entries()) {
            auto it = col_.find(f);
            if (it == col_.end()) continue;
            for (const auto& [g, d] : it->second.entries()) out.add(g, c * d);
        }
        return out;
    }

    // this o inner
    GradedOperator compose(const GradedOperator& inner) const {
        if (inner.shape_ != shape_) throw ShapeError("composition of operators on different shapes");
        GradedOperator r(shape_);
        for (const auto& [f, v] : inner.col_) {
            FockVector img = apply(v);
            if (!img.is_zero()) r.col_.emplace(f, std::move(img));
        }
        return r;
    }

    GradedOperator& operator+=(const GradedOperator& o) {
        for (const auto& f : shape_.basis()) {
            FockVector v = column(f) + o.column(f);
            set_column(f, std::move(v));
        }
        return *this;
    }
    GradedOperator& operator-=(const GradedOperator& o) {
        for (const auto& f : shape_.basis()) {
            FockVector v = column(f) - o.column(f);
            set_column(f, std::move(v));
        }
        return *this;
    }
    friend GradedOperator operator+(GradedOperator a, const GradedOperator& b) { return a += b; }
    friend GradedOperator operator-(GradedOperator a, const GradedOperator& b) { return a -= b; }
    friend GradedOperator operator*(const LaurentPoly& s, const GradedOperator& op) {
        GradedOperator r(op.shape_);
        if (!s.is_zero())
            for (const auto& [f, v] : op.col_) {
                FockVector sv = s * v;
                if (!sv.is_zero()) r.col_.emplace(f, std::move(sv));
            }
        return r;
    }

    friend bool operator==(const GradedOperator& a, const GradedOperator& b) {
        if (a.shape_ != b.shape_) return false;
        for (const auto& f : a.shape_.basis())
            if (a.column(f) != b.column(f)) return false;
        return true;
    }
    friend bool operator!=(const GradedOperator& a, const GradedOperator& b) { return !(a == b); }

    GradedOperator commutator(const GradedOperator& o) const {
        return compose(o) - o.compose(*this);
    }

    // Entrywise bar of matrix entries; conjugating an operator by the
    // monomial-fixing anti-linear bar does exactly this to its matrix.
    GradedOperator bar_entries() const {
        GradedOperator r(shape_);
        for (const auto& [f, v] : col_) r.col_.emplace(f, v.bar_coeffs());
        return r;
    }

    LaurentPoly entry(const LetterWord& row, const LetterWord& colw) const {
        return column(colw).coeff(row);
    }

  private:
    FockShape shape_;
    std::map<LetterWord, FockVector> col_;
};

} // namespace ikl
