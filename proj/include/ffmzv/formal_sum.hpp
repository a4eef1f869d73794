#pragma once

#include <map>
#include <optional>
#include <string>

#include "ffmzv/composition.hpp"
#include "ffmzv/d1poly.hpp"

namespace ffmzv {

// Finite F_q[D_1]-linear combination of compositions, all of one weight.
// Zero coefficients are pruned on the spot and iteration is in ascending
// (depth, lex) order, so equality is structural.
class FormalSum {
  public:
    using Map = std::map<Composition, D1Poly, DepthLexLess>;

    explicit FormalSum(const Field& F) : F_(&F) {}

    static FormalSum single(const Field& F, const Composition& c, const D1Poly& coeff) {
        FormalSum s(F);
        s.add(c, coeff);
        return s;
    }

    static FormalSum unit(const Field& F, const Composition& c) {
        return single(F, c, D1Poly::one(F));
    }

    const Field& field() const { return *F_; }
    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    std::optional<std::uint64_t> weight() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first.weight();
    }

    void add(const Composition& c, const D1Poly& coeff) {
        if (coeff.is_zero()) return;
        if (!terms_.empty() && c.weight() != *weight())
            throw ContractViolation("formal sum must stay weight-homogeneous");
        auto [it, inserted] = terms_.try_emplace(c, coeff);
        if (!inserted) {
            it->second = it->second + coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add(const Composition& c, FqElem coeff) { add(c, D1Poly::constant(*F_, coeff)); }

    D1Poly coeff(const Composition& c) const {
        auto it = terms_.find(c);
        return it == terms_.end() ? D1Poly::zero(*F_) : it->second;
    }

    FormalSum& operator+=(const FormalSum& o) {
        for (const auto& [c, v] : o.terms_) add(c, v);
        return *this;
    }

    friend FormalSum operator+(FormalSum a, const FormalSum& b) {
        a += b;
        return a;
    }

    FormalSum operator-() const {
        FormalSum r(*F_);
        for (const auto& [c, v] : terms_) r.terms_.emplace(c, -v);
        return r;
    }

    friend FormalSum operator-(const FormalSum& a, const FormalSum& b) { return a + (-b); }

    FormalSum scaled(const D1Poly& s) const {
        FormalSum r(*F_);
        if (s.is_zero()) return r;
        for (const auto& [c, v] : terms_) r.add(c, v * s);
        return r;
    }

    FormalSum scaled(FqElem s) const { return scaled(D1Poly::constant(*F_, s)); }

    // (head, t) for every term t; the sum with every tuple prefixed.
    FormalSum prepended(const Composition& head) const {
        if (head.is_empty()) return *this;
        FormalSum r(*F_);
        for (const auto& [c, v] : terms_) r.terms_.emplace(concat(head, c), v);
        return r;
    }

    // True when every coefficient has D_1-degree 0.
    bool fq_coefficients() const {
        for (const auto& [c, v] : terms_)
            if (!v.is_constant()) return false;
        return true;
    }

    friend bool operator==(const FormalSum& a, const FormalSum& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const FormalSum& a, const FormalSum& b) { return !(a == b); }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [c, v] : terms_) {
            if (!s.empty()) s += " + ";
            s += "[" + v.to_string() + "]*(" + c.to_string() + ")";
        }
        return s;
    }

  private:
    const Field* F_;
    Map terms_;
};

// F_q-linear combination of same-weight tuples, the shape of a candidate or
// proven relation among the weight-w values.
class FqRelation {
  public:
    using Map = std::map<Composition, FqElem, DepthLexLess>;

    explicit FqRelation(const Field& F) : F_(&F) {}

    const Field& field() const { return *F_; }
    const Map& terms() const { return terms_; }
    bool is_trivial() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    std::optional<std::uint64_t> weight() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first.weight();
    }

    void add(const Composition& c, FqElem coeff) {
        if (F_->is_zero(coeff)) return;
        if (!terms_.empty() && c.weight() != *weight())
            throw ContractViolation("relation must stay weight-homogeneous");
        auto [it, inserted] = terms_.try_emplace(c, coeff);
        if (!inserted) {
            it->second = F_->add(it->second, coeff);
            if (F_->is_zero(it->second)) terms_.erase(it);
        }
    }

    void add_int(const Composition& c, long long n) { add(c, F_->from_int(n)); }

    FqElem coeff(const Composition& c) const {
        auto it = terms_.find(c);
        return it == terms_.end() ? F_->zero() : it->second;
    }

    // (depth, lex)-minimal tuple with nonzero coefficient.
    const Composition& smallest_tuple() const {
        if (terms_.empty()) throw ContractViolation("smallest_tuple of a trivial relation");
        return terms_.begin()->first;
    }

    FqRelation scaled(FqElem s) const {
        FqRelation r(*F_);
        if (F_->is_zero(s)) return r;
        for (const auto& [c, v] : terms_) r.terms_.emplace(c, F_->mul(v, s));
        return r;
    }

    // Scale so the smallest tuple carries coefficient 1.
    FqRelation normalized() const {
        if (terms_.empty()) return *this;
        return scaled(F_->inv(terms_.begin()->second));
    }

    FqRelation& operator+=(const FqRelation& o) {
        for (const auto& [c, v] : o.terms_) add(c, v);
        return *this;
    }

    FormalSum to_formal_sum() const {
        FormalSum s(*F_);
        for (const auto& [c, v] : terms_) s.add(c, v);
        return s;
    }

    static FqRelation from_formal_sum(const FormalSum& s) {
        if (!s.fq_coefficients()) throw ContractViolation("formal sum has coefficients of positive D_1-degree");
        FqRelation r(s.field());
        for (const auto& [c, v] : s.terms()) r.add(c, v.constant_coeff());
        return r;
    }

    // a = c * b for some nonzero scalar c.
    friend bool proportional(const FqRelation& a, const FqRelation& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        if (a.terms_.empty()) return true;
        const Field& F = *a.F_;
        auto ita = a.terms_.begin(), itb = b.terms_.begin();
        FqElem c = F.mul(ita->second, F.inv(itb->second));
        for (; ita != a.terms_.end(); ++ita, ++itb) {
            if (ita->first != itb->first) return false;
            if (ita->second != F.mul(c, itb->second)) return false;
        }
        return true;
    }

    friend bool operator==(const FqRelation& a, const FqRelation& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const FqRelation& a, const FqRelation& b) { return !(a == b); }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [c, v] : terms_) {
            if (!s.empty()) s += " + ";
            s += elem_to_string(*F_, v) + "*(" + c.to_string() + ")";
        }
        return s;
    }

  private:
    const Field* F_;
    Map terms_;
};

}  // namespace ffmzv
