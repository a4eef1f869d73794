#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "ffmzv/poly.hpp"

namespace ffmzv {

// Element of K = F_q(theta), stored in lowest terms with monic denominator,
// so equality is structural. Addition and multiplication use the classical
// cross-gcd tricks to keep intermediate degrees down.
class RationalFn {
  public:
    explicit RationalFn(const Field& F) : num_(Poly::zero(F)), den_(Poly::one(F)) {}

    RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
        normalize();
    }

    explicit RationalFn(Poly num) : num_(std::move(num)), den_(Poly::one(num_.field())) {}

    static RationalFn zero(const Field& F) { return RationalFn(F); }
    static RationalFn one(const Field& F) { return RationalFn(Poly::one(F)); }

    const Field& field() const { return num_.field(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    // Valuation at the infinite place, v(theta) = -1. Throws on zero.
    std::int64_t v_infinity() const {
        if (is_zero()) throw ContractViolation("v_infinity of zero");
        return den_.deg() - num_.deg();
    }

    friend bool operator==(const RationalFn& a, const RationalFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFn& a, const RationalFn& b) { return !(a == b); }

    RationalFn operator-() const {
        RationalFn r(field());
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    // Canonical-preserving addition (Knuth 4.5.1); with both inputs in lowest
    // terms the single gcd against g0 = gcd of the denominators suffices.
    friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
        const Field& F = a.field();
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        Poly g0 = gcd(a.den_, b.den_);
        RationalFn r(F);
        if (g0.is_one()) {
            r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
            if (r.num_.is_zero()) return RationalFn(F);
            r.den_ = a.den_ * b.den_;
            r.make_den_monic();
            return r;
        }
        Poly ad = a.den_ / g0, bd = b.den_ / g0;
        Poly t = a.num_ * bd + b.num_ * ad;
        if (t.is_zero()) return RationalFn(F);
        Poly g1 = gcd(t, g0);
        r.num_ = g1.is_one() ? std::move(t) : t / g1;
        r.den_ = ad * (b.den_ / g1);
        r.make_den_monic();
        return r;
    }

    friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

    friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
        const Field& F = a.field();
        if (a.is_zero() || b.is_zero()) return RationalFn(F);
        Poly g1 = gcd(a.num_, b.den_);
        Poly g2 = gcd(b.num_, a.den_);
        RationalFn r(F);
        r.num_ = (g1.is_one() ? a.num_ : a.num_ / g1) * (g2.is_one() ? b.num_ : b.num_ / g2);
        r.den_ = (g2.is_one() ? a.den_ : a.den_ / g2) * (g1.is_one() ? b.den_ : b.den_ / g1);
        r.make_den_monic();
        return r;
    }

    RationalFn inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero rational function");
        RationalFn r(field());
        r.num_ = den_;
        r.den_ = num_;
        r.make_den_monic();
        return r;
    }

    friend RationalFn operator/(const RationalFn& a, const RationalFn& b) { return a * b.inverse(); }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

  private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly::one(field());
            return;
        }
        Poly g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        make_den_monic();
    }

    void make_den_monic() {
        FqElem lead = den_.lead();
        if (lead != field().one()) {
            FqElem il = field().inv(lead);
            num_ = num_.scaled(il);
            den_ = den_.scaled(il);
        }
    }

    Poly num_, den_;
};

}  // namespace ffmzv
