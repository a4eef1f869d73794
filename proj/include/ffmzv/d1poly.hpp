#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffmzv/poly.hpp"

namespace ffmzv {

// Element of F_q[D_1], D_1 = theta^q - theta. Coefficients ascending in
// powers of D_1, no trailing zeros. Exact divisibility by D_1 is just a look
// at the constant coefficient.
class D1Poly {
  public:
    explicit D1Poly(const Field& F) : F_(&F) {}

    static D1Poly zero(const Field& F) { return D1Poly(F); }

    static D1Poly constant(const Field& F, FqElem c) {
        D1Poly r(F);
        if (!F.is_zero(c)) r.c_.push_back(c);
        return r;
    }

    static D1Poly one(const Field& F) { return constant(F, F.one()); }

    static D1Poly from_int(const Field& F, long long n) { return constant(F, F.from_int(n)); }

    static D1Poly d1(const Field& F) {
        D1Poly r(F);
        r.c_ = {F.zero(), F.one()};
        return r;
    }

    static D1Poly from_coeffs(const Field& F, std::vector<FqElem> c) {
        D1Poly r(F);
        r.c_ = std::move(c);
        r.normalize();
        return r;
    }

    const Field& field() const { return *F_; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    std::int64_t deg() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    FqElem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F_->zero(); }
    FqElem constant_coeff() const { return coeff(0); }

    friend bool operator==(const D1Poly& a, const D1Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const D1Poly& a, const D1Poly& b) { return !(a == b); }

    D1Poly operator-() const {
        D1Poly r = *this;
        for (auto& x : r.c_) x = F_->neg(x);
        return r;
    }

    friend D1Poly operator+(const D1Poly& a, const D1Poly& b) {
        const Field& F = *a.F_;
        D1Poly r(F);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), F.zero());
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F.add(a.coeff(i), b.coeff(i));
        r.normalize();
        return r;
    }

    friend D1Poly operator-(const D1Poly& a, const D1Poly& b) { return a + (-b); }

    friend D1Poly operator*(const D1Poly& a, const D1Poly& b) {
        const Field& F = *a.F_;
        if (a.is_zero() || b.is_zero()) return D1Poly(F);
        D1Poly r(F);
        r.c_.assign(a.c_.size() + b.c_.size() - 1, F.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (F.is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = F.add(r.c_[i + j], F.mul(a.c_[i], b.c_[j]));
        }
        r.normalize();
        return r;
    }

    D1Poly scaled(FqElem s) const {
        D1Poly r = *this;
        if (F_->is_zero(s)) return D1Poly(*F_);
        for (auto& x : r.c_) x = F_->mul(x, s);
        r.normalize();
        return r;
    }

    bool divisible_by_d1() const { return is_zero() || F_->is_zero(c_[0]); }

    D1Poly div_d1() const {
        if (!divisible_by_d1()) throw ContractViolation("not divisible by D_1");
        D1Poly r(*F_);
        if (c_.size() > 1) r.c_.assign(c_.begin() + 1, c_.end());
        return r;
    }

    // Substitute D_1 = theta^q - theta.
    Poly eval_theta() const {
        Poly d = d1_poly(*F_);
        Poly acc = Poly::zero(*F_);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * d + Poly::constant(*F_, c_[i]);
        return acc;
    }

    // "D1^2+D1+1" style; extension-field coefficients render as "[c0,c1]*D1^k".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (F_->is_zero(c_[i])) continue;
            if (!s.empty()) s += '+';
            bool unit = (c_[i] == F_->one());
            if (!unit || i == 0) s += elem_to_string(*F_, c_[i]);
            if (i > 0) {
                if (!unit) s += '*';
                s += "D1";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

    static D1Poly parse(const Field& F, const std::string& str) {
        if (str.empty()) throw ParseError("empty coefficient");
        if (str == "0") return zero(F);
        D1Poly r(F);
        std::size_t pos = 0;
        while (pos < str.size()) {
            std::size_t end = str.find('+', pos);
            // A '+' inside a coordinate list "[...]" is not a term separator;
            // coordinates are plain digits, so this cannot happen, but guard
            // against a '+' before ']' anyway.
            std::string term = str.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
            pos = end == std::string::npos ? str.size() : end + 1;
            if (term.empty()) throw ParseError("malformed D1 polynomial: " + str);
            std::size_t dpos = term.find("D1");
            FqElem c = F.one();
            std::size_t k = 0;
            if (dpos == std::string::npos) {
                c = elem_from_string(F, term);
            } else {
                std::string cpart = term.substr(0, dpos);
                if (!cpart.empty()) {
                    if (cpart.back() == '*') cpart.pop_back();
                    if (!cpart.empty()) c = elem_from_string(F, cpart);
                }
                std::string rest = term.substr(dpos + 2);
                if (rest.empty()) {
                    k = 1;
                } else if (rest[0] == '^') {
                    k = static_cast<std::size_t>(std::stoul(rest.substr(1)));
                } else {
                    throw ParseError("malformed D1 power: " + term);
                }
            }
            std::vector<FqElem> add(k + 1, F.zero());
            add[k] = c;
            r = r + from_coeffs(F, std::move(add));
        }
        return r;
    }

  private:
    void normalize() {
        while (!c_.empty() && F_->is_zero(c_.back())) c_.pop_back();
    }

    const Field* F_;
    std::vector<FqElem> c_;
};

}  // namespace ffmzv
