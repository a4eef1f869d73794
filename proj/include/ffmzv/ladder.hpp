#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ffmzv/composition.hpp"
#include "ffmzv/rational.hpp"

namespace ffmzv {

// Exact arithmetic for values of the form  num / prod_{i>=1} L_i^{e_i},
// L_i = theta - theta^{q^i}.
//
// Every ell-ladder power sum lives in this shape (ell_d = L_1 ... L_d), and
// keeping the denominator as an exponent vector means sums need no
// polynomial gcd at all: common denominators are exponent maxima, and the
// adjustment multipliers L_i^k are (k+1)-term binomial powers, so they
// multiply into dense numerators in linear time. Zero testing is a zero
// test on the numerator. The single normalizing gcd happens only when a
// value is exported as a RationalFn.
class LadderExact {
  public:
    struct Value {
        Poly num;
        std::vector<std::int64_t> e;  // exponent of L_i at index i-1
    };

    explicit LadderExact(const Field& F) : F_(&F) {}

    const Field& field() const { return *F_; }

    Value zero() const { return {Poly::zero(*F_), {}}; }
    Value one() const { return {Poly::one(*F_), {}}; }
    Value from_poly(Poly p) const { return {std::move(p), {}}; }

    bool is_zero(const Value& v) const { return v.num.is_zero(); }

    // L_i = theta - theta^{q^i}
    const Poly& lfactor(std::size_t i) {
        while (lf_.size() < i) {
            std::uint64_t qe = 1;
            for (std::size_t k = 0; k <= lf_.size(); ++k) {
                if (qe > (1u << 26) / F_->q()) throw ResourceLimit("ladder factor degree too large");
                qe *= F_->q();
            }
            lf_.push_back(Poly::theta(*F_) - Poly::theta_pow(*F_, static_cast<std::size_t>(qe), F_->one()));
        }
        return lf_[i - 1];
    }

    const Poly& lfactor_pow(std::size_t i, std::int64_t k) {
        if (k < 0) throw ContractViolation("negative ladder exponent");
        auto key = std::make_pair(i, k);
        auto it = lpow_.find(key);
        if (it != lpow_.end()) return it->second;
        Poly p = k == 0 ? Poly::one(*F_) : lfactor(i).pow(static_cast<std::uint64_t>(k));
        return lpow_.emplace(key, std::move(p)).first->second;
    }

    // ell_d as a polynomial (product of the first d factors).
    const Poly& ell_poly(std::size_t d) {
        while (ell_.size() <= d) {
            if (ell_.empty())
                ell_.push_back(Poly::one(*F_));
            else
                ell_.push_back(ell_.back() * lfactor(ell_.size()));
        }
        return ell_[d];
    }

    Value add(const Value& a, const Value& b) {
        if (is_zero(a)) return b;
        if (is_zero(b)) return a;
        std::size_t n = std::max(a.e.size(), b.e.size());
        Value r = zero();
        r.e.assign(n, 0);
        Poly na = a.num, nb = b.num;
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t ea = i < a.e.size() ? a.e[i] : 0;
            std::int64_t eb = i < b.e.size() ? b.e[i] : 0;
            std::int64_t m = std::max(ea, eb);
            r.e[i] = m;
            if (m > ea) na = na * lfactor_pow(i + 1, m - ea);
            if (m > eb) nb = nb * lfactor_pow(i + 1, m - eb);
        }
        r.num = na + nb;
        if (r.num.is_zero()) return zero();
        return r;
    }

    Value negate(const Value& a) const { return {-a.num, a.e}; }

    Value mul(const Value& a, const Value& b) const {
        if (a.num.is_zero() || b.num.is_zero()) return {Poly::zero(*F_), {}};
        Value r{a.num * b.num, {}};
        r.e.assign(std::max(a.e.size(), b.e.size()), 0);
        for (std::size_t i = 0; i < r.e.size(); ++i)
            r.e[i] = (i < a.e.size() ? a.e[i] : 0) + (i < b.e.size() ? b.e[i] : 0);
        return r;
    }

    Value mul_poly(const Value& a, const Poly& p) const {
        if (a.num.is_zero() || p.is_zero()) return {Poly::zero(*F_), {}};
        return {a.num * p, a.e};
    }

    // Divide by ell_d^s: bump the first d exponents by s.
    Value div_ell_pow(Value a, std::size_t d, std::int64_t s) const {
        if (a.num.is_zero()) return a;
        if (a.e.size() < d) a.e.resize(d, 0);
        for (std::size_t i = 0; i < d; ++i) a.e[i] += s;
        return a;
    }

    RationalFn to_rational(const Value& v) {
        if (v.num.is_zero()) return RationalFn::zero(*F_);
        Poly den = Poly::one(*F_);
        for (std::size_t i = 0; i < v.e.size(); ++i)
            if (v.e[i] > 0) den = den * lfactor_pow(i + 1, v.e[i]);
        return RationalFn(v.num, den);
    }

    // Valuation at infinity of a nonzero value: deg of the denominator
    // monomial minus deg of the numerator.
    std::int64_t valuation(const Value& v) const {
        if (v.num.is_zero()) throw ContractViolation("valuation of zero");
        std::int64_t out = -v.num.deg();
        std::int64_t qi = 1;
        for (std::size_t i = 0; i < v.e.size(); ++i) {
            qi *= static_cast<std::int64_t>(F_->q());
            out += v.e[i] * qi;
        }
        return out;
    }

    // Leading series coefficient of a nonzero value. Each ladder factor has
    // leading coefficient -1, so the denominator contributes (-1)^{sum e_i}.
    FqElem lead_coefficient(const Value& v) const {
        if (v.num.is_zero()) throw ContractViolation("lead_coefficient of zero");
        std::int64_t parity = 0;
        for (auto e : v.e) parity += e;
        FqElem lead = v.num.lead();
        return (parity % 2) ? F_->neg(lead) : lead;
    }

  private:
    const Field* F_;
    std::vector<Poly> lf_;
    std::vector<Poly> ell_;
    std::map<std::pair<std::size_t, std::int64_t>, Poly> lpow_;
};

}  // namespace ffmzv
