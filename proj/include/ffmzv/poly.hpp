#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ffmzv/fq.hpp"

namespace ffmzv {

// Dense polynomial in theta over F_q, coefficients ascending, no trailing
// zeros. deg() of the zero polynomial is the sentinel -1.
//
// Multiplication iterates the side with fewer nonzero terms; products of the
// ell-ladder factors (theta - theta^{q^i}) and their powers are extremely
// sparse, and the evaluation pipelines lean on that.
class Poly {
  public:
    explicit Poly(const Field& F) : F_(&F) {}

    static Poly zero(const Field& F) { return Poly(F); }

    static Poly constant(const Field& F, FqElem c) {
        Poly r(F);
        if (!F.is_zero(c)) r.c_.push_back(c);
        return r;
    }

    static Poly one(const Field& F) { return constant(F, F.one()); }

    static Poly theta_pow(const Field& F, std::size_t k, FqElem c) {
        Poly r(F);
        if (!F.is_zero(c)) {
            r.c_.assign(k + 1, F.zero());
            r.c_[k] = c;
        }
        return r;
    }

    static Poly theta(const Field& F) { return theta_pow(F, 1, F.one()); }

    static Poly from_coeffs(const Field& F, std::vector<FqElem> c) {
        Poly r(F);
        r.c_ = std::move(c);
        r.normalize();
        return r;
    }

    static Poly from_ints(const Field& F, const std::vector<long long>& c) {
        std::vector<FqElem> v(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) v[i] = F.from_int(c[i]);
        return from_coeffs(F, std::move(v));
    }

    const Field& field() const { return *F_; }
    bool is_zero() const { return c_.empty(); }
    std::int64_t deg() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    std::size_t nnz() const {
        std::size_t n = 0;
        for (auto x : c_)
            if (x.v != 0) ++n;
        return n;
    }

    FqElem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F_->zero(); }
    FqElem lead() const { return c_.empty() ? F_->zero() : c_.back(); }
    const std::vector<FqElem>& coeffs() const { return c_; }

    bool is_one() const { return c_.size() == 1 && c_[0] == F_->one(); }
    bool is_constant() const { return c_.size() <= 1; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly operator-() const {
        Poly r(*F_);
        r.c_.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = F_->neg(c_[i]);
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        const Field& F = *a.F_;
        Poly r(F);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), F.zero());
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F.add(a.coeff(i), b.coeff(i));
        r.normalize();
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        const Field& F = *a.F_;
        Poly r(F);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), F.zero());
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F.sub(a.coeff(i), b.coeff(i));
        r.normalize();
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        const Field& F = *a.F_;
        if (a.is_zero() || b.is_zero()) return Poly(F);
        const Poly& sparse = a.nnz() <= b.nnz() ? a : b;
        const Poly& dense = a.nnz() <= b.nnz() ? b : a;
        std::size_t n = a.c_.size() + b.c_.size() - 1;
        if (F.ext_degree() == 1 && F.characteristic() <= 46340) {
            // Delayed reduction: each addend < p^2 <= 2^31, and the number of
            // addends per slot is far below 2^32, so uint64 never overflows.
            std::vector<std::uint64_t> acc(n, 0);
            for (std::size_t i = 0; i < sparse.c_.size(); ++i) {
                std::uint64_t s = sparse.c_[i].v;
                if (s == 0) continue;
                for (std::size_t j = 0; j < dense.c_.size(); ++j) acc[i + j] += s * dense.c_[j].v;
            }
            std::uint32_t p = F.characteristic();
            Poly r(F);
            r.c_.resize(n);
            for (std::size_t k = 0; k < n; ++k) r.c_[k] = {static_cast<std::uint32_t>(acc[k] % p)};
            r.normalize();
            return r;
        }
        Poly r(F);
        r.c_.assign(n, F.zero());
        for (std::size_t i = 0; i < sparse.c_.size(); ++i) {
            FqElem s = sparse.c_[i];
            if (F.is_zero(s)) continue;
            for (std::size_t j = 0; j < dense.c_.size(); ++j)
                r.c_[i + j] = F.add(r.c_[i + j], F.mul(s, dense.c_[j]));
        }
        r.normalize();
        return r;
    }

    Poly scaled(FqElem s) const {
        const Field& F = *F_;
        if (F.is_zero(s)) return Poly(F);
        Poly r(F);
        r.c_.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = F.mul(c_[i], s);
        r.normalize();
        return r;
    }

    Poly shifted(std::size_t k) const {  // multiply by theta^k
        if (is_zero() || k == 0) return *this;
        Poly r(*F_);
        r.c_.assign(c_.size() + k, F_->zero());
        std::copy(c_.begin(), c_.end(), r.c_.begin() + static_cast<std::ptrdiff_t>(k));
        return r;
    }

    Poly pow(std::uint64_t n) const {
        Poly r = one(*F_), x = *this;
        while (n) {
            if (n & 1) r = r * x;
            if (n >>= 1) x = x * x;
        }
        return r;
    }

    // Quotient and remainder by a nonzero divisor.
    friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        const Field& F = *a.F_;
        if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
        if (a.deg() < b.deg()) return {Poly(F), a};
        FqElem ilead = F.inv(b.lead());
        std::vector<FqElem> rem = a.c_;
        std::size_t db = b.c_.size() - 1;
        std::vector<FqElem> quo(rem.size() - db, F.zero());
        for (std::size_t k = rem.size(); k-- > db;) {
            FqElem c = rem[k];
            if (F.is_zero(c)) continue;
            FqElem f = F.mul(c, ilead);
            quo[k - db] = f;
            for (std::size_t i = 0; i <= db; ++i) rem[k - db + i] = F.sub(rem[k - db + i], F.mul(f, b.c_[i]));
        }
        return {from_coeffs(F, std::move(quo)), from_coeffs(F, std::move(rem))};
    }

    friend Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(F_->inv(lead()));
    }

    // Monic gcd.
    friend Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    std::string to_string(const std::string& var = "theta") const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (F_->is_zero(c_[i])) continue;
            if (!s.empty()) s += "+";
            bool unit = (c_[i] == F_->one());
            if (!unit || i == 0) s += elem_to_string(*F_, c_[i]);
            if (i > 0) {
                if (!unit) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

  private:
    void normalize() {
        while (!c_.empty() && F_->is_zero(c_.back())) c_.pop_back();
    }

    const Field* F_;
    std::vector<FqElem> c_;
};

// D_1 = theta^q - theta.
inline Poly d1_poly(const Field& F) {
    if (F.q() > (1u << 26)) throw ResourceLimit("q too large for explicit D_1");
    Poly t = Poly::theta(F);
    return Poly::theta_pow(F, static_cast<std::size_t>(F.q()), F.one()) - t;
}

// ell_d = prod_{i=1..d} (theta - theta^{q^i}); ell_0 = 1. As a product of d
// binomials it has at most 2^d nonzero terms.
inline Poly ell(const Field& F, int d) {
    if (d < 0) throw ContractViolation("ell: d must be >= 0");
    Poly r = Poly::one(F);
    std::uint64_t qi = 1;
    for (int i = 1; i <= d; ++i) {
        if (qi > (1u << 26) / F.q()) throw ResourceLimit("ell degree too large");
        qi *= F.q();
        Poly factor = Poly::theta(F) - Poly::theta_pow(F, static_cast<std::size_t>(qi), F.one());
        r = r * factor;
    }
    return r;
}

}  // namespace ffmzv
