#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ffmzv/rational.hpp"

namespace ffmzv {

// Truncated Laurent series at the infinite place: an element of
// F_q((1/theta)) known modulo terms of theta-exponent < -prec. Coefficients
// are stored from the leading exponent downward. The zero-to-precision
// series stores no coefficients.
//
// Precision bookkeeping is pessimistic and never extended silently:
//   add: prec = min(prec_x, prec_y)
//   mul: prec = min(prec_x + v_y, prec_y + v_x), v = valuation lower bound
// A zero series of precision N has valuation lower bound N + 1.
class LaurentSeries {
  public:
    explicit LaurentSeries(const Field& F, std::int64_t prec = 0) : F_(&F), lead_(0), prec_(prec) {}

    static LaurentSeries zero(const Field& F, std::int64_t prec) { return LaurentSeries(F, prec); }

    static LaurentSeries one(const Field& F, std::int64_t prec) {
        return from_poly(Poly::one(F), prec);
    }

    static LaurentSeries from_poly(const Poly& p, std::int64_t prec) {
        LaurentSeries s(p.field(), prec);
        if (p.is_zero() || p.deg() < -prec) return s;  // content below the window
        s.lead_ = p.deg();
        s.c_.resize(p.deg() + 1);
        for (std::int64_t i = 0; i <= p.deg(); ++i) s.c_[static_cast<std::size_t>(i)] = p.coeff(static_cast<std::size_t>(p.deg() - i));
        s.normalize();
        return s;
    }

    // Expansion of num/den in descending powers of theta, exact on all
    // exponents >= -prec.
    static LaurentSeries from_rational(const RationalFn& r, std::int64_t prec) {
        const Field& F = r.field();
        if (r.is_zero()) return zero(F, prec);
        const Poly &n = r.num(), &d = r.den();
        std::int64_t lead = n.deg() - d.deg();
        if (lead < -prec) return zero(F, prec);  // value sits below the window
        // Power-series division in u = 1/theta of the coefficient-reversed
        // polynomials; d reversed has invertible constant term.
        std::int64_t m = lead + prec + 1;  // number of u-coefficients needed
        LaurentSeries s(F, prec);
        s.lead_ = lead;
        s.c_.resize(static_cast<std::size_t>(m));
        std::size_t dn = static_cast<std::size_t>(n.deg()), dd = static_cast<std::size_t>(d.deg());
        FqElem id0 = F.inv(d.coeff(dd));
        const bool fast = F.ext_degree() == 1 && F.characteristic() <= 46340;
        std::uint64_t p = F.characteristic();
        for (std::int64_t k = 0; k < m; ++k) {
            // q_k = (n_k - sum_{j=1..k} d_j q_{k-j}) / d_0 in u-coordinates
            FqElem nk = (k <= static_cast<std::int64_t>(dn)) ? n.coeff(dn - static_cast<std::size_t>(k)) : F.zero();
            std::int64_t jmax = std::min<std::int64_t>(k, static_cast<std::int64_t>(dd));
            if (fast) {
                std::uint64_t acc = 0;
                for (std::int64_t j = 1; j <= jmax; ++j)
                    acc += static_cast<std::uint64_t>(d.coeff(dd - static_cast<std::size_t>(j)).v) * s.c_[static_cast<std::size_t>(k - j)].v;
                FqElem sum{static_cast<std::uint32_t>(acc % p)};
                s.c_[static_cast<std::size_t>(k)] = F.mul(F.sub(nk, sum), id0);
            } else {
                FqElem sum = F.zero();
                for (std::int64_t j = 1; j <= jmax; ++j)
                    sum = F.add(sum, F.mul(d.coeff(dd - static_cast<std::size_t>(j)), s.c_[static_cast<std::size_t>(k - j)]));
                s.c_[static_cast<std::size_t>(k)] = F.mul(F.sub(nk, sum), id0);
            }
        }
        s.normalize();
        return s;
    }

    const Field& field() const { return *F_; }
    bool is_zero() const { return c_.empty(); }
    std::int64_t prec() const { return prec_; }
    std::int64_t lead_exp() const {
        if (is_zero()) throw ContractViolation("lead_exp of zero series");
        return lead_;
    }

    // Lower bound on the valuation v_infinity (exact for nonzero series).
    std::int64_t valuation_bound() const { return is_zero() ? prec_ + 1 : -lead_; }

    // Coefficient of theta^e; only exponents inside the known window may be
    // asked for.
    FqElem coeff(std::int64_t e) const {
        if (e < -prec_) throw ContractViolation("coefficient below the precision window");
        if (is_zero() || e > lead_) return F_->zero();
        std::int64_t idx = lead_ - e;
        if (idx >= static_cast<std::int64_t>(c_.size())) return F_->zero();
        return c_[static_cast<std::size_t>(idx)];
    }

    LaurentSeries truncated(std::int64_t new_prec) const {
        if (new_prec > prec_) throw ContractViolation("cannot extend precision by truncation");
        LaurentSeries r(*F_, new_prec);
        if (is_zero()) return r;
        r.lead_ = lead_;
        std::int64_t keep = lead_ + new_prec + 1;
        if (keep <= 0) return r;
        r.c_.assign(c_.begin(), c_.begin() + std::min<std::int64_t>(keep, static_cast<std::int64_t>(c_.size())));
        r.normalize();
        return r;
    }

    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (auto& x : r.c_) x = F_->neg(x);
        return r;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        const Field& F = *a.F_;
        std::int64_t prec = std::min(a.prec_, b.prec_);
        if (a.is_zero()) return b.truncated(prec);
        if (b.is_zero()) return a.truncated(prec);
        std::int64_t lead = std::max(a.lead_, b.lead_);
        LaurentSeries r(F, prec);
        r.lead_ = lead;
        std::int64_t lo = -prec;
        if (lead < lo) return zero(F, prec);
        r.c_.resize(static_cast<std::size_t>(lead - lo + 1), F.zero());
        auto splat = [&](const LaurentSeries& s) {
            for (std::size_t i = 0; i < s.c_.size(); ++i) {
                std::int64_t e = s.lead_ - static_cast<std::int64_t>(i);
                if (e < lo) break;
                std::size_t idx = static_cast<std::size_t>(lead - e);
                r.c_[idx] = F.add(r.c_[idx], s.c_[i]);
            }
        };
        splat(a);
        splat(b);
        r.normalize();
        return r;
    }

    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        const Field& F = *a.F_;
        std::int64_t prec = std::min(a.prec_ + b.valuation_bound(), b.prec_ + a.valuation_bound());
        if (a.is_zero() || b.is_zero()) return zero(F, prec);
        std::int64_t lead = a.lead_ + b.lead_;
        if (lead < -prec) return zero(F, prec);
        std::size_t n = static_cast<std::size_t>(std::min<std::int64_t>(
            static_cast<std::int64_t>(a.c_.size() + b.c_.size()) - 1, lead + prec + 1));
        LaurentSeries r(F, prec);
        r.lead_ = lead;
        r.c_.resize(n);
        const bool fast = F.ext_degree() == 1 && F.characteristic() <= 46340;
        std::uint64_t p = F.characteristic();
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t ilo = k >= b.c_.size() ? k - b.c_.size() + 1 : 0;
            std::size_t ihi = std::min(k, a.c_.size() - 1);
            if (fast) {
                std::uint64_t acc = 0;
                for (std::size_t i = ilo; i <= ihi; ++i)
                    acc += static_cast<std::uint64_t>(a.c_[i].v) * b.c_[k - i].v;
                r.c_[k] = {static_cast<std::uint32_t>(acc % p)};
            } else {
                FqElem acc = F.zero();
                for (std::size_t i = ilo; i <= ihi; ++i) acc = F.add(acc, F.mul(a.c_[i], b.c_[k - i]));
                r.c_[k] = acc;
            }
        }
        r.normalize();
        return r;
    }

    LaurentSeries scaled(FqElem s) const {
        LaurentSeries r = *this;
        if (F_->is_zero(s)) {
            r.c_.clear();
            return r;
        }
        for (auto& x : r.c_) x = F_->mul(x, s);
        r.normalize();
        return r;
    }

    // Equal on every exponent >= -min(prec_a, prec_b).
    friend bool eq_to_prec(const LaurentSeries& a, const LaurentSeries& b) {
        std::int64_t lo = -std::min(a.prec_, b.prec_);
        std::int64_t hi = std::max(a.is_zero() ? lo : a.lead_, b.is_zero() ? lo : b.lead_);
        for (std::int64_t e = hi; e >= lo; --e)
            if (a.coeff_unchecked(e) != b.coeff_unchecked(e)) return false;
        return true;
    }

    bool is_zero_to_prec() const { return is_zero(); }

    std::string to_string() const {
        if (is_zero()) return "O(theta^-" + std::to_string(prec_ + 1) + ")";
        std::string s;
        int printed = 0;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (F_->is_zero(c_[i])) continue;
            std::int64_t e = lead_ - static_cast<std::int64_t>(i);
            if (!s.empty()) s += " + ";
            s += elem_to_string(*F_, c_[i]);
            if (e != 0) s += "*theta^" + std::to_string(e);
            ++printed;
        }
        s += " + O(theta^" + std::to_string(-prec_ - 1) + ")";
        return s;
    }

  private:
    FqElem coeff_unchecked(std::int64_t e) const {
        if (is_zero() || e > lead_) return F_->zero();
        std::int64_t idx = lead_ - e;
        if (idx < 0 || idx >= static_cast<std::int64_t>(c_.size())) return F_->zero();
        return c_[static_cast<std::size_t>(idx)];
    }

    void normalize() {
        // Drop anything below the window, then strip leading zeros.
        std::int64_t keep = lead_ + prec_ + 1;
        if (keep < 0) keep = 0;
        if (static_cast<std::int64_t>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
        std::size_t skip = 0;
        while (skip < c_.size() && F_->is_zero(c_[skip])) ++skip;
        if (skip) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(skip));
            lead_ -= static_cast<std::int64_t>(skip);
        }
        if (c_.empty()) lead_ = 0;
        while (!c_.empty() && F_->is_zero(c_.back())) c_.pop_back();
    }

    const Field* F_;
    std::int64_t lead_;
    std::vector<FqElem> c_;
    std::int64_t prec_;
};

inline LaurentSeries rational_to_series(const RationalFn& r, std::int64_t prec) {
    return LaurentSeries::from_rational(r, prec);
}

}  // namespace ffmzv
