#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ffmzv/formal_sum.hpp"
#include "ffmzv/ladder.hpp"
#include "ffmzv/laurent.hpp"
#include "ffmzv/shuffle.hpp"

namespace ffmzv {

enum class Evaluator { Li, Zeta };

inline std::string to_string(Evaluator e) { return e == Evaluator::Li ? "li" : "zeta"; }

// Series evaluation session: computes ladder-sum series Li(s) at one fixed
// precision, memoizing the partial sums Si_{<d}(suffix) that rows of a
// relation matrix share. One session per worker thread.
class LiSession {
  public:
    LiSession(const Field& F, std::int64_t prec) : F_(&F), prec_(prec) {
        if (prec < 1) throw ContractViolation("precision must be >= 1");
    }

    std::int64_t prec() const { return prec_; }

    // Li(s) = sum_{d >= 0} Si_d(s), exact on all exponents >= -prec. Terms
    // with s_1 * deg(ell_d) > prec sit wholly below the window and are
    // dropped; deg(ell_d) is increasing in d, so the loop stops there.
    LaurentSeries li(const Composition& s) {
        if (s.is_empty()) return LaurentSeries::one(*F_, prec_);
        LaurentSeries acc = LaurentSeries::zero(*F_, prec_);
        for (int d = 0;; ++d) {
            if (d >= 1 && static_cast<std::int64_t>(s.head()) * deg_ell(d) > prec_) break;
            acc = acc + si(s, d);
        }
        return acc.truncated(prec_);
    }

    // Si_d(s) (or Si_{<d}(s)) as a series to the session window.
    LaurentSeries si(const Composition& s, std::int64_t d) {
        if (s.is_empty()) return LaurentSeries::zero(*F_, prec_);  // empty sum
        if (d < 0) return LaurentSeries::zero(*F_, prec_);
        if (d >= 1 && static_cast<std::int64_t>(s.head()) * deg_ell(static_cast<int>(d)) > prec_)
            return LaurentSeries::zero(*F_, prec_);
        return inv_ell_pow(static_cast<int>(d), s.head()) * si_lt(s.tail(), d);
    }

    LaurentSeries si_lt(const Composition& s, std::int64_t d) {
        if (s.is_empty()) return LaurentSeries::one(*F_, prec_);  // empty product
        if (d <= 0) return LaurentSeries::zero(*F_, prec_);
        auto key = std::make_pair(s.parts(), d);
        auto it = silt_memo_.find(key);
        if (it != silt_memo_.end()) return it->second;
        LaurentSeries r = si_lt(s, d - 1) + si(s, d - 1);
        silt_memo_.emplace(std::move(key), r);
        return r;
    }

  private:
    // degs_[d] = deg ell_d = sum_{i=1..d} q^i, saturated far above any
    // usable precision.
    std::int64_t deg_ell(int d) {
        constexpr std::int64_t cap = std::int64_t(1) << 40;
        if (degs_.empty()) degs_.push_back(0);
        while (static_cast<int>(degs_.size()) <= d) {
            std::int64_t qi = 1;
            for (std::size_t i = 0; i < degs_.size(); ++i) {
                if (qi > cap / static_cast<std::int64_t>(F_->q())) {
                    qi = cap;
                    break;
                }
                qi *= static_cast<std::int64_t>(F_->q());
            }
            degs_.push_back(std::min(degs_.back() + qi, cap));
        }
        return degs_[static_cast<std::size_t>(d)];
    }

    const LaurentSeries& inv_ell_pow(int d, std::uint32_t s) {
        auto key = std::make_pair(d, s);
        auto it = invell_memo_.find(key);
        if (it != invell_memo_.end()) return it->second;
        Poly den = ladder_.ell_poly(static_cast<std::size_t>(d)).pow(s);
        LaurentSeries r = LaurentSeries::from_rational(RationalFn(Poly::one(*F_), den), prec_);
        return invell_memo_.emplace(std::move(key), std::move(r)).first->second;
    }

    const Field* F_;
    std::int64_t prec_;
    std::vector<std::int64_t> degs_;
    LadderExact ladder_{*F_};
    std::map<std::pair<std::vector<std::uint32_t>, std::int64_t>, LaurentSeries> silt_memo_;
    std::map<std::pair<int, std::uint32_t>, LaurentSeries> invell_memo_;
};

// Exact and truncated evaluation of the two power-sum families and of formal
// linear combinations. Holds the memo tables; use one instance per worker.
class PowerSums {
  public:
    PowerSums(const Field& F, ShuffleAlgebra& shuffle) : F_(&F), shuffle_(&shuffle), ladder_(F) {}

    const Field& field() const { return *F_; }
    LadderExact& ladder() { return ladder_; }
    ShuffleAlgebra& shuffle() { return *shuffle_; }

    // ---- exact ladder power sums ----------------------------------------

    // Si_d(s), or Si_{<d}(s) when strict_below, as an exact value in the
    // ladder representation. Empty-window sums are 0; Si_{<d} of the empty
    // tuple is 1 for every d.
    LadderExact::Value si_exact(std::int64_t d, const Composition& s, bool strict_below) {
        if (s.is_empty()) return strict_below ? ladder_.one() : ladder_.zero();
        if (strict_below) {
            if (d <= 0) return ladder_.zero();
            auto key = std::make_tuple(d, s.parts(), true);
            auto it = si_memo_.find(key);
            if (it != si_memo_.end()) return it->second;
            LadderExact::Value acc = ladder_.zero();
            for (std::int64_t i = 0; i < d; ++i) acc = ladder_.add(acc, si_exact(i, s, false));
            si_memo_.emplace(std::move(key), acc);
            return acc;
        }
        if (d < 0) return ladder_.zero();
        if (d < static_cast<std::int64_t>(s.depth()) - 1) return ladder_.zero();
        auto key = std::make_tuple(d, s.parts(), false);
        auto it = si_memo_.find(key);
        if (it != si_memo_.end()) return it->second;
        LadderExact::Value v = ladder_.div_ell_pow(si_exact(d, s.tail(), true), static_cast<std::size_t>(d), s.head());
        si_memo_.emplace(std::move(key), v);
        return v;
    }

    RationalFn si_power_sum(std::int64_t d, const Composition& s, bool strict_below) {
        return ladder_.to_rational(si_exact(d, s, strict_below));
    }

    // ---- enumeration power sums (independent of the ladder) -------------

    // S_d(s) (or S_{<d}(s)) by direct enumeration over tuples of monic
    // polynomials with strictly decreasing degrees; per-degree sums over the
    // q^n monics of degree n are the only grouping applied. Guarded by an
    // enumeration budget of 1e6 monic polynomials per call.
    RationalFn s_power_sum_enum(std::int64_t d, const Composition& s, bool strict_below) {
        budget_ = 0;
        return s_enum_rec(d, s, strict_below);
    }

    // ---- series evaluation ----------------------------------------------

    LaurentSeries li_eval(const Composition& s, std::int64_t prec) {
        LiSession ses(*F_, prec);
        return ses.li(s);
    }

    LaurentSeries zeta_eval(const Composition& s, std::int64_t prec) {
        return eval_combination(FormalSum::unit(*F_, s), Evaluator::Zeta, prec);
    }

    // Direct-summation cross-check: sum_{d=0..prec} S_d(s), sound because
    // every monomial of S_d has valuation >= s_1 d >= d. Exponential in
    // prec; the enumeration budget applies.
    LaurentSeries zeta_eval_enum(const Composition& s, std::int64_t prec) {
        if (prec < 1) throw ContractViolation("precision must be >= 1");
        if (s.is_empty()) return LaurentSeries::one(*F_, prec);
        LaurentSeries acc = LaurentSeries::zero(*F_, prec);
        for (std::int64_t d = 0; d <= prec; ++d)
            acc = acc + LaurentSeries::from_rational(s_power_sum_enum(d, s, false), prec);
        return acc.truncated(prec);
    }

    // sum over terms of coeff(D_1 evaluated at theta^q - theta) * value.
    LaurentSeries eval_combination(const FormalSum& f, Evaluator ev, std::int64_t prec) {
        if (prec < 1) throw ContractViolation("precision must be >= 1");
        FormalSum expanded(*F_);
        if (ev == Evaluator::Zeta) {
            for (const auto& [c, v] : f.terms()) expanded += shuffle_->mzv_to_cmpl(c).scaled(v);
        } else {
            expanded = f;
        }
        // Polynomial coefficients shift content upward; evaluate the series
        // deep enough that the product is still exact at prec.
        std::int64_t maxdeg = 0;
        std::vector<std::pair<Composition, Poly>> terms;
        for (const auto& [c, v] : expanded.terms()) {
            Poly pv = v.eval_theta();
            if (pv.is_zero()) continue;
            maxdeg = std::max(maxdeg, pv.deg());
            terms.emplace_back(c, std::move(pv));
        }
        LiSession ses(*F_, prec + maxdeg);
        LaurentSeries acc = LaurentSeries::zero(*F_, prec);
        for (auto& [c, pv] : terms) {
            LaurentSeries coeff = LaurentSeries::from_poly(pv, prec + 2 * maxdeg + 1);
            acc = acc + (coeff * ses.li(c)).truncated(prec);
        }
        return acc.truncated(prec);
    }

    LaurentSeries eval_relation(const FqRelation& r, Evaluator ev, std::int64_t prec) {
        return eval_combination(r.to_formal_sum(), ev, prec);
    }

  private:
    RationalFn s_enum_rec(std::int64_t d, const Composition& s, bool strict_below) {
        if (s.is_empty()) return strict_below ? RationalFn::one(*F_) : RationalFn::zero(*F_);
        const std::int64_t r = static_cast<std::int64_t>(s.depth());
        if (strict_below && d <= 0) return RationalFn::zero(*F_);
        if (!strict_below && (d < 0 || d < r - 1)) return RationalFn::zero(*F_);
        RationalFn acc = RationalFn::zero(*F_);
        std::vector<std::int64_t> degs(static_cast<std::size_t>(r));
        auto emit = [&]() {
            RationalFn prod = RationalFn::one(*F_);
            for (std::size_t j = 0; j < degs.size(); ++j)
                prod = prod * monic_degree_sum(degs[j], s.parts()[j]);
            acc = acc + prod;
        };
        // Degree sequences d_1 > ... > d_r >= 0 with d_1 = d (non-strict) or
        // d_1 < d (strict); positions below pos still need `remaining` slots.
        auto walk = [&](auto&& self, std::size_t pos, std::int64_t hi) -> void {
            std::int64_t remaining = r - static_cast<std::int64_t>(pos);
            for (std::int64_t n = hi; n + 1 >= remaining && n >= 0; --n) {
                degs[pos] = n;
                if (pos + 1 == degs.size())
                    emit();
                else
                    self(self, pos + 1, n - 1);
            }
        };
        if (strict_below) {
            walk(walk, 0, d - 1);
        } else {
            degs[0] = d;
            if (r == 1)
                emit();
            else
                walk(walk, 1, d - 1);
        }
        return acc;
    }

    // T(n, s) = sum of a^{-s} over the q^n monic a of degree n.
    const RationalFn& monic_degree_sum(std::int64_t n, std::uint32_t s) {
        auto key = std::make_pair(n, s);
        auto it = tsum_memo_.find(key);
        if (it != tsum_memo_.end()) return it->second;
        const std::uint64_t q = F_->q();
        double count = 1;
        for (std::int64_t i = 0; i < n; ++i) count *= static_cast<double>(q);
        budget_ += count;
        if (budget_ > 1e6) throw ResourceLimit("power-sum enumeration budget exceeded");
        RationalFn acc = RationalFn::zero(*F_);
        std::vector<std::uint32_t> digits(static_cast<std::size_t>(n), 0);
        for (;;) {
            std::vector<FqElem> coeffs(static_cast<std::size_t>(n) + 1);
            for (std::int64_t i = 0; i < n; ++i) coeffs[static_cast<std::size_t>(i)] = FqElem{digits[static_cast<std::size_t>(i)]};
            coeffs[static_cast<std::size_t>(n)] = F_->one();
            Poly a = Poly::from_coeffs(*F_, std::move(coeffs));
            acc = acc + RationalFn(Poly::one(*F_), a.pow(s));
            std::size_t pos = 0;
            while (pos < digits.size()) {
                if (++digits[pos] < q) break;
                digits[pos] = 0;
                ++pos;
            }
            if (pos == digits.size()) break;
        }
        return tsum_memo_.emplace(std::move(key), std::move(acc)).first->second;
    }

    const Field* F_;
    ShuffleAlgebra* shuffle_;
    LadderExact ladder_;
    std::map<std::tuple<std::int64_t, std::vector<std::uint32_t>, bool>, LadderExact::Value> si_memo_;
    std::map<std::pair<std::int64_t, std::uint32_t>, RationalFn> tsum_memo_;
    double budget_ = 0;
};

}  // namespace ffmzv
