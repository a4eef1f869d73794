#pragma once

#include <map>
#include <tuple>
#include <utility>

#include "ffmzv/formal_sum.hpp"

namespace ffmzv {

// Which product identity a quasi-shuffle output witnesses, reading T for the
// tuple algebra at a fixed level d:
//   DD    T_d(a) * T_d(b)    = sum f_i T_d(u_i)
//   LtLt  T_{<d}(a)*T_{<d}(b) = sum f_i T_{<d}(u_i)
//   DLt   T_d(a) * T_{<d}(b) = sum f_i T_d(u_i)
// valid for every integer d. The empty tuple acts as the unit argument in
// all three kinds.
enum class ProductKind { DD, LtLt, DLt };

// The two quasi-shuffle algebras and the weight-preserving conversions
// between them. Everything here is formal: outputs are F_q-linear
// combinations of tuples whose numeric soundness is checked elsewhere.
//
// Results are memoized per instance; use one instance per worker thread.
class ShuffleAlgebra {
  public:
    explicit ShuffleAlgebra(const Field& F) : F_(&F) {}

    const Field& field() const { return *F_; }

    // Head-collision coefficient of the product of two depth-one power sums:
    //   S_d(s) S_d(t) = S_d(s+t) + sum_i delta(s,t,i) S_d(s+t-i, i)
    // with delta(s,t,i) = (-1)^{s-1} C(i-1,s-1) + (-1)^{t-1} C(i-1,t-1) when
    // (q-1) | i and 0 < i < s+t, and 0 otherwise.
    FqElem chen_delta(std::uint32_t s, std::uint32_t t, std::uint64_t i) const {
        const std::uint64_t q = F_->q();
        if (i == 0 || i >= static_cast<std::uint64_t>(s) + t) return F_->zero();
        if ((q - 1) != 1 && i % (q - 1) != 0) return F_->zero();
        const std::uint32_t p = F_->characteristic();
        auto signed_binom = [&](std::uint64_t top, std::uint32_t low) {
            std::uint32_t b = lucas_binomial(top, low - 1, p);
            FqElem e{b};
            return (low - 1) % 2 == 0 ? e : F_->neg(e);
        };
        return F_->add(signed_binom(i - 1, s), signed_binom(i - 1, t));
    }

    // ---- stuffle side (ell-ladder power sums) --------------------------

    FormalSum cmpl_product(const Composition& a, const Composition& b, ProductKind kind) {
        if (a.is_empty()) return FormalSum::unit(*F_, b);
        if (b.is_empty()) return FormalSum::unit(*F_, a);
        switch (kind) {
            case ProductKind::LtLt: return cmpl_ltlt(a, b);
            case ProductKind::DD:
                // T_d(a)T_d(b) = T_d(a1+b1) T_{<d}(a-) T_{<d}(b-)
                return cmpl_ltlt(a.tail(), b.tail()).prepended(Composition({a.head() + b.head()}));
            case ProductKind::DLt:
                // T_d(a)T_{<d}(b) = T_d(a1) T_{<d}(a-) T_{<d}(b)
                return cmpl_ltlt(a.tail(), b).prepended(Composition({a.head()}));
        }
        throw ContractViolation("bad product kind");
    }

    // The * product: cmpl_product with kind LtLt.
    FormalSum star(const Composition& a, const Composition& b) {
        return cmpl_product(a, b, ProductKind::LtLt);
    }

    // ---- power-sum side (monic-polynomial power sums) -------------------

    FormalSum mzv_product(const Composition& a, const Composition& b, ProductKind kind) {
        if (a.is_empty()) return FormalSum::unit(*F_, b);
        if (b.is_empty()) return FormalSum::unit(*F_, a);
        switch (kind) {
            case ProductKind::LtLt: return mzv_ltlt(a, b);
            case ProductKind::DD: return mzv_dd_body(a.head(), b.head(), mzv_ltlt(a.tail(), b.tail()));
            case ProductKind::DLt: return mzv_ltlt(a.tail(), b).prepended(Composition({a.head()}));
        }
        throw ContractViolation("bad product kind");
    }

    // ---- conversions ----------------------------------------------------

    // S_d(s) = sum_i a_i T_d(s_i) for all d >= 0, coefficients in F_q,
    // weight preserved termwise. Identity on tuples with all entries <= q.
    FormalSum mzv_to_cmpl(const Composition& s) { return convert(s, /*to_cmpl=*/true); }

    // The dual direction.
    FormalSum cmpl_to_mzv(const Composition& s) { return convert(s, /*to_cmpl=*/false); }

    // Bilinear extension of a tuple product to formal sums.
    template <typename Prod>
    FormalSum bilinear(const FormalSum& A, const FormalSum& B, Prod&& prod) {
        FormalSum out(*F_);
        for (const auto& [ca, va] : A.terms())
            for (const auto& [cb, vb] : B.terms()) out += prod(ca, cb).scaled(va * vb);
        return out;
    }

  private:
    using Key2 = std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>;

    // (a1, a-*b) + (b1, a*b-) + (a1+b1, a-*b-): the multiplicity recursion
    // induced by T_d(x)T_d(y) = T_d(x+y) at depth one.
    FormalSum cmpl_ltlt(const Composition& a, const Composition& b) {
        if (a.is_empty()) return FormalSum::unit(*F_, b);
        if (b.is_empty()) return FormalSum::unit(*F_, a);
        Key2 key = a.parts() <= b.parts() ? Key2{a.parts(), b.parts()} : Key2{b.parts(), a.parts()};
        auto it = cmpl_memo_.find(key);
        if (it != cmpl_memo_.end()) return it->second;
        FormalSum out(*F_);
        out += cmpl_ltlt(a.tail(), b).prepended(Composition({a.head()}));
        out += cmpl_ltlt(a, b.tail()).prepended(Composition({b.head()}));
        out += cmpl_ltlt(a.tail(), b.tail()).prepended(Composition({a.head() + b.head()}));
        cmpl_memo_.emplace(std::move(key), out);
        return out;
    }

    // Same recursion with the depth-one collision governed by chen_delta:
    // the collided head a1+b1 sheds correction terms (a1+b1-i, (i) * rest).
    FormalSum mzv_ltlt(const Composition& a, const Composition& b) {
        if (a.is_empty()) return FormalSum::unit(*F_, b);
        if (b.is_empty()) return FormalSum::unit(*F_, a);
        Key2 key = a.parts() <= b.parts() ? Key2{a.parts(), b.parts()} : Key2{b.parts(), a.parts()};
        auto it = mzv_memo_.find(key);
        if (it != mzv_memo_.end()) return it->second;
        FormalSum out(*F_);
        out += mzv_ltlt(a.tail(), b).prepended(Composition({a.head()}));
        out += mzv_ltlt(a, b.tail()).prepended(Composition({b.head()}));
        out += mzv_dd_body(a.head(), b.head(), mzv_ltlt(a.tail(), b.tail()));
        mzv_memo_.emplace(std::move(key), out);
        return out;
    }

    // (s+t, rest) plus the collision corrections against a formal sum of
    // "rest" tuples.
    FormalSum mzv_dd_body(std::uint32_t s, std::uint32_t t, const FormalSum& rest) {
        FormalSum out = rest.prepended(Composition({s + t}));
        const std::uint64_t q = F_->q();
        for (std::uint64_t i = q - 1 == 1 ? 1 : q - 1; i < static_cast<std::uint64_t>(s) + t; i += (q - 1 == 1 ? 1 : q - 1)) {
            FqElem delta = chen_delta(s, t, i);
            if (F_->is_zero(delta)) continue;
            // (s+t-i, (i) * rest) with the level-(<d) product
            FormalSum corr(*F_);
            Composition head{static_cast<std::uint32_t>(i)};
            for (const auto& [c, v] : rest.terms()) corr += mzv_ltlt(head, c).scaled(v);
            out += corr.prepended(Composition({static_cast<std::uint32_t>(s + t - i)})).scaled(delta);
        }
        return out;
    }

    FormalSum convert(const Composition& s, bool to_cmpl) {
        auto& memo = to_cmpl ? to_cmpl_memo_ : to_mzv_memo_;
        auto it = memo.find(s.parts());
        if (it != memo.end()) return it->second;
        FormalSum out = convert_uncached(s, to_cmpl);
        memo.emplace(s.parts(), out);
        return out;
    }

    FormalSum convert_uncached(const Composition& s, bool to_cmpl) {
        const std::uint64_t q = F_->q();
        if (s.is_empty()) return FormalSum::unit(*F_, s);
        // Entries all <= q: the two kinds of power sums coincide levelwise.
        bool small = true;
        for (auto p : s.parts())
            if (p > q) {
                small = false;
                break;
            }
        if (small) return FormalSum::unit(*F_, s);

        if (++convert_depth_ > 16u + s.weight() * s.weight()) {
            --convert_depth_;
            throw ResourceLimit("conversion recursion exceeded its bound");
        }
        struct Guard {
            std::uint64_t& d;
            ~Guard() { --d; }
        } guard{convert_depth_};

        auto prod_kind = [&](const Composition& a, const Composition& b, ProductKind k) {
            return to_cmpl ? cmpl_product(a, b, k) : mzv_product(a, b, k);
        };

        if (s.depth() >= 2) {
            // T_d(s) = T_d(s1) T_{<d}(s-): convert both factors, multiply out.
            FormalSum head = convert(Composition({s.head()}), to_cmpl);
            FormalSum rest = convert(s.tail(), to_cmpl);
            return bilinear(head, rest, [&](const Composition& a, const Composition& b) {
                return prod_kind(a, b, ProductKind::DLt);
            });
        }

        // Depth one, s = (w) with w > q.
        std::uint32_t w = s.head();
        FormalSum wm1 = convert(Composition({w - 1}), to_cmpl);
        if (to_cmpl) {
            // S_d(w) = S_d(w-1) S_d(1) - sum_i delta(w-1,1,i) S_d(w-i, i);
            // S_d(1) converts to (1) on the nose.
            FormalSum out(*F_);
            out += bilinear(wm1, FormalSum::unit(*F_, Composition({1})),
                            [&](const Composition& a, const Composition& b) {
                                return cmpl_product(a, b, ProductKind::DD);
                            });
            for (std::uint64_t i = 1; i < w; ++i) {
                FqElem delta = chen_delta(w - 1, 1, i);
                if (F_->is_zero(delta)) continue;
                Composition corr({static_cast<std::uint32_t>(w - i), static_cast<std::uint32_t>(i)});
                out += convert(corr, true).scaled(F_->neg(delta));
            }
            return out;
        }
        // T_d(w) = T_d(w-1) T_d(1), and T_d(1) = S_d(1).
        return bilinear(wm1, FormalSum::unit(*F_, Composition({1})),
                        [&](const Composition& a, const Composition& b) {
                            return mzv_product(a, b, ProductKind::DD);
                        });
    }

    const Field* F_;
    std::map<Key2, FormalSum> cmpl_memo_;
    std::map<Key2, FormalSum> mzv_memo_;
    std::map<std::vector<std::uint32_t>, FormalSum> to_cmpl_memo_;
    std::map<std::vector<std::uint32_t>, FormalSum> to_mzv_memo_;
    std::uint64_t convert_depth_ = 0;
};

}  // namespace ffmzv
