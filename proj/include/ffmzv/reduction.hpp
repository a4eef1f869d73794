#pragma once

#include <optional>
#include <utility>

#include "ffmzv/formal_sum.hpp"
#include "ffmzv/shuffle.hpp"

namespace ffmzv {

// A d-indexed identity: for every integer d,
//   eval(level_d at d) + eval(level_d1 at d+1) = 0
// with F_q[D_1] coefficients and both levels of one weight. A relation with
// empty level_d1 is "fixed".
struct BinaryRelation {
    FormalSum level_d;
    FormalSum level_d1;

    bool is_fixed() const { return level_d1.is_zero(); }

    std::optional<std::uint64_t> weight() const {
        if (auto w = level_d.weight()) return w;
        return level_d1.weight();
    }
};

// Outcome of the induced-relation operator: either the weight-preserving
// relation obtained from the D_1 level after the basis level cancels, or the
// nonzero basis residual certifying the input was not a genuine relation.
struct IndResult {
    bool genuine = false;
    FqRelation induced;   // meaningful when genuine (may be trivial)
    FormalSum residual;   // meaningful when !genuine
};

// The rewriting layer: the fundamental relation, the two relation operators,
// the key expression, reduction to the basis index set, the two-level
// expansion and the induced-relation operator.
class Reducer {
  public:
    Reducer(const Field& F, ShuffleAlgebra& shuffle) : F_(&F), shuffle_(&shuffle) {}

    const Field& field() const { return *F_; }

    // Si_d(q) + D_1 Si_{d+1}(1, q-1) = 0.
    BinaryRelation r1() const {
        check_q_fits();
        const std::uint32_t q = static_cast<std::uint32_t>(F_->q());
        BinaryRelation R{FormalSum(*F_), FormalSum(*F_)};
        R.level_d.add(Composition({q}), D1Poly::one(*F_));
        R.level_d1.add(Composition({1, q - 1}), D1Poly::d1(*F_));
        return R;
    }

    // B*_n: R(d) |-> Si_d(n) * sum_{j<d} R(j). Always yields a fixed
    // relation: level-d terms splice as Si_d(n, t); level-(d+1) terms use
    // Si_d(n) Si_{<d+1}(t) = Si_d(n, t) + Si_d((n) x t collided).
    BinaryRelation bstar(std::uint32_t n, const BinaryRelation& R) {
        if (n < 1 || n > F_->q()) throw ContractViolation("bstar: head must satisfy 1 <= n <= q");
        BinaryRelation out{FormalSum(*F_), FormalSum(*F_)};
        Composition head({n});
        for (const auto& [t, c] : R.level_d.terms()) out.level_d.add(concat(head, t), c);
        for (const auto& [t, c] : R.level_d1.terms()) {
            out.level_d.add(concat(head, t), c);
            out.level_d += shuffle_->cmpl_product(head, t, ProductKind::DD).scaled(c);
        }
        return out;
    }

    // C_m: R(d) |-> R(d) * Si_{<d+1}(m). Level-d terms pick up both the
    // strict and the equal-level product; level-(d+1) terms see Si_{<d+1}(m)
    // as their own strict product.
    BinaryRelation c_op(const Composition& m, const BinaryRelation& R) {
        if (m.is_empty()) throw ContractViolation("c_op: m must be nonempty");
        BinaryRelation out{FormalSum(*F_), FormalSum(*F_)};
        for (const auto& [t, c] : R.level_d.terms()) {
            out.level_d += shuffle_->cmpl_product(t, m, ProductKind::DLt).scaled(c);
            out.level_d += shuffle_->cmpl_product(t, m, ProductKind::DD).scaled(c);
        }
        for (const auto& [t, c] : R.level_d1.terms())
            out.level_d1 += shuffle_->cmpl_product(t, m, ProductKind::DLt).scaled(c);
        return out;
    }

    // The key expression of a non-basis tuple s = (n, q+r, m):
    //   Li(s) = fq_level + D_1 * d1_level
    // with
    //   fq_level = -[r != 0] (n, q, r, m)
    //   d1_level = -[n != empty] (n+, (q-1)*(r,m)) - (n, 1, (q-1)*(r,m)).
    // Every output tuple is strictly larger in (depth, lex).
    std::pair<FormalSum, FormalSum> key_expression(const Composition& s) {
        check_q_fits();
        const std::uint64_t q = F_->q();
        Decomposition dec = classify(s, q);  // throws NotReducible on basis tuples
        FormalSum fq(*F_), d1(*F_);
        if (dec.r != 0) {
            auto parts = dec.n.parts();
            parts.push_back(static_cast<std::uint32_t>(q));
            parts.push_back(dec.r);
            auto mp = dec.m.parts();
            parts.insert(parts.end(), mp.begin(), mp.end());
            fq.add(Composition(parts), F_->neg(F_->one()));
        }
        Composition rm = dec.r == 0 ? Composition() : dec.m.prepended(dec.r);
        FormalSum star = shuffle_->cmpl_product(Composition({static_cast<std::uint32_t>(q - 1)}), rm, ProductKind::LtLt);
        if (!dec.n.is_empty()) d1 += star.prepended(dec.n_plus()).scaled(F_->neg(F_->one()));
        d1 += star.prepended(Composition({1})).prepended(dec.n).scaled(F_->neg(F_->one()));
        return {std::move(fq), std::move(d1)};
    }

    // F_q[D_1]-combination over the basis index set with Li(s) = sum c_t
    // Li(t); descending induction along (depth, lex). Each non-basis tuple
    // has exactly one rewrite, so the normal form is independent of the
    // replacement order and can be memoized per tuple.
    FormalSum reduce_to_basis(const Composition& s) {
        if (s.is_empty()) return FormalSum::unit(*F_, s);
        if (in_basis(s, F_->q())) return FormalSum::unit(*F_, s);
        auto it = reduce_memo_.find(s.parts());
        if (it != reduce_memo_.end()) return it->second;
        auto [fq, d1] = key_expression(s);
        FormalSum out(*F_);
        for (const auto& [t, c] : fq.terms()) out += reduce_to_basis(t).scaled(c);
        D1Poly d1gen = D1Poly::d1(*F_);
        for (const auto& [t, c] : d1.terms()) out += reduce_to_basis(t).scaled(c * d1gen);
        reduce_memo_.emplace(s.parts(), out);
        return out;
    }

    // Reduction image of an F_q-combination: zero iff the combination is a
    // relation among the values (the "if" direction is unconditional, the
    // converse rests on the independence of the basis values).
    FormalSum reduction_image(const FqRelation& R) {
        FormalSum img(*F_);
        for (const auto& [t, a] : R.terms()) img += reduce_to_basis(t).scaled(a);
        return img;
    }

    // Two-level expansion Li(s) = basis_part + D_1 * d1_part: only the
    // F_q-level tuples are re-expanded, D_1-level tuples accumulate
    // untouched, and every coefficient stays in F_q.
    std::pair<FormalSum, FormalSum> two_level_expand(const Composition& s) {
        const std::uint64_t q = F_->q();
        if (s.is_empty() || in_basis(s, q)) throw NotReducible("two_level_expand needs a non-basis tuple");
        FormalSum work = FormalSum::unit(*F_, s);
        FormalSum basis_part(*F_), d1_part(*F_);
        for (std::size_t guard = 0;; ++guard) {
            if (guard > (1u << 22)) throw ResourceLimit("two-level expansion failed to terminate");
            const Composition* target = nullptr;
            for (const auto& [t, c] : work.terms())
                if (!in_basis(t, q)) {
                    target = &t;
                    break;
                }
            if (!target) break;
            Composition t = *target;
            D1Poly c = work.coeff(t);
            work.add(t, -c);
            auto [fq, d1] = key_expression(t);
            work += fq.scaled(c);
            d1_part += d1.scaled(c);
        }
        basis_part = std::move(work);
        if (!basis_part.fq_coefficients() || !d1_part.fq_coefficients())
            throw Error("two-level expansion left the prime-field coefficient ring");
        return {std::move(basis_part), std::move(d1_part)};
    }

    // The induced relation: substitute the two-level expansion for every
    // non-basis term of R. The accumulated basis level must vanish
    // coefficientwise (that is the formal test); if it does, the D_1 level
    // divided by D_1 is the weight-preserving induced relation, otherwise
    // the residual certifies R was not genuine.
    IndResult ind(const FqRelation& R) {
        if (R.is_trivial()) throw ContractViolation("ind: relation is trivial");
        const std::uint64_t q = F_->q();
        FqRelation N = R.normalized();
        if (in_basis(N.smallest_tuple(), q))
            throw ContractViolation("ind: smallest tuple already lies in the basis index set");
        FormalSum basis_acc(*F_), d1_acc(*F_);
        for (const auto& [t, a] : N.terms()) {
            if (in_basis(t, q)) {
                basis_acc.add(t, a);
                continue;
            }
            auto [b, d] = two_level_expand(t);
            basis_acc += b.scaled(a);
            d1_acc += d.scaled(a);
        }
        IndResult out{true, FqRelation(*F_), FormalSum(*F_)};
        if (!basis_acc.is_zero()) {
            out.genuine = false;
            out.residual = std::move(basis_acc);
            return out;
        }
        out.induced = FqRelation::from_formal_sum(d1_acc);
        return out;
    }

  private:
    void check_q_fits() const {
        if (F_->q() > 0x7fffffffull) throw ResourceLimit("q too large for tuple entries");
    }

    const Field* F_;
    ShuffleAlgebra* shuffle_;
    std::map<std::vector<std::uint32_t>, FormalSum> reduce_memo_;
};

}  // namespace ffmzv
