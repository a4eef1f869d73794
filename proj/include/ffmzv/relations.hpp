#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ffmzv/power_sums.hpp"
#include "ffmzv/reduction.hpp"

namespace ffmzv {

// Exact valuation at infinity of the ladder value of a nonempty tuple: the
// d = depth-1 term is the unique minimal-valuation contribution, a single
// product of inverse ladder factors, so
//   v(s) = sum_j s_j * deg(ell_{r-j}).
// This never cancels (the leading coefficient is a sign), which makes
// valuations usable as exact side information next to truncated series.
inline std::int64_t li_row_valuation(const Composition& s, std::uint64_t q) {
    const auto& p = s.parts();
    std::size_t r = p.size();
    std::vector<std::int64_t> D{0};
    std::int64_t qi = 1;
    while (D.size() < r) {
        qi *= static_cast<std::int64_t>(q);
        if (qi < 0 || D.back() > (std::int64_t(1) << 58)) throw ResourceLimit("valuation overflow");
        D.push_back(D.back() + qi);
    }
    std::int64_t v = 0;
    for (std::size_t j = 0; j < r; ++j) v += static_cast<std::int64_t>(p[j]) * D[r - 1 - j];
    return v;
}

// Coefficient matrix of the weight-w values: one row per composition of w in
// ascending (depth, lex) order, one column per theta-exponent from -w down
// to -prec. An F_q-relation among the values is a left kernel vector of the
// untruncated matrix, so computed kernel vectors are candidates, while an
// empty kernel proves independence: dropping columns only enlarges the
// kernel.
struct RelationMatrix {
    std::uint32_t w = 0;
    std::int64_t prec = 0;
    Evaluator evaluator = Evaluator::Li;
    std::vector<Composition> rows;
    std::size_t cols = 0;
    std::vector<FqElem> a;  // row-major

    FqElem at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

struct KernelReport {
    std::uint64_t q = 0;
    std::uint32_t w = 0;
    Evaluator evaluator = Evaluator::Li;
    std::vector<std::int64_t> precision_rounds;
    std::size_t kernel_dim = 0;
    std::vector<FqRelation> kernel_vectors;
    std::string status;  // independent | unique_relation | inconclusive
    std::string note;
};

struct BinaryCheck {
    bool ok = true;
    std::int64_t first_failure = 0;  // meaningful when !ok
};

enum class TheoremFlavor { Cmpl9, Mzv12 };

// Relation discovery and the explicit weight-(2q+1) identities.
class RelationFinder {
  public:
    RelationFinder(const Field& F, ShuffleAlgebra& shuffle, PowerSums& power, Reducer& reducer)
        : F_(&F), shuffle_(&shuffle), power_(&power), reducer_(&reducer) {}

    // ---- matrix and kernel ----------------------------------------------

    RelationMatrix relation_matrix(std::uint32_t w, std::int64_t prec, Evaluator ev, unsigned jobs = 1) {
        if (w < 1) throw ContractViolation("relation_matrix: w >= 1");
        if (prec < static_cast<std::int64_t>(w) + (std::int64_t(1) << (w - 1)))
            throw ContractViolation("relation_matrix: prec too small to reach full rank");
        std::vector<Composition> rows = enumerate_compositions(w);
        std::vector<std::size_t> all(rows.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return matrix_for_rows(w, prec, ev, rows, all, jobs);
    }

    // Basis of the left null space {v : v M = 0}, each vector repackaged as
    // a relation over the row tuples. Deterministic pivoting in ascending
    // row order.
    std::vector<FqRelation> kernel(const RelationMatrix& M) const {
        auto vecs = left_null_space(M.a, M.rows.size(), M.cols);
        std::vector<FqRelation> basis;
        basis.reserve(vecs.size());
        for (const auto& v : vecs) {
            FqRelation rel(*F_);
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!F_->is_zero(v[j])) rel.add(M.rows[j], v[j]);
            basis.push_back(std::move(rel));
        }
        return basis;
    }

    // Precision-escalation driver.
    //
    // Per round, with window precision P:
    //   - rows whose exact valuation exceeds P are handled on the side:
    //     their valuations are pairwise distinct except for small
    //     equal-valuation packets, which exact ladder arithmetic separates,
    //     so no combination of them can vanish;
    //   - the remaining (shallow) rows enter the dense window kernel, whose
    //     vectors are relation candidates;
    //   - every candidate is checked formally: its reduction image onto the
    //     basis index set vanishes iff it is an actual relation (the "if"
    //     direction is unconditional).
    // When every candidate verifies, the reported kernel is the true kernel
    // and the run stops; otherwise the next precision jumps past the exact
    // valuation of an unverified candidate's value, which removes it.
    KernelReport find_relations(std::uint32_t w, Evaluator ev = Evaluator::Li, unsigned jobs = 1) {
        if (w < 1) throw ContractViolation("find_relations: w >= 1");
        if (w > 24) throw ResourceLimit("find_relations: weight too large");
        if (ev == Evaluator::Zeta) return find_relations_zeta(w, jobs);

        KernelReport rep;
        rep.q = F_->q();
        rep.w = w;
        rep.evaluator = ev;
        const std::int64_t P0 = static_cast<std::int64_t>(w) + (std::int64_t(1) << (w - 1)) + 16;

        std::vector<Composition> rows = enumerate_compositions(w);
        std::vector<std::int64_t> vs(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) vs[i] = li_row_valuation(rows[i], F_->q());

        std::vector<FqRelation> verified;
        std::int64_t P = P0;
        bool exact = false;
        for (int round = 0; round < 5 && !exact; ++round) {
            rep.precision_rounds.push_back(P);
            // Shallow rows have their leading exponent inside the window; any
            // combination of deep rows has valuation > P, which is what lets
            // the two parts be treated separately.
            std::vector<std::size_t> shallow, deep;
            for (std::size_t i = 0; i < rows.size(); ++i)
                (vs[i] <= P ? shallow : deep).push_back(i);
            if (!deep_part_separated(rows, vs, deep)) {
                rep.status = "inconclusive";
                rep.note = "equal-valuation rows beyond the window could not be separated";
                return rep;
            }
            RelationMatrix M = matrix_for_rows(w, P, ev, rows, shallow, jobs);
            auto null_vecs = left_null_space(M.a, M.rows.size(), M.cols);
            std::vector<FqRelation> candidates;
            for (const auto& nv : null_vecs) {
                FqRelation rel(*F_);
                for (std::size_t j = 0; j < nv.size(); ++j)
                    if (!F_->is_zero(nv[j])) rel.add(M.rows[j], nv[j]);
                candidates.push_back(std::move(rel));
            }
            std::int64_t escalate_to = 2 * P;
            verified.clear();
            std::size_t unverified = 0;
            for (auto& cand : candidates) {
                FormalSum img = reducer_->reduction_image(cand);
                if (img.is_zero()) {
                    verified.push_back(std::move(cand));
                } else {
                    ++unverified;
                    if (auto v = exact_combo_valuation(img))
                        escalate_to = std::max(escalate_to, *v + static_cast<std::int64_t>(w) + 8);
                    else
                        escalate_to = std::max(escalate_to, 4 * P);
                }
            }
            if (unverified == 0) {
                exact = true;  // candidates all verified: kernel is exact
                break;
            }
            P = escalate_to;
        }
        rep.kernel_dim = verified.size();
        rep.kernel_vectors = std::move(verified);
        if (!exact) {
            rep.status = "inconclusive";
            rep.note = "unverified kernel candidates remained after the precision rounds";
        } else if (rep.kernel_dim == 0) {
            rep.status = "independent";
            rep.note = "empty kernel at finite precision proves independence";
        } else if (rep.kernel_dim == 1) {
            rep.status = "unique_relation";
            rep.note = "kernel generator verified formally by reduction to the basis index set";
        } else {
            rep.status = "inconclusive";
            rep.note = "kernel of dimension > 1";
        }
        return rep;
    }

    // ---- the explicit weight-(2q+1) identities ---------------------------

    // The nine-term ladder-value relation and the twelve-term power-sum
    // relation; integer coefficients reduce into F_q and duplicate tuples
    // merge (several collapse at small q).
    FqRelation theorem_a_relation(TheoremFlavor flavor) const {
        if (F_->q() < 2 || F_->q() > 0x7fffffffull) throw ContractViolation("q out of range");
        const std::uint32_t q = static_cast<std::uint32_t>(F_->q());
        FqRelation rel(*F_);
        auto add = [&](std::initializer_list<std::uint32_t> parts, long long c) {
            rel.add_int(Composition(std::vector<std::uint32_t>(parts)), c);
        };
        if (flavor == TheoremFlavor::Cmpl9) {
            add({q + 2, q - 1}, 1);
            add({q, 2, q - 1}, 1);
            add({1, q, q}, -1);
            add({1, 1, 2 * q - 1}, -1);
            add({1, 1, q, q - 1}, -1);
            add({1, q - 1, 1, q}, -1);
            add({q + 1, 1, q - 1}, 1);
            add({q, 1, 1, q - 1}, 1);
            add({1, 1, q - 1, q}, -1);
        } else {
            add({q + 2, q - 1}, 1);
            add({3, 2 * q - 2}, 2);
            add({q, 2, q - 1}, 1);
            add({1, q, q}, -1);
            add({1, 1, 2 * q - 1}, -1);
            add({1, q - 1, 1, q}, -1);
            add({q + 1, 1, q - 1}, 1);
            add({2, q - 1, 1, q - 1}, 1);
            add({2, q, q - 1}, 1);
            add({2, 1, 2 * q - 2}, 1);
            add({q, 1, 1, q - 1}, 1);
            add({1, 1, q - 1, q}, -1);
        }
        return rel;
    }

    // The binary relation behind the nine-term identity: four level-d terms
    // and five level-(d+1) terms.
    BinaryRelation theorem_a_binary() const {
        const std::uint32_t q = static_cast<std::uint32_t>(F_->q());
        BinaryRelation B{FormalSum(*F_), FormalSum(*F_)};
        auto addd = [&](std::initializer_list<std::uint32_t> parts, long long c) {
            B.level_d.add(Composition(std::vector<std::uint32_t>(parts)), D1Poly::from_int(*F_, c));
        };
        auto addd1 = [&](std::initializer_list<std::uint32_t> parts, long long c) {
            B.level_d1.add(Composition(std::vector<std::uint32_t>(parts)), D1Poly::from_int(*F_, c));
        };
        addd({q + 2, q - 1}, 1);
        addd({q, 2, q - 1}, 1);
        addd({q + 1, 1, q - 1}, 1);
        addd({q, 1, 1, q - 1}, 1);
        addd1({1, q, q}, -1);
        addd1({1, 1, 2 * q - 1}, -1);
        addd1({1, 1, q, q - 1}, -1);
        addd1({1, q - 1, 1, q}, -1);
        addd1({1, 1, q - 1, q}, -1);
        return B;
    }

    // Exact check of the semantic contract of a binary relation on a finite
    // d-interval. Runs in the ladder representation, so no polynomial gcd
    // is ever taken.
    BinaryCheck verify_binary(const BinaryRelation& B, std::int64_t d_lo, std::int64_t d_hi) {
        if (d_lo > d_hi) throw ContractViolation("verify_binary: empty d-range");
        LadderExact& L = power_->ladder();
        for (std::int64_t d = d_lo; d <= d_hi; ++d) {
            LadderExact::Value total = L.zero();
            for (const auto& [t, c] : B.level_d.terms())
                total = L.add(total, L.mul_poly(power_->si_exact(d, t, false), c.eval_theta()));
            for (const auto& [t, c] : B.level_d1.terms())
                total = L.add(total, L.mul_poly(power_->si_exact(d + 1, t, false), c.eval_theta()));
            if (!L.is_zero(total)) return {false, d};
        }
        return {true, 0};
    }

    // The two formal sums whose vanishing collapses the D_1 level of the
    // nine-term relation. Both must be identically zero.
    bool cancellation_check() {
        const std::uint32_t q = static_cast<std::uint32_t>(F_->q());
        auto C = [](std::initializer_list<std::uint32_t> parts) {
            return Composition(std::vector<std::uint32_t>(parts));
        };
        auto star = [&](const Composition& a, const Composition& b) {
            return shuffle_->cmpl_product(a, b, ProductKind::LtLt);
        };
        const FqElem minus = F_->neg(F_->one());
        FormalSum s1(*F_);
        s1 += star(C({q - 1}), C({2, q - 1})).scaled(minus);
        s1 += FormalSum::unit(*F_, C({q + 1, q - 1}));
        s1 += star(C({q - 1}), C({q - 1})).prepended(C({2}));
        s1 += FormalSum::unit(*F_, C({q - 1, 2, q - 1}));
        FormalSum s2(*F_);
        s2 += FormalSum::unit(*F_, C({q, 1, q - 1}));
        s2 += star(C({q - 1}), C({q - 1})).prepended(C({1, 1}));
        s2 += FormalSum::unit(*F_, C({q - 1, 1, 1, q - 1}));
        s2 += star(C({q - 1}), C({1, 1, q - 1})).scaled(minus);
        s2 += FormalSum::unit(*F_, C({1, q, q - 1}));
        s2 += FormalSum::unit(*F_, C({1, q - 1, 1, q - 1}));
        return s1.is_zero() && s2.is_zero();
    }

  private:
    std::int64_t deg_ell_int(int d) const {
        std::int64_t acc = 0, qi = 1;
        for (int i = 1; i <= d; ++i) {
            if (qi > (std::int64_t(1) << 40)) return std::int64_t(1) << 40;
            qi *= static_cast<std::int64_t>(F_->q());
            acc += qi;
        }
        return acc;
    }

    // Exact valuation of the value of a nonzero F_q[D_1]-combination of
    // tuple values, via ladder partial sums whose omitted tails are bounded
    // away from the reported leading exponent. Gives up (nullopt) if the
    // required cap grows out of desk range.
    std::optional<std::int64_t> exact_combo_valuation(const FormalSum& img) {
        if (img.is_zero()) return std::nullopt;
        LadderExact& L = power_->ladder();
        std::vector<std::pair<Composition, Poly>> terms;
        std::int64_t maxdeg = 0, minv = std::int64_t(1) << 60;
        for (const auto& [t, c] : img.terms()) {
            Poly pc = c.eval_theta();
            if (pc.is_zero()) continue;
            maxdeg = std::max(maxdeg, pc.deg());
            minv = std::min(minv, li_row_valuation(t, F_->q()) - pc.deg());
            terms.emplace_back(t, std::move(pc));
        }
        if (terms.empty()) return std::nullopt;
        std::int64_t w2 = img.weight() ? static_cast<std::int64_t>(*img.weight()) : 1;
        std::int64_t cap = minv + maxdeg + 2 * w2 + 32;
        for (int attempt = 0; attempt < 10; ++attempt, cap *= 2) {
            if (cap > (std::int64_t(1) << 21)) return std::nullopt;
            LadderExact::Value acc = L.zero();
            for (const auto& [t, pc] : terms) {
                for (int d = 0;; ++d) {
                    if (d >= 1 && static_cast<std::int64_t>(t.head()) * deg_ell_int(d) > cap) break;
                    acc = L.add(acc, L.mul_poly(power_->si_exact(d, t, false), pc));
                }
            }
            if (!L.is_zero(acc)) {
                std::int64_t v = L.valuation(acc);
                if (v + 1 < cap - maxdeg) return v;
            }
        }
        return std::nullopt;
    }

    // Dense window matrix over a subset of the rows.
    RelationMatrix matrix_for_rows(std::uint32_t w, std::int64_t prec, Evaluator ev,
                                   const std::vector<Composition>& all_rows,
                                   const std::vector<std::size_t>& subset, unsigned jobs) {
        RelationMatrix M;
        M.w = w;
        M.prec = prec;
        M.evaluator = ev;
        M.rows.reserve(subset.size());
        for (auto i : subset) M.rows.push_back(all_rows[i]);
        M.cols = static_cast<std::size_t>(prec - w + 1);
        M.a.assign(M.rows.size() * M.cols, F_->zero());

        // Conversions run up front on this thread; workers only touch series
        // state they own.
        std::vector<std::vector<std::pair<Composition, FqElem>>> recipes(M.rows.size());
        for (std::size_t i = 0; i < M.rows.size(); ++i) {
            if (ev == Evaluator::Li) {
                recipes[i] = {{M.rows[i], F_->one()}};
            } else {
                FormalSum conv = shuffle_->mzv_to_cmpl(M.rows[i]);
                for (const auto& [c, v] : conv.terms()) recipes[i].emplace_back(c, v.constant_coeff());
            }
        }

        auto run_block = [&](std::size_t lo, std::size_t hi) {
            LiSession ses(*F_, prec);
            for (std::size_t i = lo; i < hi; ++i) {
                LaurentSeries acc = LaurentSeries::zero(*F_, prec);
                for (const auto& [c, v] : recipes[i]) acc = acc + ses.li(c).scaled(v);
                acc = acc.truncated(prec);
                for (std::size_t j = 0; j < M.cols; ++j)
                    M.a[i * M.cols + j] = acc.coeff(-static_cast<std::int64_t>(w) - static_cast<std::int64_t>(j));
            }
        };
        if (jobs <= 1 || M.rows.size() < 2 * jobs) {
            run_block(0, M.rows.size());
        } else {
            std::vector<std::thread> pool;
            std::size_t per = (M.rows.size() + jobs - 1) / jobs;
            for (unsigned t = 0; t < jobs; ++t) {
                std::size_t lo = t * per, hi = std::min(M.rows.size(), lo + per);
                if (lo >= hi) break;
                pool.emplace_back(run_block, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
        return M;
    }

    // Forward elimination over F_q; returns a basis of {v : v A = 0} for a
    // row-major nrows x ncols matrix.
    std::vector<std::vector<FqElem>> left_null_space(const std::vector<FqElem>& A, std::size_t nrows,
                                                     std::size_t ncols) const {
        const Field& F = *F_;
        const std::size_t n = nrows, m = ncols;
        std::vector<FqElem> T(m * n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) T[i * n + j] = A[j * ncols + i];
        std::vector<std::size_t> pivot_col;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < n && rank < m; ++col) {
            std::size_t sel = rank;
            while (sel < m && F.is_zero(T[sel * n + col])) ++sel;
            if (sel == m) continue;
            if (sel != rank)
                for (std::size_t j = col; j < n; ++j) std::swap(T[sel * n + j], T[rank * n + j]);
            FqElem ip = F.inv(T[rank * n + col]);
            for (std::size_t j = col; j < n; ++j) T[rank * n + j] = F.mul(T[rank * n + j], ip);
            for (std::size_t r = rank + 1; r < m; ++r) {
                FqElem f = T[r * n + col];
                if (F.is_zero(f)) continue;
                FqElem nf = F.neg(f);
                for (std::size_t j = col; j < n; ++j)
                    T[r * n + j] = F.add(T[r * n + j], F.mul(nf, T[rank * n + j]));
            }
            pivot_col.push_back(col);
            ++rank;
        }
        std::vector<bool> is_pivot(n, false);
        for (auto c : pivot_col) is_pivot[c] = true;
        std::vector<std::vector<FqElem>> basis;
        for (std::size_t f = 0; f < n; ++f) {
            if (is_pivot[f]) continue;
            std::vector<FqElem> v(n, F.zero());
            v[f] = F.one();
            for (std::size_t i = pivot_col.size(); i-- > 0;) {
                std::size_t c = pivot_col[i];
                FqElem acc = F.zero();
                for (std::size_t j = c + 1; j < n; ++j)
                    if (!F.is_zero(v[j])) acc = F.add(acc, F.mul(T[i * n + j], v[j]));
                v[c] = F.neg(acc);
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Exact separation of the rows living below the window. Valuations are
    // pairwise distinct outside small equal-valuation packets; packets are
    // eliminated with exact ladder partial sums whose omitted tails are
    // bounded away, so every leading exponent found here is exact. True by
    // a standard ultrametric argument: once all leading exponents are
    // distinct, no nonzero F_q-combination of these rows can vanish.
    bool deep_part_separated(const std::vector<Composition>& rows, const std::vector<std::int64_t>& vs,
                             const std::vector<std::size_t>& deep) {
        if (deep.size() < 2) return true;
        LadderExact& L = power_->ladder();

        struct Item {
            std::map<std::size_t, FqElem> combo;  // over row indices
            std::int64_t v;                       // current exact leading exponent (negated valuation)
        };
        // Lazy agenda keyed by current valuation.
        std::map<std::int64_t, std::vector<Item>> agenda;
        for (auto i : deep) agenda[vs[i]].push_back({{{i, F_->one()}}, vs[i]});

        // Exact partial sum of a combination, valid strictly above `cap`.
        auto materialize = [&](const Item& it, std::int64_t cap) {
            LadderExact::Value acc = L.zero();
            for (const auto& [idx, coeff] : it.combo) {
                const Composition& s = rows[idx];
                for (int d = 0;; ++d) {
                    if (d >= 1 && static_cast<std::int64_t>(s.head()) * deg_ell_int(d) > cap) break;
                    acc = L.add(acc, L.mul_poly(power_->si_exact(d, s, false), Poly::constant(*F_, coeff)));
                }
            }
            return acc;
        };

        std::size_t guard = 0;
        while (!agenda.empty()) {
            if (++guard > 4096) return false;
            auto it0 = agenda.begin();
            std::int64_t v = it0->first;
            std::vector<Item> packet = std::move(it0->second);
            agenda.erase(it0);
            if (packet.size() == 1) continue;  // unique leading exponent: resolved
            // Eliminate the packet against its first member at escalating caps.
            std::int64_t cap = v + 2 * static_cast<std::int64_t>(rows[0].weight()) + 32;
            bool done = false;
            for (int attempt = 0; attempt < 6 && !done; ++attempt, cap *= 2) {
                LadderExact::Value pv = materialize(packet[0], cap);
                if (L.is_zero(pv) || L.valuation(pv) != v) continue;  // cap too tight
                FqElem plead = L.lead_coefficient(pv);
                bool retry = false;
                std::vector<std::pair<std::int64_t, Item>> produced;
                for (std::size_t k = 1; k < packet.size() && !retry; ++k) {
                    LadderExact::Value xv = materialize(packet[k], cap);
                    if (L.is_zero(xv) || L.valuation(xv) != v) {
                        retry = true;
                        break;
                    }
                    FqElem c = F_->neg(F_->mul(L.lead_coefficient(xv), F_->inv(plead)));
                    LadderExact::Value res = L.add(xv, L.mul_poly(pv, Poly::constant(*F_, c)));
                    Item ni;
                    ni.combo = packet[k].combo;
                    for (const auto& [idx, co] : packet[0].combo) {
                        FqElem merged = F_->add(ni.combo.count(idx) ? ni.combo[idx] : F_->zero(), F_->mul(c, co));
                        if (F_->is_zero(merged))
                            ni.combo.erase(idx);
                        else
                            ni.combo[idx] = merged;
                    }
                    if (L.is_zero(res)) {
                        retry = true;  // cancels through the whole cap window: need a deeper cap
                        break;
                    }
                    std::int64_t nv = L.valuation(res);
                    if (nv + 8 > cap) {
                        retry = true;  // too close to the omitted tail to trust
                        break;
                    }
                    ni.v = nv;
                    produced.emplace_back(nv, std::move(ni));
                }
                if (retry) continue;
                agenda[v].push_back(packet[0]);  // keeps its pivot slot, now alone
                for (auto& [nv, ni] : produced) agenda[nv].push_back(std::move(ni));
                done = true;
            }
            if (!done) return false;
        }
        return true;
    }

    // The power-sum-side kernel follows from the ladder-side kernel by the
    // exact change of basis: row values satisfy zeta(t) = sum_u C[t][u]
    // Li(u) with C the conversion matrix, so v is a zeta-kernel vector iff
    // v C lies in the ladder kernel.
    KernelReport find_relations_zeta(std::uint32_t w, unsigned jobs) {
        KernelReport li_rep = find_relations(w, Evaluator::Li, jobs);
        KernelReport rep;
        rep.q = F_->q();
        rep.w = w;
        rep.evaluator = Evaluator::Zeta;
        rep.precision_rounds = li_rep.precision_rounds;
        if (li_rep.status == "inconclusive") {
            rep.status = "inconclusive";
            rep.note = "underlying ladder-side kernel was inconclusive";
            return rep;
        }
        std::vector<Composition> rows = enumerate_compositions(w);
        const std::size_t n = rows.size();
        std::map<Composition, std::size_t, DepthLexLess> index;
        for (std::size_t i = 0; i < n; ++i) index.emplace(rows[i], i);
        const std::size_t dimk = li_rep.kernel_vectors.size();
        // Stack C over the ladder kernel basis; left kernel vectors (v, c)
        // satisfy v C = c K, and v is then a zeta-kernel vector.
        std::vector<FqElem> stack((n + dimk) * n, F_->zero());
        for (std::size_t i = 0; i < n; ++i) {
            FormalSum conv = shuffle_->mzv_to_cmpl(rows[i]);
            for (const auto& [c, coeff] : conv.terms()) stack[i * n + index.at(c)] = coeff.constant_coeff();
        }
        for (std::size_t k = 0; k < dimk; ++k)
            for (const auto& [c, coeff] : li_rep.kernel_vectors[k].terms())
                stack[(n + k) * n + index.at(c)] = F_->neg(coeff);
        auto null_vecs = left_null_space(stack, n + dimk, n);
        for (const auto& nv : null_vecs) {
            FqRelation rel(*F_);
            for (std::size_t j = 0; j < n; ++j)
                if (!F_->is_zero(nv[j])) rel.add(rows[j], nv[j]);
            if (!rel.is_trivial()) rep.kernel_vectors.push_back(std::move(rel));
        }
        rep.kernel_dim = rep.kernel_vectors.size();
        if (rep.kernel_dim == 0) {
            rep.status = "independent";
            rep.note = "empty kernel carried over through the exact change of basis";
        } else if (rep.kernel_dim == 1) {
            rep.status = "unique_relation";
            rep.note = "kernel vectors are candidates subject to exact verification";
        } else {
            rep.status = "inconclusive";
            rep.note = "stable kernel of dimension > 1";
        }
        return rep;
    }

    const Field* F_;
    ShuffleAlgebra* shuffle_;
    PowerSums* power_;
    Reducer* reducer_;
};

}  // namespace ffmzv
