#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ffmzv/errors.hpp"

namespace ffmzv {

// Tuple of positive integers. The empty composition is a first-class value
// (weight 0, depth 0); it is the unit of the quasi-shuffle products.
class Composition {
  public:
    Composition() = default;
    explicit Composition(std::vector<std::uint32_t> parts) : parts_(std::move(parts)) {
        for (auto p : parts_)
            if (p == 0) throw ContractViolation("composition parts must be positive");
    }
    Composition(std::initializer_list<std::uint32_t> parts) : Composition(std::vector<std::uint32_t>(parts)) {}

    static Composition empty() { return Composition(); }

    const std::vector<std::uint32_t>& parts() const { return parts_; }
    bool is_empty() const { return parts_.empty(); }
    std::size_t depth() const { return parts_.size(); }
    std::uint64_t weight() const {
        std::uint64_t w = 0;
        for (auto p : parts_) w += p;
        return w;
    }

    std::uint32_t head() const {
        if (is_empty()) throw ContractViolation("head of empty composition");
        return parts_.front();
    }

    Composition tail() const {
        if (is_empty()) throw ContractViolation("tail of empty composition");
        Composition t;
        t.parts_.assign(parts_.begin() + 1, parts_.end());
        return t;
    }

    Composition prepended(std::uint32_t head) const {
        if (head == 0) throw ContractViolation("composition parts must be positive");
        Composition r;
        r.parts_.reserve(parts_.size() + 1);
        r.parts_.push_back(head);
        r.parts_.insert(r.parts_.end(), parts_.begin(), parts_.end());
        return r;
    }

    friend Composition concat(const Composition& a, const Composition& b) {
        Composition r;
        r.parts_ = a.parts_;
        r.parts_.insert(r.parts_.end(), b.parts_.begin(), b.parts_.end());
        return r;
    }

    friend bool operator==(const Composition& a, const Composition& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const Composition& a, const Composition& b) { return !(a == b); }

    // Textual form: comma-separated parts, empty string for the empty tuple.
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    static Composition parse(const std::string& s) {
        Composition r;
        if (s.empty()) return r;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t end = s.find(',', pos);
            std::string tok = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
            if (tok.empty()) throw ParseError("malformed tuple: '" + s + "'");
            std::size_t used = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(tok, &used);
            } catch (const std::exception&) {
                throw ParseError("malformed tuple: '" + s + "'");
            }
            if (used != tok.size() || v == 0 || v > 0xffffffffull) throw ParseError("malformed tuple: '" + s + "'");
            r.parts_.push_back(static_cast<std::uint32_t>(v));
            if (end == std::string::npos) break;
            pos = end + 1;
        }
        return r;
    }

  private:
    std::vector<std::uint32_t> parts_;
};

enum class Ordering { Less, Equal, Greater };

// (depth, lex): deeper tuples are larger; at equal depth the
// lexicographically later tuple is larger. Total on each weight class.
struct DepthLexLess {
    bool operator()(const Composition& a, const Composition& b) const {
        if (a.depth() != b.depth()) return a.depth() < b.depth();
        return std::lexicographical_compare(a.parts().begin(), a.parts().end(), b.parts().begin(), b.parts().end());
    }
};

// Three-way comparison; the two tuples must have equal weight.
inline Ordering depth_lex_cmp(const Composition& a, const Composition& b) {
    if (a.weight() != b.weight()) throw ContractViolation("depth_lex_cmp requires equal weights");
    DepthLexLess lt;
    if (lt(a, b)) return Ordering::Less;
    if (lt(b, a)) return Ordering::Greater;
    return Ordering::Equal;
}

// Membership in the basis index set: every part but the last is <= q and the
// last part is < q.
inline bool in_basis(const Composition& s, std::uint64_t q) {
    if (s.is_empty()) throw ContractViolation("in_basis: empty composition");
    const auto& p = s.parts();
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i] > q) return false;
    return p.back() < q;
}

enum class TupleType { Type0, Type1, Type2, Type3, Type4 };

inline std::string to_string(TupleType t) {
    switch (t) {
        case TupleType::Type0: return "Type0";
        case TupleType::Type1: return "Type1";
        case TupleType::Type2: return "Type2";
        case TupleType::Type3: return "Type3";
        case TupleType::Type4: return "Type4";
    }
    return "?";
}

// The (n, q+r, m) reading of a non-basis tuple: n is the maximal prefix with
// entries in [1, q] before the first entry > q, or everything before a
// trailing entry equal to q (then r = 0 and m is empty).
struct Decomposition {
    Composition n;
    std::uint32_t r = 0;
    Composition m;
    TupleType type = TupleType::Type0;

    Composition n_plus() const {
        if (n.is_empty()) throw ContractViolation("n_plus of empty prefix");
        auto parts = n.parts();
        parts.back() += 1;
        return Composition(parts);
    }

    Composition reassemble(std::uint64_t q) const {
        auto parts = n.parts();
        parts.push_back(static_cast<std::uint32_t>(q + r));
        auto mp = m.parts();
        parts.insert(parts.end(), mp.begin(), mp.end());
        return Composition(parts);
    }
};

inline Decomposition classify(const Composition& s, std::uint64_t q) {
    if (s.is_empty()) throw ContractViolation("classify: empty composition");
    if (in_basis(s, q)) throw NotReducible("classify: tuple is already a basis tuple");
    const auto& p = s.parts();
    Decomposition d;
    std::size_t k = p.size();
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > q) {
            k = i;
            break;
        }
    if (k < p.size()) {
        d.n = Composition(std::vector<std::uint32_t>(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k)));
        d.r = static_cast<std::uint32_t>(p[k] - q);
        d.m = Composition(std::vector<std::uint32_t>(p.begin() + static_cast<std::ptrdiff_t>(k) + 1, p.end()));
    } else {
        // All entries <= q; non-basis forces a trailing entry equal to q.
        d.n = Composition(std::vector<std::uint32_t>(p.begin(), p.end() - 1));
        d.r = 0;
        d.m = Composition();
    }
    bool n_empty = d.n.is_empty(), m_empty = d.m.is_empty();
    if (n_empty && m_empty)
        d.type = TupleType::Type0;
    else if (d.r == 0)
        d.type = TupleType::Type1;
    else if (!n_empty && m_empty)
        d.type = TupleType::Type2;
    else if (n_empty)
        d.type = TupleType::Type3;
    else
        d.type = TupleType::Type4;
    return d;
}

// All 2^{w-1} compositions of w in ascending (depth, lex) order.
inline std::vector<Composition> enumerate_compositions(std::uint32_t w) {
    if (w == 0) throw ContractViolation("enumerate_compositions: w must be >= 1");
    if (w > 26) throw ResourceLimit("enumerate_compositions: 2^{w-1} too large");
    std::vector<Composition> out;
    out.reserve(1u << (w - 1));
    for (std::uint32_t mask = 0; mask < (1u << (w - 1)); ++mask) {
        std::vector<std::uint32_t> parts;
        std::uint32_t run = 1;
        for (std::uint32_t i = 0; i + 1 < w; ++i) {
            if (mask & (1u << i)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        out.emplace_back(std::move(parts));
    }
    std::sort(out.begin(), out.end(), DepthLexLess{});
    return out;
}

// Dimension count d(w): 1, 2^{w-1}, 2^{w-1}-1 at w = 0, 1..q-1, q, and the
// order-q linear recurrence above q.
inline std::uint64_t basis_dimension(std::uint32_t w, std::uint64_t q) {
    if (q < 2) throw ContractViolation("basis_dimension: q must be >= 2");
    if (w == 0) return 1;
    auto seed = [&](std::uint64_t v) -> std::uint64_t {
        if (v < q) return 1ull << (v - 1);
        return (1ull << (v - 1)) - 1;
    };
    if (w <= q) return seed(w);
    std::vector<std::uint64_t> d(w + 1);
    d[0] = 1;
    for (std::uint32_t v = 1; v <= w; ++v) {
        if (v <= q) {
            d[v] = seed(v);
        } else {
            std::uint64_t acc = 0;
            for (std::uint64_t i = 1; i <= q; ++i) acc += d[v - i];
            d[v] = acc;
        }
    }
    return d[w];
}

}  // namespace ffmzv
