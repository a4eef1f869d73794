#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffmzv/errors.hpp"

namespace ffmzv {

// Element of F_q in index encoding: the value is sum_i c_i p^i where
// (c_0, ..., c_{e-1}) are the coordinates in the power basis of the modulus.
// All arithmetic goes through a Field; elements of different fields must not
// be mixed (not detectable from the value alone, so containers carry the
// field pointer instead).
struct FqElem {
    std::uint32_t v = 0;
    friend bool operator==(FqElem a, FqElem b) { return a.v == b.v; }
    friend bool operator!=(FqElem a, FqElem b) { return a.v != b.v; }
    friend bool operator<(FqElem a, FqElem b) { return a.v < b.v; }
};

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Extended Euclid inverse of a mod p, 0 < a < p.
inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

}  // namespace detail

// Binomial coefficient C(n, k) mod p by base-p digit products. Returns 0 as
// soon as some digit of k exceeds the matching digit of n; k > n gives 0 by
// the same rule.
inline std::uint32_t lucas_binomial(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
    if (!detail::is_prime_u32(p)) throw ConfigError("lucas_binomial: p must be prime");
    std::uint64_t acc = 1;
    while (k > 0 || n > 0) {
        std::uint64_t nd = n % p, kd = k % p;
        n /= p;
        k /= p;
        if (kd > nd) return 0;
        // C(nd, kd) mod p with nd, kd < p: multiplicative formula, every
        // division is by a unit mod p.
        std::uint64_t c = 1;
        for (std::uint64_t j = 1; j <= kd; ++j) {
            c = (c * ((nd - kd + j) % p)) % p;
            c = (c * detail::inv_mod_prime(static_cast<std::uint32_t>(j % p), p)) % p;
        }
        acc = (acc * c) % p;
    }
    return static_cast<std::uint32_t>(acc);
}

// F_q, q = p^e, with q = p when e = 1 and F_p[x]/(modulus) otherwise.
// Small fields (q <= kLutMax) get full multiplication/inverse tables.
class Field {
  public:
    static constexpr std::uint64_t kLutMax = 1024;

    Field(std::uint32_t p, std::uint32_t e = 1, std::vector<std::uint32_t> modulus = {})
        : p_(p), e_(e) {
        if (!detail::is_prime_u32(p)) throw ConfigError("characteristic must be prime, got " + std::to_string(p));
        if (e == 0) throw ConfigError("extension degree must be >= 1");
        if (e > 20) throw ConfigError("extension degree too large");
        q_ = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            if (q_ > (1ull << 40) / p) throw ConfigError("field too large");
            q_ *= p;
        }
        if (e_ == 1) {
            // Modulus is the convention x and is ignored.
            mod_ = {0, 1};
        } else {
            if (modulus.empty()) {
                auto def = default_modulus(p, e);
                if (!def) throw ConfigError("no built-in modulus for q = " + std::to_string(q_) + "; pass one explicitly");
                mod_ = *def;
            } else {
                mod_ = std::move(modulus);
            }
            validate_modulus();
        }
        if (e_ > 1 && q_ <= kLutMax) build_luts();
    }

    // Built-in monic irreducible moduli (coefficients ascending, constant
    // first). Re-verified by validate_modulus() at construction.
    static std::optional<std::vector<std::uint32_t>> default_modulus(std::uint32_t p, std::uint32_t e) {
        if (p == 2 && e == 2) return std::vector<std::uint32_t>{1, 1, 1};           // x^2+x+1
        if (p == 2 && e == 3) return std::vector<std::uint32_t>{1, 1, 0, 1};        // x^3+x+1
        if (p == 2 && e == 4) return std::vector<std::uint32_t>{1, 1, 0, 0, 1};     // x^4+x+1
        if (p == 3 && e == 2) return std::vector<std::uint32_t>{2, 2, 1};           // x^2+2x+2
        if (p == 3 && e == 3) return std::vector<std::uint32_t>{1, 2, 0, 1};        // x^3+2x+1
        if (p == 5 && e == 2) return std::vector<std::uint32_t>{2, 4, 1};           // x^2+4x+2
        return std::nullopt;
    }

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t ext_degree() const { return e_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return mod_; }

    FqElem zero() const { return {0}; }
    FqElem one() const { return {1}; }
    bool is_zero(FqElem a) const { return a.v == 0; }

    FqElem from_int(long long n) const {
        long long r = n % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return {static_cast<std::uint32_t>(r)};
    }

    FqElem from_coords(const std::vector<std::uint32_t>& c) const {
        if (c.size() > e_) throw ContractViolation("from_coords: too many coordinates");
        std::uint64_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (c[i] >= p_) throw ContractViolation("from_coords: coordinate out of range");
            v = v * p_ + c[i];
        }
        return {static_cast<std::uint32_t>(v)};
    }

    std::vector<std::uint32_t> coords(FqElem a) const {
        std::vector<std::uint32_t> c(e_);
        std::uint32_t v = a.v;
        for (std::uint32_t i = 0; i < e_; ++i) {
            c[i] = v % p_;
            v /= p_;
        }
        return c;
    }

    FqElem add(FqElem a, FqElem b) const {
        if (e_ == 1) {
            std::uint32_t s = a.v + b.v;
            if (s >= p_) s -= p_;
            return {s};
        }
        return {add_digits(a.v, b.v)};
    }

    FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

    FqElem neg(FqElem a) const {
        if (e_ == 1) return {a.v == 0 ? 0 : p_ - a.v};
        std::uint32_t v = a.v, out = 0, mul = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            std::uint32_t d = v % p_;
            v /= p_;
            out += (d == 0 ? 0 : p_ - d) * mul;
            mul *= p_;
        }
        return {out};
    }

    FqElem mul(FqElem a, FqElem b) const {
        if (e_ == 1) return {static_cast<std::uint32_t>((std::uint64_t)a.v * b.v % p_)};
        if (!mul_lut_.empty()) return {mul_lut_[(std::size_t)a.v * q_ + b.v]};
        return {mul_generic(a.v, b.v)};
    }

    FqElem inv(FqElem a) const {
        if (a.v == 0) throw DivisionByZero("inverse of zero in F_q");
        if (e_ == 1) return {detail::inv_mod_prime(a.v, p_)};
        if (!inv_lut_.empty()) return {inv_lut_[a.v]};
        // x^(q-2) for the rare big-extension slow path
        return pow(a, q_ - 2);
    }

    FqElem pow(FqElem a, std::uint64_t n) const {
        FqElem r = one(), x = a;
        while (n) {
            if (n & 1) r = mul(r, x);
            x = mul(x, x);
            n >>= 1;
        }
        return r;
    }

    FqElem frobenius(FqElem a) const { return pow(a, p_); }

    // Raw value helpers for hot loops over prime fields.
    std::uint32_t raw_add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }

  private:
    void validate_modulus() {
        if (mod_.size() != e_ + 1) throw ConfigError("modulus must have e+1 coefficients");
        for (auto c : mod_)
            if (c >= p_) throw ConfigError("modulus coefficient out of range");
        if (mod_[e_] != 1) throw ConfigError("modulus must be monic");
        if (mod_[0] == 0) throw ConfigError("modulus is divisible by x, hence reducible");
        // Trial division by every monic polynomial of degree <= e/2 over F_p.
        for (std::uint32_t d = 1; 2 * d <= e_; ++d) {
            std::uint64_t count = 1;
            for (std::uint32_t i = 0; i < d; ++i) count *= p_;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                std::vector<std::uint32_t> g(d + 1);
                std::uint64_t t = idx;
                for (std::uint32_t i = 0; i < d; ++i) {
                    g[i] = static_cast<std::uint32_t>(t % p_);
                    t /= p_;
                }
                g[d] = 1;
                if (mod_rem_is_zero(mod_, g)) throw ConfigError("modulus is reducible over F_p");
            }
        }
    }

    // Remainder of a by monic g over F_p, zero test only.
    bool mod_rem_is_zero(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& g) const {
        std::size_t dg = g.size() - 1;
        while (a.size() > dg) {
            std::uint32_t lead = a.back();
            if (lead != 0) {
                std::size_t off = a.size() - 1 - dg;
                for (std::size_t i = 0; i <= dg; ++i) {
                    std::uint64_t sub = (std::uint64_t)lead * g[i] % p_;
                    std::uint32_t& c = a[off + i];
                    c = static_cast<std::uint32_t>((c + p_ - sub) % p_);
                }
            }
            a.pop_back();
        }
        for (auto c : a)
            if (c != 0) return false;
        return true;
    }

    std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t out = 0, mul = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            std::uint32_t s = a % p_ + b % p_;
            if (s >= p_) s -= p_;
            out += s * mul;
            mul *= p_;
            a /= p_;
            b /= p_;
        }
        return out;
    }

    std::uint32_t mul_generic(std::uint32_t a, std::uint32_t b) const {
        // Schoolbook product of digit polynomials reduced mod the modulus.
        std::vector<std::uint32_t> da(e_), db(e_), prod(2 * e_ - 1, 0);
        for (std::uint32_t i = 0; i < e_; ++i) {
            da[i] = a % p_;
            a /= p_;
            db[i] = b % p_;
            b /= p_;
        }
        for (std::uint32_t i = 0; i < e_; ++i) {
            if (da[i] == 0) continue;
            for (std::uint32_t j = 0; j < e_; ++j)
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + (std::uint64_t)da[i] * db[j]) % p_);
        }
        for (std::size_t k = prod.size(); k-- > e_;) {
            std::uint32_t lead = prod[k];
            if (lead == 0) continue;
            prod[k] = 0;
            for (std::uint32_t i = 0; i < e_; ++i) {
                std::uint64_t sub = (std::uint64_t)lead * mod_[i] % p_;
                prod[k - e_ + i] = static_cast<std::uint32_t>((prod[k - e_ + i] + p_ - sub) % p_);
            }
        }
        std::uint32_t out = 0, mul = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            out += prod[i] * mul;
            mul *= p_;
        }
        return out;
    }

    void build_luts() {
        mul_lut_.assign(q_ * q_, 0);
        for (std::uint64_t a = 0; a < q_; ++a)
            for (std::uint64_t b = a; b < q_; ++b) {
                std::uint32_t m = mul_generic(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
                mul_lut_[a * q_ + b] = m;
                mul_lut_[b * q_ + a] = m;
            }
        inv_lut_.assign(q_, 0);
        for (std::uint64_t a = 1; a < q_; ++a) {
            if (inv_lut_[a] != 0) continue;
            for (std::uint64_t b = 1; b < q_; ++b)
                if (mul_lut_[a * q_ + b] == 1) {
                    inv_lut_[a] = static_cast<std::uint32_t>(b);
                    inv_lut_[b] = static_cast<std::uint32_t>(a);
                    break;
                }
        }
    }

    std::uint32_t p_;
    std::uint32_t e_;
    std::uint64_t q_;
    std::vector<std::uint32_t> mod_;
    std::vector<std::uint32_t> mul_lut_;
    std::vector<std::uint32_t> inv_lut_;
};

inline FqElem fq_inv(const Field& F, FqElem x) { return F.inv(x); }

// Element <-> string, used by the CLI exchange formats. Prime fields print a
// bare integer, extension fields a coordinate list "[c0,c1,...]".
inline std::string elem_to_string(const Field& F, FqElem a) {
    if (F.ext_degree() == 1) return std::to_string(a.v);
    std::string s = "[";
    auto c = F.coords(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c[i]);
    }
    s += ']';
    return s;
}

inline FqElem elem_from_string(const Field& F, const std::string& s) {
    if (s.empty()) throw ParseError("empty field element");
    if (s.front() == '[') {
        if (s.back() != ']') throw ParseError("unterminated coordinate list: " + s);
        std::vector<std::uint32_t> coords;
        std::string cur;
        for (std::size_t i = 1; i + 1 < s.size(); ++i) {
            if (s[i] == ',') {
                coords.push_back(static_cast<std::uint32_t>(std::stoul(cur)));
                cur.clear();
            } else {
                cur += s[i];
            }
        }
        if (!cur.empty()) coords.push_back(static_cast<std::uint32_t>(std::stoul(cur)));
        return F.from_coords(coords);
    }
    return F.from_int(std::stoll(s));
}

}  // namespace ffmzv
