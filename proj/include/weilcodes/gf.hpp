// Exact arithmetic in GF(p) and GF(p^m) for odd primes p.
//
// A Field fixes one concrete model of GF(p^m): a monic irreducible modulus
// polynomial over GF(p). Elements are coefficient vectors in the polynomial
// basis 1, X, ..., X^{m-1}. Every element also has a canonical index in
// [0, q): the lexicographic rank of its coordinate tuple (c_0, ..., c_{m-1}),
// c_0 compared first. Enumeration, tie-breaking and table lookups all use
// this index order.

#ifndef WEILCODES_GF_HPP
#define WEILCODES_GF_HPP

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "weilcodes/common.hpp"

namespace weilcodes {

/// Default bound on p^(2m): the full (a,b) grid of a field must stay enumerable.
inline constexpr u64 kDefaultSizeLimit = u64(1) << 32;

namespace detail {

// Dense polynomials over Z_p, coefficient of X^i at position i.

inline u64 pow_mod_u64(u64 base, u64 exp, u64 mod) {
    u64 r = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return r;
}

inline u32 inv_mod(u32 a, u32 p) { return static_cast<u32>(pow_mod_u64(a, p - 2, p)); }

inline bool is_odd_prime(u64 n) {
    if (n < 3 || n % 2 == 0) return false;
    for (u64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

using Poly = std::vector<u32>;

inline int poly_degree(const Poly& f) {
    for (size_t i = f.size(); i > 0; --i)
        if (f[i - 1] != 0) return static_cast<int>(i - 1);
    return -1;
}

inline void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& f, u32 p) {
    const int df = poly_degree(f);
    const u32 lead_inv = inv_mod(f[df], p);
    for (int i = poly_degree(a); i >= df; --i) {
        const u64 c = (u64(a[i]) * lead_inv) % p;
        if (c == 0) continue;
        for (int j = 0; j <= df; ++j) {
            const u64 sub = (c * f[j]) % p;
            a[i - df + j] = static_cast<u32>((a[i - df + j] + p - sub) % p);
        }
    }
    poly_trim(a);
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u32 p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<u32>((c[i + j] + u64(a[i]) * b[j]) % p);
    }
    return poly_mod(std::move(c), f, p);
}

inline Poly poly_powmod(Poly base, u64 exp, const Poly& f, u32 p) {
    Poly r{1};
    base = poly_mod(std::move(base), f, p);
    while (exp > 0) {
        if (exp & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        exp >>= 1;
    }
    return r;
}

inline Poly poly_gcd(Poly a, Poly b, u32 p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        a = poly_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

// Irreducibility over GF(p): f of degree m is irreducible iff it shares no
// factor with X^{p^i} - X for any i <= m/2.
inline bool poly_is_irreducible(const Poly& f, u32 p) {
    const int m = poly_degree(f);
    if (m < 1) return false;
    if (m == 1) return true;
    Poly xp{0, 1};  // running X^{p^i} mod f
    for (int i = 1; i <= m / 2; ++i) {
        xp = poly_powmod(std::move(xp), p, f, p);
        Poly diff = xp;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = static_cast<u32>((diff[1] + p - 1) % p);
        poly_trim(diff);
        if (poly_degree(poly_gcd(f, diff, p)) != 0) return false;
    }
    return true;
}

}  // namespace detail

class FieldElement;

/// One immutable model of GF(p^m). Construction validates the modulus and
/// precomputes trace data plus, for small q, full add/mul index tables.
class Field {
   public:
    Field(u32 p, u32 m, std::vector<u32> modulus, u64 size_limit = kDefaultSizeLimit)
        : p_(p), m_(m), modulus_(std::move(modulus)) {
        validate_shape(p, m, size_limit);
        if (modulus_.size() != size_t(m_) + 1)
            throw InvalidParameter("modulus must have degree m (m+1 coefficients)");
        for (u32 c : modulus_)
            if (c >= p_) throw InvalidParameter("modulus coefficient out of range [0, p)");
        if (modulus_.back() != 1) throw InvalidParameter("modulus must be monic");
        if (!detail::poly_is_irreducible(modulus_, p_))
            throw InvalidParameter("modulus is reducible over GF(p)");
        init_tables();
    }

    /// Model with the lexicographically smallest monic irreducible modulus
    /// (coefficients compared low-degree-first). Deterministic across runs.
    static Field with_smallest_modulus(u32 p, u32 m, u64 size_limit = kDefaultSizeLimit) {
        validate_shape(p, m, size_limit);
        std::vector<u32> f(size_t(m) + 1, 0);
        f[m] = 1;
        while (true) {
            if (detail::poly_is_irreducible(f, p)) return Field(p, m, f, size_limit);
            // next candidate in low-degree-first lexicographic order
            int i = static_cast<int>(m) - 1;
            while (i >= 0 && f[i] == p - 1) f[i--] = 0;
            if (i < 0) throw InternalError("no irreducible modulus found");  // cannot happen
            ++f[i];
        }
    }

    u32 p() const { return p_; }
    u32 m() const { return m_; }
    u64 q() const { return q_; }
    const std::vector<u32>& modulus() const { return modulus_; }

    /// s = m/2, defined only for even extension degree.
    u32 half_degree() const {
        if (m_ % 2 != 0) throw InternalError("half_degree requested for odd m");
        return m_ / 2;
    }

    /// Two Field objects are interchangeable iff they model the same (p, modulus).
    bool same_model(const Field& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

    // --- elements ----------------------------------------------------------

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_coords(std::vector<u32> coords) const;
    FieldElement from_residue(u64 r) const;  // embeds GF(p) residue
    FieldElement element_at(u64 index) const;
    std::vector<FieldElement> elements() const;  // all q, index order

    u64 index_of_coords(const std::vector<u32>& c) const {
        u64 idx = 0;
        for (u32 i = 0; i < m_; ++i) idx += u64(c[i]) * digit_w_[i];
        return idx;
    }

    std::vector<u32> coords_at(u64 index) const {
        std::vector<u32> c(m_);
        for (u32 i = 0; i < m_; ++i) {
            c[i] = static_cast<u32>(index / digit_w_[i]);
            index %= digit_w_[i];
        }
        return c;
    }

    // --- index-level arithmetic (the hot path for enumeration kernels) -----

    u64 embed_idx(u64 residue) const { return (residue % p_) * digit_w_[0]; }

    u64 add_idx(u64 a, u64 b) const {
        if (pair_tabs_) return add_tab_[a * q_ + b];
        if (m_ == 1) return (a + b) % p_;
        u64 r = 0;
        for (u32 i = 0; i < m_; ++i) {
            const u64 w = digit_w_[i];
            r += ((a / w + b / w) % p_) * w;
            a %= w;
            b %= w;
        }
        return r;
    }

    u64 neg_idx(u64 a) const {
        if (m_ == 1) return (p_ - a) % p_;
        u64 r = 0;
        for (u32 i = 0; i < m_; ++i) {
            const u64 w = digit_w_[i];
            r += ((p_ - a / w) % p_) * w;
            a %= w;
        }
        return r;
    }

    u64 mul_idx(u64 a, u64 b) const {
        if (pair_tabs_) return mul_tab_[a * q_ + b];
        if (m_ == 1) return (a * b) % p_;
        return index_of_coords(mul_coords(coords_at(a), coords_at(b)));
    }

    u64 pow_idx(u64 base, u64 exp) const {
        u64 r = one_idx_;
        while (exp > 0) {
            if (exp & 1) r = mul_idx(r, base);
            base = mul_idx(base, base);
            exp >>= 1;
        }
        return r;
    }

    u64 inv_idx(u64 a) const {
        if (a == 0) throw InvalidParameter("inversion of zero");
        return pow_idx(a, q_ - 2);
    }

    u32 trace_idx(u64 a) const {
        if (m_ == 1) return static_cast<u32>(a);
        if (!trace_tab_.empty()) return trace_tab_[a];
        u64 acc = 0;
        for (u32 i = 0; i < m_; ++i) {
            acc += u64(tr_basis_[i]) * (a / digit_w_[i]);
            a %= digit_w_[i];
        }
        return static_cast<u32>(acc % p_);
    }

    /// Quadratic character: +1 on nonzero squares, -1 otherwise.
    int eta_idx(u64 a) const {
        if (a == 0) throw InvalidParameter("eta is undefined at zero");
        const u64 r = pow_idx(a, (q_ - 1) / 2);
        if (r == one_idx_) return 1;
        if (r == neg_idx(one_idx_)) return -1;
        throw InternalError("x^((q-1)/2) outside {1,-1}");
    }

    bool in_prime_subfield_idx(u64 a) const { return m_ == 1 || a % digit_w_[0] == 0; }

    /// For an embedded prime-field element, its residue in [0, p).
    u32 residue_of_idx(u64 a) const {
        if (!in_prime_subfield_idx(a)) throw InvalidParameter("element not in the prime subfield");
        return static_cast<u32>(a / digit_w_[0]);
    }

    u64 one_idx() const { return one_idx_; }

    /// True when O(1) add/mul index tables are available.
    bool has_pair_tables() const { return pair_tabs_; }
    const u16* add_table() const { return pair_tabs_ ? add_tab_.data() : nullptr; }
    const u16* mul_table() const { return pair_tabs_ ? mul_tab_.data() : nullptr; }
    const u16* trace_table() const { return trace_tab_.empty() ? nullptr : trace_tab_.data(); }

    // coefficient-vector arithmetic used by FieldElement
    std::vector<u32> add_coords(const std::vector<u32>& a, const std::vector<u32>& b) const {
        std::vector<u32> r(m_);
        for (u32 i = 0; i < m_; ++i) r[i] = (a[i] + b[i]) % p_;
        return r;
    }

    std::vector<u32> neg_coords(const std::vector<u32>& a) const {
        std::vector<u32> r(m_);
        for (u32 i = 0; i < m_; ++i) r[i] = (p_ - a[i]) % p_;
        return r;
    }

    std::vector<u32> mul_coords(const std::vector<u32>& a, const std::vector<u32>& b) const {
        std::vector<u64> conv(2 * size_t(m_) - 1, 0);
        for (u32 i = 0; i < m_; ++i) {
            if (a[i] == 0) continue;
            for (u32 j = 0; j < m_; ++j) conv[i + j] = (conv[i + j] + u64(a[i]) * b[j]) % p_;
        }
        std::vector<u32> r(m_);
        for (u32 i = 0; i < m_; ++i) r[i] = static_cast<u32>(conv[i]);
        for (u32 j = m_; j < 2 * m_ - 1; ++j) {
            if (conv[j] == 0) continue;
            const auto& row = xpow_red_[j - m_];
            for (u32 i = 0; i < m_; ++i) r[i] = static_cast<u32>((r[i] + conv[j] * row[i]) % p_);
        }
        return r;
    }

   private:
    static void validate_shape(u32 p, u32 m, u64 size_limit) {
        if (!detail::is_odd_prime(p)) throw InvalidParameter("p must be an odd prime >= 3");
        if (m < 1) throw InvalidParameter("extension degree m must be >= 1");
        u64 acc = 1;
        for (u32 i = 0; i < 2 * m; ++i) {
            if (acc > size_limit / p)
                throw SizeGuardExceeded("p^(2m) exceeds the size limit of " +
                                        std::to_string(size_limit));
            acc *= p;
        }
    }

    void init_tables() {
        q_ = 1;
        for (u32 i = 0; i < m_; ++i) q_ *= p_;
        digit_w_.resize(m_);
        digit_w_[m_ - 1] = 1;
        for (int i = static_cast<int>(m_) - 2; i >= 0; --i) digit_w_[i] = digit_w_[i + 1] * p_;
        one_idx_ = digit_w_[0];

        // X^{m+j} mod modulus, for reduction after schoolbook multiplication
        xpow_red_.assign(m_ > 1 ? m_ - 1 : 0, std::vector<u32>(m_));
        if (m_ > 1) {
            detail::Poly x(m_ + 1, 0);
            x[m_] = 1;
            detail::Poly cur = detail::poly_mod(x, modulus_, p_);
            for (u32 j = 0; j + 1 < m_; ++j) {
                cur.resize(m_, 0);
                for (u32 i = 0; i < m_; ++i) xpow_red_[j][i] = cur[i];
                detail::Poly shifted(cur.size() + 1, 0);
                for (size_t i = 0; i < cur.size(); ++i) shifted[i + 1] = cur[i];
                cur = detail::poly_mod(std::move(shifted), modulus_, p_);
            }
        }

        // trace of each basis element, certified to land in the prime field
        tr_basis_.assign(m_, 0);
        for (u32 i = 0; i < m_; ++i) {
            std::vector<u32> basis(m_, 0);
            basis[i] = 1;
            std::vector<u32> acc(m_, 0), frob = basis;
            for (u32 k = 0; k < m_; ++k) {
                acc = add_coords(acc, frob);
                frob = pow_coords(frob, p_);
            }
            for (u32 j = 1; j < m_; ++j)
                if (acc[j] != 0) throw InternalError("trace of basis element left GF(p)");
            tr_basis_[i] = acc[0];
        }

        if (m_ > 1 && q_ <= kTraceTableMaxQ) {
            trace_tab_.resize(q_);
            for (u64 a = 0; a < q_; ++a) {
                u64 rem = a, acc = 0;
                for (u32 i = 0; i < m_; ++i) {
                    acc += u64(tr_basis_[i]) * (rem / digit_w_[i]);
                    rem %= digit_w_[i];
                }
                trace_tab_[a] = static_cast<u16>(acc % p_);
            }
        }

        if (m_ > 1 && q_ <= kPairTableMaxQ) {
            add_tab_.resize(q_ * q_);
            mul_tab_.resize(q_ * q_);
            std::vector<std::vector<u32>> all(q_);
            for (u64 a = 0; a < q_; ++a) all[a] = coords_at(a);
            for (u64 a = 0; a < q_; ++a)
                for (u64 b = a; b < q_; ++b) {
                    const u16 s = static_cast<u16>(index_of_coords(add_coords(all[a], all[b])));
                    const u16 t = static_cast<u16>(index_of_coords(mul_coords(all[a], all[b])));
                    add_tab_[a * q_ + b] = add_tab_[b * q_ + a] = s;
                    mul_tab_[a * q_ + b] = mul_tab_[b * q_ + a] = t;
                }
            pair_tabs_ = true;
        }
    }

    std::vector<u32> pow_coords(std::vector<u32> base, u64 exp) const {
        std::vector<u32> r(m_, 0);
        r[0] = 1;
        while (exp > 0) {
            if (exp & 1) r = mul_coords(r, base);
            base = mul_coords(base, base);
            exp >>= 1;
        }
        return r;
    }

    static constexpr u64 kPairTableMaxQ = 1024;
    static constexpr u64 kTraceTableMaxQ = u64(1) << 20;

    u32 p_, m_;
    u64 q_ = 0;
    std::vector<u32> modulus_;
    std::vector<u64> digit_w_;
    std::vector<std::vector<u32>> xpow_red_;
    std::vector<u32> tr_basis_;
    std::vector<u16> trace_tab_;
    std::vector<u16> add_tab_, mul_tab_;
    bool pair_tabs_ = false;
    u64 one_idx_ = 0;
};

/// Value type for one element of a Field. Keeps a pointer to its field, which
/// must outlive it.
class FieldElement {
   public:
    FieldElement(const Field& f, std::vector<u32> coords) : f_(&f), c_(std::move(coords)) {
        if (c_.size() != f.m()) throw InvalidParameter("coordinate count != m");
        for (u32 x : c_)
            if (x >= f.p()) throw InvalidParameter("coordinate out of range [0, p)");
    }

    const Field& field() const { return *f_; }
    const std::vector<u32>& coords() const { return c_; }
    u64 index() const { return f_->index_of_coords(c_); }
    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](u32 x) { return x == 0; });
    }

    FieldElement operator-() const { return FieldElement(*f_, f_->neg_coords(c_)); }

    FieldElement inverse() const {
        if (is_zero()) throw InvalidParameter("inversion of zero");
        return pow(f_->q() - 2);
    }

    FieldElement pow(u64 exp) const { return f_->element_at(f_->pow_idx(index(), exp)); }

    u32 trace() const { return f_->trace_idx(index()); }
    int eta() const { return f_->eta_idx(index()); }

    /// Coordinates as comma-separated base-p digits, lowest degree first.
    std::string to_string() const {
        std::string s;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(c_[i]);
        }
        return s;
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return FieldElement(a.field(), a.field().add_coords(a.c_, b.c_));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return FieldElement(a.field(), a.field().add_coords(a.c_, a.field().neg_coords(b.c_)));
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return FieldElement(a.field(), a.field().mul_coords(a.c_, b.c_));
    }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

   private:
    static void check(const FieldElement& a, const FieldElement& b) {
        if (!a.field().same_model(b.field()))
            throw InvalidParameter("operands belong to different fields");
    }

    const Field* f_;
    std::vector<u32> c_;
};

inline FieldElement Field::zero() const { return FieldElement(*this, std::vector<u32>(m_, 0)); }

inline FieldElement Field::one() const { return from_residue(1); }

inline FieldElement Field::from_coords(std::vector<u32> coords) const {
    return FieldElement(*this, std::move(coords));
}

inline FieldElement Field::from_residue(u64 r) const {
    std::vector<u32> c(m_, 0);
    c[0] = static_cast<u32>(r % p_);
    return FieldElement(*this, std::move(c));
}

inline FieldElement Field::element_at(u64 index) const {
    if (index >= q_) throw InvalidParameter("element index out of range");
    return FieldElement(*this, coords_at(index));
}

inline std::vector<FieldElement> Field::elements() const {
    std::vector<FieldElement> v;
    v.reserve(q_);
    for (u64 i = 0; i < q_; ++i) v.push_back(element_at(i));
    return v;
}

}  // namespace weilcodes

#endif  // WEILCODES_GF_HPP
