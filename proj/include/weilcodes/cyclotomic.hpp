// Exact arithmetic in Z[zeta_p] for an odd prime p, zeta_p = exp(2*pi*i/p).
//
// Values are stored on the integral basis 1, z, ..., z^{p-2}; the relation
// z^{p-1} = -(1 + z + ... + z^{p-2}) keeps representations canonical, so
// equality is plain coefficient comparison. Coefficients are arbitrary
// precision: character sums over q^2 terms can leave the 64-bit range.

#ifndef WEILCODES_CYCLOTOMIC_HPP
#define WEILCODES_CYCLOTOMIC_HPP

#include <complex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weilcodes/common.hpp"

namespace weilcodes {

class CycInt {
   public:
    /// Zero in Z[zeta_p].
    explicit CycInt(u32 p) : p_(check_conductor(p)), c_(p - 1) {}

    static CycInt integer(u32 p, BigInt n) {
        CycInt r(p);
        r.c_[0] = std::move(n);
        return r;
    }

    /// Canonical form of zeta^k (k taken mod p, negatives allowed).
    static CycInt zeta_pow(u32 p, i64 k) {
        CycInt r(p);
        const u32 e = static_cast<u32>(((k % p) + p) % p);
        if (e < p - 1) {
            r.c_[e] = 1;
        } else {
            for (auto& c : r.c_) c = -1;
        }
        return r;
    }

    /// sum_r counts[r] * zeta^r for residue counts indexed 0..p-1.
    static CycInt from_zeta_counts(u32 p, std::span<const i64> counts) {
        if (counts.size() != p) throw InvalidParameter("need one count per residue class");
        CycInt r(p);
        for (u32 i = 0; i + 1 < p; ++i) r.c_[i] = counts[i] - counts[p - 1];
        return r;
    }

    u32 conductor() const { return p_; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    /// The value as a plain integer, when it is one.
    std::optional<BigInt> as_integer() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return std::nullopt;
        return c_[0];
    }

    CycInt& operator+=(const CycInt& o) {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }

    CycInt& operator-=(const CycInt& o) {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }

    CycInt& operator*=(const BigInt& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }

    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator*(CycInt a, const BigInt& s) { return a *= s; }
    friend CycInt operator*(const BigInt& s, CycInt a) { return a *= s; }

    friend CycInt operator-(CycInt a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }

    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        a.check(b);
        const u32 p = a.p_;
        std::vector<BigInt> conv(2 * size_t(p) - 3);
        for (size_t i = 0; i + 1 < p; ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j + 1 < p; ++j)
                if (b.c_[j] != 0) conv[i + j] += a.c_[i] * b.c_[j];
        }
        return reduce_powers(p, conv);
    }

    /// Galois twist zeta -> zeta^k, a ring automorphism for gcd(k, p) = 1.
    CycInt galois(u32 k) const {
        k %= p_;
        if (k == 0) throw InvalidParameter("galois exponent must be coprime to p");
        std::vector<BigInt> spread(p_);
        for (size_t i = 0; i + 1 < p_; ++i) spread[(i * k) % p_] = c_[i];
        return fold_top(p_, std::move(spread));
    }

    /// Complex conjugation, zeta -> zeta^{-1}.
    CycInt conj() const { return galois(p_ - 1); }

    bool operator==(const CycInt& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const CycInt& o) const { return !(*this == o); }

    /// Human-readable form, e.g. "0", "3", "z - z^2", "1 + 2z".
    std::string to_string() const {
        std::string s;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            BigInt mag = c_[i] < 0 ? BigInt(-c_[i]) : c_[i];
            if (s.empty()) {
                if (c_[i] < 0) s += "-";
            } else {
                s += c_[i] < 0 ? " - " : " + ";
            }
            const bool unit = (mag == 1 && i > 0);
            if (!unit) s += mag.str();
            if (i == 1) s += "z";
            if (i > 1) s += "z^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

    /// Floating evaluation at zeta = exp(2*pi*i/p); for cross-checks and display.
    std::complex<double> approx() const {
        const double tau = 6.283185307179586476925287;
        std::complex<double> acc(0.0, 0.0);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            const double ang = tau * double(i) / double(p_);
            acc += static_cast<double>(c_[i]) * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return acc;
    }

   private:
    static u32 check_conductor(u32 p) {
        if (p < 3 || p % 2 == 0) throw InvalidParameter("conductor must be an odd prime >= 3");
        return p;
    }

    void check(const CycInt& o) const {
        if (p_ != o.p_) throw InvalidParameter("conductor mismatch");
    }

    // coefficients for powers 0..2p-4: fold exponents mod p, then rewrite z^{p-1}
    static CycInt reduce_powers(u32 p, const std::vector<BigInt>& conv) {
        std::vector<BigInt> spread(p);
        for (size_t e = 0; e < conv.size(); ++e)
            if (conv[e] != 0) spread[e % p] += conv[e];
        return fold_top(p, std::move(spread));
    }

    static CycInt fold_top(u32 p, std::vector<BigInt> spread) {
        CycInt r(p);
        for (u32 i = 0; i + 1 < p; ++i) r.c_[i] = spread[i] - spread[p - 1];
        return r;
    }

    u32 p_;
    std::vector<BigInt> c_;
};

}  // namespace weilcodes

#endif  // WEILCODES_CYCLOTOMIC_HPP
