// Exponential sums over GF(q), valued exactly in Z[zeta_p].
//
// Provides the additive characters chi_b, quadratic Gauss sums (direct
// enumeration and closed form), the Weil sums S_u(a,b) attached to the
// exponent p^u + 1 (direct enumeration and the closed-form case analysis),
// the quadratic completion sum Q(a,b), and the GF(p)-linear solver for
// a^{p^u} X^{p^{2u}} + a X = rhs that the closed forms rest on.
//
// The closed forms avoid floating point entirely: sqrt((p*)^m) is realized
// as g_p^m where g_p = sum_{t in GF(p)*} eta_p(t) zeta^t satisfies
// g_p^2 = p* = (-1)^{(p-1)/2} p. Conjugation chi-bar is the ring
// automorphism zeta -> zeta^{-1}.

#ifndef WEILCODES_CHAR_SUMS_HPP
#define WEILCODES_CHAR_SUMS_HPP

#include <numeric>
#include <optional>
#include <vector>

#include "weilcodes/cyclotomic.hpp"
#include "weilcodes/gf.hpp"

namespace weilcodes {

/// Legendre symbol of t mod p (eta_p). t must not be divisible by p.
inline int legendre(u64 t, u32 p) {
    t %= p;
    if (t == 0) throw InvalidParameter("legendre symbol of 0");
    return detail::pow_mod_u64(t, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// chi_b(x) = zeta^{Tr(bx)}. chi_0 is the trivial character.
inline CycInt chi(const FieldElement& b, const FieldElement& x) {
    return CycInt::zeta_pow(b.field().p(), (b * x).trace());
}

/// G(eta) = sum_{x != 0} eta(x) zeta^{Tr(x)} by direct enumeration.
inline CycInt gauss_sum_brute(const Field& f) {
    std::vector<i64> counts(f.p(), 0);
    for (u64 x = 1; x < f.q(); ++x) counts[f.trace_idx(x)] += f.eta_idx(x);
    return CycInt::from_zeta_counts(f.p(), counts);
}

/// Closed form (-1)^{m-1} g_p^m for the quadratic Gauss sum of GF(p^m).
inline CycInt gauss_sum_closed(u32 p, u32 m) {
    if (!detail::is_odd_prime(p)) throw InvalidParameter("p must be an odd prime >= 3");
    CycInt g(p);
    for (u32 t = 1; t < p; ++t) {
        CycInt term = CycInt::zeta_pow(p, t);
        if (legendre(t, p) == 1)
            g += term;
        else
            g -= term;
    }
    CycInt acc = CycInt::integer(p, 1);
    for (u32 i = 0; i < m; ++i) acc = acc * g;
    return m % 2 == 0 ? -acc : acc;
}

inline CycInt gauss_sum_closed(const Field& f) { return gauss_sum_closed(f.p(), f.m()); }

/// Parameters of the Weil sum S_u(a,b) over one field: the exponent p^u + 1,
/// v = gcd(m,u), and a precomputed table of x -> x^{p^u+1}.
struct WeilParams {
    WeilParams(const Field& f, u32 u_in) : field(&f), u(u_in) {
        if (u == 0) throw InvalidParameter("u must be a positive integer");
        v = std::gcd(f.m(), u);
        // q - 1 is coprime to p, so both reduced exponents land in [1, q-1]
        // and remain valid for x = 0 as well (0^e = 0 since e >= 1).
        const u64 group = f.q() - 1;
        pu_mod = detail::pow_mod_u64(f.p(), u, group);
        e_mod = pu_mod + 1;
        power_tab.resize(f.q());
        for (u64 x = 0; x < f.q(); ++x) power_tab[x] = f.pow_idx(x, e_mod);
    }

    u64 pow_pu(u64 x) const { return field->pow_idx(x, pu_mod); }  // x -> x^{p^u}
    u64 pow_e(u64 x) const { return power_tab[x]; }                // x -> x^{p^u+1}

    const Field* field;
    u32 u;
    u32 v;              // gcd(m, u)
    u64 pu_mod;         // p^u reduced mod q-1 (into [1, q-1])
    u64 e_mod;          // p^u + 1 reduced mod q-1 (into [1, q-1])
    std::vector<u64> power_tab;
};

/// Outcome of solving a^{p^u} X^{p^{2u}} + a X = rhs as a GF(p)-linear system.
/// The kernel has p^kernel_dim elements; `particular` is the solution with the
/// lexicographically smallest coordinates when the system is consistent.
struct LinearizedSolution {
    u32 kernel_dim = 0;
    bool solvable = false;
    std::optional<FieldElement> particular;
};

namespace detail {

// Reduced row echelon form of an m x (m+1) augmented system over GF(p).
// Returns {rank, consistent}; pivot_col[r] records the pivot of row r.
struct Rref {
    u32 rank = 0;
    bool consistent = true;
    std::vector<u32> pivot_col;
};

inline Rref rref_mod_p(std::vector<std::vector<u32>>& rows, u32 p) {
    const u32 m = static_cast<u32>(rows.size());
    Rref out;
    u32 r = 0;
    for (u32 col = 0; col < m && r < m; ++col) {
        u32 piv = r;
        while (piv < m && rows[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(rows[r], rows[piv]);
        const u64 inv = inv_mod(rows[r][col], p);
        for (u32 j = col; j <= m; ++j) rows[r][j] = static_cast<u32>(rows[r][j] * inv % p);
        for (u32 i = 0; i < m; ++i) {
            if (i == r || rows[i][col] == 0) continue;
            const u64 factor = rows[i][col];
            for (u32 j = col; j <= m; ++j)
                rows[i][j] =
                    static_cast<u32>((rows[i][j] + (p - static_cast<u32>(factor)) * u64(rows[r][j])) % p);
        }
        out.pivot_col.push_back(col);
        ++r;
    }
    out.rank = r;
    for (u32 i = r; i < m; ++i)
        if (rows[i][m] != 0) out.consistent = false;
    return out;
}

}  // namespace detail

/// Solves a^{p^u} X^{p^{2u}} + a X = rhs over GF(q). Requires a != 0.
/// Per the structure of this particular map, the kernel is either trivial or
/// has exactly p^{2v} elements; the trivial case happens iff NOT
/// (m/v even and a^{(q-1)/(p^v+1)} = (-1)^{s/v}).
inline LinearizedSolution solve_linearized(const FieldElement& a, const FieldElement& rhs,
                                           const WeilParams& params) {
    const Field& f = *params.field;
    if (a.is_zero()) throw InvalidParameter("linearized map needs a != 0");
    if (!a.field().same_model(f) || !rhs.field().same_model(f))
        throw InvalidParameter("operands belong to different fields");

    const u32 p = f.p(), m = f.m();
    const u64 group = f.q() - 1;
    u64 exp_2u = (params.pu_mod * params.pu_mod) % group;  // p^{2u} mod (q-1)
    if (exp_2u == 0) exp_2u = group;
    const u64 a_idx = a.index();
    const u64 a_pu = params.pow_pu(a_idx);

    // columns: image of each basis element under x -> a^{p^u} x^{p^{2u}} + a x
    std::vector<std::vector<u32>> rows(m, std::vector<u32>(m + 1, 0));
    const std::vector<u32> rhs_coords = rhs.coords();
    for (u32 i = 0; i < m; ++i) rows[i][m] = rhs_coords[i];
    for (u32 j = 0; j < m; ++j) {
        std::vector<u32> basis(m, 0);
        basis[j] = 1;
        const u64 b_idx = f.index_of_coords(basis);
        const u64 img = f.add_idx(f.mul_idx(a_pu, f.pow_idx(b_idx, exp_2u)),
                                  f.mul_idx(a_idx, b_idx));
        const std::vector<u32> img_coords = f.coords_at(img);
        for (u32 i = 0; i < m; ++i) rows[i][j] = img_coords[i];
    }

    auto rr = detail::rref_mod_p(rows, p);
    LinearizedSolution sol;
    sol.kernel_dim = m - rr.rank;
    sol.solvable = rr.consistent;
    if (!rr.consistent) return sol;

    // particular solution with free variables set to zero
    std::vector<u32> x(m, 0);
    for (u32 r = 0; r < rr.rank; ++r) x[rr.pivot_col[r]] = rows[r][m];

    if (sol.kernel_dim > 0) {
        // kernel basis, one vector per free column
        std::vector<bool> is_pivot(m, false);
        for (u32 c : rr.pivot_col) is_pivot[c] = true;
        std::vector<std::vector<u32>> kernel;
        for (u32 c = 0; c < m; ++c) {
            if (is_pivot[c]) continue;
            std::vector<u32> k(m, 0);
            k[c] = 1;
            for (u32 r = 0; r < rr.rank; ++r) k[rr.pivot_col[r]] = (p - rows[r][c]) % p;
            kernel.push_back(std::move(k));
        }
        // lexicographically smallest solution in x + span(kernel), by full
        // enumeration; the coset is small for this map (p^{2v} <= q)
        u64 combos = 1;
        bool enumerable = true;
        for (u32 i = 0; i < sol.kernel_dim; ++i) {
            if (combos > (u64(1) << 22) / p) {
                enumerable = false;
                break;
            }
            combos *= p;
        }
        if (enumerable) {
            std::vector<u32> t(sol.kernel_dim, 0);
            u64 best = f.index_of_coords(x);
            std::vector<u32> cand(m);
            while (true) {
                u32 d = 0;
                while (d < sol.kernel_dim && t[d] == p - 1) t[d++] = 0;
                if (d == sol.kernel_dim) break;
                ++t[d];
                for (u32 i = 0; i < m; ++i) {
                    u64 acc = x[i];
                    for (u32 kidx = 0; kidx < sol.kernel_dim; ++kidx)
                        acc += u64(t[kidx]) * kernel[kidx][i];
                    cand[i] = static_cast<u32>(acc % p);
                }
                best = std::min(best, f.index_of_coords(cand));
            }
            x = f.coords_at(best);
        }
    }
    sol.particular = FieldElement(f, std::move(x));
    return sol;
}

/// S_u(a,b) = sum_x zeta^{Tr(a x^{p^u+1} + b x)} by direct enumeration.
inline CycInt weil_sum_brute(const FieldElement& a, const FieldElement& b,
                             const WeilParams& params) {
    const Field& f = *params.field;
    if (a.is_zero()) throw InvalidParameter("Weil sum needs a != 0");
    const u64 a_idx = a.index(), b_idx = b.index();
    std::vector<i64> counts(f.p(), 0);
    for (u64 x = 0; x < f.q(); ++x)
        ++counts[f.trace_idx(f.add_idx(f.mul_idx(a_idx, params.pow_e(x)), f.mul_idx(b_idx, x)))];
    return CycInt::from_zeta_counts(f.p(), counts);
}

namespace detail {

inline BigInt pow_bigint(u64 base, u32 exp) {
    BigInt r = 1;
    for (u32 i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace detail

/// S_u(a,b) in closed form. Dispatch: with f(X) = a^{p^u} X^{p^{2u}} + a X and
/// x0 a solution of f(X) = -b^{p^u},
///   (i)  m/v odd                      -> G(eta) eta(a) zeta^{-Tr(a x0^{p^u+1})}
///   (ii) m/v even, f bijective        -> (-1)^{s/v} p^s zeta^{-Tr(a x0^{p^u+1})}
///   (iii) f not bijective, no x0      -> 0
///   (iv) f not bijective, x0 exists   -> -(-1)^{s/v} p^{s+v} zeta^{-Tr(a x0^{p^u+1})}
inline CycInt weil_sum_closed(const FieldElement& a, const FieldElement& b,
                              const WeilParams& params) {
    const Field& f = *params.field;
    if (a.is_zero()) throw InvalidParameter("Weil sum needs a != 0");
    const u32 p = f.p(), m = f.m(), v = params.v;
    const u64 rhs_idx = f.neg_idx(params.pow_pu(b.index()));
    const LinearizedSolution sol = solve_linearized(a, f.element_at(rhs_idx), params);

    const auto chi_bar_term = [&](const FieldElement& x0) {
        const u64 w = f.mul_idx(a.index(), params.pow_e(x0.index()));
        return CycInt::zeta_pow(p, -i64(f.trace_idx(w)));
    };

    if ((m / v) % 2 == 1) {
        if (sol.kernel_dim != 0 || !sol.solvable)
            throw InternalError("bijective linearized map expected for m/v odd");
        CycInt r = gauss_sum_closed(p, m) * chi_bar_term(*sol.particular);
        return a.eta() == 1 ? r : -r;
    }

    const u32 s = f.half_degree();  // m/v even forces m even
    const bool sv_odd = ((m / v) / 2) % 2 == 1;
    if (sol.kernel_dim == 0) {
        CycInt r = chi_bar_term(*sol.particular) * detail::pow_bigint(p, s);
        return sv_odd ? -r : r;
    }
    if (!sol.solvable) return CycInt(p);
    CycInt r = chi_bar_term(*sol.particular) * detail::pow_bigint(p, s + v);
    return sv_odd ? r : -r;
}

/// Q(a,b) = sum_x zeta^{Tr(a x^2 + b x)} = G(eta) eta(a) zeta^{-Tr(b^2/(4a))}.
inline CycInt quad_sum_closed(const FieldElement& a, const FieldElement& b) {
    const Field& f = a.field();
    if (a.is_zero()) throw InvalidParameter("quadratic sum needs a != 0");
    const FieldElement four_a = f.from_residue(4) * a;
    const u32 t = (b * b * four_a.inverse()).trace();
    CycInt r = gauss_sum_closed(f) * CycInt::zeta_pow(f.p(), -i64(t));
    return a.eta() == 1 ? r : -r;
}

}  // namespace weilcodes

#endif  // WEILCODES_CHAR_SUMS_HPP
