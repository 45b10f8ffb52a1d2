// Closed-form weight distributions for the d1/d2 code families, the case
// split that selects the right table, auxiliary counting identities, the
// Griesmer bound, and an end-to-end verifier that checks the prediction
// against both computational paths.
//
// Table evaluation runs over exact rationals; a non-integral weight or
// multiplicity indicates a case-dispatch bug and is a hard error.

#ifndef WEILCODES_THEORY_HPP
#define WEILCODES_THEORY_HPP

#include <optional>

#include "weilcodes/codes.hpp"

namespace weilcodes {

using Rational = boost::multiprecision::cpp_rational;

enum class TheoremCase {
    m_odd,            // d1, odd extension degree
    mv_odd_v_even,    // d1, m/v odd with v even
    mv_2_mod_4,       // d1 or d2 ... m/v = 2 (mod 4) for d1 only; see d2_small
    mv_0_mod_4,       // d1 or d2, m/v = 0 (mod 4)
    d2_small,         // d2, m/v odd or m/v = 2 (mod 4): the two-weight case
    d2_degenerate,    // d2 with p = 3 (mod 4), m = 1: empty defining set
};

inline std::string case_name(TheoremCase c) {
    switch (c) {
        case TheoremCase::m_odd: return "M_ODD";
        case TheoremCase::mv_odd_v_even: return "MV_ODD_V_EVEN";
        case TheoremCase::mv_2_mod_4: return "MV_2_MOD_4";
        case TheoremCase::mv_0_mod_4: return "MV_0_MOD_4";
        case TheoremCase::d2_small: return "D2_SMALL";
        case TheoremCase::d2_degenerate: return "D2_DEGENERATE";
    }
    return "?";
}

/// Which closed-form table applies to (family, p, m, u), plus the sub-flags
/// the tables branch on.
struct CaseTag {
    SetFamily family;
    TheoremCase c;
    u32 p_mod_4;
    u32 v;
    bool v_odd;
};

inline void validate_family_params(SetFamily family, u32 p, u32 m, u32 u) {
    if (family == SetFamily::custom)
        throw InvalidParameter("no closed-form case for custom defining sets");
    if (!detail::is_odd_prime(p)) throw InvalidParameter("p must be an odd prime >= 3");
    if (m < 1 || u < 1) throw InvalidParameter("m and u must be positive");
}

/// Deterministic, total case dispatch. For d1 the four cases {m odd},
/// {m/v odd, v even}, {m/v = 2 mod 4}, {m/v = 0 mod 4} partition all inputs.
inline CaseTag classify_case(SetFamily family, u32 p, u32 m, u32 u) {
    validate_family_params(family, p, m, u);
    const u32 v = std::gcd(m, u);
    const u32 mv = m / v;
    CaseTag tag{family, TheoremCase::m_odd, p % 4, v, v % 2 == 1};
    if (family == SetFamily::d1) {
        if (m % 2 == 1)
            tag.c = TheoremCase::m_odd;
        else if (mv % 2 == 1)
            tag.c = TheoremCase::mv_odd_v_even;  // m even with m/v odd forces v even
        else if (mv % 4 == 2)
            tag.c = TheoremCase::mv_2_mod_4;
        else
            tag.c = TheoremCase::mv_0_mod_4;
    } else {
        if (p % 4 == 3 && m == 1)
            tag.c = TheoremCase::d2_degenerate;
        else if (mv % 2 == 1 || mv % 4 == 2)
            tag.c = TheoremCase::d2_small;
        else
            tag.c = TheoremCase::mv_0_mod_4;
    }
    return tag;
}

namespace detail {

inline Rational rat_pow(u32 p, u32 e) {
    Rational r = 1;
    for (u32 i = 0; i < e; ++i) r *= p;
    return r;
}

inline u64 rat_to_u64(const Rational& r, const char* what) {
    if (boost::multiprecision::denominator(r) != 1 || r < 0)
        throw InternalError(std::string("non-integral or negative ") + what +
                            " from a closed-form table");
    return boost::multiprecision::numerator(r).convert_to<u64>();
}

}  // namespace detail

/// The closed-form weight distribution for (family, p, m, u). Throws
/// DegenerateCode when the d2 set is empty (p = 3 mod 4, m = 1).
inline WeightDistribution predicted_distribution(SetFamily family, u32 p, u32 m, u32 u) {
    const CaseTag tag = classify_case(family, p, m, u);
    if (tag.c == TheoremCase::d2_degenerate)
        throw DegenerateCode("d2 family is empty for p = 3 mod 4, m = 1");

    const u32 v = tag.v;
    const Rational P = p;
    const Rational big_w = (P - 1) * detail::rat_pow(p, 2 * m - 2);  // the common weight
    Rational n;
    std::vector<std::pair<Rational, Rational>> rows;  // (weight, multiplicity)

    switch (tag.c) {
        case TheoremCase::m_odd: {
            n = detail::rat_pow(p, 2 * m - 1) - 1;
            const Rational ph = detail::rat_pow(p, (m - 1) / 2);   // p^{(m-1)/2}
            const Rational pm1 = detail::rat_pow(p, m - 1);
            rows = {
                {big_w, detail::rat_pow(p, 2 * m) - 1 - (P - 1) * (P - 1) * pm1},
                {big_w * (1 - 1 / ((P - 1) * ph)), (P - 1) * (P - 1) * (pm1 + ph) / 2},
                {big_w * (1 + 1 / ((P - 1) * ph)), (P - 1) * (P - 1) * (pm1 - ph) / 2},
            };
            break;
        }
        case TheoremCase::mv_odd_v_even: {
            n = detail::rat_pow(p, 2 * m - 1) - 1;
            const auto g_int = gauss_sum_closed(p, m).as_integer();
            if (!g_int) throw InternalError("Gauss sum not rational for even m");
            const Rational G(*g_int);
            const Rational q = detail::rat_pow(p, m);
            const Rational pm1 = detail::rat_pow(p, m - 1);
            rows = {
                {big_w, detail::rat_pow(p, 2 * m) - 1 - (P - 1) * q},
                {big_w * (1 - G / q), (P - 1) * pm1 * (1 + (P - 1) * G / q)},
                {big_w * (1 + G / ((P - 1) * q)), (P - 1) * pm1 * (P - 1 - (P - 1) * G / q)},
            };
            break;
        }
        case TheoremCase::mv_2_mod_4: {
            n = detail::rat_pow(p, 2 * m - 1) - 1;
            const u32 s = m / 2;
            const Rational ps = detail::rat_pow(p, s);
            const Rational ps1 = detail::rat_pow(p, s - 1);
            rows = {
                {big_w, detail::rat_pow(p, 2 * m) - 1 - (P - 1) * detail::rat_pow(p, m)},
                {big_w * (1 + 1 / ps), (P - 1) * (detail::rat_pow(p, m - 1) - ps + ps1)},
                {big_w * (1 - 1 / ((P - 1) * ps)), (P - 1) * (ps + 1) * (ps - ps1)},
            };
            break;
        }
        case TheoremCase::mv_0_mod_4: {
            if (family == SetFamily::d1) {
                n = detail::rat_pow(p, 2 * m - 1) - 1;
                const u32 s = m / 2;
                const Rational psv = detail::rat_pow(p, s - v);
                const Rational psv1 = psv / p;
                rows = {
                    {big_w,
                     detail::rat_pow(p, 2 * m) - 1 - (P - 1) * detail::rat_pow(p, m - 2 * v)},
                    {big_w * (1 + 1 / psv),
                     (P - 1) * (detail::rat_pow(p, m - 2 * v - 1) - psv + psv1)},
                    {big_w * (1 - 1 / ((P - 1) * psv)), (P - 1) * (psv + 1) * (psv - psv1)},
                };
            } else {
                n = detail::rat_pow(p, 2 * m - 1) + detail::rat_pow(p, m + v) -
                    detail::rat_pow(p, m + v - 1) - 1;
                const Rational pmv = detail::rat_pow(p, m - v);
                const Rational pmv1 = pmv / p;
                rows = {
                    {big_w, (pmv - 1) * (pmv1 + 1)},
                    {big_w * (1 + (P - 1) / pmv),
                     detail::rat_pow(p, 2 * m) - detail::rat_pow(p, 2 * m - 2 * v)},
                    {big_w * (1 + 1 / pmv1), (pmv - 1) * pmv1 * (P - 1)},
                };
            }
            break;
        }
        case TheoremCase::d2_small: {
            const Rational q = detail::rat_pow(p, m);
            const Rational pm1 = detail::rat_pow(p, m - 1);
            if (tag.p_mod_4 == 3 && tag.v_odd) {
                n = (q + 1) * (pm1 - 1);
                rows = {
                    {big_w, (q + 1) * (pm1 - 1)},
                    {big_w * (1 - 1 / pm1), (q + 1) * pm1 * (P - 1)},
                };
            } else {
                n = (q - 1) * (pm1 + 1);
                rows = {
                    {big_w, (q - 1) * (pm1 + 1)},
                    {big_w * (1 + 1 / pm1), (q - 1) * pm1 * (P - 1)},
                };
            }
            break;
        }
        case TheoremCase::d2_degenerate:
            throw InternalError("unreachable");
    }

    WeightDistribution wd;
    wd.n = detail::rat_to_u64(n, "length");
    wd.k = 2 * m;
    wd.counts[0] = 1;
    for (const auto& [w, a] : rows) {
        const u64 mult = detail::rat_to_u64(a, "multiplicity");
        if (mult == 0) continue;
        const u64 weight = detail::rat_to_u64(w, "weight");
        if (weight == 0 || weight > wd.n) throw InternalError("table weight out of range");
        wd.counts[weight] += mult;
    }
    const auto [m1, m2] = pless_moments(wd, p);
    if (!m1 || !m2) throw InternalError("predicted distribution violates a power moment");
    return wd;
}

/// How often Tr(x^{p^u+1}) vanishes / how often X^{p^{2u}} + X = c^{p^u} is
/// solvable, by enumeration. `in_hypothesis` records whether the parameters
/// satisfy the assumption under which the closed-form value is claimed.
struct LemmaCount {
    u64 value;
    bool in_hypothesis;
};

/// |{x : Tr(x^{p^u+1}) = 0}|; equals p^{m-1} when m is odd.
inline LemmaCount trace_zero_power_count(const Field& f, u32 u) {
    WeilParams params(f, u);
    u64 count = 0;
    for (u64 x = 0; x < f.q(); ++x)
        if (f.trace_idx(params.pow_e(x)) == 0) ++count;
    return {count, f.m() % 2 == 1};
}

/// |{c : X^{p^{2u}} + X = c^{p^u} solvable}|; equals p^{m-2v} when
/// m/v = 0 (mod 4). Counted through the linear solver, one rhs at a time.
inline LemmaCount solvable_shift_count(const Field& f, u32 u) {
    WeilParams params(f, u);
    const FieldElement one = f.one();
    u64 count = 0;
    for (u64 c = 0; c < f.q(); ++c) {
        const u64 rhs = params.pow_pu(c);
        if (solve_linearized(one, f.element_at(rhs), params).solvable) ++count;
    }
    const u32 v = std::gcd(f.m(), u);
    return {count, (f.m() / v) % 4 == 0};
}

/// Griesmer length bound: the minimum n admitting an [n,k,d] code over GF(p).
inline BigInt griesmer_length(u32 k, u64 d, u32 p) {
    if (k == 0 || d == 0) throw InvalidParameter("griesmer bound needs k >= 1 and d >= 1");
    BigInt total = 0, pe = 1;
    for (u32 i = 0; i < k; ++i) {
        total += (BigInt(d) + pe - 1) / pe;  // ceil(d / p^i)
        pe *= p;
    }
    return total;
}

/// Largest d with griesmer_length(k, d, p) <= n, by binary search.
inline u64 best_d_at_length(u64 n, u32 k, u32 p) {
    if (k == 0) throw InvalidParameter("griesmer bound needs k >= 1");
    u64 lo = 0, hi = n;  // griesmer_length >= d, so d <= n
    while (lo < hi) {
        const u64 mid = lo + (hi - lo + 1) / 2;
        if (griesmer_length(k, mid, p) <= BigInt(n))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

enum class OptimalityVerdict { optimal, almost_optimal, neither };

inline std::string verdict_name(OptimalityVerdict v) {
    switch (v) {
        case OptimalityVerdict::optimal: return "optimal";
        case OptimalityVerdict::almost_optimal: return "almost-optimal";
        default: return "neither";
    }
}

/// Where [n,k,d] stands against the Griesmer bound: optimal when d is the
/// largest minimum distance the bound admits at this (n,k), almost-optimal
/// when it is one below.
struct OptimalityReport {
    u64 n;
    u32 k;
    u64 d;
    BigInt griesmer_min_n;
    u64 max_d_at_n;
    OptimalityVerdict verdict;
};

inline OptimalityReport classify_optimality(u64 n, u32 k, u64 d, u32 p) {
    OptimalityReport r{n, k, d, griesmer_length(k, d, p), best_d_at_length(n, k, p),
                       OptimalityVerdict::neither};
    if (d == r.max_d_at_n)
        r.verdict = OptimalityVerdict::optimal;
    else if (d + 1 == r.max_d_at_n)
        r.verdict = OptimalityVerdict::almost_optimal;
    return r;
}

/// Outcome of checking one (family, p, m, u) instance three ways.
struct VerificationReport {
    SetFamily family;
    u32 p, m, u;
    CaseTag tag;
    bool degenerate = false;
    std::optional<WeightDistribution> predicted, brute, charsum;
    bool match = false;
    std::pair<bool, bool> pless{false, false};
    std::optional<OptimalityReport> optimality;
    struct Punctured {
        WeightDistribution dist;
        OptimalityReport optimality;
    };
    std::optional<Punctured> punctured;
};

/// Runs the prediction, the direct enumeration and the character-sum fast
/// path for one instance and reports exact agreement. The d2 family also
/// carries the scaled-down code obtained by puncturing.
inline VerificationReport verify_instance(SetFamily family, const Field& f, u32 u,
                                          unsigned threads = 1) {
    VerificationReport r{family, f.p(), f.m(), u, classify_case(family, f.p(), f.m(), u)};
    if (r.tag.c == TheoremCase::d2_degenerate) {
        r.degenerate = true;
        return r;
    }
    const DefiningSet d = family == SetFamily::d1 ? build_d1(f, u) : build_d2(f, u);
    r.predicted = predicted_distribution(family, f.p(), f.m(), u);
    r.brute = weight_distribution_brute(d, threads);
    r.charsum = weight_distribution_charsum(d, threads);
    r.match = *r.predicted == *r.brute && *r.brute == *r.charsum;
    r.pless = pless_moments(*r.brute, f.p());
    r.optimality = classify_optimality(r.brute->n, r.brute->k, r.brute->min_distance(), f.p());
    if (family == SetFamily::d2) {
        const DefiningSet punctured = puncture_by_scaling(d);
        WeightDistribution pd = weight_distribution_brute(punctured, threads);
        OptimalityReport popt = classify_optimality(pd.n, pd.k, pd.min_distance(), f.p());
        r.punctured = VerificationReport::Punctured{std::move(pd), popt};
    }
    return r;
}

}  // namespace weilcodes

#endif  // WEILCODES_THEORY_HPP
