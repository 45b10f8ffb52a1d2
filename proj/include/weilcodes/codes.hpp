// Trace codes from defining sets D in GF(q)^2 \ {(0,0)}: the codeword of a
// pair (a,b) is (Tr(a x + b y)) over the pairs (x,y) of D, in canonical
// order. Weight distributions are computed two independent ways: direct
// enumeration of all q^2 codewords, and a character-sum fast path for the
// built-in families that recovers each weight from a handful of closed-form
// sums instead of a length-n scan.

#ifndef WEILCODES_CODES_HPP
#define WEILCODES_CODES_HPP

#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "weilcodes/char_sums.hpp"

namespace weilcodes {

enum class SetFamily { d1, d2, custom };

inline std::string family_name(SetFamily f) {
    switch (f) {
        case SetFamily::d1: return "d1";
        case SetFamily::d2: return "d2";
        default: return "custom";
    }
}

/// An ordered defining set: pairs (x,y) of field elements, (0,0) excluded,
/// no duplicates, sorted by (index(x), index(y)).
class DefiningSet {
   public:
    DefiningSet(const Field& f, SetFamily family, u32 u, std::vector<std::pair<u32, u32>> pairs)
        : field_(&f), family_(family), u_(u), pairs_(std::move(pairs)) {}

    const Field& field() const { return *field_; }
    SetFamily family() const { return family_; }
    u32 u() const { return u_; }  // meaningful for the d1/d2 families
    u64 size() const { return pairs_.size(); }
    const std::vector<std::pair<u32, u32>>& pairs() const { return pairs_; }

    std::pair<FieldElement, FieldElement> pair_at(u64 i) const {
        return {field_->element_at(pairs_[i].first), field_->element_at(pairs_[i].second)};
    }

   private:
    const Field* field_;
    SetFamily family_;
    u32 u_;
    std::vector<std::pair<u32, u32>> pairs_;
};

/// All (x,y) != (0,0) with Tr(x + y^{p^u+1}) = 0; size p^{2m-1} - 1.
inline DefiningSet build_d1(const Field& f, u32 u) {
    WeilParams params(f, u);
    std::vector<u32> tr_x(f.q()), tr_ye(f.q());
    for (u64 x = 0; x < f.q(); ++x) tr_x[x] = f.trace_idx(x);
    for (u64 y = 0; y < f.q(); ++y) tr_ye[y] = f.trace_idx(params.pow_e(y));
    std::vector<std::pair<u32, u32>> pairs;
    for (u64 x = 0; x < f.q(); ++x)
        for (u64 y = 0; y < f.q(); ++y) {
            if (x == 0 && y == 0) continue;
            if ((tr_x[x] + tr_ye[y]) % f.p() == 0)
                pairs.emplace_back(static_cast<u32>(x), static_cast<u32>(y));
        }
    return DefiningSet(f, SetFamily::d1, u, std::move(pairs));
}

/// All (x,y) != (0,0) with Tr(x^2 + y^{p^u+1}) = 0. Empty exactly when
/// p = 3 mod 4 and m = 1; that case is rejected as degenerate.
inline DefiningSet build_d2(const Field& f, u32 u) {
    WeilParams params(f, u);
    std::vector<u32> tr_x2(f.q()), tr_ye(f.q());
    for (u64 x = 0; x < f.q(); ++x) tr_x2[x] = f.trace_idx(f.mul_idx(x, x));
    for (u64 y = 0; y < f.q(); ++y) tr_ye[y] = f.trace_idx(params.pow_e(y));
    std::vector<std::pair<u32, u32>> pairs;
    for (u64 x = 0; x < f.q(); ++x)
        for (u64 y = 0; y < f.q(); ++y) {
            if (x == 0 && y == 0) continue;
            if ((tr_x2[x] + tr_ye[y]) % f.p() == 0)
                pairs.emplace_back(static_cast<u32>(x), static_cast<u32>(y));
        }
    if (pairs.empty())
        throw DegenerateCode("defining set is empty (p = 3 mod 4, m = 1): no code to build");
    return DefiningSet(f, SetFamily::d2, u, std::move(pairs));
}

enum class ZeroPairPolicy { drop, reject };
enum class DuplicatePolicy { dedupe, reject };

/// Canonicalizes an arbitrary pair list into a defining set.
inline DefiningSet build_custom(const Field& f,
                                const std::vector<std::pair<FieldElement, FieldElement>>& input,
                                ZeroPairPolicy zero_policy = ZeroPairPolicy::drop,
                                DuplicatePolicy dup_policy = DuplicatePolicy::dedupe) {
    std::vector<std::pair<u32, u32>> pairs;
    pairs.reserve(input.size());
    for (const auto& [x, y] : input) {
        if (!x.field().same_model(f) || !y.field().same_model(f))
            throw InvalidParameter("pair element from a different field");
        if (x.is_zero() && y.is_zero()) {
            if (zero_policy == ZeroPairPolicy::reject)
                throw InvalidParameter("pair (0,0) is not allowed in a defining set");
            continue;
        }
        pairs.emplace_back(static_cast<u32>(x.index()), static_cast<u32>(y.index()));
    }
    std::sort(pairs.begin(), pairs.end());
    const auto dup = std::unique(pairs.begin(), pairs.end());
    if (dup != pairs.end() && dup_policy == DuplicatePolicy::reject)
        throw InvalidParameter("duplicate pair in defining set");
    pairs.erase(dup, pairs.end());
    return DefiningSet(f, SetFamily::custom, 0, std::move(pairs));
}

/// Parses the defining-set text format: one pair per line as "x;y", each
/// element m comma-separated base-p digits (coefficient of X^i at position i);
/// '#' starts a comment.
inline DefiningSet parse_defining_set(const Field& f, std::istream& in,
                                      ZeroPairPolicy zero_policy = ZeroPairPolicy::drop,
                                      DuplicatePolicy dup_policy = DuplicatePolicy::dedupe) {
    const auto parse_element = [&](const std::string& text, int line_no) {
        std::vector<u32> coords;
        std::stringstream ss(text);
        std::string digit;
        while (std::getline(ss, digit, ',')) {
            try {
                const unsigned long value = std::stoul(digit);
                if (value >= f.p()) throw std::out_of_range("digit");
                coords.push_back(static_cast<u32>(value));
            } catch (const std::exception&) {
                throw InvalidParameter("line " + std::to_string(line_no) + ": bad digit '" +
                                       digit + "'");
            }
        }
        if (coords.size() != f.m())
            throw InvalidParameter("line " + std::to_string(line_no) + ": expected " +
                                   std::to_string(f.m()) + " digits");
        return FieldElement(f, std::move(coords));
    };

    std::vector<std::pair<FieldElement, FieldElement>> input;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
        line.erase(std::remove_if(line.begin(), line.end(), is_space), line.end());
        if (line.empty()) continue;
        const auto semi = line.find(';');
        if (semi == std::string::npos)
            throw InvalidParameter("line " + std::to_string(line_no) + ": expected 'x;y'");
        input.emplace_back(parse_element(line.substr(0, semi), line_no),
                           parse_element(line.substr(semi + 1), line_no));
    }
    return build_custom(f, input, zero_policy, dup_policy);
}

/// The codeword of (a,b): entry i is Tr(a x_i + b y_i).
inline std::vector<u32> codeword(const FieldElement& a, const FieldElement& b,
                                 const DefiningSet& d) {
    const Field& f = d.field();
    if (!a.field().same_model(f) || !b.field().same_model(f))
        throw InvalidParameter("codeword pair from a different field");
    const u64 ai = a.index(), bi = b.index();
    std::vector<u32> word(d.size());
    for (u64 i = 0; i < d.size(); ++i) {
        const auto& [x, y] = d.pairs()[i];
        word[i] = f.trace_idx(f.add_idx(f.mul_idx(ai, x), f.mul_idx(bi, y)));
    }
    return word;
}

/// Sparse weight distribution of a code: multiplicity per Hamming weight,
/// A_0 = 1 included. k is log_p of the codeword count.
struct WeightDistribution {
    u64 n = 0;
    u32 k = 0;
    std::map<u64, u64> counts;

    u64 min_distance() const {
        for (const auto& [w, a] : counts)
            if (w > 0 && a > 0) return w;
        throw InvalidParameter("code has no nonzero codeword");
    }

    /// Ascending-weight enumerator string, e.g. "1 + 60z^12 + 20z^18".
    std::string enumerator() const {
        std::string s;
        for (const auto& [w, a] : counts) {
            if (a == 0) continue;
            if (!s.empty()) s += " + ";
            if (w == 0)
                s += std::to_string(a);
            else if (a == 1)
                s += "z^" + std::to_string(w);
            else
                s += std::to_string(a) + "z^" + std::to_string(w);
        }
        return s;
    }

    bool operator==(const WeightDistribution& o) const = default;
};

/// First two power-moment identities: sum A_w = p^k and, when the dual code
/// has no weight-1 words, sum w A_w = p^{k-1} n (p-1).
inline std::pair<bool, bool> pless_moments(const WeightDistribution& wd, u32 p) {
    BigInt total = 0, weighted = 0;
    for (const auto& [w, a] : wd.counts) {
        total += a;
        weighted += BigInt(w) * a;
    }
    BigInt pk = 1;
    for (u32 i = 0; i < wd.k; ++i) pk *= p;
    return {total == pk, weighted * p == pk * wd.n * (p - 1)};
}

namespace detail {

// Shared tail: turn per-pair weight counts into a per-codeword distribution.
// The zero-word count is the size of the GF(p)-linear kernel of (a,b) ->
// c(a,b), so every codeword is hit equally often.
inline WeightDistribution finalize_distribution(const Field& f, u64 n,
                                                std::map<u64, u64> pair_counts) {
    const u64 q2 = f.q() * f.q();
    const u64 zero_hits = pair_counts.at(0);
    if (zero_hits == 0 || q2 % zero_hits != 0)
        throw InternalError("zero-codeword preimage count must divide q^2");
    WeightDistribution wd;
    wd.n = n;
    const u64 codewords = q2 / zero_hits;
    u64 acc = 1;
    while (acc < codewords) {
        acc *= f.p();
        ++wd.k;
    }
    if (acc != codewords) throw InternalError("codeword count is not a power of p");
    for (const auto& [w, c] : pair_counts) {
        if (c == 0) continue;
        if (c % zero_hits != 0) throw InternalError("pair count not divisible by kernel size");
        wd.counts[w] = c / zero_hits;
    }
    return wd;
}

template <typename PerPairWeight>
inline std::map<u64, u64> sweep_pairs(const Field& f, unsigned threads, PerPairWeight&& weight) {
    const u64 q = f.q();
    if (threads <= 1) {
        std::map<u64, u64> counts;
        for (u64 a = 0; a < q; ++a)
            for (u64 b = 0; b < q; ++b) ++counts[weight(a, b)];
        return counts;
    }
    std::vector<std::map<u64, u64>> partial(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            const u64 lo = q * t / threads, hi = q * (t + 1) / threads;
            for (u64 a = lo; a < hi; ++a)
                for (u64 b = 0; b < q; ++b) ++partial[t][weight(a, b)];
        });
    }
    for (auto& th : pool) th.join();
    std::map<u64, u64> counts;
    for (const auto& part : partial)
        for (const auto& [w, c] : part) counts[w] += c;
    return counts;
}

}  // namespace detail

/// Exact weight distribution by enumerating all q^2 codewords.
inline WeightDistribution weight_distribution_brute(const DefiningSet& d, unsigned threads = 1) {
    const Field& f = d.field();
    if (d.size() == 0) throw InvalidParameter("defining set is empty");
    const u64 q = f.q();
    const auto& pairs = d.pairs();

    std::map<u64, u64> counts;
    if (f.has_pair_tables()) {
        const u16* add = f.add_table();
        const u16* mul = f.mul_table();
        const u16* tr = f.trace_table();
        counts = detail::sweep_pairs(f, threads, [&](u64 a, u64 b) {
            const u16* mul_a = mul + a * q;
            const u16* mul_b = mul + b * q;
            u64 w = 0;
            for (const auto& [x, y] : pairs) w += tr[add[u64(mul_a[x]) * q + mul_b[y]]] != 0;
            return w;
        });
    } else {
        counts = detail::sweep_pairs(f, threads, [&](u64 a, u64 b) {
            u64 w = 0;
            for (const auto& [x, y] : pairs)
                w += f.trace_idx(f.add_idx(f.mul_idx(a, x), f.mul_idx(b, y))) != 0;
            return w;
        });
    }
    return detail::finalize_distribution(f, d.size(), std::move(counts));
}

namespace detail {

// Weil and quadratic closed-form sums S_u(z, t) and Q(z, t) for all z in
// GF(p)* and t in GF(q), memoized for the fast-path sweep.
struct ClosedSumMaps {
    ClosedSumMaps(const Field& f, const WeilParams& params, bool with_quad)
        : weil(f.p() - 1), quad(with_quad ? f.p() - 1 : 0) {
        for (u32 z = 1; z < f.p(); ++z) {
            const FieldElement ze = f.from_residue(z);
            auto& row = weil[z - 1];
            row.reserve(f.q());
            for (u64 t = 0; t < f.q(); ++t)
                row.push_back(weil_sum_closed(ze, f.element_at(t), params));
            if (with_quad) {
                auto& qrow = quad[z - 1];
                qrow.reserve(f.q());
                for (u64 t = 0; t < f.q(); ++t)
                    qrow.push_back(quad_sum_closed(ze, f.element_at(t)));
            }
        }
    }

    std::vector<std::vector<CycInt>> weil;  // [z-1][t]
    std::vector<std::vector<CycInt>> quad;  // [z-1][t]
};

// Extracts n - N(a,b) from p^2 * N(a,b) = base + omega, checking that the
// value is the rational integer the theory promises.
inline u64 weight_from_scaled_count(const Field& f, u64 n, const BigInt& base,
                                    const CycInt& omega) {
    CycInt scaled = omega;
    scaled += CycInt::integer(f.p(), base);
    const auto count = scaled.as_integer();
    if (!count) throw InternalError("codeword zero-coordinate count is not rational");
    const BigInt p2 = BigInt(f.p()) * f.p();
    if (*count % p2 != 0) throw InternalError("codeword zero-coordinate count not divisible by p^2");
    const BigInt weight = BigInt(n) - *count / p2;
    if (weight < 0 || weight > n) throw InternalError("codeword weight out of range");
    return weight.convert_to<u64>();
}

}  // namespace detail

/// Exact weight distribution through the closed-form character sums; for the
/// d1/d2 families only. Output is identical to weight_distribution_brute at
/// roughly q^2 small sums instead of q^2 * n trace evaluations. Custom sets
/// fall back to direct enumeration with a warning on stderr.
inline WeightDistribution weight_distribution_charsum(const DefiningSet& d, unsigned threads = 1) {
    const Field& f = d.field();
    if (d.size() == 0) throw InvalidParameter("defining set is empty");
    if (d.family() == SetFamily::custom) {
        std::cerr << "weilcodes: no character-sum fast path for custom defining sets; "
                     "falling back to direct enumeration\n";
        return weight_distribution_brute(d, threads);
    }

    const u32 p = f.p(), m = f.m();
    const u64 q = f.q(), n = d.size();
    const WeilParams params(f, d.u());
    const detail::ClosedSumMaps maps(f, params, d.family() == SetFamily::d2);

    // p^2 * (p^{2m-2} - 1), the (a,b)-independent part of p^2 * N(a,b)
    BigInt base = 1;
    for (u32 i = 0; i + 2 < 2 * m; ++i) base *= p;
    base = BigInt(p) * p * (base - 1);

    std::map<u64, u64> counts;
    if (d.family() == SetFamily::d1) {
        const BigInt q_big = q;
        // outside the prime subfield N(a,b) collapses to p^{2m-2} - 1
        const u64 w_outside = n - (detail::pow_bigint(p, 2 * m - 2) - 1).convert_to<u64>();
        counts = detail::sweep_pairs(f, threads, [&](u64 a, u64 b) -> u64 {
            if (a == 0 && b == 0) return 0;
            if (!f.in_prime_subfield_idx(a) || a == 0) return w_outside;
            const u32 a0 = f.residue_of_idx(a);
            CycInt omega(p);
            for (u32 z2 = 1; z2 < p; ++z2) {
                const u32 z1 = static_cast<u32>((u64(z2) * (p - a0)) % p);  // -z2*a in GF(p)*
                omega += maps.weil[z1 - 1][f.mul_idx(f.embed_idx(z2), b)];
            }
            return detail::weight_from_scaled_count(f, n, base, omega * q_big);
        });
    } else {
        CycInt omega1(p);
        for (u32 z = 1; z < p; ++z) omega1 += maps.quad[z - 1][0] * maps.weil[z - 1][0];
        counts = detail::sweep_pairs(f, threads, [&](u64 a, u64 b) -> u64 {
            if (a == 0 && b == 0) return 0;
            CycInt omega2(p);
            for (u32 z1 = 1; z1 < p; ++z1)
                for (u32 z2 = 1; z2 < p; ++z2) {
                    const u64 z2i = f.embed_idx(z2);
                    omega2 += maps.quad[z1 - 1][f.mul_idx(z2i, a)] *
                              maps.weil[z1 - 1][f.mul_idx(z2i, b)];
                }
            return detail::weight_from_scaled_count(f, n, base, omega1 + omega2);
        });
    }

    // the (0,0) slot was filled with weight 0 above; every other pair must
    // give a nonzero weight for these families (dimension 2m)
    if (counts.at(0) != 1) throw InternalError("family code has an unexpected zero codeword");
    return detail::finalize_distribution(f, n, std::move(counts));
}

/// Keeps one representative (the lexicographically smallest pair) of each
/// GF(p)*-scaling orbit {(cx, cy)}. Requires the set to be closed under the
/// action with full-size orbits; weights of the resulting code are the
/// original weights divided by p-1.
inline DefiningSet puncture_by_scaling(const DefiningSet& d) {
    const Field& f = d.field();
    const u64 q = f.q();
    std::unordered_set<u64> members;
    members.reserve(d.size() * 2);
    for (const auto& [x, y] : d.pairs()) members.insert(u64(x) * q + y);

    std::vector<std::pair<u32, u32>> reps;
    std::unordered_set<u64> claimed;
    for (const auto& [x, y] : d.pairs()) {
        if (claimed.count(u64(x) * q + y)) continue;
        std::unordered_set<u64> orbit;
        for (u32 c = 1; c < f.p(); ++c) {
            const u64 ci = f.embed_idx(c);
            const u64 key = f.mul_idx(ci, x) * q + f.mul_idx(ci, y);
            if (!members.count(key))
                throw InvalidParameter("set is not closed under scaling by GF(p)*");
            orbit.insert(key);
        }
        if (orbit.size() != f.p() - 1)
            throw InvalidParameter("scaling orbit smaller than p-1 encountered");
        for (u64 key : orbit) claimed.insert(key);
        reps.emplace_back(x, y);  // first hit in canonical order = lex-smallest
    }
    return DefiningSet(f, SetFamily::custom, 0, std::move(reps));
}

}  // namespace weilcodes

#endif  // WEILCODES_CODES_HPP
