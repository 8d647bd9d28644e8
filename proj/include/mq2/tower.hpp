#pragma once

// Decomposition data for odd primes in the cyclotomic Z2-tower over Q and in
// quadratic / multi-quadratic extensions of its layers.  The n-th layer has
// degree 2^n and is the real subfield of the 2^(n+2)-th cyclotomic field, so
// everything reduces to residue computations modulo powers of two.

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"
#include "field.hpp"

namespace mq2 {

enum class SplitBehavior {
    Split,
    Inert,
    Ramified,
    Mixed, // reserved for compositum reporting; never produced here
};

inline const char* to_string(SplitBehavior b) {
    switch (b) {
        case SplitBehavior::Split: return "split";
        case SplitBehavior::Inert: return "inert";
        case SplitBehavior::Ramified: return "ramified";
        case SplitBehavior::Mixed: return "mixed";
    }
    return "?";
}

struct SplittingReport {
    u64 prime = 0;
    int level = 0;
    i64 e = 1; // odd primes are unramified in the tower
    i64 f = 1;
    i64 g = 1;
    std::vector<std::pair<i64, SplitBehavior>> quadratic_steps; // radicand -> behavior
};

namespace detail {

inline void require_odd_prime_checked(u64 p, const char* who) {
    if (p == 2) throw input_error(std::string(who) + ": the prime 2 is out of scope");
    if (p < 3 || !is_prime(p)) throw input_error(std::string(who) + ": p must be an odd prime");
}

} // namespace detail

// Residual degree of the odd prime p at level n of the tower.
inline i64 residual_degree_qn(u64 p, int n) {
    detail::require_odd_prime_checked(p, "residual_degree_qn");
    detail::require_level(n, 0, "residual_degree_qn");
    return min_pm1_exponent(p, n + 2);
}

// Number of primes above p at level n: 2^n while the level is small against
// v2(p^2-1), then stable at 2^(v2(p^2-1)-3).
inline i64 num_primes_qn(u64 p, int n) {
    detail::require_odd_prime_checked(p, "num_primes_qn");
    detail::require_level(n, 0, "num_primes_qn");
    int b = std::countr_zero(p - 1) + std::countr_zero(p + 1);
    if (n + 2 < b) return i64{1} << n;
    return i64{1} << (b - 3);
}

// Residual degree of p in the subfield of the m-th cyclotomic field fixed by
// the subgroup H of (Z/mZ)^x: the least f with p^f mod m in H.  This walk is
// the independent check for the closed forms above.
inline i64 frobenius_degree_subfield(u64 p, u64 m, std::span<const u64> subgroup_gens) {
    if (m < 1 || m > 10'000'000) throw input_error("frobenius_degree_subfield: modulus out of range");
    if (!is_prime(p)) throw input_error("frobenius_degree_subfield: p must be prime");
    if (std::gcd(p, m) != 1)
        throw input_error("frobenius_degree_subfield: ramified case, p divides the modulus");
    std::vector<char> in_h(m, 0);
    in_h[1 % m] = 1;
    std::vector<u64> frontier{1 % m};
    for (u64 g : subgroup_gens) {
        if (std::gcd(g % m, m) != 1)
            throw input_error("frobenius_degree_subfield: generator not a unit mod m");
    }
    while (!frontier.empty()) {
        u64 x = frontier.back();
        frontier.pop_back();
        for (u64 g : subgroup_gens) {
            u64 y = detail::mulmod(x, g % m, m);
            if (!in_h[y]) {
                in_h[y] = 1;
                frontier.push_back(y);
            }
        }
    }
    u64 x = p % m;
    for (i64 f = 1; f <= static_cast<i64>(m); ++f) {
        if (in_h[x]) return f;
        x = detail::mulmod(x, p % m, m);
    }
    throw internal_error("frobenius_degree_subfield: walk failed to terminate");
}

// Behavior of the primes above p in Q_n(sqrt(d)) / Q_n.  A ramified prime
// stays ramified at every level.  Otherwise the step splits iff d is a square
// in the level-n residue field F_(p^f) with f = f_(2^(n+2))(p), that is, iff
// (d/p) = 1 or f is even; a non-residue therefore goes inert exactly for
// n < v2(p^2-1) - 2 and splits from that level on.
inline SplitBehavior splitting_qn_quadratic(u64 p, i64 d, int n) {
    detail::require_odd_prime_checked(p, "splitting_qn_quadratic");
    detail::require_level(n, 0, "splitting_qn_quadratic");
    SquareClass dc = SquareClass::from_squarefree(d); // rejects non-squarefree d
    if (dc.divisible_by_odd_prime(p)) return SplitBehavior::Ramified;
    if (legendre(d, p) == 1) return SplitBehavior::Split;
    return min_pm1_exponent(p, n + 2) % 2 == 0 ? SplitBehavior::Split : SplitBehavior::Inert;
}

// All primes above p split completely in the multi-quadratic extension of the
// top of the tower iff p divides none of the radicands.
inline bool splits_completely_qinf_multiquad(u64 p, std::span<const i64> radicands) {
    detail::require_odd_prime_checked(p, "splits_completely_qinf_multiquad");
    for (i64 d : radicands) {
        SquareClass dc = SquareClass::from_squarefree(d);
        if (dc.divisible_by_odd_prime(p)) return false;
    }
    return true;
}

inline SplittingReport splitting_report(u64 p, int n, std::span<const i64> radicands = {}) {
    SplittingReport rep;
    rep.prime = p;
    rep.level = n;
    rep.f = residual_degree_qn(p, n);
    rep.g = num_primes_qn(p, n);
    for (i64 d : radicands) rep.quadratic_steps.emplace_back(d, splitting_qn_quadratic(p, d, n));
    return rep;
}

// Ramification counts (s_i, f_i) for the presentation (d_1, ..., d_r, -d)
// over Q: f_i counts the places of the (i-1)-st real layer above primes of
// d_i that are new at step i, s_i the ramified places on the imaginary side,
// supported on the primes shared by d_i and the squarefree kernel of
// t_{i+1} = d_{i+1} ... d_r d.  Closed forms via v2(p^2-1).
namespace detail {

inline void validate_si_fi_args(std::span<const i64> d_list, i64 d) {
    if (d < 1 || !is_squarefree(static_cast<u64>(d)))
        throw input_error("count_si_fi: d must be positive squarefree");
    for (i64 di : d_list) {
        if (di < 1 || di % 2 == 0 || !is_squarefree(static_cast<u64>(di)))
            throw input_error("count_si_fi: radicands must be odd positive squarefree");
    }
    if (MultiQuadField::from_radicands(d_list).rank() != static_cast<int>(d_list.size()))
        throw input_error("count_si_fi: radicands must be multiplicatively independent");
}

inline std::pair<i64, i64> count_si_fi_unchecked(int i, std::span<const i64> d_list, i64 d) {
    int r = static_cast<int>(d_list.size());
    auto divides_earlier = [&](u64 p) {
        for (int t = 0; t + 1 < i; ++t)
            if (static_cast<u64>(d_list[t]) % p == 0) return true;
        return false;
    };
    // p | sqf(t_{i+1}) iff p divides an odd number of the factors of t_{i+1}
    auto in_sqf_tail = [&](u64 p) {
        int count = (static_cast<u64>(d) % p == 0) ? 1 : 0;
        for (int t = i; t < r; ++t)
            if (static_cast<u64>(d_list[t]) % p == 0) ++count;
        return count % 2 == 1;
    };

    i64 s = 0, f = 0;
    for (u64 p : odd_prime_divisors(static_cast<u64>(d_list[i - 1]))) {
        if (divides_earlier(p)) continue;
        int b = std::countr_zero(p - 1) + std::countr_zero(p + 1);
        f += i64{1} << (b + i - 4);
        if (in_sqf_tail(p)) s += i64{1} << (b + i - 3);
    }
    return {s, f};
}

} // namespace detail

inline std::pair<i64, i64> count_si_fi(int i, std::span<const i64> d_list, i64 d) {
    if (i < 1 || i > static_cast<int>(d_list.size()))
        throw input_error("count_si_fi: index out of range");
    detail::validate_si_fi_args(d_list, d);
    return detail::count_si_fi_unchecked(i, d_list, d);
}

// All (s_i, f_i) for i = 1..r with the arguments validated once.
inline std::pair<std::vector<i64>, std::vector<i64>> count_si_fi_all(std::span<const i64> d_list,
                                                                     i64 d) {
    detail::validate_si_fi_args(d_list, d);
    std::vector<i64> s, f;
    for (int i = 1; i <= static_cast<int>(d_list.size()); ++i) {
        auto [si, fi] = detail::count_si_fi_unchecked(i, d_list, d);
        s.push_back(si);
        f.push_back(fi);
    }
    return {std::move(s), std::move(f)};
}

} // namespace mq2
