#pragma once

// Exact integer arithmetic: 2-adic and p-adic valuations, factorization,
// squarefree kernels, Legendre and rational quartic residue symbols, and
// the closed-form order/degree functions modulo powers of two.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace mq2 {

using i64 = std::int64_t;
using u64 = std::uint64_t;

namespace detail {

using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(u128(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// a reduced into [0, m)
inline u64 euclid_mod(i64 a, u64 m) {
    i64 mm = static_cast<i64>(m);
    i64 r = a % mm;
    if (r < 0) r += mm;
    return static_cast<u64>(r);
}

} // namespace detail

// Largest k with 2^k dividing n.  The trailing-zero count of the two's
// complement representation equals that of the magnitude, so no sign
// handling is needed.
inline int v2(i64 n) {
    if (n == 0) throw input_error("valuation of zero");
    return std::countr_zero(static_cast<u64>(n));
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    // deterministic Miller-Rabin base set for 64-bit inputs
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = detail::powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Exponent of the prime p in n.
inline int vp(i64 n, u64 p) {
    if (n == 0) throw input_error("valuation of zero");
    if (p < 2 || !is_prime(p)) throw input_error("vp: modulus must be prime");
    u64 m = static_cast<u64>(n < 0 ? -(n + 1) : n);
    if (n < 0) m += 1; // |n| without overflow at INT64_MIN
    int k = 0;
    while (m % p == 0) {
        m /= p;
        ++k;
    }
    return k;
}

inline std::vector<u64> primes_below(u64 bound) {
    std::vector<u64> out;
    if (bound <= 2) return out;
    std::vector<bool> composite(bound, false);
    for (u64 i = 2; i < bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j < bound; j += i) composite[j] = true;
    }
    return out;
}

namespace detail {

inline const std::vector<u64>& trial_division_primes() {
    static const std::vector<u64> primes = primes_below(1'000'000);
    return primes;
}

inline u64 pollard_rho(u64 n) {
    // Brent's cycle variant; n is an odd composite with no factor < 10^6.
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            u64 diff = x > y ? x - y : y - x;
            if (diff == 0) break; // cycle without factor; retry with next c
            d = std::gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

} // namespace detail

struct PrimePower {
    u64 prime = 0;
    int exponent = 0;
    bool operator==(const PrimePower&) const = default;
};

struct Factorization {
    u64 value = 1;
    std::vector<PrimePower> factors; // primes strictly increasing, exponents >= 1
};

inline Factorization factorize(u64 n) {
    if (n == 0) throw input_error("factorize: input must be positive");
    Factorization out;
    out.value = n;
    u64 m = n;
    for (u64 p : detail::trial_division_primes()) {
        if (p * p > m) break;
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out.factors.push_back({p, e});
    }
    if (m > 1) {
        if (is_prime(m)) {
            out.factors.push_back({m, 1});
        } else {
            // product of at most two primes > 10^6 after trial division of a u64
            std::vector<u64> stack{m};
            std::vector<u64> primes;
            while (!stack.empty()) {
                u64 v = stack.back();
                stack.pop_back();
                if (is_prime(v)) {
                    primes.push_back(v);
                    continue;
                }
                u64 d = detail::pollard_rho(v);
                stack.push_back(d);
                stack.push_back(v / d);
            }
            std::sort(primes.begin(), primes.end());
            for (size_t i = 0; i < primes.size();) {
                size_t j = i;
                while (j < primes.size() && primes[j] == primes[i]) ++j;
                out.factors.push_back({primes[i], static_cast<int>(j - i)});
                i = j;
            }
            std::sort(out.factors.begin(), out.factors.end(),
                      [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
        }
    }
    return out;
}

inline std::vector<u64> odd_prime_divisors(u64 n) {
    std::vector<u64> out;
    for (const auto& f : factorize(n).factors)
        if (f.prime != 2) out.push_back(f.prime);
    return out;
}

// Squarefree kernel: product of the primes dividing n to an odd power.
inline u64 sqf(u64 n) {
    if (n == 0) throw input_error("sqf: input must be positive");
    u64 out = 1;
    for (const auto& f : factorize(n).factors)
        if (f.exponent % 2) out *= f.prime;
    return out;
}

inline bool is_squarefree(u64 n) {
    if (n == 0) return false;
    for (const auto& f : factorize(n).factors)
        if (f.exponent > 1) return false;
    return true;
}

// sqf of |n| with the sign of n preserved.
inline i64 sqf_signed(i64 n) {
    if (n == 0) throw input_error("sqf: input must be nonzero");
    if (n == std::numeric_limits<i64>::min()) throw input_error("sqf: input out of range");
    u64 k = sqf(static_cast<u64>(n < 0 ? -n : n));
    return n < 0 ? -static_cast<i64>(k) : static_cast<i64>(k);
}

inline int legendre(i64 a, u64 p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p)) throw input_error("legendre: p must be an odd prime");
    u64 r = detail::euclid_mod(a, p);
    if (r == 0) return 0;
    return detail::powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Rational quartic residue symbol a^((p-1)/4) mod p, defined when p = 1 (mod 4)
// and a is a quadratic residue mod p.
inline int quartic_symbol(i64 a, u64 p) {
    if (!is_prime(p) || p % 4 != 1) throw input_error("quartic symbol: p must be a prime = 1 (mod 4)");
    if (legendre(a, p) != 1) throw input_error("quartic symbol undefined: a is not a quadratic residue mod p");
    u64 r = detail::powmod(detail::euclid_mod(a, p), (p - 1) / 4, p);
    if (r == 1) return 1;
    if (r == p - 1) return -1;
    throw internal_error("quartic symbol: fourth power of residue is not +-1");
}

// (-1)^((m-1)/8) for m = 1 (mod 8); the quartic symbol at the prime 2.
inline int quartic_symbol_mod2(i64 m) {
    if (((m % 8) + 8) % 8 != 1) throw input_error("quartic symbol at 2 undefined: m must be = 1 (mod 8)");
    i64 k = (m - 1) / 8;
    return k % 2 == 0 ? 1 : -1;
}

namespace detail {

inline void require_odd_prime_arg(u64 p, const char* who) {
    if (p < 3 || p % 2 == 0) throw input_error(std::string(who) + ": p must be an odd prime");
}

inline void require_level(int n, int lo, const char* who) {
    if (n < lo || n > 58) throw input_error(std::string(who) + ": level out of range");
}

} // namespace detail

// Multiplicative order of the odd prime p modulo 2^n, by the case split on
// v2(p-1) and v2(p^2-1).
inline i64 order_mod_2pow(u64 p, int n) {
    detail::require_odd_prime_arg(p, "order_mod_2pow");
    detail::require_level(n, 1, "order_mod_2pow");
    int a = std::countr_zero(p - 1);
    int b = a + std::countr_zero(p + 1); // v2(p^2 - 1), no overflow
    if (n <= a) return 1;
    if (n <= b) return 2;
    return i64{1} << (n - b + 1);
}

// Smallest f >= 1 with p^f = +-1 (mod 2^n): 1 below the v2(p^2-1) threshold,
// 2^(n - v2(p^2-1) + 1) at or above it.
inline i64 min_pm1_exponent(u64 p, int n) {
    detail::require_odd_prime_arg(p, "min_pm1_exponent");
    detail::require_level(n, 1, "min_pm1_exponent");
    int b = std::countr_zero(p - 1) + std::countr_zero(p + 1);
    if (n < b) return 1;
    return i64{1} << (n - b + 1);
}

} // namespace mq2
