#pragma once

// An element of Q^x / (Q^x)^2 as an F2 coordinate vector over the basis
// {-1, 2, odd primes}, identified with a signed squarefree integer.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"

namespace mq2 {

struct SquareClass {
    bool sign = false;            // coordinate of -1
    bool two = false;             // coordinate of 2
    std::vector<u64> odd_primes;  // set bits, strictly increasing

    bool operator==(const SquareClass&) const = default;

    bool is_one() const { return !sign && !two && odd_primes.empty(); }
    bool is_real() const { return !sign; }

    // Coordinate ordinals: sign -> 0, two -> 1, odd prime p -> p.  The order
    // 0 < 1 < 3 < 5 < ... fixes the pivot convention for row reduction.
    static constexpr u64 kSignOrdinal = 0;
    static constexpr u64 kTwoOrdinal = 1;

    bool has_coordinate(u64 ordinal) const {
        if (ordinal == kSignOrdinal) return sign;
        if (ordinal == kTwoOrdinal) return two;
        return std::binary_search(odd_primes.begin(), odd_primes.end(), ordinal);
    }

    // Ordinal of the leading nonzero coordinate; class 1 has no pivot.
    u64 pivot() const {
        if (sign) return kSignOrdinal;
        if (two) return kTwoOrdinal;
        if (!odd_primes.empty()) return odd_primes.front();
        throw internal_error("pivot of the trivial square class");
    }

    bool divisible_by_odd_prime(u64 p) const {
        return std::binary_search(odd_primes.begin(), odd_primes.end(), p);
    }

    // Group law: coordinate-wise XOR (product modulo squares).
    SquareClass operator*(const SquareClass& o) const {
        SquareClass r;
        r.sign = sign != o.sign;
        r.two = two != o.two;
        std::set_symmetric_difference(odd_primes.begin(), odd_primes.end(),
                                      o.odd_primes.begin(), o.odd_primes.end(),
                                      std::back_inserter(r.odd_primes));
        return r;
    }

    // The signed squarefree integer this class represents.
    i64 to_integer() const {
        detail::u128 acc = two ? 2 : 1;
        for (u64 p : odd_primes) {
            acc *= p;
            if (acc > detail::u128(std::numeric_limits<i64>::max()))
                throw input_error("square class representative exceeds 64 bits");
        }
        i64 v = static_cast<i64>(acc);
        return sign ? -v : v;
    }

    // Positive representative (the class with the sign bit cleared).
    i64 abs_integer() const {
        SquareClass c = *this;
        c.sign = false;
        return c.to_integer();
    }

    static SquareClass one() { return {}; }

    // Class of a squarefree integer; rejects anything with a square factor.
    static SquareClass from_squarefree(i64 n) {
        if (n == 0) throw input_error("square class of zero");
        SquareClass c = reduce(n);
        if (c.to_integer() != n) throw input_error("radicand is not squarefree: " + std::to_string(n));
        return c;
    }

    // Class of an arbitrary nonzero integer, reduced modulo squares with the
    // sign preserved.
    static SquareClass reduce(i64 n) {
        if (n == 0) throw input_error("square class of zero");
        if (n == std::numeric_limits<i64>::min()) throw input_error("radicand out of range");
        SquareClass c;
        c.sign = n < 0;
        u64 m = static_cast<u64>(n < 0 ? -n : n);
        for (const auto& f : factorize(m).factors) {
            if (f.exponent % 2 == 0) continue;
            if (f.prime == 2)
                c.two = true;
            else
                c.odd_primes.push_back(f.prime);
        }
        return c;
    }
};

// Total order used only to make enumerations deterministic.
inline bool square_class_less(const SquareClass& a, const SquareClass& b) {
    if (a.sign != b.sign) return !a.sign;
    if (a.two != b.two) return !a.two;
    return std::lexicographical_compare(a.odd_primes.begin(), a.odd_primes.end(),
                                        b.odd_primes.begin(), b.odd_primes.end());
}

} // namespace mq2
