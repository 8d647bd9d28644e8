#include <catch2/catch.hpp>

#include <cmath>

#include "mq2/arith.hpp"
#include "mq2/oracle.hpp"

using namespace mq2;

TEST_CASE("v2 on small inputs") {
    CHECK(v2(48) == 4);
    CHECK(v2(7 * 7 - 1) == 4);
    CHECK(v2(-6) == 1);
    CHECK(v2(1) == 0);
    CHECK_THROWS_AS(v2(0), input_error);
}

TEST_CASE("vp") {
    CHECK(vp(360, 3) == 2);
    CHECK(vp(360, 7) == 0);
    CHECK(vp(-363, 11) == 2);
    CHECK_THROWS_AS(vp(0, 3), input_error);
    CHECK_THROWS_AS(vp(12, 4), input_error);
}

TEST_CASE("factorize") {
    auto f = factorize(360);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == PrimePower{2, 3});
    CHECK(f.factors[1] == PrimePower{3, 2});
    CHECK(f.factors[2] == PrimePower{5, 1});

    CHECK(factorize(1).factors.empty());

    auto g = factorize(363);
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0] == PrimePower{3, 1});
    CHECK(g.factors[1] == PrimePower{11, 2});

    CHECK_THROWS_AS(factorize(0), input_error);
}

TEST_CASE("factorize invariants on a range") {
    for (u64 n = 1; n <= 3000; ++n) {
        auto f = factorize(n);
        u64 prod = 1;
        u64 last = 0;
        for (const auto& pp : f.factors) {
            REQUIRE(pp.prime > last);
            REQUIRE(pp.exponent >= 1);
            REQUIRE(is_prime(pp.prime));
            for (int e = 0; e < pp.exponent; ++e) prod *= pp.prime;
            last = pp.prime;
        }
        REQUIRE(prod == n);
    }
}

TEST_CASE("factorize beyond the trial division bound") {
    // 1000003 * 1000033 has both factors above 10^6
    u64 n = 1000003ull * 1000033ull;
    auto f = factorize(n);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == PrimePower{1000003, 1});
    CHECK(f.factors[1] == PrimePower{1000033, 1});
}

TEST_CASE("sqf") {
    CHECK(sqf(1) == 1);
    CHECK(sqf(363) == 3);
    CHECK(sqf(3 * 11) == 33);
    CHECK(sqf_signed(-12) == -3);
    CHECK_THROWS_AS(sqf(0), input_error);

    u64 bad = 0;
    for (u64 n = 1; n <= 1'000'000; ++n) {
        u64 k = sqf(n);
        u64 q = n / k;
        u64 r = static_cast<u64>(std::sqrt(static_cast<double>(q)));
        while (r * r > q) --r;
        while ((r + 1) * (r + 1) <= q) ++r;
        if (n % k != 0 || r * r != q || !is_squarefree(k)) ++bad;
    }
    REQUIRE(bad == 0);
}

TEST_CASE("legendre") {
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(41, 13) == -1);
    CHECK(legendre(13, 13) == 0);
    CHECK(legendre(-1, 3) == -1);
    CHECK(legendre(-1, 5) == 1);
    CHECK_THROWS_AS(legendre(3, 9), input_error);
    CHECK_THROWS_AS(legendre(3, 2), input_error);

    // Euler criterion against direct square counting mod p
    for (u64 p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        std::vector<bool> is_square(p, false);
        for (u64 a = 1; a < p; ++a) is_square[a * a % p] = true;
        for (u64 a = 1; a < p; ++a) CHECK(legendre(static_cast<i64>(a), p) == (is_square[a] ? 1 : -1));
    }
}

TEST_CASE("quartic symbols") {
    CHECK(quartic_symbol(2, 17) == -1);
    CHECK(quartic_symbol(1, 13) == 1);
    CHECK(quartic_symbol(16, 17) == 1);
    CHECK_THROWS_AS(quartic_symbol(3, 17), input_error); // (3/17) = -1
    CHECK_THROWS_AS(quartic_symbol(2, 7), input_error);  // 7 = 3 (mod 4)

    CHECK(quartic_symbol_mod2(17) == 1);
    CHECK(quartic_symbol_mod2(9) == -1);
    CHECK(quartic_symbol_mod2(1) == 1);
    CHECK(quartic_symbol_mod2(-7) == -1);
    CHECK_THROWS_AS(quartic_symbol_mod2(5), input_error);
}

TEST_CASE("quartic symbol multiplicativity") {
    for (u64 p : {13ull, 17ull, 29ull, 37ull, 41ull, 53ull, 61ull, 73ull, 89ull, 97ull}) {
        std::vector<i64> residues;
        for (u64 a = 1; a < p; ++a)
            if (legendre(static_cast<i64>(a), p) == 1) residues.push_back(static_cast<i64>(a));
        for (i64 a : residues) {
            int qa = quartic_symbol(a, p);
            CHECK(qa * qa == 1);
            for (i64 b : residues)
                CHECK(quartic_symbol(a * b, p) == qa * quartic_symbol(b, p));
        }
    }
}

TEST_CASE("order_mod_2pow closed form examples") {
    CHECK(order_mod_2pow(7, 3) == 2);
    CHECK(order_mod_2pow(7, 5) == 4);
    CHECK(order_mod_2pow(17, 4) == 1);
}

TEST_CASE("min_pm1_exponent closed form examples") {
    CHECK(min_pm1_exponent(3, 2) == 1);
    CHECK(min_pm1_exponent(3, 4) == 4);
    CHECK(min_pm1_exponent(7, 3) == 1);
}

TEST_CASE("closed forms match iteration oracles") {
    for (u64 p : primes_below(2000)) {
        if (p == 2) continue;
        for (int n = 1; n <= 12; ++n) {
            REQUIRE(order_mod_2pow(p, n) == oracle::brute_order(p, n));
            REQUIRE(min_pm1_exponent(p, n) == oracle::brute_min_pm1(p, n));
        }
    }
}

TEST_CASE("power of p congruent to -1 forces p = -1") {
    // p^t = -1 (mod 2^n) implies p = -1 (mod 2^n)
    for (u64 p = 3; p < 2000; p += 2) {
        if (!is_prime(p)) continue;
        for (int n = 1; n <= 12; ++n) {
            u64 mask = (u64{1} << n) - 1;
            u64 acc = 1;
            bool hit = false;
            for (int t = 1; t <= 64; ++t) {
                acc = acc * p & mask;
                if (acc == mask) hit = true;
            }
            if (hit) REQUIRE((p & mask) == mask);
        }
    }
}

TEST_CASE("valuation of power differences") {
    // v2(x^n - y^n) = v2(x - y) + v2(n) for odd x, y with v2(x - y) >= 2,
    // through arithmetic mod 2^64
    u64 bad = 0;
    for (u64 x = 1; x < 1000; x += 2) {
        for (u64 y = 1; y < x; y += 2) {
            if ((x - y) % 4 != 0) continue;
            int base = std::countr_zero(x - y);
            u64 xn = 1, yn = 1;
            for (int n = 1; n <= 64; ++n) {
                xn *= x;
                yn *= y;
                u64 diff = xn - yn;
                if (diff == 0 ||
                    std::countr_zero(diff) != base + std::countr_zero(static_cast<u64>(n)))
                    ++bad;
            }
        }
    }
    REQUIRE(bad == 0);
}
