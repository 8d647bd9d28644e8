#include <catch2/catch.hpp>

#include <sstream>

#include "mq2/oracle.hpp"

using namespace mq2;

TEST_CASE("brute force orders") {
    CHECK(oracle::brute_order(7, 5) == 4);
    CHECK(oracle::brute_order(1, 9) == 1);
    CHECK(oracle::brute_order(3, 3) == 2);
    CHECK_THROWS_AS(oracle::brute_order(4, 3), input_error);

    CHECK(oracle::brute_min_pm1(3, 4) == 4);
    CHECK(oracle::brute_min_pm1(7, 3) == 1);
    CHECK(oracle::brute_min_pm1(17, 4) == 1); // p = 1 (mod 2^n)

    for (u64 p = 3; p < 600; p += 2) {
        for (int n = 1; n <= 10; ++n) {
            i64 bo = oracle::brute_order(p, n);
            i64 bm = oracle::brute_min_pm1(p, n);
            REQUIRE((i64{1} << (n - 1)) % bo == 0);
            REQUIRE(bo % bm == 0);
            REQUIRE((bo / bm == 1 || bo / bm == 2));
        }
    }
}

TEST_CASE("kronecker symbol agrees with legendre at odd primes") {
    for (u64 p : primes_below(300)) {
        if (p == 2) continue;
        for (i64 a = -30; a <= 30; ++a)
            REQUIRE(oracle::kronecker(a, static_cast<i64>(p)) == legendre(a, p));
    }
    // character of the Gaussian field
    for (i64 n = 1; n < 50; n += 2)
        CHECK(oracle::kronecker(-4, n) == ((n % 4 == 1) ? 1 : -1));
}

TEST_CASE("reduced form counts") {
    CHECK(oracle::bqf_class_number(-4) == 1);
    CHECK(oracle::bqf_class_number(-8) == 1);
    CHECK(oracle::bqf_class_number(-11) == 1);
    CHECK(oracle::bqf_class_number(-23) == 3);
    CHECK(oracle::bqf_class_number(-44) == 3);
    CHECK(oracle::bqf_class_number(-47) == 5);
    CHECK(oracle::bqf_class_number(-163) == 1);
    CHECK_THROWS_AS(oracle::bqf_class_number(5), input_error);
    CHECK_THROWS_AS(oracle::bqf_class_number(-6), input_error);
    CHECK_THROWS_AS(oracle::bqf_class_number(-1'000'004), input_error);
}

TEST_CASE("fundamental discriminants") {
    CHECK(oracle::is_fundamental_discriminant(-4));
    CHECK(oracle::is_fundamental_discriminant(-8));
    CHECK(oracle::is_fundamental_discriminant(-3));
    CHECK(oracle::is_fundamental_discriminant(-20));
    CHECK_FALSE(oracle::is_fundamental_discriminant(-12)); // -12/4 = -3 = 1 (mod 4)
    CHECK_FALSE(oracle::is_fundamental_discriminant(-9));
    CHECK_FALSE(oracle::is_fundamental_discriminant(-44 * 4));
}

TEST_CASE("form-count parity matches genus theory") {
    for (i64 d = -3; d > -2000; --d) {
        if ((((d % 4) + 4) % 4) > 1) continue;
        if (!oracle::is_fundamental_discriminant(d)) continue;
        bool genus_odd = factorize(static_cast<u64>(-d)).factors.size() == 1;
        REQUIRE((oracle::bqf_class_number(d) % 2 == 1) == genus_odd);
    }
}

TEST_CASE("sweep config parsing") {
    std::istringstream in(
        "# comment\n"
        "max_prime = 500\n"
        "max_level=8\n"
        "suites = lambda_r0, order_closed_form\n"
        "seed = 42\n");
    auto cfg = oracle::parse_sweep_config(in);
    CHECK(cfg.max_prime == 500);
    CHECK(cfg.max_level == 8);
    CHECK(cfg.seed == 42);
    CHECK(cfg.suites_given);
    CHECK(cfg.suites == std::vector<std::string>{"lambda_r0", "order_closed_form"});

    std::istringstream bad("wat = 3\n");
    CHECK_THROWS_AS(oracle::parse_sweep_config(bad), input_error);
    std::istringstream bad2("max_prime = soup\n");
    CHECK_THROWS_AS(oracle::parse_sweep_config(bad2), input_error);

    std::istringstream none("suites =\n");
    auto c2 = oracle::parse_sweep_config(none);
    CHECK(c2.suites_given);
    CHECK(c2.suites.empty());

    std::istringstream all("suites = all\n");
    auto c3 = oracle::parse_sweep_config(all);
    CHECK_FALSE(c3.suites_given);
}

TEST_CASE("default sweeps pass") {
    oracle::SweepConfig cfg; // library defaults, sized for seconds not minutes
    auto reports = oracle::run_sweeps(cfg);
    REQUIRE(reports.size() == 15);
    for (const auto& r : reports) {
        INFO(r.suite << (r.failures.empty() ? "" : ": " + r.failures[0].input));
        REQUIRE(r.passed());
        REQUIRE(r.checked > 0);
    }
}

TEST_CASE("narrowed bounds shrink the sweep") {
    oracle::SweepConfig small;
    small.max_prime = 100;
    small.max_level = 4;
    small.suites = {"order_closed_form"};
    small.suites_given = true;
    oracle::SweepConfig big = small;
    big.max_prime = 1000;
    big.max_level = 8;
    auto rs = oracle::run_sweeps(small);
    auto rb = oracle::run_sweeps(big);
    REQUIRE(rs.size() == 1);
    REQUIRE(rb.size() == 1);
    CHECK(rs[0].checked < rb[0].checked);
    CHECK(rs[0].passed());
    CHECK(rb[0].passed());
}

TEST_CASE("fault injection is caught, and only where planted") {
    oracle::SweepConfig cfg;
    cfg.max_prime = 300;
    cfg.max_level = 6;
    cfg.suites = {"order_closed_form", "pm1_closed_form"};
    cfg.suites_given = true;
    cfg.inject_fault = "order_closed_form";
    auto reports = oracle::run_sweeps(cfg);
    REQUIRE(reports.size() == 2);

    // the planted fault flips the first closed-form branch (n <= v2(p-1))
    u64 planted = 0;
    for (u64 p : primes_below(301)) {
        if (p == 2) continue;
        for (int n = 1; n <= 6; ++n)
            if (n <= std::countr_zero(p - 1)) ++planted;
    }
    REQUIRE(planted > 0);
    CHECK(reports[0].suite == "order_closed_form");
    CHECK(reports[0].failure_count == planted);
    CHECK_FALSE(reports[0].passed());
    CHECK(reports[1].suite == "pm1_closed_form");
    CHECK(reports[1].passed());
}

TEST_CASE("compositum decomposition counts") {
    // 3 splits already at level 1 in both steps: 8 / f with f = 2
    CHECK(oracle::compositum_num_primes(3, 1, 5, 11) == 4);
    // inert-inert at level 0 over p = 5: the count doubles once
    CHECK(oracle::compositum_num_primes(5, 0, 3, 7) == 2);
    CHECK_THROWS_AS(oracle::compositum_num_primes(3, 1, 3, 5), input_error);
}
