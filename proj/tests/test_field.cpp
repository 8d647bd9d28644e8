#include <catch2/catch.hpp>

#include <random>

#include "mq2/field.hpp"
#include "mq2/oracle.hpp"

using namespace mq2;

namespace {
MultiQuadField make(std::vector<i64> rads) { return MultiQuadField::from_reduced_radicands(rads); }
} // namespace

TEST_CASE("square class basics") {
    auto c = SquareClass::reduce(-44);
    CHECK(c.sign);
    CHECK_FALSE(c.two);
    CHECK(c.odd_primes == std::vector<u64>{11});
    CHECK(c.to_integer() == -11);

    CHECK(SquareClass::reduce(1).is_one());
    CHECK_THROWS_AS(SquareClass::reduce(0), input_error);
    CHECK_THROWS_AS(SquareClass::from_squarefree(12), input_error);

    auto a = SquareClass::from_squarefree(-11);
    auto b = SquareClass::from_squarefree(33);
    CHECK((a * b).to_integer() == -3);
}

TEST_CASE("field construction") {
    auto k = make({2, -11, 33});
    CHECK(k.rank() == 3);
    CHECK(k.degree() == 8);
    CHECK(k.is_imaginary());
    CHECK(contains_sqrt(k, -3));
    CHECK(contains_sqrt(k, 66));
    CHECK_FALSE(contains_sqrt(k, 3));

    CHECK(make({3, 3}).rank() == 1);
    CHECK(make({}).rank() == 0);
    CHECK(make({}).is_real());

    std::vector<i64> bad{12};
    CHECK_THROWS_AS(MultiQuadField::from_radicands(bad), input_error);
    CHECK(make({12}).rank() == 1); // reduced construction accepts it as sqrt(3)
    CHECK(make({12}) == make({3}));
}

TEST_CASE("membership") {
    auto k = make({2, -11, 33});
    CHECK(contains_sqrt(k, 1));
    CHECK(contains_sqrt(k, 4)); // class of 1
    CHECK_FALSE(contains_sqrt(make({7}), 2));
    CHECK_THROWS_AS(contains_sqrt(k, 0), input_error);
}

TEST_CASE("subgroup closure under products") {
    // exhaustive over every field generated by up to three signed atoms from
    // {-1, +-2, +-3, +-5, +-7}, plus a few composite-radicand fields
    std::vector<MultiQuadField> fields;
    oracle::sweep_detail::for_each_atom_field(8, 3, true,
                                              [&](const MultiQuadField& k) { fields.push_back(k); });
    fields.push_back(make({2, -11, 33}));
    fields.push_back(make({-2, 15, 21}));
    REQUIRE(fields.size() > 50);
    for (const auto& k : fields) {
        auto elems = k.elements();
        REQUIRE(elems.size() == static_cast<size_t>(k.degree()));
        for (const auto& a : elems)
            for (const auto& b : elems) REQUIRE(k.contains(a * b));
    }
}

TEST_CASE("maximal real subfield") {
    auto k = make({2, -11, 33});
    auto kp = maximal_real_subfield(k);
    CHECK(kp == make({2, 33}));
    CHECK(kp.rank() == 2);
    CHECK(kp.is_real());

    auto real = make({3, 5});
    CHECK(maximal_real_subfield(real) == real);
    CHECK(maximal_real_subfield(make({-1})) == MultiQuadField{});

    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        std::vector<i64> gens;
        for (int i = 0, n = 1 + static_cast<int>(rng() % 3); i < n; ++i) {
            i64 v = static_cast<i64>(2 + rng() % 40);
            gens.push_back(rng() % 2 ? v : -v);
        }
        auto f = make(gens);
        auto fp = maximal_real_subfield(f);
        CHECK(fp.is_real());
        CHECK(maximal_real_subfield(fp) == fp);
        CHECK(fp.rank() == f.rank() - (f.is_imaginary() ? 1 : 0));
        for (const auto& b : fp.basis()) CHECK(f.contains(b));
    }
}

TEST_CASE("conductor two-part") {
    CHECK_FALSE(conductor_two_part_exceeds_4(make({3, 5})));
    CHECK(conductor_two_part_exceeds_4(make({2})));
    CHECK(conductor_two_part_exceeds_4(make({6, 3})));
}

TEST_CASE("narrow genus field") {
    auto g = narrow_genus_field(make({3, 5}));
    CHECK(g.narrow == make({3, 5, -1}));
    CHECK(g.genus == make({3, 5}));

    auto trivial = narrow_genus_field(MultiQuadField{});
    CHECK(trivial.narrow == MultiQuadField{});
    CHECK(trivial.genus == MultiQuadField{});

    // p = q = 3 (mod 4): narrow = Q(sqrt(-p), sqrt(-q)), genus = Q(sqrt(pq))
    auto pq = narrow_genus_field(make({3 * 11}));
    CHECK(pq.narrow == make({-3, -11}));
    CHECK(pq.genus == make({33}));

    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        std::vector<i64> gens;
        for (int i = 0, n = 1 + static_cast<int>(rng() % 3); i < n; ++i) {
            i64 v = static_cast<i64>(2 + rng() % 60);
            gens.push_back(rng() % 2 ? v : -v);
        }
        auto f = make(gens);
        auto res = narrow_genus_field(f);
        for (const auto& b : f.basis()) {
            CHECK(res.narrow.contains(b));
            CHECK(res.genus.contains(b));
        }
        if (f.is_real())
            for (const auto& b : res.genus.basis()) CHECK(res.narrow.contains(b));
    }
}

TEST_CASE("canonical presentation") {
    {
        auto pres = canonical_presentation(make({-1}));
        CHECK(pres.real_radicands.empty());
        CHECK(pres.imaginary_radicand == 1);
        CHECK_FALSE(pres.theta);
        CHECK(pres.admissible);
    }
    {
        auto pres = canonical_presentation(make({2, -11, 33}));
        CHECK(pres.theta);
        CHECK(pres.real_radicands == std::vector<i64>{2, 33});
        CHECK(pres.reduced_real_radicands == std::vector<i64>{33});
        CHECK((pres.imaginary_radicand == 3 || pres.imaginary_radicand == 11));
        CHECK(pres.admissible);
    }
    {
        // Q(sqrt(-pq), sqrt(-p)) with p = 3, q = 7
        auto pres = canonical_presentation(make({-21, -3}));
        CHECK_FALSE(pres.theta);
        CHECK(pres.real_radicands == std::vector<i64>{7});
        CHECK(pres.imaginary_radicand == 3);
        CHECK(pres.admissible);
    }
    CHECK_THROWS_AS(canonical_presentation(make({3, 5})), hypothesis_error);
}

TEST_CASE("serialization round trip") {
    CHECK(MultiQuadField::parse("-1,2,7").serialize() == "-1,2,7");
    CHECK(make({2, -11, 33}).serialize() == "-11,2,33");
    CHECK(MultiQuadField::parse("-11,2,33") == make({2, -11, 33}));
    CHECK(MultiQuadField::parse("").rank() == 0);

    CHECK_THROWS_AS(MultiQuadField::parse("3,x"), input_error);
    CHECK_THROWS_AS(MultiQuadField::parse("3,0"), input_error);
    CHECK_THROWS_AS(MultiQuadField::parse("3,,5"), input_error);

    std::mt19937_64 rng(13);
    std::vector<u64> ps = primes_below(50);
    for (int t = 0; t < 400; ++t) {
        std::vector<i64> gens;
        for (int i = 0, n = 1 + static_cast<int>(rng() % 4); i < n; ++i) {
            i64 v = static_cast<i64>(ps[rng() % ps.size()]);
            if (rng() % 3 == 0) v *= static_cast<i64>(ps[rng() % ps.size()]);
            v = sqf_signed(rng() % 2 ? v : -v);
            gens.push_back(v);
        }
        auto k = make(gens);
        // round trip through the canonical text form
        CHECK(MultiQuadField::parse(k.serialize()) == k);
        // and through the basis representatives
        std::vector<i64> reps;
        for (const auto& b : k.basis()) reps.push_back(b.to_integer());
        CHECK(MultiQuadField::from_radicands(reps) == k);
    }
}
