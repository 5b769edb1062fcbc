#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "parityrep/gf2poly.hpp"

using namespace parityrep;

namespace {

ParityPoly random_poly(std::mt19937_64& rng, long max_degree) {
    ParityPoly p;
    const long degree = static_cast<long>(rng() % static_cast<std::uint64_t>(max_degree + 1));
    for (long j = 0; j <= degree; ++j)
        if (rng() & 1) p.set_coeff(j);
    return p;
}

}  // namespace

TEST_CASE("coefficient list parsing and printing") {
    const ParityPoly p = ParityPoly::parse_coeff_list("1,1,1");
    CHECK(p.degree() == 2);
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(1) == 1);
    CHECK(p.coeff(2) == 1);
    CHECK(p.coeff(3) == 0);
    CHECK(p.popcount() == 3);
    CHECK(p.coeff_list() == "1,1,1");

    const ParityPoly sparse = ParityPoly::parse_coeff_list("1,1,0,1");
    CHECK(sparse.degree() == 3);
    CHECK(sparse.coeff(2) == 0);
    CHECK(sparse.coeff_list() == "1,1,0,1");

    CHECK(ParityPoly::parse_coeff_list("0").is_zero());
    CHECK(ParityPoly::parse_coeff_list("0").coeff_list() == "0");
    CHECK_THROWS_AS(ParityPoly::parse_coeff_list("2"), ContractViolation);
    CHECK_THROWS_AS(ParityPoly::parse_coeff_list("1,x"), ContractViolation);
    CHECK_THROWS_AS(ParityPoly::parse_coeff_list(""), ContractViolation);
}

TEST_CASE("hex parsing round-trips") {
    const ParityPoly p = ParityPoly::parse_hex("0x7");
    CHECK(p == ParityPoly::parse_coeff_list("1,1,1"));
    CHECK(p.hex() == "0x7");
    CHECK(ParityPoly::parse_hex("B").coeff_list() == "1,1,0,1");
    CHECK(ParityPoly::zero().hex() == "0x0");
    CHECK_THROWS_AS(ParityPoly::parse_hex("0x"), ContractViolation);
    CHECK_THROWS_AS(ParityPoly::parse_hex("0xg1"), ContractViolation);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const ParityPoly q = random_poly(rng, 300);
        CHECK(ParityPoly::parse_hex(q.hex()) == q);
    }
}

TEST_CASE("basic constructors and accessors") {
    CHECK(ParityPoly::zero().is_zero());
    CHECK(ParityPoly::zero().degree() == -1);
    CHECK(ParityPoly::zero().popcount() == 0);
    CHECK(ParityPoly::one().degree() == 0);
    CHECK(ParityPoly::monomial(100).degree() == 100);
    CHECK(ParityPoly::monomial(100).popcount() == 1);
    CHECK(ParityPoly::from_coefficients({1, 0, 3}) ==
          ParityPoly::parse_coeff_list("1,0,1"));
    CHECK_THROWS_AS(ParityPoly::zero().coeff(-1), ContractViolation);
    CHECK_THROWS_AS(ParityPoly::monomial(-1), ContractViolation);
}

TEST_CASE("addition is xor") {
    const ParityPoly a = ParityPoly::parse_coeff_list("1,1,1");
    const ParityPoly b = ParityPoly::parse_coeff_list("0,1,1");
    CHECK((a + b) == ParityPoly::one());
    CHECK((a + a).is_zero());
    CHECK((a + ParityPoly::zero()) == a);
}

TEST_CASE("multiplication algebra on random samples") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const ParityPoly a = random_poly(rng, 200);
        const ParityPoly b = random_poly(rng, 200);
        const ParityPoly c = random_poly(rng, 200);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a.squared() == a * a);
        CHECK((a + b).squared() == a.squared() + b.squared());
        CHECK(a.shifted(17) == a * ParityPoly::monomial(17));
    }
    CHECK((ParityPoly::one() + ParityPoly::monomial(1)).squared() ==
          ParityPoly::parse_coeff_list("1,0,1"));
    CHECK_THROWS_AS(ParityPoly::one().shifted(-1), ContractViolation);
}

TEST_CASE("recurrence spec contracts") {
    const RecurrenceSpec tri = RecurrenceSpec::order1(ParityPoly::parse_coeff_list("1,1,1"));
    CHECK(tri.order == 1);
    CHECK(tri.ell == 2);
    CHECK(RecurrenceSpec::order1(ParityPoly::parse_coeff_list("1,1"), 5).ell == 5);
    CHECK_THROWS_AS(RecurrenceSpec::order1(ParityPoly::parse_coeff_list("0,1")),
                    ContractViolation);
    CHECK_THROWS_AS(RecurrenceSpec::order2(ParityPoly::parse_coeff_list("1,1"),
                                           ParityPoly::one(), ParityPoly::zero(),
                                           ParityPoly::one(), 2),
                    ContractViolation);
    CHECK_THROWS_AS(RecurrenceSpec::order2(ParityPoly::parse_coeff_list("1,1"),
                                           ParityPoly::one(), ParityPoly::one(),
                                           ParityPoly::one(), 0),
                    ContractViolation);
}

TEST_CASE("order-1 rows are powers of the multiplier") {
    const RecurrenceSpec tri = RecurrenceSpec::order1(ParityPoly::parse_coeff_list("1,1,1"));
    ParityPoly expect = ParityPoly::one();
    for (std::uint64_t n = 0; n <= 80; ++n) {
        CHECK(row(tri, n) == expect);
        expect = expect * tri.q;
    }
    RowCache cache;
    for (std::uint64_t n : {0ull, 1ull, 63ull, 64ull, 1000ull})
        CHECK(row(tri, n, &cache) == row(tri, n));
    CHECK_THROWS_AS(row(tri, kOrder1RowBudget + 1), ResourceLimitError);
}

TEST_CASE("order-2 rows follow the two-term recurrence") {
    const RecurrenceSpec stern = RecurrenceSpec::order2(
        ParityPoly::parse_coeff_list("0,1"), ParityPoly::one(), ParityPoly::one(),
        ParityPoly::parse_coeff_list("0,1"), 2);
    ParityPoly prev = stern.p0;
    ParityPoly cur = stern.p1;
    CHECK(row(stern, 0) == prev);
    CHECK(row(stern, 1) == cur);
    RowCache cache;
    for (std::uint64_t n = 2; n <= 80; ++n) {
        const ParityPoly next = stern.q1 * cur + stern.q2 * prev;
        CHECK(row(stern, n) == next);
        CHECK(row(stern, n, &cache) == next);
        prev = cur;
        cur = next;
    }
    CHECK_THROWS_AS(row(stern, kOrder2RowBudget + 1), ResourceLimitError);
}

TEST_CASE("oracle values by hand") {
    const RecurrenceSpec bin = RecurrenceSpec::order1(ParityPoly::parse_coeff_list("1,1"));
    for (std::uint64_t n = 0; n <= 64; ++n)
        CHECK(odd_count(bin, n) == 1l << __builtin_popcountll(n));

    const RecurrenceSpec tri = RecurrenceSpec::order1(ParityPoly::parse_coeff_list("1,1,1"));
    const long expected[] = {1, 3, 3, 5, 3, 9, 5, 11, 3, 9};
    for (std::uint64_t n = 0; n < 10; ++n)
        CHECK(odd_count(tri, n) == expected[n]);
    CHECK(row(tri, 2).coeff_list() == "1,0,1,0,1");
    CHECK(row(tri, 3).coeff_list() == "1,1,0,1,0,1,1");
}

TEST_CASE("for_each_row matches row() for both orders") {
    const RecurrenceSpec quad = RecurrenceSpec::order1(ParityPoly::parse_coeff_list("1,1,1,1"));
    const RecurrenceSpec rhombus = RecurrenceSpec::order2(
        ParityPoly::parse_coeff_list("1,1,1"), ParityPoly::parse_coeff_list("0,0,1"),
        ParityPoly::one(), ParityPoly::parse_coeff_list("1,1,1"), 4);
    for (const RecurrenceSpec& spec : {quad, rhombus}) {
        std::uint64_t seen = 0;
        for_each_row(spec, 100, [&](std::uint64_t n, const ParityPoly& r) {
            CHECK(n == seen);
            CHECK(r == row(spec, n));
            ++seen;
        });
        CHECK(seen == 101);
    }
}

TEST_CASE("window sampling") {
    const RecurrenceSpec tri = RecurrenceSpec::order1(ParityPoly::parse_coeff_list("1,1,1"));
    CHECK(window(tri, 0, 1, 0, 1) == std::vector<std::uint8_t>{1, 0});
    CHECK(window(tri, 1, 1, 0, 1) == std::vector<std::uint8_t>{1, 1});
    CHECK(window(tri, 2, 1, 0, 2) == std::vector<std::uint8_t>{1, 1});
    CHECK(window(tri, 1, 1, 500, 1) == std::vector<std::uint8_t>{0, 0});

    const RecurrenceSpec rhombus = RecurrenceSpec::order2(
        ParityPoly::parse_coeff_list("1,1,1"), ParityPoly::parse_coeff_list("0,0,1"),
        ParityPoly::one(), ParityPoly::parse_coeff_list("1,1,1"), 4);
    const std::vector<std::uint8_t> seed = window(rhombus, 0, 1, 0, 1);
    CHECK(seed.size() == 8);
    CHECK(seed == std::vector<std::uint8_t>{1, 0, 0, 0, 1, 1, 1, 0});

    CHECK_THROWS_AS(window(tri, -1, 1, 0, 1), ContractViolation);
    CHECK_THROWS_AS(window(tri, 0, 1, -2, 1), ContractViolation);
    CHECK_THROWS_AS(window(tri, 0, 1, 0, 0), ContractViolation);
    CHECK_THROWS_AS(window(rhombus, 0, 0, 0, 1), ContractViolation);
}

TEST_CASE("row cache returns the same polynomials") {
    const RecurrenceSpec rhombus = RecurrenceSpec::order2(
        ParityPoly::parse_coeff_list("1,1,1"), ParityPoly::parse_coeff_list("0,0,1"),
        ParityPoly::one(), ParityPoly::parse_coeff_list("1,1,1"), 4);
    RowCache small(4);
    CHECK(small.capacity() == 4);
    for (std::uint64_t n : {0ull, 5ull, 2ull, 9ull, 3ull, 9ull})
        CHECK(row(rhombus, n, &small) == row(rhombus, n));
}
