#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "parityrep/wynn.hpp"

using namespace parityrep;

namespace {

std::vector<long double> geometric_partials(long double a, long double r, int n) {
    std::vector<long double> s(n);
    long double acc = 0, term = a;
    for (int k = 0; k < n; ++k) {
        acc += term;
        term *= r;
        s[k] = acc;
    }
    return s;
}

}  // namespace

TEST_CASE("degenerate inputs") {
    CHECK(accelerate({}).value == 0.0);
    CHECK(accelerate({}).even_columns.empty());

    const WynnAcceleration single = accelerate({3.5L});
    CHECK(single.value == doctest::Approx(3.5));
    CHECK(single.column == 0);

    const WynnAcceleration flat = accelerate({2.0L, 2.0L, 2.0L, 2.0L});
    CHECK(flat.value == doctest::Approx(2.0));
    CHECK(flat.column == 0);
}

TEST_CASE("one geometric component is exact by column 2") {
    const auto partials = geometric_partials(1.0L, 0.5L, 10);
    const WynnAcceleration acc = accelerate(partials);
    CHECK(acc.column == 2);
    CHECK(std::fabs(acc.value - 2.0) < 1e-13);
    CHECK(acc.even_columns.size() == 2);

    const auto slow = geometric_partials(3.0L, 0.9L, 12);
    const WynnAcceleration acc2 = accelerate(slow);
    CHECK(std::fabs(acc2.value - 30.0) < 1e-10);
}

TEST_CASE("two geometric components are exact by column 4") {
    std::vector<long double> partials(16);
    long double acc = 0, t1 = 1.0L, t2 = 1.0L;
    for (int k = 0; k < 16; ++k) {
        acc += t1 + t2;
        t1 *= 0.5L;
        t2 *= -0.25L;
        partials[k] = acc;
    }
    const long double limit = 1.0L / (1 - 0.5L) + 1.0L / (1 + 0.25L);
    const WynnAcceleration out = accelerate(partials);
    CHECK(out.column >= 2);
    CHECK(std::fabs(out.value - static_cast<double>(limit)) < 1e-10);
}

TEST_CASE("an exactly repeated partial sum stops the table safely") {
    // consecutive equal entries make the first column blow up, so the raw
    // tail is the only defensible answer
    const WynnAcceleration out = accelerate({3.0L, 3.0L, 2.0L, 2.5L, 2.25L});
    CHECK(out.column == 0);
    CHECK(out.value == doctest::Approx(2.25));
}

TEST_CASE("alternating harmonic series reaches ln 2 from 20 terms") {
    std::vector<long double> partials(20);
    long double acc = 0;
    for (int k = 1; k <= 20; ++k) {
        acc += (k % 2 ? 1.0L : -1.0L) / k;
        partials[k - 1] = acc;
    }
    const WynnAcceleration out = accelerate(partials);
    CHECK(std::fabs(out.value - std::log(2.0)) < 1e-10);
    CHECK(std::fabs(partials.back() - std::log(2.0)) > 1e-2);
}

TEST_CASE("stable column beats the deepest one on noisy tails") {
    std::vector<long double> partials(30);
    long double acc = 0;
    std::uint64_t state = 88172645463325252ull;
    for (int k = 0; k < 30; ++k) {
        acc += std::pow(0.7L, k + 1);
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        const long double noise =
            (static_cast<long double>(state % 2001) - 1000.0L) * 1e-13L;
        partials[k] = acc * (7.0L / 3.0L) + noise;
    }
    const WynnAcceleration out = accelerate(partials);
    const double limit = 0.7 / 0.3 * (7.0 / 3.0);
    CHECK(std::fabs(out.value - limit) < 1e-8);
}

TEST_CASE("acceleration trace grows with the prefix") {
    const auto partials = geometric_partials(1.0L, 0.5L, 8);
    const auto trace = acceleration_trace(partials);
    REQUIRE(trace.size() == partials.size());
    CHECK(trace[0] == doctest::Approx(static_cast<double>(partials[0])));
    CHECK(trace.back() == doctest::Approx(accelerate(partials).value));
    CHECK(std::fabs(trace.back() - 2.0) < 1e-12);
}
