#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pyrafast/rng.hpp"

using namespace pyrafast;

TEST_CASE("rng: raw stream is the standard mt19937_64", "[rng]") {
    // the C++ standard pins the 10000th output for the default seed
    Rng rng(std::mt19937_64::default_seed);
    std::uint64_t v = 0;
    for (int i = 0; i < 10000; ++i) v = rng.next();
    CHECK(v == 9981545732273789042ULL);
}

TEST_CASE("rng: equal seeds give equal streams", "[rng]") {
    Rng a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t va = a.next();
        all_equal = all_equal && va == b.next();
        any_diff = any_diff || va != c.next();
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("rng: bounded draws stay in range", "[rng][property]") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const int v = rng.uniform_int(-5, 17);
        REQUIRE(v >= -5);
        REQUIRE(v <= 17);
        const double d = rng.uniform_real(2.0, 3.5);
        REQUIRE(d >= 2.0);
        REQUIRE(d < 3.5);
    }
    // degenerate single-value range
    CHECK(rng.uniform_int(4, 4) == 4);
}
