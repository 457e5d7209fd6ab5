#include <doctest.h>

#include <cmath>
#include <vector>

#include "hamperc/rng.hpp"

using namespace hamperc;

TEST_CASE("Philox4x32-10 known-answer vectors")
{
    using B = Philox4x32::Block;
    CHECK(Philox4x32::encrypt({0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::encrypt({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::encrypt({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct")
{
    Rng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        CHECK(x == b());
        differs_c |= x != c();
        differs_d |= x != d();
    }
    CHECK(differs_c);
    CHECK(differs_d);
}

TEST_CASE("uniform draws have the right range and mean")
{
    Rng r(1, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double w = r.uniform_pos();
        REQUIRE(w > 0.0);
        REQUIRE(w <= 1.0);
        sum += u;
    }
    // sd of the mean is sqrt(1/12 / n) ~ 6.5e-4
    CHECK(std::fabs(sum / n - 0.5) < 4 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("below() is uniform on small ranges")
{
    Rng r(9, 3);
    std::vector<int> counts(7, 0);
    const int n = 70000;
    for (int i = 0; i < n; ++i) {
        const auto x = r.below(7);
        REQUIRE(x < 7);
        ++counts[x];
    }
    // chi-square with 6 dof; 99.9% quantile is 22.46
    double chi2 = 0.0;
    for (const int c : counts) {
        chi2 += (c - 10000.0) * (c - 10000.0) / 10000.0;
    }
    CHECK(chi2 < 22.46);
    CHECK(r.below(1) == 0);
}
