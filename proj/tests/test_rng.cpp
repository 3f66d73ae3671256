#include <cmath>
#include <set>

#include <doctest.h>

#include "adaptnorm/numerics.hpp"
#include "adaptnorm/rng.hpp"

using namespace adaptnorm;

TEST_CASE("philox known-answer vectors")
{
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;
    CHECK(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0})
          == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff,
                                 0xffffffff},
                               K{0xffffffff, 0xffffffff})
          == C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e,
                                 0x03707344},
                               K{0xa4093822, 0x299f31d0})
          == C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("uniforms lie strictly inside the unit interval")
{
    ReplicationStream s(42, 7);
    for (std::uint64_t i = 0; i < 10000; ++i)
    {
        double u = s.uniform(Stage::first, i);
        CHECK(u > 0);
        CHECK(u < 1);
    }
}

TEST_CASE("draws are addressed by coordinates only")
{
    ReplicationStream a(1, 5);
    ReplicationStream b(1, 5);
    CHECK(a.normal(Stage::second, 99) == b.normal(Stage::second, 99));

    std::vector<double> filled(101);
    a.fill_normals(Stage::first, filled);
    for (std::size_t i = 0; i < filled.size(); ++i)
        CHECK(filled[i] == a.normal(Stage::first, i));

    std::set<double> distinct{a.uniform(Stage::first, 0),
                              a.uniform(Stage::second, 0),
                              ReplicationStream(1, 6).uniform(Stage::first, 0),
                              ReplicationStream(2, 5).uniform(Stage::first, 0),
                              a.uniform(Stage::first, 1)};
    CHECK(distinct.size() == 5);
}

TEST_CASE("normal draws have standard moments")
{
    ReplicationStream s(2024, 0);
    std::vector<double> z(200000);
    s.fill_normals(Stage::first, z);
    double mean = pairwise_sum(z) / z.size();
    double ss = 0;
    for (double v : z)
        ss += (v - mean) * (v - mean);
    double var = ss / (z.size() - 1);
    CHECK(std::abs(mean) < 4 / std::sqrt(200000.0));
    CHECK(std::abs(var - 1) < 4 * std::sqrt(2.0 / 200000));
    CHECK(ks_test(z, normal_cdf).p_value > 0.001);
}
