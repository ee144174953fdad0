#include <random>

#include "doctest.h"

#include "comfactor/crv.hpp"
#include "comfactor/generators.hpp"
#include "comfactor/json_io.hpp"
#include "comfactor/reference.hpp"
#include "support.hpp"

using namespace comfactor;
using test::boolean_factor;
using test::counterexample;
using test::phi3;

TEST_CASE("compress phi3 yields the six-entry counted table") {
    Factor f = phi3();
    CountedFactor counted = compress(f, std::vector<std::size_t>{0, 1});

    CHECK(counted.block_size() == 2);
    CHECK(counted.entry_count() == 6);
    REQUIRE(counted.histograms().size() == 3);
    CHECK(counted.histograms()[0] == Histogram{{2, 0}});
    CHECK(counted.histograms()[1] == Histogram{{1, 1}});
    CHECK(counted.histograms()[2] == Histogram{{0, 2}});

    // ([2,0],high)->φ1 through ([0,2],low)->φ6
    CHECK(counted.token_at(0, 0) == "φ1");
    CHECK(counted.token_at(0, 1) == "φ2");
    CHECK(counted.token_at(1, 0) == "φ3");
    CHECK(counted.token_at(1, 1) == "φ4");
    CHECK(counted.token_at(2, 0) == "φ5");
    CHECK(counted.token_at(2, 1) == "φ6");

    REQUIRE(counted.other_args().size() == 1);
    CHECK(counted.other_args()[0].name == "Rev");
}

TEST_CASE("compress rejects invalid blocks") {
    Factor f = phi3();
    CHECK_THROWS_AS(compress(f, std::vector<std::size_t>{0}), SubsetTooSmall);
    CHECK_THROWS_AS(compress(f, std::vector<std::size_t>{0, 1, 2}), NotCommutative);
    CHECK_THROWS_AS(compress(counterexample(), std::vector<std::size_t>{0, 2}),
                    NotCommutative);
}

TEST_CASE("compress of a counterexample pair keeps the other assignments") {
    Factor ce = counterexample();
    CountedFactor counted = compress(ce, std::vector<std::size_t>{0, 1});
    // 3 histograms x 4 assignments of (R3, R4)
    CHECK(counted.entry_count() == 12);
    CHECK(counted.other_row_count() == 4);
    // ([2,0], R3=low, R4=low) realises rows (h,h,l,l) -> φ1
    CHECK(counted.token_at(0, 3) == "φ1");
    // ([0,2], R3=high, R4=high) realises (l,l,h,h) -> φ1
    CHECK(counted.token_at(2, 0) == "φ1");
    CHECK(counted.token_at(1, 0) == "φ2");
}

TEST_CASE("expand reconstructs the ground table") {
    Factor f = phi3();
    Factor round = expand(compress(f, std::vector<std::size_t>{0, 1}));
    CHECK(round.table_tokens() == f.table_tokens());
    REQUIRE(round.arity() == 3);
    CHECK(round.args()[0].name == "ComA");
    CHECK(round.args()[1].name == "ComB");
    CHECK(round.args()[2].name == "Rev");
}

TEST_CASE("expand fans each histogram out to its multinomial rows") {
    // m = 3 counted Booleans plus one other Boolean argument: 4 histograms x 2
    // counted entries expand to sum(multiplicity) x 2 = 16 ground rows.
    std::vector<RandomVariable> counted_args = {{"A", boolean_range()},
                                                {"B", boolean_range()},
                                                {"C", boolean_range()}};
    std::vector<std::string> tokens;
    for (int h = 0; h < 4; ++h) {
        for (int o = 0; o < 2; ++o) {
            tokens.push_back("c" + std::to_string(h) + std::to_string(o));
        }
    }
    CountedFactor counted("fan", counted_args, {0, 1, 2}, boolean_range(),
                          {{"D", boolean_range()}}, {3}, tokens);
    Factor ground = expand(counted);
    CHECK(ground.row_count() == 16);
    // Row (h,h,l,d): histogram [2,1]; three such rows per value of D.
    CHECK(ground.lookup(Assignment{0, 0, 1, 0}).token == "c10");
    CHECK(ground.lookup(Assignment{0, 1, 0, 0}).token == "c10");
    CHECK(ground.lookup(Assignment{1, 0, 0, 1}).token == "c11");

    std::size_t total = 0;
    for (const auto& h : counted.histograms()) {
        total += histogram_multiplicity(h);
    }
    CHECK(total * 2 == ground.row_count());
}

TEST_CASE("round trip holds on generated commutative instances") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 3 + rng() % 4;
        const std::size_t k = 2 + rng() % (n - 1);
        const std::uint64_t seed = rng();
        Factor f = gen_single(n, k, seed);
        const auto planted = planted_single_positions(n, k, seed);
        Factor round = expand(compress(f, planted));
        CHECK(round.table_tokens() == f.table_tokens());
        for (std::size_t pos = 0; pos < n; ++pos) {
            CHECK(round.args()[pos].name == f.args()[pos].name);
        }
    }
}

TEST_CASE("counted table size follows the size law") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 4 + rng() % 3;
        const std::size_t k = 2 + rng() % 3;
        const std::uint64_t seed = rng();
        const std::size_t range_size = 2 + rng() % 2;
        Factor f = gen_single(n, k, seed, range_size);
        CountedFactor counted = compress(f, planted_single_positions(n, k, seed));

        std::size_t other = 1;
        for (const auto& arg : counted.other_args()) {
            other *= arg.range->size();
        }
        CHECK(counted.entry_count() == counted.histograms().size() * other);
        CHECK(counted.histograms().size() ==
              histograms_colex(k, range_size).size());

        std::uint64_t ground_rows = 0;
        for (const auto& h : counted.histograms()) {
            ground_rows += histogram_multiplicity(h);
        }
        CHECK(ground_rows * other == f.row_count());
    }
}

TEST_CASE("replacing a factor by its counted form preserves the joint") {
    // Numeric phi3 (1..6): compressing {ComA, ComB} must leave Z unchanged.
    GraphDocument doc;
    doc.skeleton.add_range("bool", make_range({"high", "low"}));
    doc.skeleton.add_rv("ComA", "bool");
    doc.skeleton.add_rv("ComB", "bool");
    doc.skeleton.add_rv("Rev", "bool");
    Factor numeric("phi3",
                   {*doc.skeleton.find_rv("ComA"), *doc.skeleton.find_rv("ComB"),
                    *doc.skeleton.find_rv("Rev")},
                   {"1", "2", "3", "4", "3", "4", "5", "6"});
    doc.entries.emplace_back(numeric);
    const double z_before = doc.grounded().normalisation_constant();
    CHECK(z_before == 28.0);

    GraphDocument compressed;
    compressed.skeleton = doc.skeleton;
    compressed.entries.emplace_back(compress(numeric, std::vector<std::size_t>{0, 1}));
    CHECK(compressed.grounded().normalisation_constant() == z_before);

    const std::map<std::string, std::string> full = {
        {"ComA", "high"}, {"ComB", "low"}, {"Rev", "high"}};
    CHECK(doc.grounded().joint_unnormalised(full) ==
          compressed.grounded().joint_unnormalised(full));
}
