#include <random>

#include "doctest.h"

#include "comfactor/combinations.hpp"
#include "comfactor/reference.hpp"
#include "support.hpp"

using namespace comfactor;
using test::boolean_factor;
using test::counterexample;
using test::permutation_oracle;
using test::phi3;

TEST_CASE("is_commutative on the worked factors") {
    Factor f = phi3();
    CHECK(is_commutative(f, std::vector<std::size_t>{0, 1}));
    CHECK_FALSE(is_commutative(f, std::vector<std::size_t>{0, 1, 2}));

    Factor ce = counterexample();
    CHECK_FALSE(is_commutative(ce, std::vector<std::size_t>{0, 1, 2, 3}));
    CHECK(is_commutative(ce, std::vector<std::size_t>{0, 1}));
    CHECK(is_commutative(ce, std::vector<std::size_t>{2, 3}));
    CHECK_FALSE(is_commutative(ce, std::vector<std::size_t>{0, 2}));
}

TEST_CASE("is_commutative rejects bad subsets") {
    Factor f = phi3();
    CHECK_THROWS_AS(is_commutative(f, std::vector<std::size_t>{0}), SubsetTooSmall);

    Factor mixed("f",
                 {{"A", boolean_range()},
                  {"T", make_range({"a", "b", "c"})},
                  {"B", boolean_range()}},
                 std::vector<std::string>(12, "1"));
    CHECK_THROWS_AS(is_commutative(mixed, std::vector<std::size_t>{0, 1}), MixedRanges);
    CHECK(is_commutative(mixed, std::vector<std::size_t>{0, 2}));
}

TEST_CASE("is_commutative_pair is the two-argument special case") {
    Factor f = phi3();
    CHECK(is_commutative_pair(f, 0, 1));
    // phi3(high,high,low)=φ2 vs phi3(low,high,high)=φ3
    CHECK_FALSE(is_commutative_pair(f, 0, 2));
    CHECK_FALSE(is_commutative_pair(f, 1, 2));
    CHECK_THROWS_AS(is_commutative_pair(f, 1, 1), InvalidAssignment);
}

TEST_CASE("canonical-row check agrees with the permutation definition") {
    std::mt19937_64 rng(99);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng() % 4;  // n <= 5
        Factor f = test::random_factor(n, 1 + rng() % 4, rng);
        for (std::size_t size = 2; size <= n; ++size) {
            std::vector<std::size_t> take = first_combination(size);
            do {
                CHECK(is_commutative(f, take) == permutation_oracle(f, take));
                CHECK(is_commutative_pair(f, take[0], take[1]) ==
                      permutation_oracle(f, {take[0], take[1]}));
                ++checked;
            } while (next_combination(take, n));
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("find_witness returns a falsifying row pair") {
    Factor ce = counterexample();
    auto witness = find_witness(ce, std::vector<std::size_t>{0, 1, 2, 3});
    REQUIRE(witness.has_value());
    CHECK(ce.token_at(witness->row) != ce.token_at(witness->permuted_row));
    CHECK_FALSE(find_witness(ce, std::vector<std::size_t>{0, 1}).has_value());
}

TEST_CASE("brute force finds all maximum subsets") {
    CommutativeResult r = brute_force(phi3());
    CHECK(r.subsets == std::vector<std::vector<std::size_t>>{{0, 1}});
    CHECK(r.size == 2);

    CommutativeResult ce = brute_force(counterexample());
    CHECK(ce.subsets == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}});
    CHECK(ce.size == 2);

    // Fully symmetric factor: the potential depends on the histogram only.
    std::vector<std::string> table;
    for (std::size_t row = 0; row < 16; ++row) {
        table.push_back("s" + std::to_string(__builtin_popcount(static_cast<unsigned>(row))));
    }
    CommutativeResult sym = brute_force(boolean_factor("sym", {"R1", "R2", "R3", "R4"}, table));
    CHECK(sym.subsets == std::vector<std::vector<std::size_t>>{{0, 1, 2, 3}});

    Factor distinct = boolean_factor("g", {"A", "B"}, {"a", "b", "c", "d"});
    CHECK(brute_force(distinct).subsets.empty());
    CHECK(brute_force(distinct).size == 0);
}

TEST_CASE("brute force enforces its subset budget") {
    BruteForceOptions options;
    options.subset_budget = 3;
    CHECK_THROWS_AS(brute_force(counterexample(), options), BudgetExceeded);
}

TEST_CASE("original DECOR reproduces the flawed claim") {
    // The standing regression: the unverified intersection returns all four
    // arguments although the factor is not commutative with respect to them.
    Factor ce = counterexample();
    auto result = original_decor(ce);
    CHECK(result == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK_FALSE(is_commutative(ce, result));
    for (const auto& truly : brute_force(ce).subsets) {
        CHECK(std::includes(result.begin(), result.end(), truly.begin(), truly.end()));
    }

    CHECK(original_decor(phi3()) == std::vector<std::size_t>{0, 1});

    // A bucket whose groups empty no position forces the empty set.
    Factor distinct = boolean_factor("g", {"A", "B"}, {"a", "b", "c", "d"});
    CHECK(original_decor(distinct).empty());

    Factor mixed("f",
                 {{"A", boolean_range()}, {"T", make_range({"a", "b", "c"})}},
                 std::vector<std::string>(6, "1"));
    CHECK_THROWS_AS(original_decor(mixed), MixedRanges);
}

TEST_CASE("brute force output subsets are equal-sized and incomparable") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        Factor f = test::random_factor(2 + rng() % 5, 3, rng);
        CommutativeResult r = brute_force(f);
        for (const auto& a : r.subsets) {
            CHECK(a.size() == r.size);
            for (const auto& b : r.subsets) {
                if (&a != &b) {
                    CHECK_FALSE(std::includes(a.begin(), a.end(), b.begin(), b.end()));
                }
            }
        }
    }
}
