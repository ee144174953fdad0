#include <numeric>
#include <random>
#include <set>

#include "doctest.h"

#include "comfactor/buckets.hpp"
#include "support.hpp"

using namespace comfactor;
using test::boolean_factor;
using test::counterexample;
using test::phi3;

namespace {

std::vector<std::string> tokens_of(const Factor& factor, const BucketEntry& entry) {
    std::vector<std::string> out;
    for (auto row : entry.rows) {
        out.emplace_back(factor.token_at(row));
    }
    return out;
}

}  // namespace

TEST_CASE("classes_of groups argument positions by range") {
    CHECK(classes_of(phi3()).size() == 1);
    CHECK(classes_of(phi3())[0].positions == std::vector<std::size_t>{0, 1, 2});

    Factor mixed("f",
                 {{"A", boolean_range()},
                  {"T", make_range({"a", "b", "c"})},
                  {"B", boolean_range()}},
                 std::vector<std::string>(12, "1"));
    auto classes = classes_of(mixed);
    REQUIRE(classes.size() == 2);
    CHECK(classes[0].positions == std::vector<std::size_t>{0, 2});
    CHECK(classes[1].positions == std::vector<std::size_t>{1});

    CHECK(classes_of(counterexample())[0].positions ==
          std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("bucket_of counts range values over the class positions") {
    Factor f = phi3();
    const ArgClass cls = classes_of(f)[0];
    CHECK(bucket_of(f, cls, Assignment{0, 0, 1}) == Histogram{{2, 1}});
    CHECK(bucket_of(f, cls, Assignment{1, 1, 1}) == Histogram{{0, 3}});

    const ArgClass singleton{{2}, boolean_range()};
    CHECK(bucket_of(f, singleton, Assignment{0, 1, 0}) == Histogram{{1, 0}});
    CHECK(bucket_of(f, singleton, Assignment{0, 1, 1}) == Histogram{{0, 1}});
}

TEST_CASE("enumerate_buckets reproduces the worked bucket tables") {
    Factor f = phi3();
    auto entries = enumerate_buckets(f, classes_of(f)[0]);
    REQUIRE(entries.size() == 4);
    CHECK(entries[0].key == Histogram{{3, 0}});
    CHECK(entries[1].key == Histogram{{2, 1}});
    CHECK(entries[2].key == Histogram{{1, 2}});
    CHECK(entries[3].key == Histogram{{0, 3}});
    CHECK(tokens_of(f, entries[1]) == std::vector<std::string>{"φ2", "φ3", "φ3"});
    CHECK(tokens_of(f, entries[2]) == std::vector<std::string>{"φ4", "φ4", "φ5"});

    Factor ce = counterexample();
    auto ce_entries = enumerate_buckets(ce, classes_of(ce)[0]);
    REQUIRE(ce_entries.size() == 5);
    CHECK(tokens_of(ce, ce_entries[2]) ==
          std::vector<std::string>{"φ1", "φ2", "φ2", "φ2", "φ2", "φ1"});

    Factor pair = boolean_factor("g", {"A", "B"}, {"a", "b", "c", "d"});
    auto pair_entries = enumerate_buckets(pair, classes_of(pair)[0]);
    REQUIRE(pair_entries.size() == 3);
    CHECK(pair_entries[0].rows.size() == 1);
    CHECK(pair_entries[1].rows.size() == 2);
    CHECK(pair_entries[2].rows.size() == 1);
}

TEST_CASE("bucket rows partition the table and match the count formula") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        Factor f = test::random_factor(n, 4, rng);
        const ArgClass cls = classes_of(f)[0];
        auto entries = enumerate_buckets(f, cls);

        // Stars and bars: C(n + 1, 1) realised buckets for a full Boolean class.
        CHECK(entries.size() == n + 1);

        std::set<std::size_t> seen;
        for (const auto& entry : entries) {
            REQUIRE(entry.rows.size() == entry.codes.size());
            CHECK(std::is_sorted(entry.rows.begin(), entry.rows.end()));
            for (auto row : entry.rows) {
                CHECK(seen.insert(row).second);
            }
            CHECK(std::accumulate(entry.key.counts.begin(), entry.key.counts.end(),
                                  std::size_t{0}) == cls.size());
        }
        CHECK(seen.size() == f.row_count());
    }
}

TEST_CASE("identical_groups finds maximal duplicate groups per bucket") {
    Factor f = phi3();
    auto entries = enumerate_buckets(f, classes_of(f)[0]);
    auto groups = identical_groups(entries[1]);  // bucket [2,1]
    REQUIRE(groups.size() == 1);                 // {φ2} is dropped
    CHECK(f.token_at(groups[0].rows[0]) == "φ3");
    CHECK(groups[0].rows == std::vector<std::size_t>{2, 4});

    Factor distinct = boolean_factor("g", {"A", "B"}, {"a", "b", "c", "d"});
    auto distinct_entries = enumerate_buckets(distinct, classes_of(distinct)[0]);
    CHECK(identical_groups(distinct_entries[1]).empty());

    Factor ce = counterexample();
    auto ce_entries = enumerate_buckets(ce, classes_of(ce)[0]);
    auto ce_groups = identical_groups(ce_entries[2]);  // bucket [2,2]
    REQUIRE(ce_groups.size() == 2);
    CHECK(ce.token_at(ce_groups[0].rows[0]) == "φ2");
    CHECK(ce_groups[0].rows.size() == 4);
    CHECK(ce.token_at(ce_groups[1].rows[0]) == "φ1");
    CHECK(ce_groups[1].rows == std::vector<std::size_t>{3, 12});
}

TEST_CASE("duplicate_bound reads the minimum duplicate multiplicity") {
    Factor f = phi3();
    CHECK(duplicate_bound(f, classes_of(f)[0]) == 2);

    Factor ce = counterexample();
    CHECK(duplicate_bound(ce, classes_of(ce)[0]) == 4);

    // A bucket of size > 1 with all-distinct potentials caps the bound at 1,
    // i.e. no commutative subset is possible.
    Factor distinct = boolean_factor("g", {"A", "B"}, {"a", "b", "c", "d"});
    CHECK(duplicate_bound(distinct, classes_of(distinct)[0]) == 1);
}

TEST_CASE("histogram multiplicity is the multinomial coefficient") {
    CHECK(histogram_multiplicity(Histogram{{2, 0}}) == 1);
    CHECK(histogram_multiplicity(Histogram{{1, 1}}) == 2);
    CHECK(histogram_multiplicity(Histogram{{2, 1}}) == 3);  // three rows of [2,1]
    CHECK(histogram_multiplicity(Histogram{{2, 2}}) == 6);
    CHECK(histogram_multiplicity(Histogram{{1, 1, 1}}) == 6);
}

TEST_CASE("histograms_colex enumerates compositions in colex order") {
    auto two = histograms_colex(3, 2);
    REQUIRE(two.size() == 4);
    CHECK(two[0] == Histogram{{3, 0}});
    CHECK(two[1] == Histogram{{2, 1}});
    CHECK(two[2] == Histogram{{1, 2}});
    CHECK(two[3] == Histogram{{0, 3}});

    auto three = histograms_colex(2, 3);
    REQUIRE(three.size() == 6);  // C(4, 2)
    CHECK(three[0] == Histogram{{2, 0, 0}});
    CHECK(three[1] == Histogram{{1, 1, 0}});
    CHECK(three[2] == Histogram{{0, 2, 0}});
    CHECK(three[3] == Histogram{{1, 0, 1}});
    CHECK(three[4] == Histogram{{0, 1, 1}});
    CHECK(three[5] == Histogram{{0, 0, 2}});
}
