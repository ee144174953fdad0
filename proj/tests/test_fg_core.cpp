#include <map>
#include <random>

#include "doctest.h"

#include "comfactor/fg.hpp"
#include "support.hpp"

using namespace comfactor;
using test::boolean_factor;
using test::phi3;

TEST_CASE("range specs validate their value lists") {
    CHECK_THROWS_AS(RangeSpec({"only"}), ParseError);
    CHECK_THROWS_AS(RangeSpec({"a", "a"}), ParseError);
    RangeSpec range({"high", "low"});
    CHECK(range.size() == 2);
    CHECK(range.index_of("low") == 1);
    CHECK_FALSE(range.index_of("mid").has_value());
}

TEST_CASE("factor construction enforces the table-length invariant") {
    CHECK_THROWS_AS(boolean_factor("f", {"A", "B"}, {"x", "y", "z"}), ParseError);
    CHECK_THROWS_AS(boolean_factor("f", {"A", "A"}, {"a", "b", "c", "d"}), ParseError);
    CHECK_THROWS_AS(boolean_factor("f", {"A"}, {"-1", "2"}), ParseError);
    CHECK_THROWS_AS(boolean_factor("f", {"A"}, {"0", "0"}), ParseError);
    // Symbolic tokens leave the at-least-one-positive rule unchecked.
    CHECK_NOTHROW(boolean_factor("f", {"A"}, {"φ1", "0"}));
}

TEST_CASE("assignment_index follows the row order of the worked table") {
    Factor f = phi3();
    CHECK(f.assignment_index(Assignment{0, 0, 0}) == 0);  // first row: all high
    // third table row is "high low high"
    CHECK(f.assignment_index(Assignment{0, 1, 0}) == 2);
    CHECK(f.assignment_index(Assignment{1, 1, 1}) == 7);  // last row: all low
    CHECK_THROWS_AS(f.assignment_index(Assignment{0, 0}), InvalidAssignment);
    CHECK_THROWS_AS(f.assignment_index(Assignment{0, 0, 2}), InvalidAssignment);
}

TEST_CASE("assignment_index and index_to_assignment are inverse") {
    Factor f = boolean_factor("f", {"A", "B", "C", "D"},
                              std::vector<std::string>(16, "1"));
    for (std::size_t row = 0; row < f.row_count(); ++row) {
        CHECK(f.assignment_index(f.index_to_assignment(row)) == row);
    }
}

TEST_CASE("lookup reads the table rows of the worked example") {
    Factor f = phi3();
    CHECK(f.lookup(Assignment{0, 1, 0}).token == "φ3");  // high low high
    CHECK(f.lookup(Assignment{1, 0, 1}).token == "φ4");  // sixth row: low high low
    Factor single = boolean_factor("g", {"A"}, {"a", "b"});
    CHECK(single.lookup(Assignment{0}).token == "a");
}

TEST_CASE("potential identity is token identity") {
    Factor f = phi3();
    CHECK(f.lookup(Assignment{0, 1, 0}).code == f.lookup(Assignment{1, 0, 0}).code);
    CHECK(f.lookup(Assignment{0, 1, 0}).code != f.lookup(Assignment{0, 0, 0}).code);
    CHECK(f.distinct_tokens().size() == 6);
}

TEST_CASE("numeric tokens canonicalise") {
    CHECK(canonical_number_token(1.0) == "1");
    CHECK(canonical_number_token(0.25) == "0.25");
    CHECK(canonical_number_token(-0.0) == "0");
    CHECK(canonical_number_token(0.2499999999, 0.01) == "0.25");
    CHECK(canonical_number_token(3.0001, 0.5) == "3");
    CHECK(token_numeric_value("0.25") == 0.25);
    CHECK_FALSE(token_numeric_value("φ1").has_value());
    CHECK_FALSE(token_numeric_value("1x").has_value());
}

namespace {

FactorGraph single_rv_graph(const std::vector<std::string>& table) {
    FactorGraph fg;
    fg.add_range("bool", make_range({"high", "low"}));
    fg.add_rv("A", "bool");
    fg.add_factor(Factor("f", {*fg.find_rv("A")}, table));
    return fg;
}

}  // namespace

TEST_CASE("joint of a single-factor graph equals lookup") {
    FactorGraph fg = single_rv_graph({"0.25", "0.75"});
    CHECK(fg.joint_unnormalised({{"A", "high"}}) == 0.25);
    CHECK(fg.joint_unnormalised({{"A", "low"}}) == 0.75);
    CHECK_THROWS_AS(fg.joint_unnormalised({}), IncompleteAssignment);
}

TEST_CASE("all-one factors leave joints unchanged") {
    FactorGraph fg;
    fg.add_range("bool", make_range({"high", "low"}));
    fg.add_rv("A", "bool");
    fg.add_rv("B", "bool");
    fg.add_factor(Factor("f", {*fg.find_rv("A")}, {"1", "1"}));
    fg.add_factor(Factor("g", {*fg.find_rv("B")}, {"1", "1"}));
    CHECK(fg.joint_unnormalised({{"A", "high"}, {"B", "low"}}) == 1.0);

    FactorGraph weighted = single_rv_graph({"0.5", "2"});
    const double before = weighted.joint_unnormalised({{"A", "low"}});
    weighted.add_rv("B", "bool");
    weighted.add_factor(Factor("ones", {*weighted.find_rv("A"), *weighted.find_rv("B")},
                               {"1", "1", "1", "1"}));
    CHECK(weighted.joint_unnormalised({{"A", "low"}, {"B", "high"}}) == before);
}

TEST_CASE("random 3-RV joint matches an independent enumeration") {
    std::mt19937_64 rng(7);
    FactorGraph fg;
    fg.add_range("bool", make_range({"high", "low"}));
    fg.add_rv("A", "bool");
    fg.add_rv("B", "bool");
    fg.add_rv("C", "bool");
    auto random_table = [&](std::size_t rows) {
        std::vector<std::string> t;
        for (std::size_t i = 0; i < rows; ++i) {
            t.push_back(canonical_number_token((rng() % 16) / 4.0 + 0.25));
        }
        return t;
    };
    fg.add_factor(Factor("f_ab", {*fg.find_rv("A"), *fg.find_rv("B")}, random_table(4)));
    fg.add_factor(Factor("f_bc", {*fg.find_rv("B"), *fg.find_rv("C")}, random_table(4)));
    fg.add_factor(Factor("f_c", {*fg.find_rv("C")}, random_table(2)));

    // Oracle: multiply the table entries of hand-projected rows; the f_ab row
    // for (a, b) is 2a + b, and so on.
    const char* label[2] = {"high", "low"};
    double z_oracle = 0.0;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t c = 0; c < 2; ++c) {
                const double expected =
                    fg.factors()[0].numeric_at(2 * a + b) *
                    fg.factors()[1].numeric_at(2 * b + c) * fg.factors()[2].numeric_at(c);
                z_oracle += expected;
                CHECK(fg.joint_unnormalised(
                          {{"A", label[a]}, {"B", label[b]}, {"C", label[c]}}) ==
                      expected);
            }
        }
    }
    CHECK(fg.normalisation_constant() == doctest::Approx(z_oracle).epsilon(1e-12));
}

TEST_CASE("normalisation constant on the worked tables") {
    CHECK(single_rv_graph({"1", "1"}).normalisation_constant() == 2.0);
    CHECK(single_rv_graph({"0.25", "0.75"}).normalisation_constant() == 1.0);

    // phi3 with numeric potentials 1..6: rows are 1,2,3,4,3,4,5,6.
    FactorGraph fg;
    fg.add_range("bool", make_range({"high", "low"}));
    fg.add_rv("ComA", "bool");
    fg.add_rv("ComB", "bool");
    fg.add_rv("Rev", "bool");
    fg.add_factor(Factor("phi3",
                         {*fg.find_rv("ComA"), *fg.find_rv("ComB"), *fg.find_rv("Rev")},
                         {"1", "2", "3", "4", "3", "4", "5", "6"}));
    CHECK(fg.normalisation_constant() == 28.0);

    CHECK_THROWS_AS(fg.normalisation_constant(4), StateSpaceTooLarge);
}
