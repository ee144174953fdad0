#ifndef COMFACTOR_TESTS_SUPPORT_HPP
#define COMFACTOR_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "comfactor/fg.hpp"
#include "comfactor/json_io.hpp"

namespace comfactor::test {

inline Factor boolean_factor(std::string name, std::vector<std::string> arg_names,
                             std::vector<std::string> table) {
    std::vector<RandomVariable> args;
    for (auto& n : arg_names) {
        args.push_back({std::move(n), boolean_range()});
    }
    return Factor(std::move(name), std::move(args), std::move(table));
}

// phi3(ComA, ComB, Rev) over {high, low}; commutative in its first two
// arguments only.
inline Factor phi3() {
    return boolean_factor("phi3", {"ComA", "ComB", "Rev"},
                          {"φ1", "φ2", "φ3", "φ4", "φ3", "φ4", "φ5", "φ6"});
}

// The 4-argument factor that defeats the unverified bucket intersection:
// only (low,low,high,high) and (high,high,low,low) map to φ1.
inline Factor counterexample() {
    std::vector<std::string> table(16, "φ2");
    table[3] = "φ1";
    table[12] = "φ1";
    return boolean_factor("phi", {"R1", "R2", "R3", "R4"}, table);
}

// Test oracle: the permutation-based commutativity definition, checking
// invariance under every permutation of the subset for every row. Costs
// |table| * |C|! and is independent of the canonical-row implementation.
inline bool permutation_oracle(const Factor& factor, std::vector<std::size_t> positions) {
    std::sort(positions.begin(), positions.end());
    std::vector<std::size_t> perm = positions;
    do {
        for (std::size_t row = 0; row < factor.row_count(); ++row) {
            Assignment a = factor.index_to_assignment(row);
            Assignment permuted = a;
            for (std::size_t t = 0; t < positions.size(); ++t) {
                permuted[positions[t]] = a[perm[t]];
            }
            if (factor.lookup(permuted).code != factor.code_at(row)) {
                return false;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

// Random factor over `n` Boolean arguments with tokens drawn from a small
// alphabet so that accidental duplicates (and occasionally symmetries) occur.
inline Factor random_factor(std::size_t n, std::size_t alphabet, std::mt19937_64& rng) {
    std::vector<std::string> table;
    const std::size_t rows = std::size_t{1} << n;
    table.reserve(rows);
    for (std::size_t row = 0; row < rows; ++row) {
        table.push_back("p" + std::to_string(rng() % alphabet));
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back("R" + std::to_string(i + 1));
    }
    return boolean_factor("random", names, table);
}

inline std::vector<std::size_t> positions_of(const Factor& factor,
                                             const std::vector<std::string>& names) {
    std::vector<std::size_t> out;
    for (const auto& name : names) {
        out.push_back(*factor.position_of(name));
    }
    return out;
}

}  // namespace comfactor::test

#endif
