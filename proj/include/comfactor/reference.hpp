#ifndef COMFACTOR_REFERENCE_HPP
#define COMFACTOR_REFERENCE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "comfactor/buckets.hpp"
#include "comfactor/deadline.hpp"
#include "comfactor/fg.hpp"
#include "comfactor/result.hpp"

namespace comfactor {

// Exact commutativity predicate: true iff every table row carries the same
// potential as its canonical row (the row with the values at the subset
// positions sorted into range order). Equivalent to invariance under all
// permutations of the subset. The scan always covers the full table so that
// every check has uniform cost.
bool is_commutative(const Factor& factor, std::span<const std::size_t> positions);

// Specialised pair check used by the bottom-up algorithms: one full
// swap-invariance scan over the table, uniform cost per call.
bool is_commutative_pair(const Factor& factor, std::size_t i, std::size_t j);

struct CommutativityWitness {
    std::size_t row;
    std::size_t permuted_row;  // canonical row with a different potential
};

// First falsifying pair of rows, or nullopt when the factor is commutative
// with respect to the subset. Early-exits; meant for diagnostics.
std::optional<CommutativityWitness> find_witness(const Factor& factor,
                                                 std::span<const std::size_t> positions);

struct BruteForceOptions {
    std::size_t subset_budget = default_subset_budget();
    Deadline deadline;

    static std::size_t default_subset_budget() { return std::size_t{1} << 20; }
};

// Checks every same-range subset of arguments in order of decreasing size and
// returns all commutative subsets of the first successful size.
CommutativeResult brute_force(const Factor& factor, const BruteForceOptions& options = {});

// The original bucket-intersection procedure, kept for counterexample
// reproduction. Performs no verification and may return a set of arguments
// the factor is NOT commutative with respect to. Requires a single argument
// class covering all arguments.
std::vector<std::size_t> original_decor(const Factor& factor);

}  // namespace comfactor

#endif
