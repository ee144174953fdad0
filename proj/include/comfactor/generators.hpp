#ifndef COMFACTOR_GENERATORS_HPP
#define COMFACTOR_GENERATORS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "comfactor/fg.hpp"

namespace comfactor {

// Factor with n same-range arguments and one planted commutative block of
// size k at seed-drawn positions. Every (block histogram, remaining
// assignment) equivalence class receives its own token, so the planted block
// is the unique maximum commutative subset for k >= 2 and no subset is
// commutative for k in {0, 1} (k = 1 is normalised to 0: a single argument
// cannot form a block).
Factor gen_single(std::size_t n, std::size_t k, std::uint64_t seed,
                  std::size_t range_size = 2);

// Factor with g disjoint planted commutative groups of size s each, at
// seed-drawn positions; tokens are unique per (histogram_1, ...,
// histogram_g, leftover assignment) tuple, so the g groups are exactly the
// maximum commutative subsets.
Factor gen_groups(std::size_t n, std::size_t g, std::size_t s, std::uint64_t seed,
                  std::size_t range_size = 2);

// The seed-drawn block positions used by gen_single / gen_groups, exposed so
// tests can assert the planted structure.
std::vector<std::size_t> planted_single_positions(std::size_t n, std::size_t k,
                                                  std::uint64_t seed);
std::vector<std::vector<std::size_t>> planted_group_positions(std::size_t n, std::size_t g,
                                                              std::size_t s,
                                                              std::uint64_t seed);

}  // namespace comfactor

#endif
