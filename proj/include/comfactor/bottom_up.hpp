#ifndef COMFACTOR_BOTTOM_UP_HPP
#define COMFACTOR_BOTTOM_UP_HPP

#include <cstddef>
#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "comfactor/buckets.hpp"
#include "comfactor/deadline.hpp"
#include "comfactor/fg.hpp"
#include "comfactor/result.hpp"

namespace comfactor {

// All verified commutative pairs within one argument class.
class PairLayer {
public:
    void add(std::size_t i, std::size_t j);
    bool contains(std::size_t i, std::size_t j) const;

    const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
    bool empty() const { return pairs_.empty(); }

    // Number of pair scans performed to build the layer.
    std::size_t scans = 0;

private:
    static std::uint64_t key(std::size_t i, std::size_t j) {
        if (i > j) {
            std::swap(i, j);
        }
        return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    std::unordered_set<std::uint64_t> members_;
};

// Runs exactly C(m, 2) swap-invariance scans for a class of size m.
PairLayer pairwise_layer(const Factor& factor, const ArgClass& cls,
                         const Deadline& deadline = {});

// Union-find over argument positions with path compression and union by
// rank.
class UnionFind {
public:
    explicit UnionFind(std::size_t n);

    std::size_t find(std::size_t x);
    void unite(std::size_t a, std::size_t b);

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

// Level-wise bottom-up search: extends commutative subsets one argument at a
// time, pruning by pair membership only (no further table scans past the
// pair layer).
CommutativeResult a_decor(const Factor& factor, const Deadline& deadline = {});

// Two-phase variant: the pair layer followed by union-find merging of
// overlapping pairs; components of maximum cardinality are the result.
CommutativeResult cc_decor(const Factor& factor, const Deadline& deadline = {});

}  // namespace comfactor

#endif
