#ifndef COMFACTOR_DECOR_PLUS_HPP
#define COMFACTOR_DECOR_PLUS_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "comfactor/buckets.hpp"
#include "comfactor/deadline.hpp"
#include "comfactor/fg.hpp"
#include "comfactor/result.hpp"

namespace comfactor {

enum class BucketHeuristic {
    None,                       // histogram enumeration order
    SmallestBucketFirst,        // SBF: |phi^>(b)| ascending
    LeastGroupsFirst,           // LGF: number of groups of size >= 2 ascending
    SmallestCandidateSetFirst,  // SCSF: |C'| of the bucket ascending
    SmallestMinCandidateFirst,  // SMCF: smallest candidate size ascending
};

std::string to_string(BucketHeuristic heuristic);

// Antichain of argument-position sets: no member is a subset of another, and
// every member has at least two positions from one argument class.
class CandidateSet {
public:
    CandidateSet() = default;
    explicit CandidateSet(std::vector<std::size_t> initial);

    // Inserts a sorted position set, keeping the antichain: drops the set if
    // an existing member contains it, otherwise removes members it contains.
    // Returns false when the set was dropped.
    bool insert(std::vector<std::size_t> set);

    const std::vector<std::vector<std::size_t>>& subsets() const { return subsets_; }
    bool empty() const { return subsets_.empty(); }
    std::size_t max_subset_size() const;

private:
    std::vector<std::vector<std::size_t>> subsets_;
};

struct BucketTrace {
    // Key of the bucket that was just processed.
    const Histogram& bucket;
    // C' of that bucket.
    const std::vector<std::vector<std::size_t>>& bucket_candidates;
    // C_cand after the cross-intersection with C'.
    const CandidateSet& candidates;
};

struct DetectOptions {
    BucketHeuristic heuristic = BucketHeuristic::None;
    // All maximum sized subsets vs. only the first in canonical order.
    bool return_all = true;
    std::size_t min_subset_size = 2;
    Deadline deadline;
    // Invoked after every processed bucket of the loop.
    std::function<void(const BucketTrace&)> trace;
};

// Positions at which the element-wise intersection of the group's
// assignments is empty. May have fewer than two members; callers filter.
std::vector<std::size_t> candidate_for_group(const Factor& factor,
                                             const PotentialGroup& group);

// Stable sort of the bucket entries by the heuristic key (ascending);
// BucketHeuristic::None keeps the enumeration order. The final detection
// result does not depend on the order.
std::vector<BucketEntry> order_buckets(const Factor& factor,
                                       std::vector<BucketEntry> entries,
                                       BucketHeuristic heuristic);

// The candidate-pruning loop over the buckets of one class. Returns the
// surviving candidate antichain; empty when some qualifying bucket has no
// duplicate group or the cross-intersections run dry.
CandidateSet bucket_loop(const Factor& factor, const ArgClass& cls,
                         const DetectOptions& options = {});

// Explores the subsets of all candidates level-wise by strictly decreasing
// size; returns every commutative subset of the first successful level (or
// only the canonically first one if options.return_all is false). The number
// of commutativity checks is accumulated into `timing` when given.
std::vector<std::vector<std::size_t>> verify_candidates(const Factor& factor,
                                                        const CandidateSet& candidates,
                                                        const DetectOptions& options = {},
                                                        PhaseTiming* timing = nullptr);

// Full detection: per argument class, the bucket loop followed by
// verification; per-class results are merged keeping the globally maximum
// sized subsets.
CommutativeResult decor_plus(const Factor& factor, const DetectOptions& options = {});

}  // namespace comfactor

#endif
