#ifndef COMFACTOR_BUCKETS_HPP
#define COMFACTOR_BUCKETS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "comfactor/fg.hpp"

namespace comfactor {

// Per-range-value occurrence counts over one argument class; counts sum to
// the class size.
struct Histogram {
    std::vector<std::size_t> counts;

    friend bool operator==(const Histogram& a, const Histogram& b) {
        return a.counts == b.counts;
    }
};

// Number of distinct arrangements of the histogram over the class positions
// (the multinomial coefficient).
std::uint64_t histogram_multiplicity(const Histogram& h);

// All histograms with `slots` slots summing to `total`, in colexicographic
// order. There are C(total + slots - 1, slots - 1) of them.
std::vector<Histogram> histograms_colex(std::size_t total, std::size_t slots);

// Argument positions of one factor sharing a single range.
struct ArgClass {
    std::vector<std::size_t> positions;  // ascending
    RangePtr range;

    std::size_t size() const { return positions.size(); }
    bool contains(std::size_t pos) const;
};

// One bucket of a class: the histogram key, the table rows whose
// class-projection realises it (ascending), and the potential multiset
// phi^>(b) read off those rows in table order. For classes that do not cover
// every argument, rows aggregate over all values of the remaining arguments;
// `arrangements` (the number of distinct class arrangements of the key)
// rather than the raw row count is then the right notion of bucket size for
// the detection algorithms.
struct BucketEntry {
    Histogram key;
    std::vector<std::size_t> rows;
    std::vector<std::int32_t> codes;
    std::uint64_t arrangements = 0;
};

// A maximal group of identical potentials within one bucket.
struct PotentialGroup {
    std::int32_t code;
    std::vector<std::size_t> rows;  // ascending table order
};

// Partitions the argument positions into classes of equal range, in order of
// first appearance.
std::vector<ArgClass> classes_of(const Factor& factor);

// Histogram of the class positions of one assignment.
Histogram bucket_of(const Factor& factor, const ArgClass& cls,
                    std::span<const std::size_t> assignment);

// All realised buckets of the class, keyed by histogram in colex order. The
// row sets partition the table.
std::vector<BucketEntry> enumerate_buckets(const Factor& factor, const ArgClass& cls);

// Maximal groups of identical potentials in the bucket with at least
// min_size members, ordered by interned code.
std::vector<PotentialGroup> identical_groups(const BucketEntry& entry,
                                             std::size_t min_size = 2);

// Upper bound on the size of any commutative subset within the class: the
// minimum over qualifying buckets of the largest potential multiplicity.
// Returns the class size when no bucket qualifies (the bound is vacuous).
std::size_t duplicate_bound(const Factor& factor, const ArgClass& cls);

}  // namespace comfactor

#endif
