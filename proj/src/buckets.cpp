#include "comfactor/buckets.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace comfactor {
namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

struct HistogramHash {
    std::size_t operator()(const Histogram& h) const {
        std::size_t seed = h.counts.size();
        for (auto c : h.counts) {
            seed = seed * 1099511628211ull + c + 0x9e3779b97f4a7c15ull;
        }
        return seed;
    }
};

void emit_colex(std::size_t slot, std::size_t remaining, Histogram& scratch,
                std::vector<Histogram>& out) {
    // Colex order: later slots vary slowest, so recurse over the last slot
    // first with ascending counts.
    if (slot == 0) {
        scratch.counts[0] = remaining;
        out.push_back(scratch);
        return;
    }
    for (std::size_t c = 0; c <= remaining; ++c) {
        scratch.counts[slot] = c;
        emit_colex(slot - 1, remaining - c, scratch, out);
    }
}

}  // namespace

std::uint64_t histogram_multiplicity(const Histogram& h) {
    // total!/prod(c_i!), computed as a product of binomials to stay integral.
    std::uint64_t result = 1;
    std::uint64_t placed = 0;
    for (auto c : h.counts) {
        placed += c;
        result *= binomial(placed, c);
    }
    return result;
}

std::vector<Histogram> histograms_colex(std::size_t total, std::size_t slots) {
    std::vector<Histogram> out;
    if (slots == 0) {
        return out;
    }
    Histogram scratch;
    scratch.counts.assign(slots, 0);
    emit_colex(slots - 1, total, scratch, out);
    return out;
}

bool ArgClass::contains(std::size_t pos) const {
    return std::binary_search(positions.begin(), positions.end(), pos);
}

std::vector<ArgClass> classes_of(const Factor& factor) {
    std::vector<ArgClass> classes;
    for (std::size_t pos = 0; pos < factor.arity(); ++pos) {
        const RangePtr& range = factor.args()[pos].range;
        bool placed = false;
        for (auto& cls : classes) {
            if (same_range(cls.range, range)) {
                cls.positions.push_back(pos);
                placed = true;
                break;
            }
        }
        if (!placed) {
            classes.push_back({{pos}, range});
        }
    }
    return classes;
}

Histogram bucket_of(const Factor& factor, const ArgClass& cls,
                    std::span<const std::size_t> assignment) {
    if (assignment.size() != factor.arity()) {
        throw InvalidAssignment("assignment arity mismatch in bucket_of");
    }
    Histogram h;
    h.counts.assign(cls.range->size(), 0);
    for (auto pos : cls.positions) {
        ++h.counts[assignment[pos]];
    }
    return h;
}

std::vector<BucketEntry> enumerate_buckets(const Factor& factor, const ArgClass& cls) {
    const std::vector<Histogram> keys = histograms_colex(cls.size(), cls.range->size());
    std::vector<BucketEntry> entries;
    entries.reserve(keys.size());
    std::unordered_map<Histogram, std::size_t, HistogramHash> index;
    index.reserve(keys.size() * 2);
    for (const auto& key : keys) {
        index.emplace(key, entries.size());
        entries.push_back({key, {}, {}, histogram_multiplicity(key)});
    }

    Histogram h;
    h.counts.assign(cls.range->size(), 0);
    for_each_row(factor, [&](std::size_t row, std::span<const std::size_t> assignment) {
        std::fill(h.counts.begin(), h.counts.end(), 0);
        for (auto pos : cls.positions) {
            ++h.counts[assignment[pos]];
        }
        BucketEntry& entry = entries[index.find(h)->second];
        entry.rows.push_back(row);
        entry.codes.push_back(factor.code_at(row));
    });
    return entries;
}

std::vector<PotentialGroup> identical_groups(const BucketEntry& entry, std::size_t min_size) {
    std::vector<std::size_t> order(entry.rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return entry.codes[a] < entry.codes[b];
    });

    std::vector<PotentialGroup> groups;
    std::size_t run_start = 0;
    for (std::size_t i = 1; i <= order.size(); ++i) {
        if (i == order.size() || entry.codes[order[i]] != entry.codes[order[run_start]]) {
            if (i - run_start >= min_size) {
                PotentialGroup group;
                group.code = entry.codes[order[run_start]];
                group.rows.reserve(i - run_start);
                for (std::size_t j = run_start; j < i; ++j) {
                    group.rows.push_back(entry.rows[order[j]]);
                }
                groups.push_back(std::move(group));
            }
            run_start = i;
        }
    }
    return groups;
}

std::size_t duplicate_bound(const Factor& factor, const ArgClass& cls) {
    std::size_t bound = cls.size();
    bool any_qualifying = false;
    for (const auto& entry : enumerate_buckets(factor, cls)) {
        if (entry.arrangements < 2) {
            continue;
        }
        any_qualifying = true;
        std::size_t max_multiplicity = 1;
        for (const auto& group : identical_groups(entry, 1)) {
            max_multiplicity = std::max(max_multiplicity, group.rows.size());
        }
        bound = std::min(bound, max_multiplicity);
    }
    return any_qualifying ? bound : cls.size();
}

}  // namespace comfactor
