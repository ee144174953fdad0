#include "comfactor/decor_plus.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>

#include "comfactor/combinations.hpp"
#include "comfactor/reference.hpp"

namespace comfactor {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::size_t heuristic_key(const Factor& factor, const BucketEntry& entry,
                          BucketHeuristic heuristic) {
    switch (heuristic) {
        case BucketHeuristic::None:
            return 0;
        case BucketHeuristic::SmallestBucketFirst:
            return entry.rows.size();
        case BucketHeuristic::LeastGroupsFirst:
            return identical_groups(entry).size();
        case BucketHeuristic::SmallestCandidateSetFirst:
        case BucketHeuristic::SmallestMinCandidateFirst: {
            CandidateSet bucket_candidates;
            for (const auto& group : identical_groups(entry)) {
                auto candidate = candidate_for_group(factor, group);
                if (candidate.size() >= 2) {
                    bucket_candidates.insert(std::move(candidate));
                }
            }
            if (heuristic == BucketHeuristic::SmallestCandidateSetFirst) {
                return bucket_candidates.subsets().size();
            }
            // A bucket without candidates collapses the loop immediately, so
            // it sorts first.
            std::size_t smallest = 0;
            for (const auto& c : bucket_candidates.subsets()) {
                smallest = smallest == 0 ? c.size() : std::min(smallest, c.size());
            }
            return smallest;
        }
    }
    return 0;
}

}  // namespace

std::string to_string(BucketHeuristic heuristic) {
    switch (heuristic) {
        case BucketHeuristic::None:
            return "none";
        case BucketHeuristic::SmallestBucketFirst:
            return "sbf";
        case BucketHeuristic::LeastGroupsFirst:
            return "lgf";
        case BucketHeuristic::SmallestCandidateSetFirst:
            return "scsf";
        case BucketHeuristic::SmallestMinCandidateFirst:
            return "smcf";
    }
    return "none";
}

CandidateSet::CandidateSet(std::vector<std::size_t> initial) {
    std::sort(initial.begin(), initial.end());
    subsets_.push_back(std::move(initial));
}

bool CandidateSet::insert(std::vector<std::size_t> set) {
    for (const auto& existing : subsets_) {
        if (is_subset(set, existing)) {
            return false;
        }
    }
    std::erase_if(subsets_,
                  [&](const std::vector<std::size_t>& existing) {
                      return is_subset(existing, set);
                  });
    subsets_.push_back(std::move(set));
    return true;
}

std::size_t CandidateSet::max_subset_size() const {
    std::size_t best = 0;
    for (const auto& s : subsets_) {
        best = std::max(best, s.size());
    }
    return best;
}

std::vector<std::size_t> candidate_for_group(const Factor& factor,
                                             const PotentialGroup& group) {
    const std::size_t n = factor.arity();
    // Intersection state per position: the single value seen so far, or dead
    // once two differing values show up.
    std::vector<std::size_t> first_value(n);
    std::vector<bool> dead(n, false);
    bool first_row = true;
    for (auto row : group.rows) {
        for (std::size_t pos = 0; pos < n; ++pos) {
            const std::size_t value = (row / factor.stride(pos)) % factor.range_size(pos);
            if (first_row) {
                first_value[pos] = value;
            } else if (!dead[pos] && first_value[pos] != value) {
                dead[pos] = true;
            }
        }
        first_row = false;
    }
    std::vector<std::size_t> emptied;
    for (std::size_t pos = 0; pos < n; ++pos) {
        if (dead[pos]) {
            emptied.push_back(pos);
        }
    }
    return emptied;
}

std::vector<BucketEntry> order_buckets(const Factor& factor,
                                       std::vector<BucketEntry> entries,
                                       BucketHeuristic heuristic) {
    if (heuristic == BucketHeuristic::None) {
        return entries;
    }
    std::vector<std::size_t> keys(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        keys[i] = heuristic_key(factor, entries[i], heuristic);
    }
    std::vector<std::size_t> order(entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<BucketEntry> sorted;
    sorted.reserve(entries.size());
    for (auto i : order) {
        sorted.push_back(std::move(entries[i]));
    }
    return sorted;
}

CandidateSet bucket_loop(const Factor& factor, const ArgClass& cls,
                         const DetectOptions& options) {
    if (cls.size() < options.min_subset_size) {
        return CandidateSet();
    }
    std::vector<BucketEntry> entries =
        order_buckets(factor, enumerate_buckets(factor, cls), options.heuristic);

    CandidateSet candidates(cls.positions);
    for (const auto& entry : entries) {
        options.deadline.check();
        if (entry.arrangements < 2) {
            continue;
        }
        const std::vector<PotentialGroup> groups = identical_groups(entry);
        if (groups.empty()) {
            // A qualifying bucket without duplicates rules out any
            // commutative subset in this class.
            return CandidateSet();
        }
        CandidateSet bucket_candidates;
        for (const auto& group : groups) {
            std::vector<std::size_t> candidate;
            for (auto pos : candidate_for_group(factor, group)) {
                if (cls.contains(pos)) {
                    candidate.push_back(pos);
                }
            }
            if (candidate.size() >= options.min_subset_size) {
                bucket_candidates.insert(std::move(candidate));
            }
        }
        CandidateSet intersected;
        for (const auto& current : candidates.subsets()) {
            for (const auto& permitted : bucket_candidates.subsets()) {
                std::vector<std::size_t> intersection;
                std::set_intersection(current.begin(), current.end(), permitted.begin(),
                                      permitted.end(), std::back_inserter(intersection));
                if (intersection.size() >= options.min_subset_size) {
                    intersected.insert(std::move(intersection));
                }
            }
        }
        candidates = std::move(intersected);
        if (options.trace) {
            options.trace(BucketTrace{entry.key, bucket_candidates.subsets(), candidates});
        }
        if (candidates.empty()) {
            return candidates;
        }
    }
    return candidates;
}

std::vector<std::vector<std::size_t>> verify_candidates(const Factor& factor,
                                                        const CandidateSet& candidates,
                                                        const DetectOptions& options,
                                                        PhaseTiming* timing) {
    for (std::size_t level = candidates.max_subset_size();
         level >= options.min_subset_size && level >= 2; --level) {
        std::set<std::vector<std::size_t>> to_check;
        for (const auto& candidate : candidates.subsets()) {
            if (candidate.size() < level) {
                continue;
            }
            std::vector<std::size_t> take = first_combination(level);
            do {
                std::vector<std::size_t> subset(level);
                for (std::size_t t = 0; t < level; ++t) {
                    subset[t] = candidate[take[t]];
                }
                to_check.insert(std::move(subset));
            } while (next_combination(take, candidate.size()));
        }
        std::vector<std::vector<std::size_t>> commutative;
        for (const auto& subset : to_check) {
            options.deadline.check();
            if (timing) {
                ++timing->verified_candidates;
            }
            if (is_commutative(factor, subset)) {
                commutative.push_back(subset);
            }
        }
        if (!commutative.empty()) {
            if (!options.return_all) {
                commutative.resize(1);
            }
            return commutative;
        }
    }
    return {};
}

CommutativeResult decor_plus(const Factor& factor, const DetectOptions& options) {
    const auto start = Clock::now();
    CommutativeResult result;
    result.algorithm = Algorithm::DecorPlus;

    std::vector<CandidateSet> per_class;
    for (const auto& cls : classes_of(factor)) {
        per_class.push_back(bucket_loop(factor, cls, options));
    }
    result.timing.candidate_ms = ms_since(start);

    const auto verification_start = Clock::now();
    for (const auto& candidates : per_class) {
        if (candidates.empty()) {
            continue;
        }
        for (auto& subset : verify_candidates(factor, candidates, options, &result.timing)) {
            if (subset.size() > result.size) {
                result.size = subset.size();
                result.subsets.clear();
            }
            if (subset.size() == result.size) {
                result.subsets.push_back(std::move(subset));
            }
        }
    }
    canonicalise(result.subsets);
    if (!options.return_all && result.subsets.size() > 1) {
        result.subsets.resize(1);
    }
    result.timing.verification_ms = ms_since(verification_start);
    result.timing.total_ms = ms_since(start);
    return result;
}

}  // namespace comfactor
