#include "comfactor/reference.hpp"

#include <algorithm>
#include <chrono>

#include "comfactor/combinations.hpp"
#include "comfactor/decor_plus.hpp"

namespace comfactor {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void require_valid_subset(const Factor& factor, std::span<const std::size_t> positions) {
    if (positions.size() < 2) {
        throw SubsetTooSmall("commutativity needs at least 2 arguments, got " +
                             std::to_string(positions.size()));
    }
    const RangePtr& range = factor.args()[positions[0]].range;
    for (auto pos : positions) {
        if (pos >= factor.arity()) {
            throw InvalidAssignment("argument position " + std::to_string(pos) +
                                    " out of range");
        }
        if (!same_range(factor.args()[pos].range, range)) {
            throw MixedRanges("arguments " + factor.args()[positions[0]].name + " and " +
                              factor.args()[pos].name + " have different ranges");
        }
    }
    for (std::size_t a = 0; a < positions.size(); ++a) {
        for (std::size_t b = a + 1; b < positions.size(); ++b) {
            if (positions[a] == positions[b]) {
                throw InvalidAssignment("duplicate position in subset");
            }
        }
    }
}

// Row index of the canonical representative: values at the subset positions
// sorted ascending (range order), everything else untouched.
std::size_t canonical_row(const Factor& factor, std::span<const std::size_t> positions,
                          std::span<const std::size_t> assignment, std::size_t row,
                          std::vector<std::size_t>& scratch) {
    scratch.clear();
    for (auto pos : positions) {
        scratch.push_back(assignment[pos]);
    }
    std::sort(scratch.begin(), scratch.end());
    std::size_t canonical = row;
    for (std::size_t t = 0; t < positions.size(); ++t) {
        const std::size_t pos = positions[t];
        canonical += (scratch[t] - assignment[pos]) * factor.stride(pos);
    }
    return canonical;
}

}  // namespace

bool is_commutative(const Factor& factor, std::span<const std::size_t> positions) {
    require_valid_subset(factor, positions);
    std::vector<std::size_t> sorted(positions.begin(), positions.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> scratch;
    scratch.reserve(sorted.size());
    bool invariant = true;
    for_each_row(factor, [&](std::size_t row, std::span<const std::size_t> assignment) {
        const std::size_t target = canonical_row(factor, sorted, assignment, row, scratch);
        invariant &= factor.code_at(row) == factor.code_at(target);
    });
    return invariant;
}

bool is_commutative_pair(const Factor& factor, std::size_t i, std::size_t j) {
    if (i == j) {
        throw InvalidAssignment("pair check needs two distinct positions");
    }
    if (i >= factor.arity() || j >= factor.arity()) {
        throw InvalidAssignment("argument position out of range");
    }
    if (!same_range(factor.args()[i].range, factor.args()[j].range)) {
        throw MixedRanges("arguments " + factor.args()[i].name + " and " +
                          factor.args()[j].name + " have different ranges");
    }
    const std::size_t si = factor.stride(i);
    const std::size_t sj = factor.stride(j);
    const std::size_t vi = factor.range_size(i);
    const std::size_t vj = factor.range_size(j);
    const std::size_t rows = factor.row_count();
    bool invariant = true;
    for (std::size_t row = 0; row < rows; ++row) {
        const std::size_t a = (row / si) % vi;
        const std::size_t b = (row / sj) % vj;
        if (a == b) {
            continue;
        }
        const std::size_t swapped = row + (b - a) * si + (a - b) * sj;
        invariant &= factor.code_at(row) == factor.code_at(swapped);
    }
    return invariant;
}

std::optional<CommutativityWitness> find_witness(const Factor& factor,
                                                 std::span<const std::size_t> positions) {
    require_valid_subset(factor, positions);
    std::vector<std::size_t> sorted(positions.begin(), positions.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> scratch;
    std::optional<CommutativityWitness> witness;
    for_each_row(factor, [&](std::size_t row, std::span<const std::size_t> assignment) {
        if (witness) {
            return;
        }
        const std::size_t target = canonical_row(factor, sorted, assignment, row, scratch);
        if (factor.code_at(row) != factor.code_at(target)) {
            witness = CommutativityWitness{row, target};
        }
    });
    return witness;
}

CommutativeResult brute_force(const Factor& factor, const BruteForceOptions& options) {
    const auto start = Clock::now();
    CommutativeResult result;
    result.algorithm = Algorithm::BruteForce;

    const std::vector<ArgClass> classes = classes_of(factor);
    std::size_t max_size = 0;
    for (const auto& cls : classes) {
        max_size = std::max(max_size, cls.size());
    }

    std::size_t checked = 0;
    for (std::size_t size = max_size; size >= 2 && result.subsets.empty(); --size) {
        for (const auto& cls : classes) {
            if (cls.size() < size) {
                continue;
            }
            std::vector<std::size_t> take = first_combination(size);
            do {
                options.deadline.check();
                if (++checked > options.subset_budget) {
                    throw BudgetExceeded("brute force exceeded subset budget of " +
                                         std::to_string(options.subset_budget));
                }
                std::vector<std::size_t> subset(size);
                for (std::size_t t = 0; t < size; ++t) {
                    subset[t] = cls.positions[take[t]];
                }
                ++result.timing.verified_candidates;
                if (is_commutative(factor, subset)) {
                    result.subsets.push_back(std::move(subset));
                }
            } while (next_combination(take, cls.size()));
        }
        if (!result.subsets.empty()) {
            result.size = size;
        }
    }
    canonicalise(result.subsets);
    result.timing.verification_ms = ms_since(start);
    result.timing.total_ms = result.timing.verification_ms;
    return result;
}

std::vector<std::size_t> original_decor(const Factor& factor) {
    const std::vector<ArgClass> classes = classes_of(factor);
    if (classes.size() != 1 || classes.front().size() != factor.arity()) {
        throw MixedRanges("original DECOR requires all arguments to share one range");
    }
    const ArgClass& cls = classes.front();

    std::vector<std::size_t> current = cls.positions;
    for (const auto& entry : enumerate_buckets(factor, cls)) {
        if (entry.rows.size() < 2) {
            continue;
        }
        // C_b: union of the positions emptied by each group's element-wise
        // intersection. No verification afterwards, by design.
        std::vector<std::size_t> permitted;
        for (const auto& group : identical_groups(entry, 2)) {
            for (auto pos : candidate_for_group(factor, group)) {
                if (!std::binary_search(permitted.begin(), permitted.end(), pos)) {
                    permitted.insert(
                        std::lower_bound(permitted.begin(), permitted.end(), pos), pos);
                }
            }
        }
        std::vector<std::size_t> next;
        std::set_intersection(current.begin(), current.end(), permitted.begin(),
                              permitted.end(), std::back_inserter(next));
        current = std::move(next);
        if (current.empty()) {
            break;
        }
    }
    return current;
}

}  // namespace comfactor
