#ifndef COMFACTOR_RESULT_HPP
#define COMFACTOR_RESULT_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace comfactor {

enum class Algorithm {
    DecorPlus,
    ADecor,
    CcDecor,
    BruteForce,
    OriginalDecor,
};

std::string to_string(Algorithm algorithm);

struct PhaseTiming {
    double candidate_ms = 0.0;
    double verification_ms = 0.0;
    double total_ms = 0.0;
    // Commutativity checks performed during verification.
    std::size_t verified_candidates = 0;
};

// Output of a detection run: all maximum sized commutative argument subsets
// (canonically sorted position lists, the list itself sorted
// lexicographically), or empty with size 0 when none exists.
struct CommutativeResult {
    std::vector<std::vector<std::size_t>> subsets;
    std::size_t size = 0;
    PhaseTiming timing;
    Algorithm algorithm = Algorithm::BruteForce;
};

// Sorts each subset and the subset list into the canonical order used
// throughout for comparisons and reporting.
void canonicalise(std::vector<std::vector<std::size_t>>& subsets);

}  // namespace comfactor

#endif
