#include "comfactor/result.hpp"

#include <algorithm>

namespace comfactor {

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::DecorPlus:
            return "decor+";
        case Algorithm::ADecor:
            return "a-decor";
        case Algorithm::CcDecor:
            return "cc-decor";
        case Algorithm::BruteForce:
            return "brute";
        case Algorithm::OriginalDecor:
            return "original-decor";
    }
    return "unknown";
}

void canonicalise(std::vector<std::vector<std::size_t>>& subsets) {
    for (auto& subset : subsets) {
        std::sort(subset.begin(), subset.end());
    }
    std::sort(subsets.begin(), subsets.end());
    subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
}

}  // namespace comfactor
