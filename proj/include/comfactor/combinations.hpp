#ifndef COMFACTOR_COMBINATIONS_HPP
#define COMFACTOR_COMBINATIONS_HPP

#include <cstddef>
#include <vector>

namespace comfactor {

// Advances `take` (a strictly increasing index tuple into a universe of size
// `universe`) to the next combination in lexicographic order. Returns false
// once the last combination has been consumed.
inline bool next_combination(std::vector<std::size_t>& take, std::size_t universe) {
    const std::size_t size = take.size();
    for (std::size_t t = size; t-- > 0;) {
        if (take[t] != universe - size + t) {
            ++take[t];
            for (std::size_t u = t + 1; u < size; ++u) {
                take[u] = take[u - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

inline std::vector<std::size_t> first_combination(std::size_t size) {
    std::vector<std::size_t> take(size);
    for (std::size_t t = 0; t < size; ++t) {
        take[t] = t;
    }
    return take;
}

}  // namespace comfactor

#endif
