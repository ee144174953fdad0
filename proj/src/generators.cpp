#include "comfactor/generators.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <span>
#include <unordered_map>

namespace comfactor {
namespace {

RangePtr generated_range(std::size_t range_size) {
    if (range_size < 2) {
        throw ParseError("generated range needs at least 2 values");
    }
    if (range_size == 2) {
        return boolean_range();
    }
    std::vector<std::string> values;
    values.reserve(range_size);
    for (std::size_t i = 0; i < range_size; ++i) {
        values.push_back("v" + std::to_string(i));
    }
    return make_range(std::move(values));
}

std::vector<RandomVariable> generated_args(std::size_t n, const RangePtr& range) {
    std::vector<RandomVariable> args;
    args.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        args.push_back({"R" + std::to_string(i + 1), range});
    }
    return args;
}

// Seeded Fisher-Yates over 0..n-1. std::shuffle is implementation-defined,
// so the draw is spelled out to keep instances byte-identical across
// platforms.
std::vector<std::size_t> shuffled_positions(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> positions(n);
    for (std::size_t i = 0; i < n; ++i) {
        positions[i] = i;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i-- > 1;) {
        const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
        std::swap(positions[i], positions[j]);
    }
    return positions;
}

struct KeyHash {
    std::size_t operator()(const std::vector<std::size_t>& key) const {
        std::size_t seed = key.size();
        for (auto c : key) {
            seed = seed * 1099511628211ull + c + 0x9e3779b97f4a7c15ull;
        }
        return seed;
    }
};

// Assigns token "t<counter>" per equivalence-class key, counting classes in
// row order of first appearance.
Factor build_from_classes(
    std::string name, std::vector<RandomVariable> args,
    const std::function<void(std::span<const std::size_t>, std::vector<std::size_t>&)>&
        class_key) {
    std::size_t rows = 1;
    for (const auto& arg : args) {
        rows *= arg.range->size();
    }
    std::vector<std::string> tokens;
    tokens.reserve(rows);
    std::unordered_map<std::vector<std::size_t>, std::size_t, KeyHash> classes;
    std::vector<std::size_t> key;

    std::vector<std::size_t> values(args.size(), 0);
    for (std::size_t row = 0; row < rows; ++row) {
        key.clear();
        class_key(values, key);
        auto [it, inserted] = classes.emplace(key, classes.size());
        tokens.push_back("t" + std::to_string(it->second));
        for (std::size_t pos = args.size(); pos-- > 0;) {
            if (++values[pos] < args[pos].range->size()) {
                break;
            }
            values[pos] = 0;
        }
    }
    return Factor(std::move(name), std::move(args), std::move(tokens));
}

}  // namespace

std::vector<std::size_t> planted_single_positions(std::size_t n, std::size_t k,
                                                  std::uint64_t seed) {
    if (k <= 1) {
        return {};
    }
    std::vector<std::size_t> positions = shuffled_positions(n, seed);
    positions.resize(k);
    std::sort(positions.begin(), positions.end());
    return positions;
}

std::vector<std::vector<std::size_t>> planted_group_positions(std::size_t n, std::size_t g,
                                                              std::size_t s,
                                                              std::uint64_t seed) {
    std::vector<std::size_t> positions = shuffled_positions(n, seed);
    std::vector<std::vector<std::size_t>> groups(g);
    for (std::size_t group = 0; group < g; ++group) {
        groups[group].assign(positions.begin() + static_cast<std::ptrdiff_t>(group * s),
                             positions.begin() + static_cast<std::ptrdiff_t>((group + 1) * s));
        std::sort(groups[group].begin(), groups[group].end());
    }
    std::sort(groups.begin(), groups.end());
    return groups;
}

Factor gen_single(std::size_t n, std::size_t k, std::uint64_t seed, std::size_t range_size) {
    if (k > n) {
        throw ParseError("gen_single: k must not exceed n");
    }
    if (k == 1) {
        k = 0;  // a single argument cannot form a commutative block
    }
    const RangePtr range = generated_range(range_size);
    const std::vector<std::size_t> block = planted_single_positions(n, k, seed);
    const std::string name = "single_n" + std::to_string(n) + "_k" + std::to_string(k) +
                             "_seed" + std::to_string(seed);

    return build_from_classes(
        name, generated_args(n, range),
        [block, range_size, n](std::span<const std::size_t> values,
                               std::vector<std::size_t>& key) {
            key.assign(range_size, 0);
            for (auto pos : block) {
                ++key[values[pos]];
            }
            for (std::size_t pos = 0; pos < n; ++pos) {
                if (!std::binary_search(block.begin(), block.end(), pos)) {
                    key.push_back(values[pos]);
                }
            }
        });
}

Factor gen_groups(std::size_t n, std::size_t g, std::size_t s, std::uint64_t seed,
                  std::size_t range_size) {
    if (g < 2 || s < 2 || g * s > n) {
        throw ParseError("gen_groups: needs g >= 2, s >= 2, g*s <= n");
    }
    const RangePtr range = generated_range(range_size);
    const std::vector<std::vector<std::size_t>> groups =
        planted_group_positions(n, g, s, seed);
    std::vector<std::size_t> grouped;
    for (const auto& group : groups) {
        grouped.insert(grouped.end(), group.begin(), group.end());
    }
    std::sort(grouped.begin(), grouped.end());
    const std::string name = "groups_n" + std::to_string(n) + "_g" + std::to_string(g) +
                             "_s" + std::to_string(s) + "_seed" + std::to_string(seed);

    return build_from_classes(
        name, generated_args(n, range),
        [groups, grouped, range_size, n](std::span<const std::size_t> values,
                                         std::vector<std::size_t>& key) {
            for (const auto& group : groups) {
                const std::size_t offset = key.size();
                key.resize(offset + range_size, 0);
                for (auto pos : group) {
                    ++key[offset + values[pos]];
                }
            }
            for (std::size_t pos = 0; pos < n; ++pos) {
                if (!std::binary_search(grouped.begin(), grouped.end(), pos)) {
                    key.push_back(values[pos]);
                }
            }
        });
}

}  // namespace comfactor
