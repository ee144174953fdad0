#include "comfactor/bottom_up.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "comfactor/reference.hpp"

namespace comfactor {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Pair layers of every class, merged; pairs across classes cannot be
// commutative and are never scanned.
std::vector<PairLayer> all_pair_layers(const Factor& factor, const Deadline& deadline) {
    std::vector<PairLayer> layers;
    for (const auto& cls : classes_of(factor)) {
        layers.push_back(pairwise_layer(factor, cls, deadline));
    }
    return layers;
}

}  // namespace

void PairLayer::add(std::size_t i, std::size_t j) {
    if (i > j) {
        std::swap(i, j);
    }
    if (members_.insert(key(i, j)).second) {
        pairs_.emplace_back(i, j);
    }
}

bool PairLayer::contains(std::size_t i, std::size_t j) const {
    return members_.count(key(i, j)) != 0;
}

PairLayer pairwise_layer(const Factor& factor, const ArgClass& cls,
                         const Deadline& deadline) {
    PairLayer layer;
    for (std::size_t a = 0; a < cls.size(); ++a) {
        for (std::size_t b = a + 1; b < cls.size(); ++b) {
            deadline.check();
            ++layer.scans;
            if (is_commutative_pair(factor, cls.positions[a], cls.positions[b])) {
                layer.add(cls.positions[a], cls.positions[b]);
            }
        }
    }
    return layer;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) {
        parent_[i] = i;
    }
}

std::size_t UnionFind::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

void UnionFind::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) {
        return;
    }
    if (rank_[a] < rank_[b]) {
        std::swap(a, b);
    }
    parent_[b] = a;
    if (rank_[a] == rank_[b]) {
        ++rank_[a];
    }
}

CommutativeResult a_decor(const Factor& factor, const Deadline& deadline) {
    const auto start = Clock::now();
    CommutativeResult result;
    result.algorithm = Algorithm::ADecor;

    PairLayer merged;
    for (auto& layer : all_pair_layers(factor, deadline)) {
        merged.scans += layer.scans;
        for (auto [i, j] : layer.pairs()) {
            merged.add(i, j);
        }
    }
    result.timing.candidate_ms = ms_since(start);

    const auto extension_start = Clock::now();
    std::set<std::vector<std::size_t>> layer;
    for (auto [i, j] : merged.pairs()) {
        layer.insert({i, j});
    }
    std::set<std::vector<std::size_t>> best = layer;
    while (!layer.empty()) {
        deadline.check();
        // Each extension is settled by pair membership alone; the pseudocode
        // regenerates a (k+1)-subset once per member, the set dedupes.
        std::set<std::vector<std::size_t>> next;
        for (const auto& subset : layer) {
            for (std::size_t candidate = 0; candidate < factor.arity(); ++candidate) {
                if (std::binary_search(subset.begin(), subset.end(), candidate)) {
                    continue;
                }
                bool extendable = true;
                for (auto member : subset) {
                    if (!merged.contains(candidate, member)) {
                        extendable = false;
                        break;
                    }
                }
                if (extendable) {
                    std::vector<std::size_t> extended = subset;
                    extended.insert(
                        std::lower_bound(extended.begin(), extended.end(), candidate),
                        candidate);
                    next.insert(std::move(extended));
                }
            }
        }
        if (!next.empty()) {
            best = next;
        }
        layer = std::move(next);
    }

    result.subsets.assign(best.begin(), best.end());
    if (!result.subsets.empty()) {
        result.size = result.subsets.front().size();
    }
    result.timing.verification_ms = ms_since(extension_start);
    result.timing.total_ms = ms_since(start);
    return result;
}

CommutativeResult cc_decor(const Factor& factor, const Deadline& deadline) {
    const auto start = Clock::now();
    CommutativeResult result;
    result.algorithm = Algorithm::CcDecor;

    std::vector<PairLayer> layers = all_pair_layers(factor, deadline);
    result.timing.candidate_ms = ms_since(start);

    const auto merge_start = Clock::now();
    UnionFind components(factor.arity());
    for (const auto& layer : layers) {
        for (auto [i, j] : layer.pairs()) {
            components.unite(i, j);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (const auto& layer : layers) {
        for (auto [i, j] : layer.pairs()) {
            by_root[components.find(i)];  // roots of positions touching a pair
        }
    }
    for (std::size_t pos = 0; pos < factor.arity(); ++pos) {
        auto it = by_root.find(components.find(pos));
        if (it != by_root.end()) {
            it->second.push_back(pos);
        }
    }
    for (auto& [root, members] : by_root) {
        if (members.size() > result.size) {
            result.size = members.size();
            result.subsets.clear();
        }
        if (members.size() == result.size) {
            result.subsets.push_back(members);
        }
    }
    canonicalise(result.subsets);
    result.timing.verification_ms = ms_since(merge_start);
    result.timing.total_ms = ms_since(start);
    return result;
}

}  // namespace comfactor
