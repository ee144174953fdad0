#include "comfactor/crv.hpp"

#include <algorithm>
#include <unordered_map>

#include "comfactor/reference.hpp"

namespace comfactor {
namespace {

struct CountsHash {
    std::size_t operator()(const std::vector<std::size_t>& counts) const {
        std::size_t seed = counts.size();
        for (auto c : counts) {
            seed = seed * 1099511628211ull + c + 0x9e3779b97f4a7c15ull;
        }
        return seed;
    }
};

}  // namespace

CountedFactor::CountedFactor(std::string name, std::vector<RandomVariable> counted_args,
                             std::vector<std::size_t> counted_positions,
                             RangePtr counted_range, std::vector<RandomVariable> other_args,
                             std::vector<std::size_t> other_positions,
                             std::vector<std::string> table_tokens)
    : name_(std::move(name)),
      counted_args_(std::move(counted_args)),
      counted_positions_(std::move(counted_positions)),
      counted_range_(std::move(counted_range)),
      other_args_(std::move(other_args)),
      other_positions_(std::move(other_positions)),
      tokens_(std::move(table_tokens)) {
    if (counted_args_.size() < 2) {
        throw ParseError("counted factor " + name_ + " needs a block of at least 2");
    }
    if (counted_args_.size() != counted_positions_.size() ||
        other_args_.size() != other_positions_.size()) {
        throw ParseError("counted factor " + name_ + ": positions do not match arguments");
    }
    histograms_ = histograms_colex(counted_args_.size(), counted_range_->size());
    other_rows_ = 1;
    for (const auto& arg : other_args_) {
        other_rows_ *= arg.range->size();
    }
    if (tokens_.size() != histograms_.size() * other_rows_) {
        throw ParseError("counted factor " + name_ + ": table has " +
                         std::to_string(tokens_.size()) + " entries, expected " +
                         std::to_string(histograms_.size() * other_rows_));
    }
}

CountedFactor compress(const Factor& factor, std::span<const std::size_t> positions) {
    if (find_witness(factor, positions)) {
        throw NotCommutative("factor " + factor.name() +
                             " is not commutative with respect to the given subset");
    }
    std::vector<std::size_t> counted(positions.begin(), positions.end());
    std::sort(counted.begin(), counted.end());

    std::vector<RandomVariable> counted_args;
    counted_args.reserve(counted.size());
    for (auto pos : counted) {
        counted_args.push_back(factor.args()[pos]);
    }
    const RangePtr range = counted_args.front().range;

    std::vector<RandomVariable> other_args;
    std::vector<std::size_t> other_positions;
    for (std::size_t pos = 0; pos < factor.arity(); ++pos) {
        if (!std::binary_search(counted.begin(), counted.end(), pos)) {
            other_args.push_back(factor.args()[pos]);
            other_positions.push_back(pos);
        }
    }

    const std::vector<Histogram> histograms = histograms_colex(counted.size(), range->size());
    std::unordered_map<std::vector<std::size_t>, std::size_t, CountsHash> histogram_index;
    for (std::size_t i = 0; i < histograms.size(); ++i) {
        histogram_index.emplace(histograms[i].counts, i);
    }

    std::size_t other_rows = 1;
    for (const auto& arg : other_args) {
        other_rows *= arg.range->size();
    }

    std::vector<std::string> tokens(histograms.size() * other_rows);
    std::vector<bool> filled(tokens.size(), false);
    std::vector<std::size_t> counts(range->size());
    for_each_row(factor, [&](std::size_t row, std::span<const std::size_t> assignment) {
        std::fill(counts.begin(), counts.end(), 0);
        for (auto pos : counted) {
            ++counts[assignment[pos]];
        }
        std::size_t other_row = 0;
        for (std::size_t o = 0; o < other_positions.size(); ++o) {
            other_row = other_row * other_args[o].range->size() +
                        assignment[other_positions[o]];
        }
        const std::size_t slot =
            histogram_index.find(counts)->second * other_rows + other_row;
        const std::string_view token = factor.token_at(row);
        if (!filled[slot]) {
            tokens[slot] = std::string(token);
            filled[slot] = true;
        } else if (tokens[slot] != token) {
            // Should be unreachable after the commutativity check; firing
            // here means token identity broke upstream.
            throw WellDefinednessViolation("factor " + factor.name() +
                                           ": rows of one histogram disagree on \"" +
                                           tokens[slot] + "\" vs \"" + std::string(token) +
                                           "\"");
        }
    });

    return CountedFactor(factor.name(), std::move(counted_args), std::move(counted),
                         range, std::move(other_args), std::move(other_positions),
                         std::move(tokens));
}

Factor expand(const CountedFactor& counted) {
    const std::size_t arity =
        counted.counted_args().size() + counted.other_args().size();
    std::vector<RandomVariable> args(arity);
    for (std::size_t i = 0; i < counted.counted_positions().size(); ++i) {
        args[counted.counted_positions()[i]] = counted.counted_args()[i];
    }
    for (std::size_t i = 0; i < counted.other_positions().size(); ++i) {
        args[counted.other_positions()[i]] = counted.other_args()[i];
    }

    std::unordered_map<std::vector<std::size_t>, std::size_t, CountsHash> histogram_index;
    for (std::size_t i = 0; i < counted.histograms().size(); ++i) {
        histogram_index.emplace(counted.histograms()[i].counts, i);
    }

    std::size_t rows = 1;
    for (const auto& arg : args) {
        rows *= arg.range->size();
    }
    std::vector<std::string> tokens;
    tokens.reserve(rows);

    const std::size_t v = counted.counted_range()->size();
    std::vector<std::size_t> values(arity, 0);
    std::vector<std::size_t> counts(v);
    for (std::size_t row = 0; row < rows; ++row) {
        std::fill(counts.begin(), counts.end(), 0);
        for (auto pos : counted.counted_positions()) {
            ++counts[values[pos]];
        }
        std::size_t other_row = 0;
        for (std::size_t o = 0; o < counted.other_positions().size(); ++o) {
            other_row = other_row * counted.other_args()[o].range->size() +
                        values[counted.other_positions()[o]];
        }
        tokens.push_back(
            counted.token_at(histogram_index.find(counts)->second, other_row));
        for (std::size_t pos = arity; pos-- > 0;) {
            if (++values[pos] < args[pos].range->size()) {
                break;
            }
            values[pos] = 0;
        }
    }
    return Factor(counted.name(), std::move(args), std::move(tokens));
}

}  // namespace comfactor
