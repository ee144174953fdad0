#ifndef COMFACTOR_CRV_HPP
#define COMFACTOR_CRV_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "comfactor/buckets.hpp"
#include "comfactor/fg.hpp"

namespace comfactor {

// A factor whose commutative argument block has been replaced by a single
// histogram-valued counting argument. The counted block is the most
// significant table dimension; histogram keys are stored in colex order and
// the remaining arguments keep their original relative order with the last
// one varying fastest.
class CountedFactor {
public:
    CountedFactor(std::string name, std::vector<RandomVariable> counted_args,
                  std::vector<std::size_t> counted_positions, RangePtr counted_range,
                  std::vector<RandomVariable> other_args,
                  std::vector<std::size_t> other_positions,
                  std::vector<std::string> table_tokens);

    const std::string& name() const { return name_; }
    const std::vector<RandomVariable>& counted_args() const { return counted_args_; }
    const std::vector<std::size_t>& counted_positions() const { return counted_positions_; }
    const RangePtr& counted_range() const { return counted_range_; }
    std::size_t block_size() const { return counted_args_.size(); }
    const std::vector<RandomVariable>& other_args() const { return other_args_; }
    const std::vector<std::size_t>& other_positions() const { return other_positions_; }

    const std::vector<Histogram>& histograms() const { return histograms_; }
    std::size_t other_row_count() const { return other_rows_; }
    std::size_t entry_count() const { return tokens_.size(); }

    const std::string& token_at(std::size_t histogram_index, std::size_t other_row) const {
        return tokens_[histogram_index * other_rows_ + other_row];
    }
    const std::vector<std::string>& table_tokens() const { return tokens_; }

private:
    std::string name_;
    std::vector<RandomVariable> counted_args_;
    std::vector<std::size_t> counted_positions_;
    RangePtr counted_range_;
    std::vector<RandomVariable> other_args_;
    std::vector<std::size_t> other_positions_;
    std::vector<Histogram> histograms_;
    std::size_t other_rows_;
    std::vector<std::string> tokens_;
};

// Replaces the argument block at `positions` by a counting argument. The
// factor must be commutative with respect to the block (checked; throws
// NotCommutative). Every ground row realising the same (histogram,
// other-assignment) pair must carry the same token; a disagreement throws
// WellDefinednessViolation.
CountedFactor compress(const Factor& factor, std::span<const std::size_t> positions);

// Reconstructs the ground factor with the original argument order;
// expand(compress(f, C)) reproduces f table-exactly.
Factor expand(const CountedFactor& counted);

}  // namespace comfactor

#endif
