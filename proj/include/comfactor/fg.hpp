#ifndef COMFACTOR_FG_HPP
#define COMFACTOR_FG_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "comfactor/errors.hpp"

namespace comfactor {

// Ordered list of distinct value labels. The order is significant: it fixes
// histogram slot order and potential-table row order.
class RangeSpec {
public:
    explicit RangeSpec(std::vector<std::string> values);

    const std::vector<std::string>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const std::string& value(std::size_t i) const { return values_[i]; }
    std::optional<std::size_t> index_of(std::string_view label) const;

    friend bool operator==(const RangeSpec& a, const RangeSpec& b) {
        return a.values_ == b.values_;
    }

private:
    std::vector<std::string> values_;
};

using RangePtr = std::shared_ptr<const RangeSpec>;

RangePtr make_range(std::vector<std::string> values);
RangePtr boolean_range();  // {high, low}

// Two ranges are interchangeable for commutativity purposes iff their value
// lists are equal including order.
inline bool same_range(const RangePtr& a, const RangePtr& b) {
    return a == b || (a && b && *a == *b);
}

struct RandomVariable {
    std::string name;
    RangePtr range;
};

// One potential as seen through a factor: the canonical token plus the
// factor-local interned code. Two potentials are identical iff their tokens
// (equivalently, codes within one factor) are equal.
struct Potential {
    std::string_view token;
    std::int32_t code;
};

// Canonical decimal token for a numeric potential. With quantise_eps > 0 the
// value is snapped to the nearest multiple of eps first; eps = 0 keeps the
// exact value. Integral values print without a fractional part so that 1 and
// 1.0 share a token.
std::string canonical_number_token(double value, double quantise_eps = 0.0);

// Parses a token as a number; nullopt for symbolic tokens such as "φ1".
std::optional<double> token_numeric_value(std::string_view token);

// Ordered list of range-value indices, one per factor argument.
using Assignment = std::vector<std::size_t>;

// A named function over an argument list, stored as a dense potential table
// in row-major order: args[0] is most significant and the last argument
// varies fastest. Immutable after construction.
class Factor {
public:
    Factor(std::string name, std::vector<RandomVariable> args,
           std::vector<std::string> table_tokens);

    const std::string& name() const { return name_; }
    const std::vector<RandomVariable>& args() const { return args_; }
    std::size_t arity() const { return args_.size(); }
    std::size_t row_count() const { return codes_.size(); }

    // Mixed-radix strides; stride(i) is the row-index step of argument i.
    std::size_t stride(std::size_t pos) const { return strides_[pos]; }
    std::size_t range_size(std::size_t pos) const { return args_[pos].range->size(); }

    std::optional<std::size_t> position_of(std::string_view arg_name) const;

    std::size_t assignment_index(std::span<const std::size_t> a) const;
    Assignment index_to_assignment(std::size_t row) const;

    Potential lookup(std::span<const std::size_t> a) const;
    Potential potential_at(std::size_t row) const {
        return {tokens_[static_cast<std::size_t>(codes_[row])], codes_[row]};
    }
    std::int32_t code_at(std::size_t row) const { return codes_[row]; }
    std::string_view token_at(std::size_t row) const {
        return tokens_[static_cast<std::size_t>(codes_[row])];
    }

    // Distinct tokens in order of first appearance; codes index this list.
    const std::vector<std::string>& distinct_tokens() const { return tokens_; }

    // Numeric value of the potential at `row`; throws ParseError for
    // symbolic tokens.
    double numeric_at(std::size_t row) const;

    // Full table as tokens, in row order.
    std::vector<std::string> table_tokens() const;

private:
    std::string name_;
    std::vector<RandomVariable> args_;
    std::vector<std::size_t> strides_;
    std::vector<std::string> tokens_;
    std::vector<std::optional<double>> token_values_;
    std::vector<std::int32_t> codes_;
};

// Calls fn(row, assignment) for every row in table order. The assignment
// span stays owned by the iteration and is updated in place.
template <typename Fn>
void for_each_row(const Factor& factor, Fn&& fn) {
    const std::size_t n = factor.arity();
    Assignment values(n, 0);
    const std::size_t rows = factor.row_count();
    for (std::size_t row = 0; row < rows; ++row) {
        fn(row, std::span<const std::size_t>(values));
        for (std::size_t pos = n; pos-- > 0;) {
            if (++values[pos] < factor.range_size(pos)) {
                break;
            }
            values[pos] = 0;
        }
    }
}

// A bipartite model of RVs and factors; the product of the factors encodes a
// joint distribution up to the normalisation constant Z. Counted factors are
// held alongside ground ones so that compressed documents round-trip (see
// crv.hpp for the compressed form itself).
class FactorGraph {
public:
    FactorGraph() = default;

    void add_range(std::string name, RangePtr range);
    void add_rv(std::string name, const std::string& range_name);
    void add_factor(Factor factor);

    const std::vector<std::pair<std::string, RangePtr>>& ranges() const { return ranges_; }
    const std::vector<RandomVariable>& rvs() const { return rvs_; }
    const std::vector<Factor>& factors() const { return factors_; }

    RangePtr find_range(std::string_view name) const;
    const RandomVariable* find_rv(std::string_view name) const;
    const Factor* find_factor(std::string_view name) const;
    const std::string& range_name_of(const RangePtr& range) const;

    // Product over factors of the potential at the projection of `full`.
    // Requires numeric tokens; `full` maps RV name to value label.
    double joint_unnormalised(const std::map<std::string, std::string>& full) const;

    // Sum of joint_unnormalised over all full assignments.
    double normalisation_constant(std::size_t state_cap = default_state_cap()) const;

    static std::size_t default_state_cap() { return std::size_t{1} << 24; }

private:
    std::vector<std::pair<std::string, RangePtr>> ranges_;
    std::vector<RandomVariable> rvs_;
    std::vector<Factor> factors_;
};

}  // namespace comfactor

#endif
