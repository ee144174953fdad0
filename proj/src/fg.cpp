#include "comfactor/fg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <unordered_map>
#include <unordered_set>

namespace comfactor {

RangeSpec::RangeSpec(std::vector<std::string> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
        throw ParseError("range needs at least 2 values");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& v : values_) {
        if (!seen.insert(v).second) {
            throw ParseError("range values must be pairwise distinct: " + v);
        }
    }
}

std::optional<std::size_t> RangeSpec::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] == label) {
            return i;
        }
    }
    return std::nullopt;
}

RangePtr make_range(std::vector<std::string> values) {
    return std::make_shared<const RangeSpec>(std::move(values));
}

RangePtr boolean_range() {
    static const RangePtr range = make_range({"high", "low"});
    return range;
}

std::string canonical_number_token(double value, double quantise_eps) {
    if (quantise_eps > 0.0) {
        value = std::round(value / quantise_eps) * quantise_eps;
    }
    if (value == 0.0) {
        return "0";  // normalises -0
    }
    double integral_part = 0.0;
    if (std::modf(value, &integral_part) == 0.0 && std::abs(value) < 9.007199254740992e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", value);
        return buf;
    }
    // Shortest round-trip representation.
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw ParseError("cannot format numeric potential");
    }
    return std::string(buf, ptr);
}

std::optional<double> token_numeric_value(std::string_view token) {
    if (token.empty()) {
        return std::nullopt;
    }
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

Factor::Factor(std::string name, std::vector<RandomVariable> args,
               std::vector<std::string> table_tokens)
    : name_(std::move(name)), args_(std::move(args)) {
    if (args_.empty()) {
        throw ParseError("factor " + name_ + " needs at least one argument");
    }
    std::unordered_set<std::string_view> names;
    std::size_t rows = 1;
    for (const auto& arg : args_) {
        if (!arg.range) {
            throw ParseError("factor " + name_ + ": argument " + arg.name + " has no range");
        }
        if (!names.insert(arg.name).second) {
            throw ParseError("factor " + name_ + ": duplicate argument " + arg.name);
        }
        rows *= arg.range->size();
    }
    if (table_tokens.size() != rows) {
        throw ParseError("factor " + name_ + ": table has " +
                         std::to_string(table_tokens.size()) + " entries, expected " +
                         std::to_string(rows));
    }
    strides_.assign(args_.size(), 1);
    for (std::size_t i = args_.size() - 1; i-- > 0;) {
        strides_[i] = strides_[i + 1] * args_[i + 1].range->size();
    }

    codes_.reserve(rows);
    std::unordered_map<std::string, std::int32_t> intern;
    bool any_symbolic = false;
    bool any_positive = false;
    for (auto& token : table_tokens) {
        auto it = intern.find(token);
        std::int32_t code;
        if (it == intern.end()) {
            code = static_cast<std::int32_t>(tokens_.size());
            intern.emplace(token, code);
            tokens_.push_back(std::move(token));
            auto numeric = token_numeric_value(tokens_.back());
            if (numeric) {
                if (*numeric < 0.0) {
                    throw ParseError("factor " + name_ + ": negative potential " +
                                     tokens_.back());
                }
                if (*numeric > 0.0) {
                    any_positive = true;
                }
            } else {
                any_symbolic = true;
            }
            token_values_.push_back(numeric);
        } else {
            code = it->second;
        }
        codes_.push_back(code);
    }
    // Symbolic tokens stand for unknown non-negative reals, so the at-least-
    // one-non-zero rule is only enforceable on fully numeric tables.
    if (!any_symbolic && !any_positive) {
        throw ParseError("factor " + name_ + ": all potentials are zero");
    }
}

std::optional<std::size_t> Factor::position_of(std::string_view arg_name) const {
    for (std::size_t i = 0; i < args_.size(); ++i) {
        if (args_[i].name == arg_name) {
            return i;
        }
    }
    return std::nullopt;
}

std::size_t Factor::assignment_index(std::span<const std::size_t> a) const {
    if (a.size() != args_.size()) {
        throw InvalidAssignment("factor " + name_ + ": assignment has " +
                                std::to_string(a.size()) + " values, expected " +
                                std::to_string(args_.size()));
    }
    std::size_t row = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] >= args_[i].range->size()) {
            throw InvalidAssignment("factor " + name_ + ": value index " +
                                    std::to_string(a[i]) + " out of range at position " +
                                    std::to_string(i));
        }
        row += a[i] * strides_[i];
    }
    return row;
}

Assignment Factor::index_to_assignment(std::size_t row) const {
    if (row >= codes_.size()) {
        throw InvalidAssignment("factor " + name_ + ": row " + std::to_string(row) +
                                " out of range");
    }
    Assignment a(args_.size());
    for (std::size_t i = 0; i < args_.size(); ++i) {
        a[i] = (row / strides_[i]) % args_[i].range->size();
    }
    return a;
}

Potential Factor::lookup(std::span<const std::size_t> a) const {
    return potential_at(assignment_index(a));
}

double Factor::numeric_at(std::size_t row) const {
    const auto& value = token_values_[static_cast<std::size_t>(codes_[row])];
    if (!value) {
        throw ParseError("factor " + name_ + ": potential token \"" +
                         tokens_[static_cast<std::size_t>(codes_[row])] +
                         "\" is not numeric");
    }
    return *value;
}

std::vector<std::string> Factor::table_tokens() const {
    std::vector<std::string> out;
    out.reserve(codes_.size());
    for (auto code : codes_) {
        out.push_back(tokens_[static_cast<std::size_t>(code)]);
    }
    return out;
}

void FactorGraph::add_range(std::string name, RangePtr range) {
    if (find_range(name)) {
        throw ParseError("duplicate range " + name);
    }
    ranges_.emplace_back(std::move(name), std::move(range));
}

void FactorGraph::add_rv(std::string name, const std::string& range_name) {
    if (find_rv(name)) {
        throw ParseError("duplicate RV " + name);
    }
    RangePtr range = find_range(range_name);
    if (!range) {
        throw ParseError("RV " + name + " references unknown range " + range_name);
    }
    rvs_.push_back({std::move(name), std::move(range)});
}

void FactorGraph::add_factor(Factor factor) {
    if (find_factor(factor.name())) {
        throw ParseError("duplicate factor " + factor.name());
    }
    for (const auto& arg : factor.args()) {
        const RandomVariable* rv = find_rv(arg.name);
        if (!rv) {
            throw ParseError("factor " + factor.name() + " references undeclared RV " +
                             arg.name);
        }
        if (!same_range(rv->range, arg.range)) {
            throw ParseError("factor " + factor.name() + ": RV " + arg.name +
                             " bound to a different range");
        }
    }
    factors_.push_back(std::move(factor));
}

RangePtr FactorGraph::find_range(std::string_view name) const {
    for (const auto& [n, r] : ranges_) {
        if (n == name) {
            return r;
        }
    }
    return nullptr;
}

const RandomVariable* FactorGraph::find_rv(std::string_view name) const {
    for (const auto& rv : rvs_) {
        if (rv.name == name) {
            return &rv;
        }
    }
    return nullptr;
}

const Factor* FactorGraph::find_factor(std::string_view name) const {
    for (const auto& f : factors_) {
        if (f.name() == name) {
            return &f;
        }
    }
    return nullptr;
}

const std::string& FactorGraph::range_name_of(const RangePtr& range) const {
    for (const auto& [n, r] : ranges_) {
        if (same_range(r, range)) {
            return n;
        }
    }
    throw ParseError("range is not registered in the graph");
}

double FactorGraph::joint_unnormalised(const std::map<std::string, std::string>& full) const {
    double product = 1.0;
    for (const auto& factor : factors_) {
        Assignment projected;
        projected.reserve(factor.arity());
        for (const auto& arg : factor.args()) {
            auto it = full.find(arg.name);
            if (it == full.end()) {
                throw IncompleteAssignment("RV " + arg.name + " is unassigned");
            }
            auto idx = arg.range->index_of(it->second);
            if (!idx) {
                throw InvalidAssignment("value " + it->second + " not in range of " +
                                        arg.name);
            }
            projected.push_back(*idx);
        }
        product *= factor.numeric_at(factor.assignment_index(projected));
    }
    return product;
}

double FactorGraph::normalisation_constant(std::size_t state_cap) const {
    std::size_t states = 1;
    for (const auto& rv : rvs_) {
        if (states > state_cap / rv.range->size()) {
            throw StateSpaceTooLarge("state space exceeds enumeration cap of " +
                                     std::to_string(state_cap));
        }
        states *= rv.range->size();
    }

    // Precompute, per factor, the row-index stride of each RV so the sum is a
    // single odometer sweep over the joint state space.
    std::vector<std::vector<std::size_t>> rv_strides(factors_.size());
    for (std::size_t f = 0; f < factors_.size(); ++f) {
        rv_strides[f].assign(rvs_.size(), 0);
        for (std::size_t p = 0; p < factors_[f].arity(); ++p) {
            for (std::size_t r = 0; r < rvs_.size(); ++r) {
                if (rvs_[r].name == factors_[f].args()[p].name) {
                    rv_strides[f][r] = factors_[f].stride(p);
                    break;
                }
            }
        }
    }

    Assignment values(rvs_.size(), 0);
    std::vector<std::size_t> rows(factors_.size(), 0);
    double total = 0.0;
    for (std::size_t state = 0; state < states; ++state) {
        double product = 1.0;
        for (std::size_t f = 0; f < factors_.size(); ++f) {
            product *= factors_[f].numeric_at(rows[f]);
        }
        total += product;
        for (std::size_t r = rvs_.size(); r-- > 0;) {
            ++values[r];
            for (std::size_t f = 0; f < factors_.size(); ++f) {
                rows[f] += rv_strides[f][r];
            }
            if (values[r] < rvs_[r].range->size()) {
                break;
            }
            for (std::size_t f = 0; f < factors_.size(); ++f) {
                rows[f] -= rv_strides[f][r] * values[r];
            }
            values[r] = 0;
        }
    }
    if (!(total > 0.0)) {
        throw Error("normalisation constant is not strictly positive");
    }
    return total;
}

}  // namespace comfactor
