#include "comfactor/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace comfactor {
namespace {

using nlohmann::ordered_json;

void reject_unknown_keys(const ordered_json& object, const char* where,
                         std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : object.items()) {
        bool known = false;
        for (auto candidate : allowed) {
            if (key == candidate) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ParseError(std::string(where) + ": unknown key \"" + key + "\"");
        }
    }
}

const ordered_json& require(const ordered_json& object, const char* key, const char* where) {
    auto it = object.find(key);
    if (it == object.end()) {
        throw ParseError(std::string(where) + ": missing key \"" + key + "\"");
    }
    return *it;
}

std::string token_from_json(const ordered_json& value, const LoadOptions& options) {
    if (value.is_string()) {
        return value.get<std::string>();
    }
    if (value.is_number()) {
        return canonical_number_token(value.get<double>(), options.quantise_eps);
    }
    throw ParseError("table entries must be strings or numbers");
}

std::vector<std::string> string_list(const ordered_json& value, const char* where) {
    if (!value.is_array()) {
        throw ParseError(std::string(where) + ": expected an array");
    }
    std::vector<std::string> out;
    for (const auto& item : value) {
        if (!item.is_string()) {
            throw ParseError(std::string(where) + ": expected strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

std::vector<RandomVariable> resolve_args(const FactorGraph& graph,
                                         const std::vector<std::string>& names,
                                         const std::string& factor_name) {
    std::vector<RandomVariable> args;
    args.reserve(names.size());
    for (const auto& name : names) {
        const RandomVariable* rv = graph.find_rv(name);
        if (!rv) {
            throw ParseError("factor " + factor_name + " references undeclared RV " + name);
        }
        args.push_back(*rv);
    }
    return args;
}

CountedFactor parse_counted_factor(const FactorGraph& graph, const ordered_json& object,
                                   const std::string& name,
                                   std::vector<std::string> table_tokens) {
    const ordered_json& counted = require(object, "counted", "counted factor");
    reject_unknown_keys(counted, "counted block", {"args", "positions", "histograms"});

    const std::vector<std::string> counted_names =
        string_list(require(counted, "args", "counted block"), "counted.args");
    std::vector<RandomVariable> counted_args = resolve_args(graph, counted_names, name);
    if (counted_args.empty()) {
        throw ParseError("counted factor " + name + ": empty block");
    }
    const RangePtr range = counted_args.front().range;
    for (const auto& arg : counted_args) {
        if (!same_range(arg.range, range)) {
            throw ParseError("counted factor " + name + ": block mixes ranges");
        }
    }

    const ordered_json& positions_json = require(counted, "positions", "counted block");
    std::vector<std::size_t> counted_positions;
    for (const auto& p : positions_json) {
        if (!p.is_number_unsigned()) {
            throw ParseError("counted factor " + name + ": positions must be indices");
        }
        counted_positions.push_back(p.get<std::size_t>());
    }

    const std::vector<std::string> other_names =
        string_list(require(object, "args", "factor"), "args");
    std::vector<RandomVariable> other_args = resolve_args(graph, other_names, name);

    // Remaining argument positions, in original relative order.
    const std::size_t arity = counted_positions.size() + other_args.size();
    std::vector<bool> taken(arity, false);
    for (auto pos : counted_positions) {
        if (pos >= arity || taken[pos]) {
            throw ParseError("counted factor " + name + ": bad position list");
        }
        taken[pos] = true;
    }
    std::vector<std::size_t> other_positions;
    for (std::size_t pos = 0; pos < arity; ++pos) {
        if (!taken[pos]) {
            other_positions.push_back(pos);
        }
    }

    CountedFactor result(name, std::move(counted_args), std::move(counted_positions), range,
                         std::move(other_args), std::move(other_positions),
                         std::move(table_tokens));

    // The histogram list is redundant but must match the canonical colex
    // enumeration exactly.
    const ordered_json& histograms = require(counted, "histograms", "counted block");
    if (!histograms.is_array() || histograms.size() != result.histograms().size()) {
        throw ParseError("counted factor " + name + ": histogram list has wrong length");
    }
    for (std::size_t i = 0; i < result.histograms().size(); ++i) {
        std::vector<std::size_t> counts;
        for (const auto& c : histograms[i]) {
            counts.push_back(c.get<std::size_t>());
        }
        if (counts != result.histograms()[i].counts) {
            throw ParseError("counted factor " + name +
                             ": histograms must be listed in colex order");
        }
    }
    return result;
}

const std::string& entry_name(const std::variant<Factor, CountedFactor>& entry) {
    if (const Factor* f = std::get_if<Factor>(&entry)) {
        return f->name();
    }
    return std::get<CountedFactor>(entry).name();
}

}  // namespace

const std::variant<Factor, CountedFactor>* GraphDocument::find_entry(
    std::string_view name) const {
    for (const auto& entry : entries) {
        if (entry_name(entry) == name) {
            return &entry;
        }
    }
    return nullptr;
}

Factor GraphDocument::ground_factor(std::string_view name) const {
    const auto* entry = find_entry(name);
    if (!entry) {
        throw ParseError("no factor named \"" + std::string(name) + "\"");
    }
    if (const Factor* f = std::get_if<Factor>(entry)) {
        return *f;
    }
    return expand(std::get<CountedFactor>(*entry));
}

FactorGraph GraphDocument::grounded() const {
    FactorGraph out = skeleton;
    for (const auto& entry : entries) {
        if (const Factor* f = std::get_if<Factor>(&entry)) {
            out.add_factor(*f);
        } else {
            out.add_factor(expand(std::get<CountedFactor>(entry)));
        }
    }
    return out;
}

GraphDocument parse_document(const std::string& text, const LoadOptions& options) {
    ordered_json root;
    try {
        root = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ParseError("document root must be an object");
    }
    reject_unknown_keys(root, "document", {"ranges", "rvs", "factors"});

    GraphDocument document;
    const ordered_json& ranges = require(root, "ranges", "document");
    if (!ranges.is_object()) {
        throw ParseError("\"ranges\" must be an object");
    }
    for (const auto& [name, values] : ranges.items()) {
        document.skeleton.add_range(name, make_range(string_list(values, "range values")));
    }

    const ordered_json& rvs = require(root, "rvs", "document");
    if (!rvs.is_object()) {
        throw ParseError("\"rvs\" must be an object");
    }
    for (const auto& [name, range_name] : rvs.items()) {
        if (!range_name.is_string()) {
            throw ParseError("RV " + name + ": range must be a name");
        }
        document.skeleton.add_rv(name, range_name.get<std::string>());
    }

    const ordered_json& factors = require(root, "factors", "document");
    if (!factors.is_array()) {
        throw ParseError("\"factors\" must be an array");
    }
    for (const auto& entry : factors) {
        if (!entry.is_object()) {
            throw ParseError("factor entries must be objects");
        }
        const std::string name = require(entry, "name", "factor").get<std::string>();
        if (document.find_entry(name)) {
            throw ParseError("duplicate factor " + name);
        }
        std::vector<std::string> table;
        for (const auto& token : require(entry, "table", "factor")) {
            table.push_back(token_from_json(token, options));
        }
        if (entry.contains("counted")) {
            reject_unknown_keys(entry, "factor", {"name", "counted", "args", "table"});
            document.entries.emplace_back(
                parse_counted_factor(document.skeleton, entry, name, std::move(table)));
        } else {
            reject_unknown_keys(entry, "factor", {"name", "args", "table"});
            const std::vector<std::string> arg_names =
                string_list(require(entry, "args", "factor"), "args");
            Factor factor(name, resolve_args(document.skeleton, arg_names, name),
                          std::move(table));
            // Validates the args against the declared RVs.
            FactorGraph probe = document.skeleton;
            probe.add_factor(factor);
            document.entries.emplace_back(std::move(factor));
        }
    }
    return document;
}

GraphDocument load_document(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_document(buffer.str(), options);
}

std::string serialise_document(const GraphDocument& document) {
    ordered_json root;
    ordered_json ranges = ordered_json::object();
    for (const auto& [name, range] : document.skeleton.ranges()) {
        ranges[name] = range->values();
    }
    root["ranges"] = std::move(ranges);

    ordered_json rvs = ordered_json::object();
    for (const auto& rv : document.skeleton.rvs()) {
        rvs[rv.name] = document.skeleton.range_name_of(rv.range);
    }
    root["rvs"] = std::move(rvs);

    ordered_json factors = ordered_json::array();
    for (const auto& variant_entry : document.entries) {
        ordered_json entry;
        if (const Factor* factor = std::get_if<Factor>(&variant_entry)) {
            entry["name"] = factor->name();
            ordered_json args = ordered_json::array();
            for (const auto& arg : factor->args()) {
                args.push_back(arg.name);
            }
            entry["args"] = std::move(args);
            entry["table"] = factor->table_tokens();
        } else {
            const CountedFactor& cf = std::get<CountedFactor>(variant_entry);
            entry["name"] = cf.name();
            ordered_json counted;
            ordered_json counted_args = ordered_json::array();
            for (const auto& arg : cf.counted_args()) {
                counted_args.push_back(arg.name);
            }
            counted["args"] = std::move(counted_args);
            counted["positions"] = cf.counted_positions();
            ordered_json histograms = ordered_json::array();
            for (const auto& h : cf.histograms()) {
                histograms.push_back(h.counts);
            }
            counted["histograms"] = std::move(histograms);
            entry["counted"] = std::move(counted);
            ordered_json args = ordered_json::array();
            for (const auto& arg : cf.other_args()) {
                args.push_back(arg.name);
            }
            entry["args"] = std::move(args);
            entry["table"] = cf.table_tokens();
        }
        factors.push_back(std::move(entry));
    }
    root["factors"] = std::move(factors);
    return root.dump(2) + "\n";
}

void save_document(const std::filesystem::path& path, const GraphDocument& document) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << serialise_document(document);
}

}  // namespace comfactor
