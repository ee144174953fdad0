#ifndef COMFACTOR_JSON_IO_HPP
#define COMFACTOR_JSON_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "comfactor/crv.hpp"
#include "comfactor/fg.hpp"

namespace comfactor {

// A factor-graph document as stored on disk:
//
//   {
//     "ranges":  { name: [value, ...], ... },
//     "rvs":     { name: range-name, ... },
//     "factors": [ { "name": ..., "args": [rv, ...], "table": [token, ...] },
//                  ... ]
//   }
//
// Table entries are potential tokens in canonical row order (first argument
// most significant, last argument fastest, range order per the declared
// value list). Entries may be JSON strings (taken verbatim) or numbers
// (canonicalised, optionally snapped to a quantisation tolerance). A factor
// whose commutative block has been compressed carries a "counted" block:
//
//   { "name": ..., "counted": { "args": [rv, ...], "positions": [i, ...],
//     "histograms": [[n1, ...], ...] }, "args": [rv, ...], "table": [...] }
//
// with histogram keys in colex order. Unknown keys are rejected.
struct GraphDocument {
    // Ranges and RVs; factor entries live below so that ground and counted
    // factors keep their file order.
    FactorGraph skeleton;
    std::vector<std::variant<Factor, CountedFactor>> entries;

    const std::variant<Factor, CountedFactor>* find_entry(std::string_view name) const;
    // The named factor in ground form; counted entries are expanded. Throws
    // ParseError when the name is unknown.
    Factor ground_factor(std::string_view name) const;
    // The full graph with every counted factor expanded.
    FactorGraph grounded() const;
};

struct LoadOptions {
    double quantise_eps = 0.0;
};

GraphDocument parse_document(const std::string& text, const LoadOptions& options = {});
GraphDocument load_document(const std::filesystem::path& path,
                            const LoadOptions& options = {});

// Canonical serialisation: fixed key order, two-space indentation, trailing
// newline. load(serialise(d)) == d and serialising a canonically stored file
// reproduces it byte-exactly.
std::string serialise_document(const GraphDocument& document);
void save_document(const std::filesystem::path& path, const GraphDocument& document);

}  // namespace comfactor

#endif
