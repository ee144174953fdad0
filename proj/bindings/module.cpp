// Python bindings for the core detection operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "comfactor/bottom_up.hpp"
#include "comfactor/buckets.hpp"
#include "comfactor/crv.hpp"
#include "comfactor/decor_plus.hpp"
#include "comfactor/generators.hpp"
#include "comfactor/json_io.hpp"
#include "comfactor/reference.hpp"

namespace py = pybind11;
using namespace comfactor;

namespace {

Factor make_factor(const std::string& name,
                   const std::vector<std::pair<std::string, std::vector<std::string>>>& args,
                   const std::vector<std::string>& table) {
    std::vector<RandomVariable> rvs;
    std::map<std::vector<std::string>, RangePtr> ranges;
    for (const auto& [arg_name, values] : args) {
        auto it = ranges.find(values);
        if (it == ranges.end()) {
            it = ranges.emplace(values, make_range(values)).first;
        }
        rvs.push_back({arg_name, it->second});
    }
    return Factor(name, std::move(rvs), table);
}

std::vector<std::size_t> positions_for(const Factor& factor,
                                       const std::vector<std::string>& names) {
    std::vector<std::size_t> positions;
    for (const auto& name : names) {
        auto pos = factor.position_of(name);
        if (!pos) {
            throw ParseError("factor " + factor.name() + " has no argument \"" + name +
                             "\"");
        }
        positions.push_back(*pos);
    }
    return positions;
}

std::vector<std::vector<std::string>> subsets_as_names(
    const Factor& factor, const std::vector<std::vector<std::size_t>>& subsets) {
    std::vector<std::vector<std::string>> out;
    for (const auto& subset : subsets) {
        std::vector<std::string> names;
        for (auto pos : subset) {
            names.push_back(factor.args()[pos].name);
        }
        out.push_back(std::move(names));
    }
    return out;
}

py::dict result_to_dict(const Factor& factor, const CommutativeResult& result) {
    py::dict timing;
    timing["candidate_ms"] = result.timing.candidate_ms;
    timing["verification_ms"] = result.timing.verification_ms;
    timing["total_ms"] = result.timing.total_ms;
    timing["verified_candidates"] = result.timing.verified_candidates;

    py::dict out;
    out["algorithm"] = to_string(result.algorithm);
    out["subsets"] = subsets_as_names(factor, result.subsets);
    out["size"] = result.size;
    out["timing"] = std::move(timing);
    return out;
}

BucketHeuristic heuristic_from_name(const std::string& name) {
    if (name == "none") return BucketHeuristic::None;
    if (name == "sbf") return BucketHeuristic::SmallestBucketFirst;
    if (name == "lgf") return BucketHeuristic::LeastGroupsFirst;
    if (name == "scsf") return BucketHeuristic::SmallestCandidateSetFirst;
    if (name == "smcf") return BucketHeuristic::SmallestMinCandidateFirst;
    throw ParseError("unknown heuristic \"" + name + "\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Detection of commutative factor arguments in discrete factor graphs";

    py::register_exception<Error>(m, "ComfactorError");

    py::class_<Factor>(m, "Factor")
        .def_property_readonly("name", &Factor::name)
        .def_property_readonly("arg_names",
                               [](const Factor& f) {
                                   std::vector<std::string> names;
                                   for (const auto& arg : f.args()) {
                                       names.push_back(arg.name);
                                   }
                                   return names;
                               })
        .def_property_readonly("arity", &Factor::arity)
        .def_property_readonly("row_count", &Factor::row_count)
        .def("table_tokens", &Factor::table_tokens)
        .def("lookup",
             [](const Factor& f, const std::vector<std::string>& labels) {
                 if (labels.size() != f.arity()) {
                     throw InvalidAssignment("expected " + std::to_string(f.arity()) +
                                             " values");
                 }
                 Assignment a;
                 for (std::size_t i = 0; i < labels.size(); ++i) {
                     auto idx = f.args()[i].range->index_of(labels[i]);
                     if (!idx) {
                         throw InvalidAssignment("value " + labels[i] +
                                                 " not in range of argument " +
                                                 f.args()[i].name);
                     }
                     a.push_back(*idx);
                 }
                 return std::string(f.lookup(a).token);
             },
             py::arg("values"))
        .def("__repr__", [](const Factor& f) {
            return "<Factor " + f.name() + "/" + std::to_string(f.arity()) + ">";
        });

    py::class_<CountedFactor>(m, "CountedFactor")
        .def_property_readonly("name", &CountedFactor::name)
        .def_property_readonly("block_size", &CountedFactor::block_size)
        .def_property_readonly("counted_arg_names",
                               [](const CountedFactor& cf) {
                                   std::vector<std::string> names;
                                   for (const auto& arg : cf.counted_args()) {
                                       names.push_back(arg.name);
                                   }
                                   return names;
                               })
        .def("entries",
             [](const CountedFactor& cf) {
                 std::vector<std::pair<std::vector<std::size_t>, std::string>> out;
                 for (std::size_t h = 0; h < cf.histograms().size(); ++h) {
                     for (std::size_t o = 0; o < cf.other_row_count(); ++o) {
                         out.emplace_back(cf.histograms()[h].counts, cf.token_at(h, o));
                     }
                 }
                 return out;
             })
        .def("expand", [](const CountedFactor& cf) { return expand(cf); });

    py::class_<GraphDocument>(m, "GraphDocument")
        .def_property_readonly("factor_names",
                               [](const GraphDocument& doc) {
                                   std::vector<std::string> names;
                                   for (const auto& entry : doc.entries) {
                                       if (const Factor* f = std::get_if<Factor>(&entry)) {
                                           names.push_back(f->name());
                                       } else {
                                           names.push_back(
                                               std::get<CountedFactor>(entry).name());
                                       }
                                   }
                                   return names;
                               })
        .def("factor", &GraphDocument::ground_factor, py::arg("name"))
        .def("normalisation_constant",
             [](const GraphDocument& doc) {
                 return doc.grounded().normalisation_constant();
             })
        .def("joint_unnormalised",
             [](const GraphDocument& doc, const std::map<std::string, std::string>& full) {
                 return doc.grounded().joint_unnormalised(full);
             },
             py::arg("assignment"));

    m.def("load", [](const std::string& path) { return load_document(path); },
          py::arg("path"), "Load a factor-graph JSON file");
    m.def("loads", [](const std::string& text) { return parse_document(text); },
          py::arg("text"), "Parse a factor-graph JSON document");
    m.def("make_factor", &make_factor, py::arg("name"), py::arg("args"), py::arg("table"),
          "Build a factor from (name, [(arg, [values])], [tokens])");

    m.def("decor_plus",
          [](const Factor& factor, const std::string& heuristic, bool return_all) {
              DetectOptions options;
              options.heuristic = heuristic_from_name(heuristic);
              options.return_all = return_all;
              return result_to_dict(factor, decor_plus(factor, options));
          },
          py::arg("factor"), py::arg("heuristic") = "none", py::arg("return_all") = true);
    m.def("a_decor",
          [](const Factor& factor) { return result_to_dict(factor, a_decor(factor)); },
          py::arg("factor"));
    m.def("cc_decor",
          [](const Factor& factor) { return result_to_dict(factor, cc_decor(factor)); },
          py::arg("factor"));
    m.def("brute_force",
          [](const Factor& factor) { return result_to_dict(factor, brute_force(factor)); },
          py::arg("factor"));
    m.def("original_decor",
          [](const Factor& factor) {
              std::vector<std::string> names;
              for (auto pos : original_decor(factor)) {
                  names.push_back(factor.args()[pos].name);
              }
              return names;
          },
          py::arg("factor"),
          "The flawed unverified procedure; its output may not be commutative");

    m.def("is_commutative",
          [](const Factor& factor, const std::vector<std::string>& subset) {
              return is_commutative(factor, positions_for(factor, subset));
          },
          py::arg("factor"), py::arg("subset"));
    m.def("find_witness",
          [](const Factor& factor, const std::vector<std::string>& subset)
              -> std::optional<std::pair<std::vector<std::string>, std::vector<std::string>>> {
              auto witness = find_witness(factor, positions_for(factor, subset));
              if (!witness) {
                  return std::nullopt;
              }
              auto labels = [&](std::size_t row) {
                  std::vector<std::string> out;
                  const Assignment a = factor.index_to_assignment(row);
                  for (std::size_t i = 0; i < a.size(); ++i) {
                      out.push_back(factor.args()[i].range->value(a[i]));
                  }
                  return out;
              };
              return std::make_pair(labels(witness->row), labels(witness->permuted_row));
          },
          py::arg("factor"), py::arg("subset"),
          "A falsifying assignment pair, or None when commutative");

    m.def("compress",
          [](const Factor& factor, const std::vector<std::string>& subset) {
              return compress(factor, positions_for(factor, subset));
          },
          py::arg("factor"), py::arg("subset"));

    m.def("buckets",
          [](const Factor& factor) {
              py::list classes;
              for (const auto& cls : classes_of(factor)) {
                  py::list buckets;
                  for (const auto& entry : enumerate_buckets(factor, cls)) {
                      py::dict bucket;
                      bucket["histogram"] = entry.key.counts;
                      std::vector<std::string> tokens;
                      for (auto row : entry.rows) {
                          tokens.emplace_back(factor.token_at(row));
                      }
                      bucket["potentials"] = std::move(tokens);
                      buckets.append(std::move(bucket));
                  }
                  py::dict out;
                  std::vector<std::string> names;
                  for (auto pos : cls.positions) {
                      names.push_back(factor.args()[pos].name);
                  }
                  out["arguments"] = std::move(names);
                  out["buckets"] = std::move(buckets);
                  classes.append(std::move(out));
              }
              return classes;
          },
          py::arg("factor"), "Bucket partition per argument class");

    m.def("gen_single", &gen_single, py::arg("n"), py::arg("k"), py::arg("seed"),
          py::arg("range_size") = 2);
    m.def("gen_groups", &gen_groups, py::arg("n"), py::arg("g"), py::arg("s"),
          py::arg("seed"), py::arg("range_size") = 2);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
