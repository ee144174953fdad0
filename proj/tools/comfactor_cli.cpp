// Command-line front end: load factor-graph files, run the detectors, verify
// subsets, compress commutative blocks to counting arguments, generate
// benchmark instances, and drive timing suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "comfactor/bench.hpp"
#include "comfactor/bottom_up.hpp"
#include "comfactor/crv.hpp"
#include "comfactor/decor_plus.hpp"
#include "comfactor/generators.hpp"
#include "comfactor/json_io.hpp"
#include "comfactor/reference.hpp"

namespace {

using namespace comfactor;
using nlohmann::ordered_json;

constexpr int kExitSuccess = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

const std::map<std::string, Algorithm> kAlgorithms = {
    {"decor+", Algorithm::DecorPlus},   {"a-decor", Algorithm::ADecor},
    {"cc-decor", Algorithm::CcDecor},   {"brute", Algorithm::BruteForce},
    {"original-decor", Algorithm::OriginalDecor},
};

const std::map<std::string, BucketHeuristic> kHeuristics = {
    {"none", BucketHeuristic::None},
    {"sbf", BucketHeuristic::SmallestBucketFirst},
    {"lgf", BucketHeuristic::LeastGroupsFirst},
    {"scsf", BucketHeuristic::SmallestCandidateSetFirst},
    {"smcf", BucketHeuristic::SmallestMinCandidateFirst},
};

std::size_t env_subset_budget() {
    if (const char* value = std::getenv("COMFACTOR_SUBSET_BUDGET")) {
        return static_cast<std::size_t>(std::stoull(value));
    }
    return BruteForceOptions::default_subset_budget();
}

std::vector<std::size_t> subset_positions(const Factor& factor,
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

std::string subset_names(const Factor& factor, const std::vector<std::size_t>& positions) {
    std::string out = "{";
    for (std::size_t i = 0; i < positions.size(); ++i) {
        out += i == 0 ? "" : ", ";
        out += factor.args()[positions[i]].name;
    }
    return out + "}";
}

ordered_json subsets_json(const Factor& factor,
                          const std::vector<std::vector<std::size_t>>& subsets) {
    ordered_json out = ordered_json::array();
    for (const auto& subset : subsets) {
        ordered_json names = ordered_json::array();
        for (auto pos : subset) {
            names.push_back(factor.args()[pos].name);
        }
        out.push_back(std::move(names));
    }
    return out;
}

ordered_json timing_json(const PhaseTiming& timing) {
    ordered_json out;
    out["candidate_ms"] = timing.candidate_ms;
    out["verification_ms"] = timing.verification_ms;
    out["total_ms"] = timing.total_ms;
    out["verified_candidates"] = timing.verified_candidates;
    return out;
}

std::string assignment_string(const Factor& factor, std::size_t row) {
    const Assignment a = factor.index_to_assignment(row);
    std::string out = factor.name() + "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += i == 0 ? "" : ", ";
        out += factor.args()[i].range->value(a[i]);
    }
    return out + ")";
}

// Shared state for the file-based subcommands.
struct DetectArgs {
    std::string file;
    std::string factor;
    std::string algo = "decor+";
    std::string heuristic = "none";
    bool first_only = false;
    bool json = false;
    double eps = 0.0;
    double timeout_ms = 0.0;
};

int run_detect(const DetectArgs& args) {
    const GraphDocument doc = load_document(args.file, {args.eps});
    const Factor factor = doc.ground_factor(args.factor);
    const Algorithm algorithm = kAlgorithms.at(args.algo);

    Deadline deadline;
    if (args.timeout_ms > 0.0) {
        deadline = Deadline::after(args.timeout_ms);
    }

    CommutativeResult result;
    bool verified = true;
    switch (algorithm) {
        case Algorithm::DecorPlus: {
            DetectOptions options;
            options.heuristic = kHeuristics.at(args.heuristic);
            options.return_all = !args.first_only;
            options.deadline = deadline;
            result = decor_plus(factor, options);
            break;
        }
        case Algorithm::ADecor:
            result = a_decor(factor, deadline);
            break;
        case Algorithm::CcDecor:
            result = cc_decor(factor, deadline);
            break;
        case Algorithm::BruteForce: {
            BruteForceOptions options;
            options.deadline = deadline;
            options.subset_budget = env_subset_budget();
            result = brute_force(factor, options);
            break;
        }
        case Algorithm::OriginalDecor: {
            result.algorithm = Algorithm::OriginalDecor;
            auto subset = original_decor(factor);
            if (!subset.empty()) {
                result.size = subset.size();
                result.subsets.push_back(std::move(subset));
            }
            verified = false;
            std::cerr << "WARNING: original-decor performs no verification; the "
                         "reported set is UNVERIFIED and may not be commutative.\n";
            break;
        }
    }
    if (args.first_only && result.subsets.size() > 1) {
        result.subsets.resize(1);
    }

    if (args.json) {
        ordered_json out;
        out["file"] = args.file;
        out["factor"] = factor.name();
        out["algorithm"] = to_string(result.algorithm);
        out["heuristic"] = args.heuristic;
        out["subsets"] = subsets_json(factor, result.subsets);
        out["size"] = result.size;
        out["verified"] = verified;
        out["timing"] = timing_json(result.timing);
        std::cout << out.dump(2) << "\n";
        return kExitSuccess;
    }

    if (result.subsets.empty()) {
        std::cout << "factor " << factor.name() << ": no commutative argument subset\n";
    } else {
        std::cout << "factor " << factor.name() << ": " << result.subsets.size()
                  << " maximum commutative subset" << (result.subsets.size() > 1 ? "s" : "")
                  << " (size " << result.size << ")"
                  << (verified ? "" : " [UNVERIFIED]") << "\n";
        for (const auto& subset : result.subsets) {
            std::cout << "  " << subset_names(factor, subset) << "\n";
        }
    }
    std::printf("candidates: %.3f ms, verification: %.3f ms, total: %.3f ms (%zu checks)\n",
                result.timing.candidate_ms, result.timing.verification_ms,
                result.timing.total_ms, result.timing.verified_candidates);
    return kExitSuccess;
}

struct VerifyArgs {
    std::string file;
    std::string factor;
    std::vector<std::string> subset;
    bool json = false;
    double eps = 0.0;
};

int run_verify(const VerifyArgs& args) {
    const GraphDocument doc = load_document(args.file, {args.eps});
    const Factor factor = doc.ground_factor(args.factor);
    const std::vector<std::size_t> positions = subset_positions(factor, args.subset);
    const auto witness = find_witness(factor, positions);

    if (args.json) {
        ordered_json out;
        out["file"] = args.file;
        out["factor"] = factor.name();
        out["subset"] = args.subset;
        out["commutative"] = !witness.has_value();
        if (witness) {
            ordered_json w;
            w["assignment"] = factor.index_to_assignment(witness->row);
            w["permuted"] = factor.index_to_assignment(witness->permuted_row);
            w["potential"] = std::string(factor.token_at(witness->row));
            w["permuted_potential"] = std::string(factor.token_at(witness->permuted_row));
            out["witness"] = std::move(w);
        } else {
            out["witness"] = nullptr;
        }
        std::cout << out.dump(2) << "\n";
        return witness ? kExitDomain : kExitSuccess;
    }

    if (!witness) {
        std::cout << "commutative: " << factor.name() << " with respect to "
                  << subset_names(factor, positions) << "\n";
        return kExitSuccess;
    }
    std::cout << "not commutative: " << assignment_string(factor, witness->row) << " = "
              << factor.token_at(witness->row) << " but "
              << assignment_string(factor, witness->permuted_row) << " = "
              << factor.token_at(witness->permuted_row) << "\n";
    return kExitDomain;
}

struct TransformArgs {
    std::string file;
    std::string factor;
    std::vector<std::string> subset;
    std::string out;  // empty: in place
    double eps = 0.0;
};

int run_compress(const TransformArgs& args) {
    GraphDocument doc = load_document(args.file, {args.eps});
    const Factor factor = doc.ground_factor(args.factor);
    const CountedFactor counted = compress(factor, subset_positions(factor, args.subset));
    for (auto& entry : doc.entries) {
        const std::string& name =
            std::holds_alternative<Factor>(entry) ? std::get<Factor>(entry).name()
                                                  : std::get<CountedFactor>(entry).name();
        if (name == args.factor) {
            entry = counted;
            break;
        }
    }
    save_document(args.out.empty() ? args.file : args.out, doc);
    return kExitSuccess;
}

int run_expand(const TransformArgs& args) {
    GraphDocument doc = load_document(args.file, {args.eps});
    const auto* entry = doc.find_entry(args.factor);
    if (!entry) {
        throw ParseError("no factor named \"" + args.factor + "\"");
    }
    if (!std::holds_alternative<CountedFactor>(*entry)) {
        throw ParseError("factor " + args.factor + " is not in counted form");
    }
    const Factor ground = expand(std::get<CountedFactor>(*entry));
    for (auto& e : doc.entries) {
        if (std::holds_alternative<CountedFactor>(e) &&
            std::get<CountedFactor>(e).name() == args.factor) {
            e = ground;
            break;
        }
    }
    save_document(args.out.empty() ? args.file : args.out, doc);
    return kExitSuccess;
}

struct GenArgs {
    std::string family = "single";
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t g = 2;
    std::size_t s = 2;
    std::uint64_t seed = 0;
    std::size_t range_size = 2;
    std::string out;
};

GraphDocument document_for(const Factor& factor) {
    GraphDocument doc;
    const RangePtr range = factor.args().front().range;
    const std::string range_name = range->size() == 2 ? "bool" : "range";
    doc.skeleton.add_range(range_name, range);
    for (const auto& arg : factor.args()) {
        doc.skeleton.add_rv(arg.name, range_name);
    }
    doc.entries.emplace_back(factor);
    return doc;
}

int run_gen(const GenArgs& args) {
    const Factor factor = args.family == "single"
                              ? gen_single(args.n, args.k, args.seed, args.range_size)
                              : gen_groups(args.n, args.g, args.s, args.seed,
                                           args.range_size);
    save_document(args.out, document_for(factor));
    return kExitSuccess;
}

struct BenchArgs {
    std::string family = "single";
    std::string n_list = "2..8";
    std::string k_list;  // empty: floor(n/2)
    std::string g_list = "2";
    std::string s_list = "2";
    std::vector<std::string> algos = {"decor+", "a-decor", "cc-decor", "brute"};
    std::vector<std::string> heuristics = {"none"};
    double timeout_ms = 300000.0;
    std::size_t reps = 1;
    std::uint64_t seed = 1;
    std::string out;
    std::string jsonl;
};

// "2,4..8" -> {2,4,5,6,7,8}
std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        const std::string part =
            text.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!part.empty()) {
            const std::size_t dots = part.find("..");
            if (dots == std::string::npos) {
                out.push_back(std::stoul(part));
            } else {
                const std::size_t lo = std::stoul(part.substr(0, dots));
                const std::size_t hi = std::stoul(part.substr(dots + 2));
                for (std::size_t v = lo; v <= hi; ++v) {
                    out.push_back(v);
                }
            }
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (out.empty()) {
        throw ParseError("empty size list");
    }
    return out;
}

int run_bench(const BenchArgs& args) {
    SuiteOptions options;
    options.timeout_ms = args.timeout_ms;
    options.repetitions = args.reps;
    options.brute_subset_budget = env_subset_budget();
    options.algorithms.clear();
    for (const auto& name : args.algos) {
        options.algorithms.push_back(kAlgorithms.at(name));
    }
    options.heuristics.clear();
    for (const auto& name : args.heuristics) {
        options.heuristics.push_back(kHeuristics.at(name));
    }

    std::uint64_t next_seed = args.seed;
    const bool single = args.family == "single" || args.family == "both";
    const bool groups = args.family == "groups" || args.family == "both";
    for (auto n : parse_size_list(args.n_list)) {
        if (single) {
            const std::vector<std::size_t> ks =
                args.k_list.empty() ? std::vector<std::size_t>{n / 2}
                                    : parse_size_list(args.k_list);
            for (auto k : ks) {
                if (k > n) {
                    continue;
                }
                InstanceSpec spec;
                spec.family = InstanceSpec::Family::Single;
                spec.n = n;
                spec.k = k == 1 ? 0 : k;  // a 1-block is no block
                spec.seed = next_seed++;
                options.specs.push_back(spec);
            }
        }
        if (groups) {
            for (auto g : parse_size_list(args.g_list)) {
                for (auto s : parse_size_list(args.s_list)) {
                    if (g < 2 || s < 2 || g * s > n) {
                        continue;
                    }
                    InstanceSpec spec;
                    spec.family = InstanceSpec::Family::Groups;
                    spec.n = n;
                    spec.g = g;
                    spec.s = s;
                    spec.seed = next_seed++;
                    options.specs.push_back(spec);
                }
            }
        }
    }

    std::ofstream csv(args.out, std::ios::binary);
    if (!csv) {
        throw IoError("cannot write " + args.out);
    }
    write_csv_header(csv, args.seed);

    std::optional<std::ofstream> jsonl;
    if (!args.jsonl.empty()) {
        jsonl.emplace(args.jsonl, std::ios::binary);
        if (!*jsonl) {
            throw IoError("cannot write " + args.jsonl);
        }
    }

    run_suite(options, [&](const RunRecord& record) {
        write_csv_record(csv, record);
        csv.flush();
        if (jsonl) {
            write_jsonl_record(*jsonl, record);
        }
    });
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detection of commutative factor arguments in discrete factor graphs"};
    app.require_subcommand(1);

    DetectArgs detect_args;
    CLI::App* detect = app.add_subcommand("detect", "Find maximum commutative subsets");
    detect->add_option("file", detect_args.file, "factor-graph JSON file")->required();
    detect->add_option("factor", detect_args.factor, "factor name")->required();
    detect->add_option("--algo", detect_args.algo, "detection algorithm")
        ->check(CLI::IsMember({"decor+", "a-decor", "cc-decor", "brute", "original-decor"}))
        ->capture_default_str();
    detect->add_option("--heuristic", detect_args.heuristic, "bucket order (decor+ only)")
        ->check(CLI::IsMember({"none", "sbf", "lgf", "scsf", "smcf"}))
        ->capture_default_str();
    detect->add_flag("--first", detect_args.first_only,
                     "report only the first maximum subset");
    auto* all_flag =
        detect->add_flag("--all", "report all maximum subsets (default)");
    detect->add_flag("--json", detect_args.json, "machine-readable output");
    detect->add_option("--eps", detect_args.eps, "numeric token quantisation tolerance");
    detect->add_option("--timeout-ms", detect_args.timeout_ms, "cooperative timeout");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "Check a subset for commutativity");
    verify->add_option("file", verify_args.file)->required();
    verify->add_option("factor", verify_args.factor)->required();
    verify->add_option("--subset", verify_args.subset, "argument names")
        ->required()
        ->delimiter(',');
    verify->add_flag("--json", verify_args.json);
    verify->add_option("--eps", verify_args.eps);

    TransformArgs compress_args;
    CLI::App* compress_cmd =
        app.add_subcommand("compress", "Replace a commutative block by a counting argument");
    compress_cmd->add_option("file", compress_args.file)->required();
    compress_cmd->add_option("factor", compress_args.factor)->required();
    compress_cmd->add_option("--subset", compress_args.subset, "argument names")
        ->required()
        ->delimiter(',');
    compress_cmd->add_option("-o,--out", compress_args.out,
                             "output file (default: in place)");
    compress_cmd->add_option("--eps", compress_args.eps);

    TransformArgs expand_args;
    CLI::App* expand_cmd =
        app.add_subcommand("expand", "Expand a counted factor back to ground form");
    expand_cmd->add_option("file", expand_args.file)->required();
    expand_cmd->add_option("factor", expand_args.factor)->required();
    expand_cmd->add_option("-o,--out", expand_args.out, "output file (default: in place)");
    expand_cmd->add_option("--eps", expand_args.eps);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate a benchmark instance");
    gen->add_option("--family", gen_args.family)
        ->check(CLI::IsMember({"single", "groups"}))
        ->capture_default_str();
    gen->add_option("--n", gen_args.n, "argument count")->required();
    gen->add_option("--k", gen_args.k, "planted block size (single)");
    gen->add_option("--g", gen_args.g, "group count (groups)");
    gen->add_option("--s", gen_args.s, "group size (groups)");
    gen->add_option("--seed", gen_args.seed)->capture_default_str();
    gen->add_option("--range-size", gen_args.range_size)->capture_default_str();
    gen->add_option("-o,--out", gen_args.out, "output file")->required();

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Run a timing suite and write reports");
    bench->add_option("--family", bench_args.family)
        ->check(CLI::IsMember({"single", "groups", "both"}))
        ->capture_default_str();
    bench->add_option("--n", bench_args.n_list, "argument counts, e.g. 2..8 or 2,4,6")
        ->capture_default_str();
    bench->add_option("--k", bench_args.k_list, "planted sizes (default: n/2)");
    bench->add_option("--g", bench_args.g_list, "group counts")->capture_default_str();
    bench->add_option("--s", bench_args.s_list, "group sizes")->capture_default_str();
    bench->add_option("--algo", bench_args.algos, "algorithms to run")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--heuristic", bench_args.heuristics, "decor+ bucket orders")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--timeout-ms", bench_args.timeout_ms)->capture_default_str();
    bench->add_option("--reps", bench_args.reps)->capture_default_str();
    bench->add_option("--seed", bench_args.seed)->capture_default_str();
    bench->add_option("--out", bench_args.out, "CSV report file")->required();
    bench->add_option("--jsonl", bench_args.jsonl, "JSON-lines report file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    (void)all_flag;

    try {
        if (*detect) {
            return run_detect(detect_args);
        }
        if (*verify) {
            return run_verify(verify_args);
        }
        if (*compress_cmd) {
            return run_compress(compress_args);
        }
        if (*expand_cmd) {
            return run_expand(expand_args);
        }
        if (*gen) {
            return run_gen(gen_args);
        }
        if (*bench) {
            return run_bench(bench_args);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
