#include "comfactor/bench.hpp"

#include <chrono>
#include <cstdio>

#include "json.hpp"

#include "comfactor/bottom_up.hpp"
#include "comfactor/generators.hpp"
#include "comfactor/reference.hpp"

namespace comfactor {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

RunRecord run_one(const Factor& factor, const InstanceSpec& spec, Algorithm algorithm,
                  BucketHeuristic heuristic, const SuiteOptions& options) {
    RunRecord record;
    record.spec = spec;
    record.algorithm = algorithm;
    record.heuristic = heuristic;

    const Deadline deadline = Deadline::after(options.timeout_ms);
    const auto start = Clock::now();
    try {
        CommutativeResult result;
        switch (algorithm) {
            case Algorithm::DecorPlus: {
                DetectOptions detect;
                detect.heuristic = heuristic;
                detect.deadline = deadline;
                result = decor_plus(factor, detect);
                break;
            }
            case Algorithm::ADecor:
                result = a_decor(factor, deadline);
                break;
            case Algorithm::CcDecor:
                result = cc_decor(factor, deadline);
                break;
            case Algorithm::BruteForce: {
                BruteForceOptions brute;
                brute.deadline = deadline;
                brute.subset_budget = options.brute_subset_budget;
                result = brute_force(factor, brute);
                break;
            }
            case Algorithm::OriginalDecor: {
                auto subset = original_decor(factor);
                result.algorithm = Algorithm::OriginalDecor;
                if (!subset.empty()) {
                    result.size = subset.size();
                    result.subsets.push_back(std::move(subset));
                }
                result.timing.candidate_ms = ms_since(start);
                result.timing.total_ms = result.timing.candidate_ms;
                break;
            }
        }
        record.result_size = result.size;
        record.subsets_found = result.subsets.size();
        record.timing = result.timing;
    } catch (const DeadlineExpired&) {
        record.timed_out = true;
        record.timing.total_ms = ms_since(start);
    }
    return record;
}

}  // namespace

Factor InstanceSpec::instantiate() const {
    if (family == Family::Single) {
        return gen_single(n, k, seed, range_size);
    }
    return gen_groups(n, g, s, seed, range_size);
}

std::string InstanceSpec::family_name() const {
    return family == Family::Single ? "single" : "groups";
}

std::string InstanceSpec::k_or_gs() const {
    if (family == Family::Single) {
        return std::to_string(k);
    }
    return std::to_string(g) + "x" + std::to_string(s);
}

std::vector<RunRecord> run_suite(const SuiteOptions& options,
                                 const std::function<void(const RunRecord&)>& sink) {
    std::vector<RunRecord> records;
    for (const auto& spec : options.specs) {
        const Factor factor = spec.instantiate();
        for (auto algorithm : options.algorithms) {
            const std::vector<BucketHeuristic> heuristics =
                algorithm == Algorithm::DecorPlus
                    ? options.heuristics
                    : std::vector<BucketHeuristic>{BucketHeuristic::None};
            for (auto heuristic : heuristics) {
                for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
                    RunRecord record = run_one(factor, spec, algorithm, heuristic, options);
                    if (sink) {
                        sink(record);
                    }
                    records.push_back(record);
                }
            }
        }
    }
    return records;
}

void write_csv_header(std::ostream& out, std::uint64_t base_seed) {
    out << "# base_seed=" << base_seed << "\n";
    out << "n,k_or_gs,family,seed,algorithm,heuristic,result_size,candidate_ms,"
           "verification_ms,total_ms,timed_out\n";
}

void write_csv_record(std::ostream& out, const RunRecord& record) {
    char timings[96];
    std::snprintf(timings, sizeof(timings), "%.3f,%.3f,%.3f", record.timing.candidate_ms,
                  record.timing.verification_ms, record.timing.total_ms);
    out << record.spec.n << ',' << record.spec.k_or_gs() << ',' << record.spec.family_name()
        << ',' << record.spec.seed << ',' << to_string(record.algorithm) << ','
        << to_string(record.heuristic) << ',' << record.result_size << ',' << timings << ','
        << (record.timed_out ? "true" : "false") << "\n";
}

void write_jsonl_record(std::ostream& out, const RunRecord& record) {
    nlohmann::ordered_json j;
    j["n"] = record.spec.n;
    j["k_or_gs"] = record.spec.k_or_gs();
    j["family"] = record.spec.family_name();
    j["seed"] = record.spec.seed;
    j["algorithm"] = to_string(record.algorithm);
    j["heuristic"] = to_string(record.heuristic);
    j["result_size"] = record.result_size;
    j["subsets_found"] = record.subsets_found;
    j["candidate_ms"] = record.timing.candidate_ms;
    j["verification_ms"] = record.timing.verification_ms;
    j["total_ms"] = record.timing.total_ms;
    j["verified_candidates"] = record.timing.verified_candidates;
    j["timed_out"] = record.timed_out;
    out << j.dump() << "\n";
}

}  // namespace comfactor
