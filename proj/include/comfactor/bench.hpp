#ifndef COMFACTOR_BENCH_HPP
#define COMFACTOR_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "comfactor/decor_plus.hpp"
#include "comfactor/fg.hpp"
#include "comfactor/reference.hpp"
#include "comfactor/result.hpp"

namespace comfactor {

// One benchmark instance: a seeded generator call.
struct InstanceSpec {
    enum class Family { Single, Groups };

    Family family = Family::Single;
    std::size_t n = 0;
    std::size_t k = 0;  // single: planted block size
    std::size_t g = 0;  // groups: group count
    std::size_t s = 0;  // groups: group size
    std::uint64_t seed = 0;
    std::size_t range_size = 2;

    Factor instantiate() const;
    std::string family_name() const;
    std::string k_or_gs() const;  // "4" for single, "2x3" for groups
};

struct RunRecord {
    InstanceSpec spec;
    Algorithm algorithm = Algorithm::DecorPlus;
    BucketHeuristic heuristic = BucketHeuristic::None;
    std::size_t result_size = 0;
    std::size_t subsets_found = 0;
    PhaseTiming timing;
    bool timed_out = false;
};

struct SuiteOptions {
    std::vector<InstanceSpec> specs;
    std::vector<Algorithm> algorithms = {Algorithm::DecorPlus, Algorithm::ADecor,
                                         Algorithm::CcDecor, Algorithm::BruteForce};
    // Applied to DecorPlus only; one run per heuristic.
    std::vector<BucketHeuristic> heuristics = {BucketHeuristic::None};
    double timeout_ms = 300000.0;  // five minutes
    std::size_t repetitions = 1;
    std::size_t brute_subset_budget = BruteForceOptions::default_subset_budget();
};

// Runs every (spec, algorithm[, heuristic]) pair `repetitions` times with
// wall-clock timing and a cooperative per-run timeout. Each run is
// single-threaded. Records are handed to `sink` as they are produced and
// returned collectively.
std::vector<RunRecord> run_suite(const SuiteOptions& options,
                                 const std::function<void(const RunRecord&)>& sink = {});

// CSV with columns n, k_or_gs, family, seed, algorithm, heuristic,
// result_size, candidate_ms, verification_ms, total_ms, timed_out. The base
// seed is documented in a leading comment line.
void write_csv_header(std::ostream& out, std::uint64_t base_seed);
void write_csv_record(std::ostream& out, const RunRecord& record);

// JSON-lines sink: one record object per line.
void write_jsonl_record(std::ostream& out, const RunRecord& record);

}  // namespace comfactor

#endif
