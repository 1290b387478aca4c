#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "staybusy/instance.hpp"
#include "staybusy/rational.hpp"
#include "staybusy/simulate.hpp"
#include "staybusy/workload.hpp"

namespace staybusy {

/// One row of a competitive-ratio experiment.
struct ExperimentRecord {
    std::string instance;
    std::string family;
    std::string params;
    int r = 1;
    std::string policy;
    Work t_online = 0;
    Work t_offline_bound = 0;
    Work t_offline_greedy = 0;
    Rational ratio;
    double wall_ms = 0.0;
    int repetitions = 1;

    bool within_bound() const { return ratio <= competitive_bound(r); }
    bool tight() const { return ratio == competitive_bound(r); }
};

enum class RatioMode { exhaustive, family, policy_sweep };

std::optional<RatioMode> parse_ratio_mode(std::string_view text);

/// Policies used by the policy sweep when none are given.
std::vector<FrontierPolicy> default_policies(std::uint64_t seed);

/// exhaustive: one row, worst case over every dispatch sequence.
/// family: one row, the closed form of a tagged lemma instance.
/// policy_sweep: one simulate row per policy.
/// Throws std::invalid_argument when the mode does not apply to the instance.
std::vector<ExperimentRecord> ratio_experiment(const DagInstance& instance, int r, RatioMode mode,
                                               const std::vector<FrontierPolicy>& policies = {});

/// CSV with header; `wall_ms` is the only non-reproducible column.
std::string records_to_csv(const std::vector<ExperimentRecord>& records);
std::string records_to_json(const std::vector<ExperimentRecord>& records);

struct BenchRow {
    int cores = 1;
    double mean_ms = 0.0;
    double min_ms = 0.0;
    double nodes_per_sec = 0.0;
    double speedup = 1.0;
    int repetitions = 0;
    std::size_t nodes = 0;
    bool ok = true;
    std::string error;
};

struct BenchOptions {
    std::vector<int> cores{1};
    std::chrono::nanoseconds unit_cost = std::chrono::milliseconds(2);
    int repetitions = 10;
    SpinClock clock = SpinClock::thread_cpu;
    bool pin_workers = false;
};

/// Runs the executor `repetitions` times per core count. Speedup is measured
/// against the smallest core count in the list, scaled by that count. A
/// failing run marks its row not ok and leaves the others untouched.
std::vector<BenchRow> bench(const DagInstance& instance, const BenchOptions& options);

/// cores,mean_ms,min_ms,nodes_per_sec,speedup,reps,ok
std::string bench_to_csv(const std::vector<BenchRow>& rows);

/// "|V|=.. |E|=.. sum_w=.. max_W=.."
std::string instance_summary(const DagInstance& instance);

}  // namespace staybusy
