#include "staybusy/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "staybusy/actor_exec.hpp"
#include "staybusy/offline.hpp"
#include "staybusy/worst_case.hpp"

namespace staybusy {

namespace {

std::string params_of(const DagInstance& instance) {
    if (!instance.family) return "";
    std::string out;
    for (const auto& [k, v] : instance.family->params) {
        if (!out.empty()) out += ';';
        out += k + "=" + std::to_string(v);
    }
    if (instance.family->seed) {
        if (!out.empty()) out += ';';
        out += "seed=" + std::to_string(*instance.family->seed);
    }
    return out;
}

std::string format_decimal(double value, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
    return buffer;
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point begin) {
    return std::chrono::duration<double, std::milli>(Clock::now() - begin).count();
}

}  // namespace

std::optional<RatioMode> parse_ratio_mode(std::string_view text) {
    if (text == "exhaustive") return RatioMode::exhaustive;
    if (text == "family") return RatioMode::family;
    if (text == "policy-sweep") return RatioMode::policy_sweep;
    return std::nullopt;
}

std::vector<FrontierPolicy> default_policies(std::uint64_t seed) {
    return {Fifo{}, Lifo{}, RandomPick{seed}, MaxWeightLast{}};
}

std::vector<ExperimentRecord> ratio_experiment(const DagInstance& instance, int r, RatioMode mode,
                                               const std::vector<FrontierPolicy>& policies) {
    ExperimentRecord base;
    base.instance = instance.name;
    base.family = instance.family ? instance.family->family : "";
    base.params = params_of(instance);
    base.r = r;
    base.t_offline_bound = offline_lower_bound(instance, r);
    base.t_offline_greedy = offline_schedule(instance, r).completion;

    auto finish = [&](ExperimentRecord row) {
        row.ratio = row.t_offline_bound == 0 ? Rational(1) : Rational(row.t_online, row.t_offline_bound);
        return row;
    };

    std::vector<ExperimentRecord> rows;
    switch (mode) {
        case RatioMode::exhaustive: {
            auto row = base;
            const auto begin = Clock::now();
            row.t_online = exhaustive_worst_case(instance, r);
            row.wall_ms = elapsed_ms(begin);
            row.policy = "exhaustive";
            rows.push_back(finish(row));
            break;
        }
        case RatioMode::family: {
            auto row = base;
            const auto begin = Clock::now();
            const auto closed = lemma_closed_form(instance, r);
            if (!closed) {
                throw std::invalid_argument("family mode needs a LEMMA_WORST instance generated for r=" +
                                            std::to_string(r));
            }
            row.t_online = *closed;
            row.wall_ms = elapsed_ms(begin);
            row.policy = "closed-form";
            rows.push_back(finish(row));
            break;
        }
        case RatioMode::policy_sweep: {
            const auto& list = policies.empty() ? default_policies(0) : policies;
            for (const auto& policy : list) {
                auto row = base;
                const auto begin = Clock::now();
                row.t_online = simulate(instance, r, policy).completion;
                row.wall_ms = elapsed_ms(begin);
                row.policy = policy_name(policy);
                rows.push_back(finish(row));
            }
            break;
        }
    }
    return rows;
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
    std::ostringstream out;
    out << "instance,family,params,r,policy,t_online,t_offline_bound,t_offline_greedy,"
           "ratio,ratio_decimal,bound,within_bound,tight,wall_ms,reps\n";
    for (const auto& row : records) {
        out << row.instance << ',' << row.family << ',' << row.params << ',' << row.r << ','
            << row.policy << ',' << row.t_online << ',' << row.t_offline_bound << ','
            << row.t_offline_greedy << ',' << row.ratio.str() << ','
            << format_decimal(row.ratio.to_double(), 6) << ',' << competitive_bound(row.r).str() << ','
            << (row.within_bound() ? 1 : 0) << ',' << (row.tight() ? 1 : 0) << ','
            << format_decimal(row.wall_ms, 3) << ',' << row.repetitions << '\n';
    }
    return out.str();
}

std::string records_to_json(const std::vector<ExperimentRecord>& records) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& row : records) {
        nlohmann::ordered_json item;
        item["instance"] = row.instance;
        item["family"] = row.family;
        item["params"] = row.params;
        item["r"] = row.r;
        item["policy"] = row.policy;
        item["t_online"] = row.t_online;
        item["t_offline_bound"] = row.t_offline_bound;
        item["t_offline_greedy"] = row.t_offline_greedy;
        item["ratio"] = row.ratio.str();
        item["ratio_decimal"] = row.ratio.to_double();
        item["bound"] = competitive_bound(row.r).str();
        item["within_bound"] = row.within_bound();
        item["tight"] = row.tight();
        item["wall_ms"] = row.wall_ms;
        item["reps"] = row.repetitions;
        doc.push_back(item);
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

std::vector<BenchRow> bench(const DagInstance& instance, const BenchOptions& options) {
    if (options.cores.empty()) throw std::invalid_argument("bench: no core counts given");
    if (options.repetitions < 1) throw std::invalid_argument("bench: repetitions must be >= 1");
    const auto workload = to_workload(instance, options.unit_cost, clock_only(options.clock));

    std::vector<BenchRow> rows;
    for (int cores : options.cores) {
        BenchRow row;
        row.cores = cores;
        row.min_ms = std::numeric_limits<double>::max();
        double total_ms = 0.0;
        try {
            if (cores < 1) throw std::invalid_argument("core count must be >= 1");
            for (int rep = 0; rep < options.repetitions; ++rep) {
                const auto begin = Clock::now();
                const auto result = run(*workload, cores, RunOptions{options.pin_workers});
                const double ms = elapsed_ms(begin);
                if (result.partial()) throw std::runtime_error("workload reported failed vertices");
                row.nodes = result.discovered.size();
                total_ms += ms;
                row.min_ms = std::min(row.min_ms, ms);
                ++row.repetitions;
            }
            row.mean_ms = total_ms / row.repetitions;
            row.nodes_per_sec = row.mean_ms > 0 ? static_cast<double>(row.nodes) / (row.mean_ms / 1000.0) : 0.0;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
            row.min_ms = 0.0;
        }
        rows.push_back(row);
    }

    const BenchRow* baseline = nullptr;
    for (const auto& row : rows) {
        if (row.ok && (!baseline || row.cores < baseline->cores)) baseline = &row;
    }
    for (auto& row : rows) {
        row.speedup = (baseline && row.ok && row.mean_ms > 0)
                          ? baseline->mean_ms / row.mean_ms * baseline->cores
                          : 0.0;
    }
    return rows;
}

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "cores,mean_ms,min_ms,nodes_per_sec,speedup,reps,ok\n";
    for (const auto& row : rows) {
        out << row.cores << ',' << format_decimal(row.mean_ms, 3) << ','
            << format_decimal(row.min_ms, 3) << ',' << format_decimal(row.nodes_per_sec, 1) << ','
            << format_decimal(row.speedup, 3) << ',' << row.repetitions << ','
            << (row.ok ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string instance_summary(const DagInstance& instance) {
    std::ostringstream out;
    out << "|V|=" << instance.size() << " |E|=" << instance.edges.size()
        << " sum_w=" << instance.total_work()
        << " max_W=" << min_path_work(instance).max_path_work();
    return out.str();
}

}  // namespace staybusy
