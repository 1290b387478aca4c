// staybusy: generate instances, simulate StayBusy schedulers, compute offline
// baselines and competitive ratios, benchmark the concurrent executor.
//
// Exit codes: 0 ok, 1 assertion or bound failure, 2 input error.

#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "staybusy/actor_exec.hpp"
#include "staybusy/generators.hpp"
#include "staybusy/harness.hpp"
#include "staybusy/io.hpp"
#include "staybusy/offline.hpp"
#include "staybusy/simulate.hpp"
#include "staybusy/validate.hpp"

namespace fs = std::filesystem;
using namespace staybusy;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kInputError = 2;

/// Thrown for bad arguments or unreadable inputs; maps to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

DagInstance load_instance(const std::string& path) {
    auto instance = instance_from_json(read_file(path));
    const auto report = validate_instance(instance);
    if (!report.valid()) throw InputError(path + ": invalid instance: " + report.summary());
    return instance;
}

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
    } else {
        write_file(g.out, text);
    }
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text));
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw InputError("bad rational '" + text + "'");
    }
}

std::vector<Work> parse_weight_list(const std::string& text) {
    std::vector<Work> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(std::stoll(item));
    return out;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
    std::string family;
    int r = 2;
    Work t_star = 0;
    int m = 1;
    Work w = 1;
    int k = 4;
    std::string weight = "const:1";
    std::string keep;
    int layers = 4;
    int width = 4;
    Work max_w = 5;
    std::string edge_prob = "1/2";
    int paths = 3;
    int max_length = 4;
    int cross = 2;
    int branches = 2;
    std::vector<std::string> chains;
};

int cmd_generate(const Globals& g, const GenerateArgs& a) {
    DagInstance instance;
    if (a.family == "lemma") {
        instance = lemma_worst_case(a.r, a.t_star == 0 ? a.r : a.t_star);
    } else if (a.family == "uniform") {
        instance = uniform_sources(a.m, a.w);
    } else if (a.family == "disjoint") {
        if (a.chains.empty()) {
            instance = random_disjoint_paths(g.seed, a.paths, a.max_length, a.max_w);
        } else {
            PathsSpec spec;
            std::vector<std::size_t> lengths;
            for (const auto& c : a.chains) {
                spec.weights.push_back(parse_weight_list(c));
                lengths.push_back(spec.weights.back().size());
            }
            instance = disjoint_paths(lengths, spec);
        }
    } else if (a.family == "crossed") {
        instance = random_crossed_paths(g.seed, a.paths, a.max_length, a.max_w, a.cross);
    } else if (a.family == "branching") {
        instance = random_branching_paths(g.seed, a.paths, a.max_length, a.max_w, a.branches);
    } else if (a.family == "layered") {
        instance = random_layered_dag(g.seed, a.layers, a.width, a.max_w, parse_rational(a.edge_prob));
    } else if (a.family == "lattice") {
        std::optional<LatticeSparsity> sparsity;
        if (!a.keep.empty()) sparsity = LatticeSparsity{g.seed, parse_rational(a.keep)};
        instance = subset_lattice_atlas(a.k, parse_weight_fn(a.weight), sparsity);
    } else {
        throw InputError("unknown family '" + a.family +
                         "' (lemma, uniform, disjoint, crossed, branching, layered, lattice)");
    }
    const auto text = instance_to_json(instance);
    if (g.out.empty()) {
        std::cout << text;
        std::cerr << instance.name << ": " << instance_summary(instance) << "\n";
    } else {
        write_file(g.out, text);
        std::cout << instance.name << ": " << instance_summary(instance) << "\n";
    }
    return kOk;
}

int cmd_simulate(const Globals& g, const std::string& path, int r, const std::string& policy_text) {
    const auto instance = load_instance(path);
    const auto policy = parse_policy(policy_text);
    const auto result = simulate(instance, r, policy);
    const auto sidecar = sim_sidecar_json(result, r, policy);
    if (!g.out.empty()) {
        write_file(g.out, work_table_to_csv(result.table));
        fs::path side(g.out);
        side.replace_extension(".json");
        write_file(side, sidecar);
        std::cout << sidecar;
    } else if (g.format == "csv") {
        std::cout << work_table_to_csv(result.table);
    } else {
        std::cout << sidecar;
    }
    return kOk;
}

int cmd_offline(const Globals& g, const std::string& path, int r) {
    const auto instance = load_instance(path);
    const auto result = offline_schedule(instance, r);
    if (!g.out.empty()) write_file(g.out, work_table_to_csv(result.table));
    std::cout << "bound=" << result.lower_bound << " greedy=" << result.completion
              << " gap=" << result.gap() << "\n";
    const auto report = validate_work_table(instance, result.table, ValidationMode::offline);
    if (!report.valid()) {
        std::cerr << "greedy schedule failed offline validation: " << report.summary() << "\n";
        return kFailure;
    }
    return kOk;
}

int cmd_oracle(const std::string& path, int r) {
    const auto instance = load_instance(path);
    const auto best = brute_force_offline_opt(instance, r);
    const auto bound = offline_lower_bound(instance, r);
    std::cout << "brute_force=" << best << " bound=" << bound << "\n";
    return best >= bound ? kOk : kFailure;
}

int cmd_ratio(const Globals& g, const std::string& path, const std::vector<int>& rs,
              const std::string& mode_text) {
    const auto instance = load_instance(path);
    const auto mode = parse_ratio_mode(mode_text);
    if (!mode) throw InputError("unknown mode '" + mode_text + "' (exhaustive, family, policy-sweep)");
    std::vector<ExperimentRecord> rows;
    for (int r : rs) {
        auto part = ratio_experiment(instance, r, *mode, default_policies(g.seed));
        rows.insert(rows.end(), part.begin(), part.end());
    }
    emit(g, g.format == "json" ? records_to_json(rows) : records_to_csv(rows));
    int status = kOk;
    for (const auto& row : rows) {
        if (!row.within_bound()) {
            std::cerr << "bound violation: r=" << row.r << " policy=" << row.policy
                      << " ratio=" << row.ratio.str() << " > " << competitive_bound(row.r).str() << "\n";
            status = kFailure;
        } else if (row.tight()) {
            std::cerr << "tight: r=" << row.r << " policy=" << row.policy << " ratio=" << row.ratio.str()
                      << "\n";
        }
    }
    return status;
}

struct BenchArgs {
    std::vector<int> cores{1, 2, 4, 8};
    double unit_ms = 2.0;
    int reps = 10;
    bool pin = false;
    bool wall = false;
    std::string trace;
    std::string discovered;
};

int cmd_bench(const Globals& g, const std::string& path, const BenchArgs& a) {
    const auto instance = load_instance(path);
    const unsigned hw = std::thread::hardware_concurrency();
    int max_cores = 0;
    for (int c : a.cores) max_cores = std::max(max_cores, c);
    if (hw < static_cast<unsigned>(max_cores)) {
        std::cerr << "warning: " << hw << " hardware thread(s) available, " << max_cores
                  << " requested; speedup will be capped\n";
    }
    BenchOptions options;
    options.cores = a.cores;
    options.unit_cost = std::chrono::nanoseconds(static_cast<std::int64_t>(a.unit_ms * 1e6));
    options.repetitions = a.reps;
    options.clock = a.wall ? SpinClock::wall : SpinClock::thread_cpu;
    options.pin_workers = a.pin;
    const auto rows = bench(instance, options);
    emit(g, bench_to_csv(rows));

    if (!a.trace.empty() || !a.discovered.empty()) {
        const auto workload = to_workload(instance, options.unit_cost, clock_only(options.clock));
        const auto result = run(*workload, a.cores.back(), RunOptions{a.pin});
        if (!a.trace.empty()) write_file(a.trace, trace_to_jsonl(result.trace));
        if (!a.discovered.empty()) {
            auto q = quantize_run(result, options.unit_cost);
            q.instance.name = instance.name + "-discovered";
            write_file(a.discovered, instance_to_json(q.instance));
        }
    }
    for (const auto& row : rows) {
        if (!row.ok) {
            std::cerr << "cores=" << row.cores << " failed: " << row.error << "\n";
            return kFailure;
        }
    }
    return kOk;
}

int cmd_validate(const std::string& instance_path, const std::string& table_path,
                 const std::string& mode_text, int r) {
    const auto mode = parse_validation_mode(mode_text);
    if (!mode) throw InputError("unknown mode '" + mode_text + "' (offline, online, staybusy)");
    const auto instance = load_instance(instance_path);
    auto table = work_table_from_csv(read_file(table_path), instance.size(), std::max(1, r));
    const auto report = validate_work_table(instance, table, *mode);
    std::cout << "T=" << completion_time(table) << " r=" << table.processors << " " << report.summary()
              << "\n";
    if (!report.valid()) return kFailure;
    std::cout << "idle=" << total_idle(table) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parallel online DAG exploration: StayBusy scheduling toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for generators and random policies");
    app.add_option("--out", g.out, "Output file (default: stdout)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a generated instance");
    generate->add_option("family", gen.family, "lemma|uniform|disjoint|crossed|branching|layered|lattice")
        ->required();
    generate->add_option("--r", gen.r, "Processors (lemma)");
    generate->add_option("--tstar", gen.t_star, "Heavy source weight (lemma; default r)");
    generate->add_option("--m", gen.m, "Source count (uniform)");
    generate->add_option("--w", gen.w, "Source weight (uniform)");
    generate->add_option("--k", gen.k, "Constraint count (lattice)");
    generate->add_option("--weight", gen.weight, "Lattice weights: const:<c>|codim:<s>|random:<seed>:<max>");
    generate->add_option("--keep", gen.keep, "Lattice keep probability, e.g. 3/4 (sparse lattice)");
    generate->add_option("--layers", gen.layers, "Layers (layered)");
    generate->add_option("--width", gen.width, "Layer width (layered)");
    generate->add_option("--max-w", gen.max_w, "Maximum vertex weight");
    generate->add_option("--p", gen.edge_prob, "Edge probability as a fraction (layered)");
    generate->add_option("--paths", gen.paths, "Chain count (path families)");
    generate->add_option("--max-length", gen.max_length, "Maximum chain length (path families)");
    generate->add_option("--cross", gen.cross, "Cross edges (crossed)");
    generate->add_option("--branches", gen.branches, "Branch chains (branching)");
    generate->add_option("--chain", gen.chains, "Explicit chain weights, e.g. 2,3,4 (disjoint; repeatable)");

    std::string instance_path, table_path, policy = "fifo", mode;
    int r = 2;
    std::vector<int> rs{2};

    auto* sim = app.add_subcommand("simulate", "Run a StayBusy simulation");
    sim->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    sim->add_option("--r", r, "Processors")->check(CLI::PositiveNumber);
    sim->add_option("--policy", policy, "fifo|lifo|random:<seed>|max-weight-last|scripted:<ids>");

    auto* offline = app.add_subcommand("offline", "Offline lower bound and greedy schedule");
    offline->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    offline->add_option("--r", r, "Processors")->check(CLI::PositiveNumber);

    auto* oracle = app.add_subcommand("oracle", "Exhaustive non-preemptive offline optimum (|V|<=8, r<=3)");
    oracle->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    oracle->add_option("--r", r, "Processors")->check(CLI::PositiveNumber);

    std::string ratio_mode = "policy-sweep";
    auto* ratio = app.add_subcommand("ratio", "Competitive ratio against the offline bound");
    ratio->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    ratio->add_option("--r", rs, "Processor counts")->delimiter(',');
    ratio->add_option("--mode", ratio_mode, "exhaustive|family|policy-sweep");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Speedup of the concurrent executor");
    bench_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--cores", bench_args.cores, "Core counts")->delimiter(',');
    bench_cmd->add_option("--unit-ms", bench_args.unit_ms, "Busy-spin per work unit (ms)");
    bench_cmd->add_option("--reps", bench_args.reps, "Repetitions per core count");
    bench_cmd->add_flag("--pin", bench_args.pin, "Pin workers to hardware threads");
    bench_cmd->add_flag("--wall-clock", bench_args.wall, "Spin on wall time instead of thread CPU time");
    bench_cmd->add_option("--trace", bench_args.trace, "Write a JSON-lines trace of one extra run");
    bench_cmd->add_option("--discovered", bench_args.discovered,
                          "Write the discovered DAG of that run (weights in slots)");

    std::string validate_mode = "offline";
    int validate_r = 1;
    auto* validate = app.add_subcommand("validate", "Check a work table against an instance");
    validate->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    validate->add_option("table", table_path)->required()->check(CLI::ExistingFile);
    validate->add_option("--mode", validate_mode, "offline|online|staybusy");
    validate->add_option("--r", validate_r, "Processor count (default: largest in table)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*generate) return cmd_generate(g, gen);
        if (*sim) return cmd_simulate(g, instance_path, r, policy);
        if (*offline) return cmd_offline(g, instance_path, r);
        if (*oracle) return cmd_oracle(instance_path, r);
        if (*ratio) return cmd_ratio(g, instance_path, rs, ratio_mode);
        if (*bench_cmd) return cmd_bench(g, instance_path, bench_args);
        if (*validate) return cmd_validate(instance_path, table_path, validate_mode, validate_r);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kFailure;
    }
    return kInputError;
}
