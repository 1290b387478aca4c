#include "staybusy/actor_exec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <variant>

#include <pthread.h>
#include <sched.h>

#include <json.hpp>

namespace staybusy {

std::string_view to_string(TraceKind kind) {
    switch (kind) {
        case TraceKind::DISPATCH: return "DISPATCH";
        case TraceKind::COMPLETE: return "COMPLETE";
        case TraceKind::ENQUEUE: return "ENQUEUE";
        case TraceKind::DEDUP_HIT: return "DEDUP_HIT";
        case TraceKind::WORKER_IDLE: return "WORKER_IDLE";
        case TraceKind::SHUTDOWN: return "SHUTDOWN";
    }
    return "UNKNOWN";
}

std::optional<TraceKind> parse_trace_kind(std::string_view text) {
    for (auto kind : {TraceKind::DISPATCH, TraceKind::COMPLETE, TraceKind::ENQUEUE,
                      TraceKind::DEDUP_HIT, TraceKind::WORKER_IDLE, TraceKind::SHUTDOWN}) {
        if (to_string(kind) == text) return kind;
    }
    return std::nullopt;
}

std::optional<VertexId> RunResult::index_of(std::uint64_t key) const {
    const auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) return std::nullopt;
    return static_cast<VertexId>(it - keys.begin());
}

// ---------------------------------------------------------------------------
// Messages

namespace {

struct Start {};
struct SamplingResult {
    int worker = 0;
    Descriptor vertex;
    std::vector<Descriptor> children;
    std::chrono::nanoseconds cost{0};
    std::int64_t finished_ns = 0;
    bool failed = false;
};
struct WorkerIdle {
    int worker = 0;
};
using CoordinatorMessage = std::variant<Start, SamplingResult, WorkerIdle>;

struct SampleTask {
    Descriptor vertex;
};
struct Shutdown {};
using WorkerMessage = std::variant<SampleTask, Shutdown>;

using Clock = std::chrono::steady_clock;

std::int64_t since(Clock::time_point origin) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - origin).count();
}

void pin_to_core(int id) {
    const auto cores = std::max(1u, std::thread::hardware_concurrency());
    cpu_set_t set;
    CPU_ZERO(&set);
    CPU_SET(static_cast<unsigned>(id) % cores, &set);
    pthread_setaffinity_np(pthread_self(), sizeof(set), &set);
}

// Sampler: processes one vertex per task and reports back. Holds no state
// beyond its own mailbox.
void worker_loop(int id, const Workload& workload, Mailbox<WorkerMessage>& inbox,
                 Mailbox<CoordinatorMessage>& coordinator, Clock::time_point origin, bool pin) {
    if (pin) pin_to_core(id);
    coordinator.send(WorkerIdle{id});
    while (true) {
        auto message = inbox.receive();
        if (std::holds_alternative<Shutdown>(message)) return;
        const auto& task = std::get<SampleTask>(message);
        SamplingResult result;
        result.worker = id;
        result.vertex = task.vertex;
        const auto begin = Clock::now();
        try {
            auto processed = workload.process(task.vertex);
            result.cost = processed.cost;
            result.children = std::move(processed.children);
        } catch (const std::exception&) {
            result.failed = true;
            result.cost = Clock::now() - begin;
        }
        result.finished_ns = since(origin);
        coordinator.send(std::move(result));
        coordinator.send(WorkerIdle{id});
    }
}

// Graph builder: sole owner of the discovered graph and the unprocessed queue.
class Coordinator {
public:
    Coordinator(const Workload& workload, int r, RunOptions options)
        : workload_(workload), r_(r), options_(options) {}

    RunResult run() {
        origin_ = Clock::now();
        inbox_.send(Start{});
        do {
            auto message = inbox_.receive();
            std::visit([this](auto& m) { handle(m); }, message);
        } while (!finished());
        shutdown();
        return collect();
    }

private:
    bool finished() const {
        return queue_.empty() && idle_.size() == static_cast<std::size_t>(r_);
    }

    void record(TraceKind kind, std::uint64_t key, int worker) {
        trace_.push_back({since(origin_), kind, key, worker});
    }

    void handle(const Start&) {
        for (const auto& root : workload_.roots()) discover(root, kCoordinator);
        for (int i = 0; i < r_; ++i) {
            mailboxes_.push_back(std::make_unique<Mailbox<WorkerMessage>>());
        }
        for (int i = 0; i < r_; ++i) {
            workers_.emplace_back(worker_loop, i, std::cref(workload_), std::ref(*mailboxes_[i]),
                                  std::ref(inbox_), origin_, options_.pin_workers);
        }
    }

    void handle(SamplingResult& result) {
        trace_.push_back({result.finished_ns, TraceKind::COMPLETE, result.vertex.key, result.worker});
        auto& node = nodes_[result.vertex.key];
        node.cost = result.cost;
        node.failed = result.failed;
        for (const auto& child : result.children) {
            edges_.emplace(result.vertex.key, child.key);
            discover(child, result.worker);
        }
        assign();
    }

    void handle(const WorkerIdle& idle) {
        record(TraceKind::WORKER_IDLE, 0, idle.worker);
        idle_.insert(idle.worker);
        assign();
    }

    void discover(const Descriptor& vertex, int reporter) {
        if (!nodes_.emplace(vertex.key, Node{}).second) {
            record(TraceKind::DEDUP_HIT, vertex.key, reporter);
            return;
        }
        queue_.push_back(vertex);
        max_queue_ = std::max(max_queue_, queue_.size());
        record(TraceKind::ENQUEUE, vertex.key, reporter);
    }

    // Hand queued vertices to idle workers, lowest worker id first.
    void assign() {
        while (!queue_.empty() && !idle_.empty()) {
            const int worker = *idle_.begin();
            idle_.erase(idle_.begin());
            const Descriptor vertex = queue_.front();
            queue_.pop_front();
            record(TraceKind::DISPATCH, vertex.key, worker);
            mailboxes_[static_cast<std::size_t>(worker)]->send(SampleTask{vertex});
        }
    }

    void shutdown() {
        for (int i = 0; i < r_; ++i) {
            mailboxes_[static_cast<std::size_t>(i)]->send(Shutdown{});
            record(TraceKind::SHUTDOWN, 0, i);
        }
        for (auto& worker : workers_) worker.join();
    }

    RunResult collect() {
        RunResult result;
        result.trace = std::move(trace_);
        result.max_queue = max_queue_;
        result.discovered.name = "discovered";
        for (const auto& [key, node] : nodes_) {
            result.discovered.vertices.push_back(
                {static_cast<VertexId>(result.keys.size()), static_cast<Work>(node.cost.count())});
            result.keys.push_back(key);
            if (node.failed) result.failed.push_back(key);
        }
        for (const auto& [parent, child] : edges_) {
            result.discovered.edges.push_back({*result.index_of(parent), *result.index_of(child)});
        }
        std::sort(result.discovered.edges.begin(), result.discovered.edges.end());
        return result;
    }

    struct Node {
        std::chrono::nanoseconds cost{0};
        bool failed = false;
    };

    const Workload& workload_;
    int r_;
    RunOptions options_;
    Clock::time_point origin_;
    Mailbox<CoordinatorMessage> inbox_;
    std::vector<std::unique_ptr<Mailbox<WorkerMessage>>> mailboxes_;
    std::vector<std::thread> workers_;

    std::map<std::uint64_t, Node> nodes_;
    std::set<std::pair<std::uint64_t, std::uint64_t>> edges_;
    std::deque<Descriptor> queue_;
    std::set<int> idle_;
    std::size_t max_queue_ = 0;
    Trace trace_;
};

}  // namespace

RunResult run(const Workload& workload, int r, RunOptions options) {
    if (r < 1) throw std::invalid_argument("run: r must be >= 1");
    if (workload.roots().empty()) throw std::invalid_argument("run: workload has no roots");
    return Coordinator(workload, r, options).run();
}

// ---------------------------------------------------------------------------
// Trace analysis

namespace {

struct Interval {
    std::uint64_t key = 0;
    int worker = 0;
    std::int64_t begin = 0;
    std::int64_t end = 0;
};

// Pairs DISPATCH/COMPLETE per worker, checking alternation and that every
// dispatched key was enqueued first.
std::vector<Interval> intervals_of(const Trace& trace) {
    std::set<std::uint64_t> enqueued;
    std::map<int, Interval> open;
    std::set<std::uint64_t> completed;
    std::vector<Interval> out;
    for (const auto& e : trace) {
        switch (e.kind) {
            case TraceKind::ENQUEUE:
                enqueued.insert(e.key);
                break;
            case TraceKind::DISPATCH:
                if (e.worker < 0) throw std::invalid_argument("trace: DISPATCH without a worker");
                if (!enqueued.count(e.key)) {
                    throw std::invalid_argument("trace: key " + std::to_string(e.key) +
                                                " dispatched before being enqueued");
                }
                if (open.count(e.worker)) {
                    throw std::invalid_argument("trace: worker " + std::to_string(e.worker) +
                                                " dispatched twice without completing");
                }
                open[e.worker] = Interval{e.key, e.worker, e.ts_ns, 0};
                break;
            case TraceKind::COMPLETE: {
                auto it = open.find(e.worker);
                if (it == open.end() || it->second.key != e.key) {
                    throw std::invalid_argument("trace: COMPLETE of key " + std::to_string(e.key) +
                                                " does not match an open DISPATCH");
                }
                if (!completed.insert(e.key).second) {
                    throw std::invalid_argument("trace: key " + std::to_string(e.key) +
                                                " completed twice");
                }
                it->second.end = e.ts_ns;
                out.push_back(it->second);
                open.erase(it);
                break;
            }
            default:
                break;
        }
    }
    if (!open.empty()) throw std::invalid_argument("trace: DISPATCH without COMPLETE");
    return out;
}

}  // namespace

WorkTable trace_to_work_table(const Trace& trace, std::chrono::nanoseconds unit) {
    if (unit <= std::chrono::nanoseconds::zero()) {
        throw std::invalid_argument("trace_to_work_table: unit must be positive");
    }
    auto intervals = intervals_of(trace);
    int max_worker = 0;
    std::vector<std::uint64_t> keys;
    for (auto& iv : intervals) {
        iv.end = std::max(iv.end, iv.begin + 1);
        max_worker = std::max(max_worker, iv.worker);
        keys.push_back(iv.key);
    }
    std::sort(keys.begin(), keys.end());

    // Boundaries in time order, completions before dispatches at equal times,
    // so a child dispatched on its parent's completion never precedes it.
    struct Boundary {
        std::int64_t ts;
        int order;  // 0 = end, 1 = begin
        std::size_t interval;
    };
    std::vector<Boundary> boundaries;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        boundaries.push_back({intervals[i].begin, 1, i});
        boundaries.push_back({intervals[i].end, 0, i});
    }
    std::sort(boundaries.begin(), boundaries.end(), [](const Boundary& a, const Boundary& b) {
        return std::tie(a.ts, a.order, a.interval) < std::tie(b.ts, b.order, b.interval);
    });

    const double width = static_cast<double>(unit.count());
    std::vector<std::int64_t> q_begin(intervals.size()), q_end(intervals.size());
    std::int64_t last = 0;
    for (const auto& b : boundaries) {
        auto q = static_cast<std::int64_t>(std::llround(static_cast<double>(b.ts) / width));
        q = std::max(q, last);
        if (b.order == 1) {
            q_begin[b.interval] = q;
        } else {
            q = std::max(q, q_begin[b.interval] + 1);
            q_end[b.interval] = q;
        }
        last = q;
    }

    WorkTable table(keys.size(), static_cast<ProcessorId>(max_worker + 1));
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const auto index = static_cast<std::size_t>(
            std::lower_bound(keys.begin(), keys.end(), intervals[i].key) - keys.begin());
        for (std::int64_t t = q_begin[i] + 1; t <= q_end[i]; ++t) {
            table.slots[index].push_back({t, static_cast<ProcessorId>(intervals[i].worker + 1)});
        }
    }
    table.normalize();
    table.horizon = std::max<TimeSlot>(completion_time(table), 1);
    return table;
}

QuantizedRun quantize_run(const RunResult& result, std::chrono::nanoseconds unit) {
    QuantizedRun out;
    out.table = trace_to_work_table(result.trace, unit);
    if (out.table.vertex_count() != result.discovered.size()) {
        throw std::invalid_argument("quantize_run: trace and discovered graph disagree on vertices");
    }
    out.instance = result.discovered;
    for (std::size_t v = 0; v < out.instance.size(); ++v) {
        out.instance.vertices[v].weight = static_cast<Work>(out.table.slots[v].size());
    }
    return out;
}

ValidationReport check_work_conserving(const Trace& trace) {
    ValidationReport report;
    std::size_t queued = 0;
    std::set<int> idle;
    auto at_boundary = [&](const TraceEvent& e) {
        if (queued > 0 && !idle.empty()) {
            report.violations.push_back(Violation{
                Rule::STAYBUSY, std::nullopt, std::nullopt, static_cast<ProcessorId>(*idle.begin() + 1),
                std::to_string(queued) + " queued vertex(es) while worker " +
                    std::to_string(*idle.begin()) + " idle at ts " + std::to_string(e.ts_ns)});
        }
    };
    bool shutting_down = false;
    for (const auto& e : trace) {
        switch (e.kind) {
            case TraceKind::COMPLETE:
            case TraceKind::WORKER_IDLE:
                at_boundary(e);
                if (e.kind == TraceKind::WORKER_IDLE) idle.insert(e.worker);
                break;
            case TraceKind::SHUTDOWN:
                if (!shutting_down) at_boundary(e);
                shutting_down = true;
                break;
            case TraceKind::ENQUEUE:
                ++queued;
                break;
            case TraceKind::DISPATCH:
                if (queued > 0) --queued;
                idle.erase(e.worker);
                break;
            case TraceKind::DEDUP_HIT:
                break;
        }
    }
    return report;
}

TraceStats trace_stats(const Trace& trace) {
    TraceStats stats;
    std::size_t queued = 0;
    std::map<int, std::int64_t> idle_since;
    for (const auto& e : trace) {
        switch (e.kind) {
            case TraceKind::ENQUEUE:
                stats.max_queue = std::max(stats.max_queue, ++queued);
                break;
            case TraceKind::DISPATCH:
            case TraceKind::SHUTDOWN:
                if (e.kind == TraceKind::DISPATCH && queued > 0) --queued;
                if (auto it = idle_since.find(e.worker); it != idle_since.end()) {
                    stats.idle_wall_ns += std::max<std::int64_t>(0, e.ts_ns - it->second);
                    idle_since.erase(it);
                }
                break;
            case TraceKind::WORKER_IDLE:
                idle_since[e.worker] = e.ts_ns;
                break;
            case TraceKind::DEDUP_HIT:
                ++stats.dedup_hits;
                break;
            case TraceKind::COMPLETE:
                break;
        }
    }
    return stats;
}

std::string trace_to_jsonl(const Trace& trace) {
    std::string out;
    for (const auto& e : trace) {
        nlohmann::ordered_json line;
        line["ts_ns"] = e.ts_ns;
        line["kind"] = to_string(e.kind);
        line["key"] = e.key;
        line["worker"] = e.worker;
        out += line.dump();
        out += '\n';
    }
    return out;
}

Trace trace_from_jsonl(std::string_view text) {
    Trace trace;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;
        try {
            const auto doc = nlohmann::json::parse(line);
            const auto kind = parse_trace_kind(doc.at("kind").get<std::string>());
            if (!kind) throw std::invalid_argument("unknown kind");
            trace.push_back({doc.at("ts_ns").get<std::int64_t>(), *kind,
                             doc.at("key").get<std::uint64_t>(), doc.at("worker").get<int>()});
        } catch (const std::exception& e) {
            throw std::invalid_argument("trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return trace;
}

}  // namespace staybusy
