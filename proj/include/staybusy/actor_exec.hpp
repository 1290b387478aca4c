#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "staybusy/instance.hpp"
#include "staybusy/validate.hpp"
#include "staybusy/work_table.hpp"
#include "staybusy/workload.hpp"

namespace staybusy {

/// Unbounded FIFO mailbox; the only point where actor threads meet.
template <class Message>
class Mailbox {
public:
    void send(Message message) {
        {
            std::lock_guard lock(mutex_);
            queue_.push_back(std::move(message));
        }
        ready_.notify_one();
    }

    Message receive() {
        std::unique_lock lock(mutex_);
        ready_.wait(lock, [this] { return !queue_.empty(); });
        Message message = std::move(queue_.front());
        queue_.pop_front();
        return message;
    }

private:
    std::mutex mutex_;
    std::condition_variable ready_;
    std::deque<Message> queue_;
};

enum class TraceKind { DISPATCH, COMPLETE, ENQUEUE, DEDUP_HIT, WORKER_IDLE, SHUTDOWN };

std::string_view to_string(TraceKind kind);
std::optional<TraceKind> parse_trace_kind(std::string_view text);

inline constexpr int kCoordinator = -1;

/// One coordinator-side event. `ts_ns` is steady-clock time since the run
/// started. COMPLETE carries the worker's own finish time; every other kind
/// is stamped by the coordinator. Events are listed in the order the
/// coordinator handled them.
struct TraceEvent {
    std::int64_t ts_ns = 0;
    TraceKind kind = TraceKind::ENQUEUE;
    std::uint64_t key = 0;
    int worker = kCoordinator;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

using Trace = std::vector<TraceEvent>;

struct RunResult {
    /// Vertex i is the i-th smallest discovered key; weights are the measured
    /// costs in nanoseconds.
    DagInstance discovered;
    std::vector<std::uint64_t> keys;
    Trace trace;
    std::vector<std::uint64_t> failed;
    std::size_t max_queue = 0;

    bool partial() const { return !failed.empty(); }
    std::optional<VertexId> index_of(std::uint64_t key) const;
};

struct RunOptions {
    /// Pin worker i to hardware thread i (mod the thread count).
    bool pin_workers = false;
};

/// Runs the coordinator on the calling thread with a fixed pool of r worker
/// threads. Workers get vertices from the coordinator's FIFO queue, report
/// children back, and announce when idle; a key reported by several parents
/// is processed once. Returns after every worker has been shut down and
/// joined. Throws std::invalid_argument for r < 1 or an empty root list.
RunResult run(const Workload& workload, int r, RunOptions options = {});

/// Quantizes each vertex's [DISPATCH, COMPLETE) interval onto slots of
/// length `unit` on processor worker+1. Endpoints are rounded to the nearest
/// slot boundary through a monotone map, so order between intervals is kept
/// and every interval gets at least one slot. Vertices are indexed by
/// ascending key. Throws std::invalid_argument on a malformed trace.
WorkTable trace_to_work_table(const Trace& trace, std::chrono::nanoseconds unit);

/// Discovered DAG with weights replaced by quantized slot counts, paired
/// with the matching work table.
struct QuantizedRun {
    DagInstance instance;
    WorkTable table;
};

QuantizedRun quantize_run(const RunResult& result, std::chrono::nanoseconds unit);

/// Logical StayBusy check at the coordinator's message boundaries: whenever
/// the coordinator picks up a message, no vertex may sit in the queue while
/// a worker is idle. Wall-clock latency is not considered.
ValidationReport check_work_conserving(const Trace& trace);

struct TraceStats {
    std::size_t max_queue = 0;
    std::int64_t idle_wall_ns = 0;  // summed WORKER_IDLE -> DISPATCH/SHUTDOWN gaps
    std::size_t dedup_hits = 0;
};

TraceStats trace_stats(const Trace& trace);

/// One JSON object per line: {"ts_ns":..,"kind":"..","key":..,"worker":..}
std::string trace_to_jsonl(const Trace& trace);
Trace trace_from_jsonl(std::string_view text);

}  // namespace staybusy
