#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "staybusy/instance.hpp"

namespace staybusy {

/// Opaque handle for a vertex of an online instance. `key` is stable and
/// unique; it is all the coordinator uses for deduplication.
struct Descriptor {
    std::uint64_t key = 0;

    friend auto operator<=>(const Descriptor&, const Descriptor&) = default;
};

struct ProcessResult {
    std::chrono::nanoseconds cost{0};
    std::vector<Descriptor> children;
};

/// Online oracle: a vertex's cost and children are known only once
/// process() returns. process() is called concurrently from worker threads
/// and must not touch shared mutable state.
class Workload {
public:
    virtual ~Workload() = default;
    virtual std::vector<Descriptor> roots() const = 0;
    virtual ProcessResult process(const Descriptor& vertex) const = 0;
};

/// Clock that a busy-spin burns against. thread_cpu makes w units cost w
/// units of CPU, so oversubscribed cores show up as longer wall time.
enum class SpinClock { thread_cpu, wall };

void busy_spin(std::chrono::nanoseconds duration, SpinClock clock);

struct SyntheticOptions {
    SpinClock clock = SpinClock::thread_cpu;
    /// Order in which roots() lists the sources; ascending id by default.
    std::optional<std::vector<VertexId>> root_order;
    /// Extra sleep in [0, max_jitter] per vertex, drawn from (key, seed).
    std::chrono::nanoseconds max_jitter{0};
    std::uint64_t jitter_seed = 0;
    /// Vertices whose processing throws.
    std::set<VertexId> failing;
};

inline SyntheticOptions clock_only(SpinClock clock) {
    SyntheticOptions options;
    options.clock = clock;
    return options;
}

/// Replays a known instance as an online workload: processing v spins for
/// w(v) * unit_cost and then reveals v's children in ascending id. The
/// descriptor key is the vertex id.
class SyntheticWorkload final : public Workload {
public:
    SyntheticWorkload(DagInstance instance, std::chrono::nanoseconds unit_cost,
                      SyntheticOptions options = {});

    std::vector<Descriptor> roots() const override;
    ProcessResult process(const Descriptor& vertex) const override;

    const DagInstance& instance() const { return instance_; }

private:
    DagInstance instance_;
    Adjacency adjacency_;
    std::chrono::nanoseconds unit_cost_;
    SyntheticOptions options_;
};

std::unique_ptr<SyntheticWorkload> to_workload(const DagInstance& instance,
                                               std::chrono::nanoseconds unit_cost,
                                               SyntheticOptions options = {});

}  // namespace staybusy
