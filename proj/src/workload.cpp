#include "staybusy/workload.hpp"

#include <algorithm>
#include <ctime>
#include <stdexcept>
#include <thread>

#include "staybusy/validate.hpp"

namespace staybusy {

namespace {

std::chrono::nanoseconds thread_cpu_now() {
    timespec ts{};
    clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return std::chrono::seconds(ts.tv_sec) + std::chrono::nanoseconds(ts.tv_nsec);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

void busy_spin(std::chrono::nanoseconds duration, SpinClock clock) {
    if (duration <= std::chrono::nanoseconds::zero()) return;
    if (clock == SpinClock::wall) {
        const auto until = std::chrono::steady_clock::now() + duration;
        while (std::chrono::steady_clock::now() < until) {
        }
        return;
    }
    const auto until = thread_cpu_now() + duration;
    while (thread_cpu_now() < until) {
    }
}

SyntheticWorkload::SyntheticWorkload(DagInstance instance, std::chrono::nanoseconds unit_cost,
                                     SyntheticOptions options)
    : instance_(std::move(instance)), adjacency_(instance_), unit_cost_(unit_cost),
      options_(std::move(options)) {
    const auto report = validate_instance(instance_);
    if (!report.valid()) throw std::invalid_argument("to_workload: " + report.summary());
    if (options_.root_order) {
        auto expected = sources(instance_);
        auto given = *options_.root_order;
        std::sort(given.begin(), given.end());
        if (given != expected) {
            throw std::invalid_argument("to_workload: root order must be a permutation of the sources");
        }
    }
}

std::vector<Descriptor> SyntheticWorkload::roots() const {
    std::vector<Descriptor> out;
    const auto order = options_.root_order ? *options_.root_order : sources(instance_);
    for (VertexId v : order) out.push_back({v});
    return out;
}

ProcessResult SyntheticWorkload::process(const Descriptor& vertex) const {
    if (vertex.key >= instance_.size()) {
        throw std::out_of_range("synthetic workload: unknown vertex " + std::to_string(vertex.key));
    }
    const auto v = static_cast<VertexId>(vertex.key);
    const auto begin = std::chrono::steady_clock::now();
    if (options_.max_jitter > std::chrono::nanoseconds::zero()) {
        const auto span = static_cast<std::uint64_t>(options_.max_jitter.count()) + 1;
        const auto extra = splitmix64(vertex.key ^ splitmix64(options_.jitter_seed)) % span;
        std::this_thread::sleep_for(std::chrono::nanoseconds(extra));
    }
    busy_spin(unit_cost_ * instance_.weight(v), options_.clock);
    if (options_.failing.count(v)) {
        throw std::runtime_error("synthetic workload: vertex " + std::to_string(v) + " failed");
    }
    ProcessResult result;
    result.cost = std::chrono::steady_clock::now() - begin;
    for (VertexId c : adjacency_.children[v]) result.children.push_back({c});
    return result;
}

std::unique_ptr<SyntheticWorkload> to_workload(const DagInstance& instance,
                                               std::chrono::nanoseconds unit_cost,
                                               SyntheticOptions options) {
    return std::make_unique<SyntheticWorkload>(instance, unit_cost, std::move(options));
}

}  // namespace staybusy
