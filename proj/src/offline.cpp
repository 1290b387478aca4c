#include "staybusy/offline.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace staybusy {

Work PathWorkMap::max_path_work() const {
    Work best = 0;
    for (Work w : path_work) best = std::max(best, w);
    return best;
}

std::vector<VertexId> PathWorkMap::path_to(VertexId v) const {
    std::vector<VertexId> path{v};
    while (predecessor[path.back()]) path.push_back(*predecessor[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

PathWorkMap min_path_work(const DagInstance& instance) {
    const auto order = topological_order(instance);
    if (!order) throw std::invalid_argument("min_path_work: instance is cyclic");
    const Adjacency adj(instance);
    PathWorkMap map;
    map.path_work.assign(instance.size(), 0);
    map.predecessor.assign(instance.size(), std::nullopt);
    for (VertexId v : *order) {
        Work best = 0;
        for (VertexId u : adj.parents[v]) {  // ascending, so strict < keeps the lowest id
            if (!map.predecessor[v] || map.path_work[u] < best) {
                best = map.path_work[u];
                map.predecessor[v] = u;
            }
        }
        map.path_work[v] = instance.weight(v) + best;
    }
    return map;
}

Work offline_lower_bound(const DagInstance& instance, int r) {
    if (r < 1) throw std::invalid_argument("offline_lower_bound: r must be >= 1");
    const Work total = instance.total_work();
    const Work share = (total + r - 1) / r;
    return std::max(min_path_work(instance).max_path_work(), share);
}

// ---------------------------------------------------------------------------

OfflineResult offline_schedule(const DagInstance& instance, int r) {
    if (r < 1) throw std::invalid_argument("offline_schedule: r must be >= 1");
    const auto paths = min_path_work(instance);
    const auto order = *topological_order(instance);
    const Adjacency adj(instance);
    const auto n = instance.size();

    std::vector<std::vector<VertexId>> tree_children(n);
    for (VertexId v = 0; v < n; ++v) {
        if (paths.predecessor[v]) tree_children[*paths.predecessor[v]].push_back(v);
    }

    std::vector<Work> remaining(n);
    for (VertexId v = 0; v < n; ++v) remaining[v] = instance.weight(v);
    std::vector<bool> ready(n, false), done(n, false);
    std::size_t done_count = 0;

    // Marks v ready; zero-weight vertices complete on the spot and pass
    // readiness on to their children.
    auto make_ready = [&](VertexId root) {
        std::vector<VertexId> stack{root};
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            if (ready[v]) continue;
            ready[v] = true;
            if (remaining[v] == 0) {
                done[v] = true;
                ++done_count;
                for (VertexId c : adj.children[v]) stack.push_back(c);
            }
        }
    };
    for (VertexId v = 0; v < n; ++v) {
        if (adj.is_source(v)) make_ready(v);
    }

    OfflineResult result;
    result.table = WorkTable(n, r);
    result.lower_bound = offline_lower_bound(instance, r);

    std::vector<Work> downstream(n, 0);
    std::vector<VertexId> candidates;
    TimeSlot t = 0;
    while (done_count < n) {
        ++t;
        // Remaining tree work below each vertex, counting only children the
        // vertex still gates.
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const VertexId v = *it;
            Work below = 0;
            for (VertexId c : tree_children[v]) {
                if (!ready[c]) below = std::max(below, downstream[c]);
            }
            downstream[v] = remaining[v] + below;
        }
        candidates.clear();
        for (VertexId v = 0; v < n; ++v) {
            if (ready[v] && !done[v]) candidates.push_back(v);
        }
        std::stable_sort(candidates.begin(), candidates.end(), [&](VertexId a, VertexId b) {
            return downstream[a] > downstream[b];
        });
        if (candidates.size() > static_cast<std::size_t>(r)) candidates.resize(static_cast<std::size_t>(r));

        std::vector<VertexId> finished;
        for (std::size_t rank = 0; rank < candidates.size(); ++rank) {
            const VertexId v = candidates[rank];
            result.table.slots[v].push_back({t, static_cast<ProcessorId>(rank + 1)});
            if (--remaining[v] == 0) finished.push_back(v);
        }
        std::sort(finished.begin(), finished.end());
        for (VertexId v : finished) {
            done[v] = true;
            ++done_count;
        }
        for (VertexId v : finished) {
            for (VertexId c : adj.children[v]) make_ready(c);
        }
    }
    result.table.horizon = std::max<TimeSlot>(t, 1);
    result.completion = t;
    return result;
}

// ---------------------------------------------------------------------------

namespace {

class BruteForce {
public:
    BruteForce(const DagInstance& instance, int r)
        : instance_(instance), adj_(instance), r_(r), finish_(instance.size(), 0),
          placed_(instance.size(), false), free_(static_cast<std::size_t>(r), 0) {
        remaining_work_ = instance.total_work();
        best_ = std::max<Work>(remaining_work_, 0);
    }

    Work solve() {
        search(0, 0, 0);
        return best_;
    }

private:
    // Vertices are placed in nondecreasing start order; each start is pushed
    // to max(processor free, earliest placed parent finish, previous start).
    // Every schedule is dominated by one reachable this way.
    void search(std::size_t placed_count, Work last_start, Work makespan) {
        if (makespan >= best_ && placed_count < instance_.size()) return;
        if (placed_count == instance_.size()) {
            best_ = std::min(best_, makespan);
            return;
        }
        Work capacity = 0;
        for (Work f : free_) capacity += std::max(f, last_start);
        const Work bound = std::max(makespan, (capacity + remaining_work_ + r_ - 1) / r_);
        if (bound >= best_) return;

        const auto n = instance_.size();
        for (VertexId v = 0; v < n; ++v) {
            if (placed_[v]) continue;
            Work ready = 0;
            if (!adj_.is_source(v)) {
                ready = std::numeric_limits<Work>::max();
                for (VertexId u : adj_.parents[v]) {
                    if (placed_[u]) ready = std::min(ready, finish_[u]);
                }
                if (ready == std::numeric_limits<Work>::max()) continue;
            }
            const Work w = instance_.weight(v);
            placed_[v] = true;
            remaining_work_ -= w;
            if (w == 0) {
                const Work start = std::max(ready, last_start);
                finish_[v] = start;
                search(placed_count + 1, start, std::max(makespan, start));
            } else {
                for (std::size_t p = 0; p < free_.size(); ++p) {
                    if (std::find(free_.begin(), free_.begin() + static_cast<std::ptrdiff_t>(p),
                                  free_[p]) != free_.begin() + static_cast<std::ptrdiff_t>(p)) {
                        continue;  // identical processor state already tried
                    }
                    const Work start = std::max({free_[p], ready, last_start});
                    const Work saved = free_[p];
                    finish_[v] = start + w;
                    free_[p] = start + w;
                    search(placed_count + 1, start, std::max(makespan, start + w));
                    free_[p] = saved;
                }
            }
            remaining_work_ += w;
            placed_[v] = false;
        }
    }

    const DagInstance& instance_;
    Adjacency adj_;
    Work r_;
    std::vector<Work> finish_;
    std::vector<bool> placed_;
    std::vector<Work> free_;
    Work remaining_work_ = 0;
    Work best_ = 0;
};

}  // namespace

Work brute_force_offline_opt(const DagInstance& instance, int r) {
    if (r < 1) throw std::invalid_argument("brute_force_offline_opt: r must be >= 1");
    if (instance.size() > kBruteForceMaxVertices || r > kBruteForceMaxProcessors) {
        throw std::invalid_argument("brute_force_offline_opt: limited to |V| <= 8 and r <= 3");
    }
    if (!topological_order(instance)) {
        throw std::invalid_argument("brute_force_offline_opt: instance is cyclic");
    }
    return BruteForce(instance, r).solve();
}

}  // namespace staybusy
