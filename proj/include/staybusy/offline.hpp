#pragma once

#include <optional>
#include <vector>

#include "staybusy/instance.hpp"
#include "staybusy/work_table.hpp"

namespace staybusy {

/// W(v): the least total weight over source-to-v paths, v included, and the
/// parent through which that minimum is attained (lowest id on ties).
struct PathWorkMap {
    std::vector<Work> path_work;
    std::vector<std::optional<VertexId>> predecessor;

    Work max_path_work() const;
    /// Vertices of the minimum-work path ending at v, source first.
    std::vector<VertexId> path_to(VertexId v) const;
};

/// Throws std::invalid_argument on a cyclic instance.
PathWorkMap min_path_work(const DagInstance& instance);

/// max(max_v W(v), ceil(sum_v w(v) / r)). Throws std::invalid_argument if r < 1.
Work offline_lower_bound(const DagInstance& instance, int r);

struct OfflineResult {
    WorkTable table;
    Work completion = 0;
    Work lower_bound = 0;
    Work gap() const { return completion - lower_bound; }
};

/// Greedy preemptive offline schedule over the shortest-path tree: each time
/// step the r processors go to the available vertices with the most remaining
/// downstream tree work (ties to lower id), processor index by rank.
OfflineResult offline_schedule(const DagInstance& instance, int r);

/// Exhaustive minimum over contiguous non-preemptive schedules.
/// Throws std::invalid_argument for |V| > 8, r > 3, or r < 1.
Work brute_force_offline_opt(const DagInstance& instance, int r);

inline constexpr std::size_t kBruteForceMaxVertices = 8;
inline constexpr int kBruteForceMaxProcessors = 3;

}  // namespace staybusy
