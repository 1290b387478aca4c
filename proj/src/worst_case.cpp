#include "staybusy/worst_case.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "staybusy/generators.hpp"
#include "staybusy/offline.hpp"

namespace staybusy {

namespace {

class WorstCaseSearch {
public:
    WorstCaseSearch(const DagInstance& instance, int r, BranchOrder order)
        : instance_(instance), adj_(instance), r_(static_cast<std::size_t>(r)), order_(order) {}

    Work run() {
        std::vector<VertexId> ready;
        std::uint32_t reached = 0;
        std::vector<VertexId> initial;
        for (VertexId v = 0; v < instance_.size(); ++v) {
            if (adj_.is_source(v)) {
                reached |= bit(v);
                initial.push_back(v);
            }
        }
        admit(initial, reached, ready);
        return dispatch(ready, reached, {});
    }

private:
    struct Job {
        VertexId vertex;
        Work remaining;
        friend auto operator<=>(const Job&, const Job&) = default;
    };

    static std::uint32_t bit(VertexId v) { return std::uint32_t{1} << v; }

    void admit(std::vector<VertexId> pending, std::uint32_t& reached,
               std::vector<VertexId>& ready) const {
        std::vector<VertexId> fresh;
        while (!pending.empty()) {
            const VertexId v = pending.back();
            pending.pop_back();
            if (instance_.weight(v) > 0) {
                fresh.push_back(v);
                continue;
            }
            for (VertexId c : adj_.children[v]) {
                if (!(reached & bit(c))) {
                    reached |= bit(c);
                    pending.push_back(c);
                }
            }
        }
        std::sort(fresh.begin(), fresh.end());
        ready.insert(ready.end(), fresh.begin(), fresh.end());
    }

    // Longest remaining time from a decision point.
    Work dispatch(const std::vector<VertexId>& ready, std::uint32_t reached,
                  const std::vector<Job>& running) {
        const std::size_t free = r_ - running.size();
        if (ready.empty() || free == 0) return advance(ready, reached, running);

        std::uint32_t ready_mask = 0;
        for (VertexId v : ready) ready_mask |= bit(v);
        auto key = std::make_tuple(ready_mask, reached, running);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        std::vector<VertexId> list = ready;
        if (order_ == BranchOrder::lifo) std::reverse(list.begin(), list.end());
        const std::size_t k = std::min(free, list.size());

        Work best = 0;
        std::vector<std::size_t> pick(k);
        for (std::size_t i = 0; i < k; ++i) pick[i] = i;
        while (true) {
            std::vector<Job> next_running = running;
            std::vector<bool> chosen(list.size(), false);
            for (std::size_t i : pick) {
                chosen[i] = true;
                next_running.push_back({list[i], instance_.weight(list[i])});
            }
            std::sort(next_running.begin(), next_running.end());
            std::vector<VertexId> rest;
            for (VertexId v : ready) {
                const auto pos = std::find(list.begin(), list.end(), v) - list.begin();
                if (!chosen[static_cast<std::size_t>(pos)]) rest.push_back(v);
            }
            best = std::max(best, advance(rest, reached, next_running));

            // Next k-combination in lexicographic order.
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == list.size() - k + (i - 1)) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
        memo_.emplace(std::move(key), best);
        return best;
    }

    Work advance(const std::vector<VertexId>& ready, std::uint32_t reached,
                 const std::vector<Job>& running) {
        if (running.empty()) return 0;
        Work step = running.front().remaining;
        for (const auto& job : running) step = std::min(step, job.remaining);

        std::vector<Job> still;
        std::vector<VertexId> completed_children;
        for (const auto& job : running) {
            if (job.remaining == step) {
                for (VertexId c : adj_.children[job.vertex]) {
                    if (!(reached & bit(c))) {
                        reached |= bit(c);
                        completed_children.push_back(c);
                    }
                }
            } else {
                still.push_back({job.vertex, job.remaining - step});
            }
        }
        std::vector<VertexId> next_ready = ready;
        admit(completed_children, reached, next_ready);
        return step + dispatch(next_ready, reached, still);
    }

    const DagInstance& instance_;
    Adjacency adj_;
    std::size_t r_;
    BranchOrder order_;
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::vector<Job>>, Work> memo_;
};

}  // namespace

Work exhaustive_worst_case(const DagInstance& instance, int r, BranchOrder order) {
    if (r < 1) throw std::invalid_argument("exhaustive_worst_case: r must be >= 1");
    if (instance.size() > kExhaustiveMaxVertices) {
        throw std::invalid_argument("exhaustive_worst_case: limited to |V| <= " +
                                    std::to_string(kExhaustiveMaxVertices));
    }
    if (!topological_order(instance)) {
        throw std::invalid_argument("exhaustive_worst_case: instance is cyclic");
    }
    return WorstCaseSearch(instance, r, order).run();
}

std::optional<Work> lemma_closed_form(const DagInstance& instance, int r) {
    if (!instance.family || instance.family->family != family_name(Family::lemma_worst)) {
        return std::nullopt;
    }
    const auto tag_r = instance.family->param("r");
    const auto t_star = instance.family->param("tstar");
    if (!tag_r || !t_star || *tag_r != r) return std::nullopt;
    // t*(1 + (r-1)/r), integral because r divides t*.
    return *t_star + (r - 1) * (*t_star / r);
}

WorstCase worst_case_online(const DagInstance& instance, int r) {
    if (instance.size() <= kExhaustiveMaxVertices) {
        return {exhaustive_worst_case(instance, r), WorstCaseMethod::exhaustive};
    }
    if (auto closed = lemma_closed_form(instance, r)) {
        return {*closed, WorstCaseMethod::closed_form};
    }
    throw std::invalid_argument("worst_case_online: |V| = " + std::to_string(instance.size()) +
                                " exceeds the exhaustive cap and the instance is not a "
                                "matching lemma-family instance");
}

Rational competitive_ratio(const DagInstance& instance, int r) {
    const Work online = worst_case_online(instance, r).completion;
    const Work offline = offline_lower_bound(instance, r);
    if (offline == 0) return Rational(1);
    return Rational(online, offline);
}

Rational uniform_sources_ratio_formula(int m, int r) {
    if (m < 2 || r < 1) throw std::invalid_argument("uniform_sources_ratio_formula: needs m >= 2, r >= 1");
    const std::int64_t blocks = (m - 1) / r;
    return Rational(blocks * (r - 1) + (m - 1), m - 1);
}

}  // namespace staybusy
