#pragma once

#include <random>
#include <vector>

#include "staybusy/instance.hpp"
#include "staybusy/simulate.hpp"

namespace staybusy {

/// Ready set with a pluggable extraction discipline.
class Frontier {
public:
    Frontier(const DagInstance& instance, const FrontierPolicy& policy);

    void push(VertexId v);
    VertexId pop();
    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }

private:
    const DagInstance& instance_;
    FrontierPolicy policy_;
    std::vector<VertexId> items_;  // insertion order
    std::mt19937_64 rng_;
    std::size_t script_pos_ = 0;
};

}  // namespace staybusy
