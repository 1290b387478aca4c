#pragma once

#include <optional>

#include "staybusy/instance.hpp"
#include "staybusy/rational.hpp"

namespace staybusy {

inline constexpr std::size_t kExhaustiveMaxVertices = 10;

/// Which end of the insertion-ordered ready list the enumeration branches
/// from first. The maximum does not depend on it; the option exists so the
/// invariance can be checked.
enum class BranchOrder { fifo, lifo };

/// Largest completion time over every StayBusy dispatch sequence: at each
/// moment with free processors and ready vertices, every choice of which
/// ready vertices to start is explored.
/// Throws std::invalid_argument above kExhaustiveMaxVertices vertices.
Work exhaustive_worst_case(const DagInstance& instance, int r,
                           BranchOrder order = BranchOrder::fifo);

/// t*(2 - 1/r) when the instance carries a LEMMA_WORST tag for this r.
std::optional<Work> lemma_closed_form(const DagInstance& instance, int r);

enum class WorstCaseMethod { exhaustive, closed_form };

struct WorstCase {
    Work completion = 0;
    WorstCaseMethod method = WorstCaseMethod::exhaustive;
};

/// Exhaustive for small instances, else the closed form for tagged Lemma
/// instances. Throws std::invalid_argument when neither applies.
WorstCase worst_case_online(const DagInstance& instance, int r);

/// worst_case_online / offline_lower_bound, exact.
Rational competitive_ratio(const DagInstance& instance, int r);

/// floor((m-1)/r) * (r-1)/(m-1) + 1, the ratio quoted for m > r+1 equal
/// sources. Requires m >= 2.
Rational uniform_sources_ratio_formula(int m, int r);

}  // namespace staybusy
