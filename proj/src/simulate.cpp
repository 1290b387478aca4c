#include "staybusy/simulate.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "staybusy/frontier.hpp"

namespace staybusy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string policy_name(const FrontierPolicy& policy) {
    return std::visit(overloaded{
                          [](const Fifo&) { return std::string("fifo"); },
                          [](const Lifo&) { return std::string("lifo"); },
                          [](const RandomPick& p) { return "random:" + std::to_string(p.seed); },
                          [](const MaxWeightLast&) { return std::string("max-weight-last"); },
                          [](const Scripted& p) {
                              std::string out = "scripted:";
                              for (std::size_t i = 0; i < p.order.size(); ++i) {
                                  if (i) out += ',';
                                  out += std::to_string(p.order[i]);
                              }
                              return out;
                          },
                      },
                      policy);
}

FrontierPolicy parse_policy(const std::string& text) {
    if (text == "fifo") return Fifo{};
    if (text == "lifo") return Lifo{};
    if (text == "max-weight-last") return MaxWeightLast{};
    auto suffix_after = [&](const std::string& prefix) -> std::optional<std::string> {
        if (text.rfind(prefix, 0) == 0) return text.substr(prefix.size());
        return std::nullopt;
    };
    try {
        if (auto seed = suffix_after("random:")) {
            std::size_t used = 0;
            const auto value = std::stoull(*seed, &used);
            if (used != seed->size()) throw std::invalid_argument("trailing characters");
            return RandomPick{value};
        }
        if (auto list = suffix_after("scripted:")) {
            Scripted scripted;
            std::stringstream in(*list);
            std::string item;
            while (std::getline(in, item, ',')) {
                scripted.order.push_back(static_cast<VertexId>(std::stoul(item)));
            }
            return scripted;
        }
    } catch (const std::logic_error&) {
        // fall through to the error below
    }
    throw std::invalid_argument("unknown policy '" + text +
                                "' (fifo, lifo, random:<seed>, max-weight-last, scripted:<ids>)");
}

// ---------------------------------------------------------------------------

Frontier::Frontier(const DagInstance& instance, const FrontierPolicy& policy)
    : instance_(instance), policy_(policy) {
    if (const auto* random = std::get_if<RandomPick>(&policy_)) rng_.seed(random->seed);
    if (const auto* scripted = std::get_if<Scripted>(&policy_)) {
        std::vector<bool> seen(instance.size(), false);
        if (scripted->order.size() != instance.size()) {
            throw std::invalid_argument("scripted order must list every vertex exactly once");
        }
        for (VertexId v : scripted->order) {
            if (v >= instance.size() || seen[v]) {
                throw std::invalid_argument("scripted order is not a permutation (vertex " +
                                            std::to_string(v) + ")");
            }
            seen[v] = true;
        }
    }
}

void Frontier::push(VertexId v) { items_.push_back(v); }

VertexId Frontier::pop() {
    std::size_t index = 0;
    if (std::holds_alternative<Fifo>(policy_)) {
        index = 0;
    } else if (std::holds_alternative<Lifo>(policy_)) {
        index = items_.size() - 1;
    } else if (std::holds_alternative<RandomPick>(policy_)) {
        // Plain modulo keeps the draw identical across standard libraries.
        index = static_cast<std::size_t>(rng_() % items_.size());
    } else if (std::holds_alternative<MaxWeightLast>(policy_)) {
        for (std::size_t i = 1; i < items_.size(); ++i) {
            const auto wi = instance_.weight(items_[i]);
            const auto wb = instance_.weight(items_[index]);
            if (wi < wb || (wi == wb && items_[i] < items_[index])) index = i;
        }
    } else {
        const auto& order = std::get<Scripted>(policy_).order;
        while (script_pos_ < order.size() && instance_.weight(order[script_pos_]) == 0) {
            ++script_pos_;
        }
        const VertexId want = order.at(script_pos_);
        const auto it = std::find(items_.begin(), items_.end(), want);
        if (it == items_.end()) {
            throw std::invalid_argument("scripted order dispatches vertex " + std::to_string(want) +
                                        " before any of its parents has completed");
        }
        ++script_pos_;
        index = static_cast<std::size_t>(it - items_.begin());
    }
    const VertexId v = items_[index];
    items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(index));
    return v;
}

// ---------------------------------------------------------------------------

SimResult simulate(const DagInstance& instance, int r, const FrontierPolicy& policy) {
    if (r < 1) throw std::invalid_argument("simulate: r must be >= 1");
    if (!topological_order(instance)) throw std::invalid_argument("simulate: instance is cyclic");

    const Adjacency adj(instance);
    const auto n = instance.size();
    Frontier frontier(instance, policy);

    struct Running {
        VertexId vertex;
        TimeSlot finish;
    };
    std::vector<std::optional<Running>> running(static_cast<std::size_t>(r));
    std::vector<bool> reached(n, false);

    // Admits newly reached vertices at the current instant: zero-weight ones
    // complete immediately and pass readiness on; the rest enter the frontier
    // in ascending id.
    auto admit = [&](std::vector<VertexId> pending) {
        std::vector<VertexId> ready;
        while (!pending.empty()) {
            const VertexId v = pending.back();
            pending.pop_back();
            if (instance.weight(v) > 0) {
                ready.push_back(v);
                continue;
            }
            for (VertexId c : adj.children[v]) {
                if (!reached[c]) {
                    reached[c] = true;
                    pending.push_back(c);
                }
            }
        }
        std::sort(ready.begin(), ready.end());
        for (VertexId v : ready) frontier.push(v);
    };

    std::vector<VertexId> initial;
    for (VertexId v = 0; v < n; ++v) {
        if (adj.is_source(v)) {
            reached[v] = true;
            initial.push_back(v);
        }
    }
    admit(std::move(initial));

    SimResult result;
    result.table = WorkTable(n, r);
    TimeSlot now = 0;
    while (true) {
        for (std::size_t p = 0; p < running.size() && !frontier.empty(); ++p) {
            if (running[p]) continue;
            const VertexId v = frontier.pop();
            const TimeSlot w = instance.weight(v);
            const auto proc = static_cast<ProcessorId>(p + 1);
            for (TimeSlot t = now + 1; t <= now + w; ++t) result.table.slots[v].push_back({t, proc});
            running[p] = Running{v, now + w};
            result.dispatches.push_back({now + 1, v, proc});
        }

        std::optional<TimeSlot> next;
        for (const auto& slot : running) {
            if (slot && (!next || slot->finish < *next)) next = slot->finish;
        }
        if (!next) break;
        now = *next;

        std::vector<VertexId> reached_now;
        for (auto& slot : running) {
            if (!slot || slot->finish != now) continue;
            for (VertexId c : adj.children[slot->vertex]) {
                if (!reached[c]) {
                    reached[c] = true;
                    reached_now.push_back(c);
                }
            }
            slot.reset();
        }
        admit(std::move(reached_now));
    }

    result.completion = now;
    result.table.horizon = std::max<TimeSlot>(now, 1);
    result.idle = total_idle(result.table);
    return result;
}

std::string sim_sidecar_json(const SimResult& result, int r, const FrontierPolicy& policy) {
    nlohmann::ordered_json doc;
    doc["T"] = result.completion;
    doc["idle"] = result.idle;
    doc["policy"] = policy_name(policy);
    doc["r"] = r;
    return doc.dump(2) + "\n";
}

}  // namespace staybusy
