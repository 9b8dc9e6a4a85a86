#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "catmouse/rules.hpp"

namespace catmouse {

// Everything an invisible mouse could still be, given the cat's moves and the
// signals emitted so far. Elements are (position, distance heard last round)
// pairs; parent links are kept per layer so any element can be expanded into
// a full witness trajectory. Copies are cheap-ish (layers are flat arrays)
// and independent.
class ConsistencySet {
public:
    ConsistencySet(const Graph& g, RuleSet rules);

    const Graph& graph() const { return ctx_->g; }
    const RuleSet& rules() const { return ctx_->rules; }
    const DistanceTable& dist() const { return ctx_->dist; }

    // number of (cat move, observation) updates applied so far
    int rounds() const { return static_cast<int>(cats_.size()); }
    bool started() const { return rounds() > 0; }
    bool empty() const { return started() && layers_.back().empty(); }
    std::optional<Vertex> last_cat() const {
        return cats_.empty() ? std::nullopt : std::optional<Vertex>(cats_.back());
    }

    // current elements, deduplicated and sorted
    std::vector<std::pair<Vertex, Dist>> elements() const;
    int element_count() const { return started() ? static_cast<int>(layers_.back().size()) : 0; }

    struct ClassCount {
        Observation obs;
        int count = 0;  // distinct successor elements under obs
    };
    // Feasible signals if the cat now plays c, ordered by observation_rank.
    std::vector<ClassCount> feasible_classes(Vertex c) const;

    // True when no consistent state has any legal move left (possible only
    // under the AvoidCat movement rules).
    bool all_successors_empty() const;

    // Incorporate one round: the cat played c and the signal was obs.
    // The set may become empty (infeasible signal).
    void advance(Vertex c, const Observation& obs);

    // Any trajectory consistent with everything so far (first entry = round-1
    // placement). Requires a nonempty current layer.
    std::vector<Vertex> witness() const;
    // Trajectory of some state with no legal continuation.
    std::vector<Vertex> stuck_witness() const;

    // Current layer as a bitmask for memoization. Channels that compare pack
    // (pos, d) into pos*n + code and need n*n <= 64; the rest pack positions
    // only and need n <= 64.
    std::uint64_t packed_key() const;

private:
    struct Ctx {
        Graph g;
        DistanceTable dist;
        RuleSet rules;
    };
    struct Entry {
        Vertex pos;
        Dist d;              // distance to the cat in that round
        std::int32_t parent; // index into previous layer, -1 in layer 0
    };

    template <class Fn>
    void for_each_successor(Vertex c, Fn&& fn) const;  // fn(parent, pos, d, obs)

    std::shared_ptr<const Ctx> ctx_;
    std::vector<std::vector<Entry>> layers_;
    std::vector<Vertex> cats_;
};

ConsistencySet update_consistency(const ConsistencySet& s, const Graph& g, const RuleSet& rules,
                                  Vertex c, const Observation& obs);
std::vector<Vertex> extract_witness(const ConsistencySet& s);

}  // namespace catmouse
