#pragma once
// Mouse agents: the signal-committing phantom adversaries (the worst case the
// cat can face) and three concrete trajectory-playing mice.

#include "catmouse/consistency.hpp"
#include "catmouse/game.hpp"
#include "catmouse/solver.hpp"

#include <optional>
#include <random>
#include <vector>

namespace catmouse {

// Phantom adversaries never commit to a position. Each round they partition
// the consistent successor pairs by observation class and reply with a chosen
// class's signal; the capture class is picked only when it is the sole
// feasible one. Greedy keeps the most trajectories alive (ties: lowest
// observation rank); Exact asks the solver for the class that survives
// longest (unreachable-by-the-cat beats any finite level, then higher level,
// then lower rank), so it needs the instance within solver limits.
enum class PhantomMode { Greedy, Exact };

class PhantomMouse : public MouseAgent {
public:
    PhantomMouse(const Graph& g, RuleSet rules, PhantomMode mode, SolveLimits limits = {});
    MouseReply respond(Vertex cat, int round) override;

    const ConsistencySet& consistent() const { return set_; }

private:
    ConsistencySet set_;
    PhantomMode mode_;
    std::optional<Solver> solver_;
    InfoState info_;
};

// Stays on a cycle forever: starts as far from the cat as possible, then
// walks to the cycle-neighbor distinct from the cat's vertex, preferring the
// one farther from the cat (ties: smaller id).
class CycleMouse : public MouseAgent {
public:
    CycleMouse(const Graph& g, std::vector<Vertex> cycle);
    MouseReply respond(Vertex cat, int round) override;

private:
    DistanceTable dist_;
    std::vector<Vertex> cyc_;  // open form, distinct vertices
    std::vector<int> idx_;     // vertex -> position in cyc_, -1 off-cycle
    Vertex pos_ = -1;
};

// Lives on a path: starts at index n/2, steps away from the cat when it can
// (an endpoint's only legal move may be toward it), and when the cat sits on
// its previous vertex escapes into the larger remaining segment (ties: the
// lower-index side).
class PathMouse : public MouseAgent {
public:
    explicit PathMouse(const Graph& g);
    MouseReply respond(Vertex cat, int round) override;

private:
    std::vector<Vertex> order_;  // path sequence from the smaller-id endpoint
    std::vector<int> index_;
    int i_ = -1;
};

// Uniform random placement, then uniform random legal moves; reproducible
// per seed.
class RandomMouse : public MouseAgent {
public:
    RandomMouse(const Graph& g, RuleSet rules, std::uint64_t seed);
    MouseReply respond(Vertex cat, int round) override;

private:
    const Graph g_;
    RuleSet rules_;
    std::mt19937_64 rng_;
    Vertex pos_ = -1;
    Vertex last_cat_ = -1;
};

}  // namespace catmouse
