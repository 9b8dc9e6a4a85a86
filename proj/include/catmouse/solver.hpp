#pragma once
// Exact winner determination for any rule set on small graphs. The hidden-mouse
// game is recast as a perfect-information reachability game whose nodes are
// information states: the set of (position, previous distance) pairs consistent
// with every signal so far. The cat picks a vertex; the adversary answers with
// any feasible non-capture observation class; the cat wins immediately when no
// such class exists. A backward attractor pass over the reachable state graph
// yields the winner and, for the cat, the optimal number of rounds.

#include "catmouse/graph.hpp"
#include "catmouse/rules.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace catmouse {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bit-packed consistency set. Comparing channels set bit pos*n + code with
// code = d-1 (or n-1 when the mouse is unreachable); other channels set plain
// position bits. 128 bits bound comparing channels at n <= 11.
using StateBits = unsigned __int128;

struct InfoState {
    StateBits bits = 0;
    Vertex c_prev = -1;   // cat's previous vertex, kept only under avoid-cat movement
    bool initial = true;  // round 1: the mouse may appear anywhere, nothing committed

    bool operator==(const InfoState& o) const {
        return bits == o.bits && c_prev == o.c_prev && initial == o.initial;
    }
};

struct SolveLimits {
    int max_n_cmp = 8;     // comparing channels track (position, distance) pairs
    int max_n_plain = 10;  // position-only channels
    std::size_t max_states = 500000;
};

struct SolveResult {
    bool cat_wins = false;
    int optimal_rounds = -1;  // meaningful iff cat_wins
    std::int64_t states_explored = 0;
    std::int64_t stall_wins = 0;  // winning states where the mouse had no legal move
};

class Solver {
public:
    Solver(const Graph& g, RuleSet rules, SolveLimits limits = {});

    const Graph& graph() const { return g_; }
    const RuleSet& rules() const { return rules_; }
    const SolveResult& result() const { return result_; }

    InfoState initial_state() const { return {}; }

    // The state after playing c and observing obs. Throws on capture signals
    // and on observations no consistent trajectory can produce.
    InfoState advance(const InfoState& s, Vertex c, const Observation& obs) const;

    struct ClassSucc {
        Observation obs;
        InfoState next;  // empty bits when capture
        bool capture;
    };
    // Feasible observation classes at (s, c), ordered by observation_rank.
    std::vector<ClassSucc> classes(const InfoState& s, Vertex c) const;

    // True when no consistent trajectory has a legal move (avoid-cat rules).
    bool stalled(const InfoState& s) const;

    // Attractor level: rounds the cat needs from s with optimal play, or
    // nullopt when s is in the mouse's winning region. Throws for states the
    // exploration never reached.
    std::optional<int> level(const InfoState& s) const;

    // A vertex whose worst feasible class realizes level(s); smallest id wins ties.
    Vertex optimal_move(const InfoState& s) const;

    // The (position, d_prev) pairs of a state; d_prev is -1 on channels that
    // do not track it. Diagnostic helper.
    std::vector<std::pair<Vertex, Dist>> decode(const InfoState& s) const;

private:
    struct Key {
        StateBits bits;
        Vertex c_prev;
        bool initial;
        bool operator==(const Key& o) const {
            return bits == o.bits && c_prev == o.c_prev && initial == o.initial;
        }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            auto lo = static_cast<std::uint64_t>(k.bits);
            auto hi = static_cast<std::uint64_t>(k.bits >> 64);
            std::uint64_t h = lo * 0x9e3779b97f4a7c15ULL;
            h ^= hi + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h ^= (static_cast<std::uint64_t>(k.c_prev) << 1) ^
                 static_cast<std::uint64_t>(k.initial);
            return static_cast<std::size_t>(h);
        }
    };

    bool tracks_d() const { return channel_has_cmp(rules_.channel); }
    int pack(Vertex pos, Dist d) const;
    template <class Fn>
    void for_each_successor(const InfoState& s, Vertex c, Fn&& fn) const;
    int state_id(const InfoState& s);
    std::optional<int> find_state(const InfoState& s) const;
    void explore_and_solve();

    Graph g_;
    DistanceTable dist_;
    RuleSet rules_;
    SolveLimits limits_;
    SolveResult result_;
    std::vector<InfoState> states_;
    std::unordered_map<Key, int, KeyHash> memo_;
    std::vector<int> level_;   // -1 = mouse's region
    std::vector<char> stall_;  // 1 = won because the mouse had no legal move
};

SolveResult solve(const Graph& g, RuleSet rules, SolveLimits limits = {});

// Convenience wrapper; builds a Solver per call.
Vertex optimal_cat_move(const Graph& g, RuleSet rules, const InfoState& s,
                        SolveLimits limits = {});

struct VariantRow {
    std::string instance;
    RuleSet rules;
    std::optional<SolveResult> result;  // absent when the solve failed
    std::string error;
};

// One row per (instance, rule set); per-row errors are recorded, not thrown.
std::vector<VariantRow> variant_table(const std::vector<std::pair<std::string, Graph>>& instances,
                                      const std::vector<RuleSet>& rule_sets,
                                      SolveLimits limits = {});

// "instance=<name> channel=<id> movement=<id> outcome=<cat|mouse|error> rounds=<k|-> states=<count|->"
std::string format_solve_line(const VariantRow& row);

}  // namespace catmouse
