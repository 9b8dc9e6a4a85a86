#include "catmouse/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace catmouse {

namespace {

// ---------------------------------------------------------------- explorer

struct ExploreFail {
    std::string reason;
};

struct PathVal {
    int rounds = 0;
    int t1_slack = 0;
    int t1 = 0, t2 = 0, t3 = 0, t4 = 0;
};

PathVal max_of(const PathVal& a, const PathVal& b) {
    return {std::max(a.rounds, b.rounds), std::max(a.t1_slack, b.t1_slack),
            std::max(a.t1, b.t1),         std::max(a.t2, b.t2),
            std::max(a.t3, b.t3),         std::max(a.t4, b.t4)};
}

PathVal plus(const PathVal& a, const PathVal& b) {
    return {a.rounds + b.rounds, a.t1_slack + b.t1_slack, a.t1 + b.t1,
            a.t2 + b.t2,         a.t3 + b.t3,             a.t4 + b.t4};
}

void append_set_key(std::string& key, const ConsistencySet& set) {
    if (!set.started()) {
        key += '-';
        return;
    }
    key += std::to_string(set.last_cat().value_or(-1));
    for (auto [v, d] : set.elements()) {
        key += ';';
        key += std::to_string(v);
        key += ':';
        key += std::to_string(d);
    }
}

class BehaviorExplorer {
public:
    BehaviorExplorer(const Graph& g, const RuleSet& rules, const BehaviorLimits& lim,
                     const StepCheck& check)
        : g_(g), rules_(rules), lim_(lim), check_(check) {}

    BehaviorCheck run(const CatStrategy& proto) {
        BehaviorCheck out;
        try {
            auto root = proto.clone();
            if (!root) throw ExploreFail{"strategy cannot be forked for exploration"};
            PathVal v = dfs(std::move(root), ConsistencySet(g_, rules_), std::nullopt, 1);
            out.max_rounds = v.rounds;
            out.max_t1_slack = v.t1_slack;
            out.max_t1 = v.t1;
            out.max_t2 = v.t2;
            out.max_t3 = v.t3;
            out.max_t4 = v.t4;
        } catch (const ExploreFail& f) {
            out.ok = false;
            out.reason = f.reason;
            out.path = path_;
        }
        out.nodes = nodes_;
        out.leaves = leaves_;
        out.stall_leaves = stalls_;
        return out;
    }

private:
    PathVal dfs(std::unique_ptr<CatStrategy> cat, ConsistencySet set,
                const std::optional<Observation>& obs, int depth) {
        if (depth > lim_.max_depth) throw ExploreFail{"branch exceeded the depth cap"};
        std::string key;
        bool memoable = false;
        if (auto mk = cat->memo_key()) {
            key = *mk;
            key += '|';
            key += obs ? std::to_string(observation_rank(*obs)) : std::string("-");
            key += '|';
            append_set_key(key, set);
            if (auto it = memo_.find(key); it != memo_.end()) return it->second;
            if (!on_stack_.insert(key).second)
                throw ExploreFail{"strategy revisited a knowledge state within one branch"};
            memoable = true;
        }
        if (++nodes_ > lim_.max_nodes) throw ExploreFail{"node cap exceeded"};

        Vertex c = -1;
        try {
            c = cat->next(obs);
        } catch (const std::exception& e) {
            throw ExploreFail{std::string("strategy: ") + e.what()};
        }
        if (c < 0 || c >= g_.order())
            throw ExploreFail{"strategy played a vertex outside the graph"};

        PathVal total{1, 0, 0, 0, 0, 0};
        for (const auto& ev : cat->drain_events()) {
            if (ev.type == 1) ++total.t1;
            else if (ev.type == 2) ++total.t2;
            else if (ev.type == 3) ++total.t3;
            else if (ev.type == 4) ++total.t4;
        }
        total.t1_slack = total.t1 - total.t2 - total.t3 - total.t4;

        if (check_) {
            try {
                check_(*cat, set, c);
            } catch (const std::exception& e) {
                throw ExploreFail{std::string("invariant: ") + e.what()};
            }
        }

        auto fc = set.feasible_classes(c);
        std::optional<PathVal> below;
        for (const auto& cc : fc) {
            if (cc.obs.cls == DistClass::Zero) continue;
            ConsistencySet child = set;
            child.advance(c, cc.obs);
            auto fork = cat->clone();
            if (!fork) throw ExploreFail{"strategy cannot be forked for exploration"};
            path_.push_back(cc.obs);
            PathVal v = dfs(std::move(fork), std::move(child), cc.obs, depth + 1);
            path_.pop_back();
            below = below ? max_of(*below, v) : v;
        }
        if (below) {
            total = plus(total, *below);
        } else {
            ++leaves_;
            if (fc.empty()) {
                ++stalls_;
                if (!lim_.allow_stall)
                    throw ExploreFail{"the mouse can force a stall instead of a capture"};
            }
        }
        if (memoable) {
            on_stack_.erase(key);
            memo_.emplace(std::move(key), total);
        }
        return total;
    }

    const Graph& g_;
    const RuleSet& rules_;
    const BehaviorLimits& lim_;
    const StepCheck& check_;
    std::unordered_map<std::string, PathVal> memo_;
    std::unordered_set<std::string> on_stack_;
    std::vector<Observation> path_;
    long nodes_ = 0, leaves_ = 0, stalls_ = 0;
};

}  // namespace

BehaviorCheck explore_behaviors(const Graph& g, const RuleSet& rules, const CatStrategy& proto,
                                const BehaviorLimits& limits, const StepCheck& check) {
    return BehaviorExplorer(g, rules, limits, check).run(proto);
}

// ----------------------------------------------------- enumeration helpers

void for_each_graph(int n, const std::function<void(const Graph&)>& fn) {
    if (n < 1) throw GraphError("graph enumeration needs n >= 1");
    std::vector<std::pair<Vertex, Vertex>> slots;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    if (slots.size() > 24) throw GraphError("graph enumeration capped at n = 7");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << slots.size()); ++mask) {
        edges.clear();
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (mask >> i & 1) edges.push_back(slots[i]);
        fn(Graph(n, edges));
    }
}

void for_each_connected_cyclic(int n, const std::function<void(const Graph&)>& fn) {
    for_each_graph(n, [&](const Graph& g) {
        if (components(g).size() != 1) return;
        if (is_forest(g).forest) return;
        fn(g);
    });
}

// ------------------------------------------------------- specific oracles

std::vector<std::vector<Vertex>> script_survivors(const Graph& g, const RuleSet& rules,
                                                  const std::vector<Vertex>& script) {
    std::vector<std::vector<Vertex>> out;
    std::vector<char> cur(g.order(), 0);
    Vertex c_prev = -1;
    for (std::size_t i = 0; i < script.size(); ++i) {
        Vertex c = script[i];
        if (c < 0 || c >= g.order()) throw GameError("script plays a vertex outside the graph");
        std::vector<char> nxt(g.order(), 0);
        if (i == 0) {
            std::fill(nxt.begin(), nxt.end(), 1);  // free placement
        } else {
            for (Vertex v = 0; v < g.order(); ++v) {
                if (!cur[v]) continue;
                for (Vertex to : legal_mouse_moves(rules, g, v, c_prev)) nxt[to] = 1;
            }
        }
        nxt[c] = 0;  // standing on the cat's vertex is a capture
        cur = std::move(nxt);
        c_prev = c;
        std::vector<Vertex> alive;
        for (Vertex v = 0; v < g.order(); ++v)
            if (cur[v]) alive.push_back(v);
        out.push_back(std::move(alive));
    }
    return out;
}

namespace {

// Brute-force side of the consistency oracle: the full list of surviving
// mouse trajectories, extended one observed round at a time.
struct OracleChecker {
    const Graph& g;
    const RuleSet& rules;
    DistanceTable dist;
    int max_depth;
    std::string diag;
    // elements+last_cat serialization -> deepest remaining depth already verified
    std::unordered_map<std::string, int> seen;

    OracleChecker(const Graph& gg, const RuleSet& rr, int depth)
        : g(gg), rules(rr), dist(gg), max_depth(depth) {}

    bool mismatch(const std::string& what) {
        if (diag.empty()) diag = what;
        return false;
    }

    bool node(const ConsistencySet& set, const std::vector<std::vector<Vertex>>& trajs,
              Vertex c_prev, int depth_left) {
        // positions the trajectory list allows, with their current distance
        std::vector<std::pair<Vertex, Dist>> proj;
        for (const auto& t : trajs) proj.emplace_back(t.back(), dist(c_prev, t.back()));
        std::sort(proj.begin(), proj.end());
        proj.erase(std::unique(proj.begin(), proj.end()), proj.end());
        if (proj != set.elements()) return mismatch("element sets differ");

        if (depth_left == 0) return true;
        std::string key;
        append_set_key(key, set);
        if (auto it = seen.find(key); it != seen.end() && it->second >= depth_left) return true;
        seen[key] = depth_left;

        for (Vertex c = 0; c < g.order(); ++c) {
            // brute-force class map: observation -> extended trajectories
            std::map<int, std::pair<Observation, std::vector<std::vector<Vertex>>>> groups;
            for (const auto& t : trajs) {
                Dist d_prev = dist(c_prev, t.back());
                for (Vertex to : legal_mouse_moves(rules, g, t.back(), c_prev)) {
                    Observation o = feedback(rules, dist(c, to), d_prev);
                    auto& slot = groups[observation_rank(o)];
                    slot.first = o;
                    slot.second.push_back(t);
                    slot.second.back().push_back(to);
                }
            }
            auto fc = set.feasible_classes(c);
            if (fc.size() != groups.size()) return mismatch("class count differs");
            std::size_t gi = 0;
            for (auto& [rank, slot] : groups) {
                auto& [obs, ext] = slot;
                if (!(fc[gi].obs == obs)) return mismatch("class labels differ");
                std::vector<Vertex> ps;
                for (const auto& t : ext) ps.push_back(t.back());
                std::sort(ps.begin(), ps.end());
                ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
                if (fc[gi].count != static_cast<int>(ps.size()))
                    return mismatch("class size differs");
                ++gi;
            }
            if (groups.empty()) {
                if (!set.all_successors_empty()) return mismatch("stall detection differs");
                continue;
            }
            for (auto& [rank, slot] : groups) {
                auto& [obs, ext] = slot;
                if (obs.cls == DistClass::Zero) continue;  // game over
                ConsistencySet child = set;
                child.advance(c, obs);
                if (!node(child, ext, c, depth_left - 1)) return false;
            }
        }
        return true;
    }

    bool root() {
        ConsistencySet set(g, rules);
        for (Vertex c = 0; c < g.order(); ++c) {
            std::map<int, std::pair<Observation, std::vector<std::vector<Vertex>>>> groups;
            for (Vertex v = 0; v < g.order(); ++v) {
                Observation o = feedback(rules, dist(c, v), std::nullopt);
                auto& slot = groups[observation_rank(o)];
                slot.first = o;
                slot.second.push_back({v});
            }
            auto fc = set.feasible_classes(c);
            if (fc.size() != groups.size()) return mismatch("opening class count differs");
            std::size_t gi = 0;
            for (auto& [rank, slot] : groups) {
                if (!(fc[gi].obs == slot.first)) return mismatch("opening class labels differ");
                std::vector<Vertex> ps;
                for (const auto& t : slot.second) ps.push_back(t.back());
                std::sort(ps.begin(), ps.end());
                ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
                if (fc[gi].count != static_cast<int>(ps.size()))
                    return mismatch("opening class size differs");
                ++gi;
            }
            for (auto& [rank, slot] : groups) {
                if (slot.first.cls == DistClass::Zero) continue;
                ConsistencySet child = set;
                child.advance(c, slot.first);
                if (!node(child, slot.second, c, max_depth - 1)) return false;
            }
        }
        return true;
    }
};

}  // namespace

std::string check_consistency_oracle(const Graph& g, const RuleSet& rules, int depth) {
    if (depth < 1) throw GameError("oracle depth must be at least 1");
    OracleChecker oc(g, rules, depth);
    oc.root();
    return oc.diag;
}

Vertex RestartingForestCat::next(const std::optional<Observation>& obs) {
    try {
        return cat_.next(obs);
    } catch (const StrategyError&) {
        ++restarts_;
        cat_ = ForestCat(forest_, rules_);
        return cat_.next(obs);  // a fresh strategy ignores the stale observation
    }
}

// ----------------------------------------------------------- check suites

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void log_line(std::ostream* log, const std::string& s) {
    if (log) *log << s << std::endl;
}

void add_failure(SuiteReport& rep, const std::string& inst, const std::string& reason) {
    ++rep.failures;
    if (rep.failure_lines.size() < 50)
        rep.failure_lines.push_back("failure instance=" + inst + " reason=" + reason);
}

SuiteReport make_report(const std::string& suite, int n) {
    SuiteReport rep;
    rep.suite = suite;
    rep.n = n;
    return rep;
}

void add_stat(SuiteReport& rep, const std::string& key, long value) {
    rep.stats.emplace_back(key, std::to_string(value));
}

const RuleSet kTreeRules{FeedbackChannel::CoarseCmp, MovementRule::MustMove};

SuiteReport suite_tree_bound(int n, std::ostream* log) {
    SuiteReport rep = make_report("tree-bound", n > 0 ? n : 6);
    n = rep.n;
    const long bound = transition_round_bound(n);
    Timer timer;
    long idx = 0;
    int max_rounds = 0, max_slack = 0;
    LabeledTreeStream stream(n);
    while (auto g = stream.next()) {
        std::string inst = "tree" + std::to_string(n) + "-" + std::to_string(idx++);
        ++rep.instances;
        try {
            TransitionCat cat(*g, kTreeRules);
            PhantomMouse mouse(*g, kTreeRules, PhantomMode::Exact);
            GameResult res = play_game(*g, kTreeRules, cat, mouse, static_cast<int>(bound) + 5);
            int t[5] = {0, 0, 0, 0, 0};
            for (const auto& [round, ev] : res.events) ++t[ev.type];
            if (res.outcome != Outcome::CatWins) {
                add_failure(rep, inst, "no capture");
                continue;
            }
            if (res.rounds_played > bound) {
                add_failure(rep, inst, "round bound exceeded");
                continue;
            }
            int accounted = 1 + t[1] + t[2] + 2 * (t[3] + t[4]);
            if (res.rounds_played < accounted || res.rounds_played > accounted + 2) {
                add_failure(rep, inst, "round accounting off");
                continue;
            }
            if (t[1] > t[2] + t[3] + t[4] + 1 || t[2] > n - 1 || t[3] > 2 * n - 2 ||
                t[4] > (2 * n - 2) * (2 * n - 2)) {
                add_failure(rep, inst, "transition count bound violated");
                continue;
            }
            max_rounds = std::max(max_rounds, res.rounds_played);
            max_slack = std::max(max_slack, t[1] - t[2] - t[3] - t[4]);
        } catch (const std::exception& e) {
            add_failure(rep, inst, e.what());
        }
    }
    add_stat(rep, "round-bound", bound);
    add_stat(rep, "max-rounds", max_rounds);
    add_stat(rep, "max-t1-slack", max_slack);
    log_line(log, "[tree-bound] n=" + std::to_string(n) + " trees=" +
                      std::to_string(rep.instances) + " " + std::to_string(timer.secs()) + "s");
    return rep;
}

SuiteReport suite_cycles(int n_max, std::ostream* log) {
    SuiteReport rep = make_report("cycles", n_max > 0 ? n_max : 6);
    long seed = 0;
    for (int n = 3; n <= rep.n; ++n) {
        Timer timer;
        long count = 0;
        for_each_connected_cyclic(n, [&](const Graph& g) {
            std::string inst = "cyclic" + std::to_string(n) + "-" + std::to_string(count++);
            ++rep.instances;
            ++seed;
            try {
                SolveResult sr = solve(g, kTreeRules);
                if (sr.cat_wins) {
                    add_failure(rep, inst, "solver found a forced capture");
                    return;
                }
                std::vector<Vertex> cyc = find_cycle(g);
                {
                    RestartingForestCat cat(g, kTreeRules);
                    CycleMouse mouse(g, cyc);
                    GameResult res = play_game(g, kTreeRules, cat, mouse, 1000);
                    if (res.outcome != Outcome::MouseSurvivedHorizon) {
                        add_failure(rep, inst, "tree-chasing cat caught the cycle mouse");
                        return;
                    }
                }
                {
                    RandomCat cat(g.order(), 0x5eed0000u + seed);
                    CycleMouse mouse(g, cyc);
                    GameResult res = play_game(g, kTreeRules, cat, mouse, 1000);
                    if (res.outcome != Outcome::MouseSurvivedHorizon) {
                        add_failure(rep, inst, "random cat caught the cycle mouse");
                        return;
                    }
                }
            } catch (const std::exception& e) {
                add_failure(rep, inst, e.what());
            }
        });
        add_stat(rep, "cyclic-n" + std::to_string(n), count);
        log_line(log, "[cycles] n=" + std::to_string(n) + " graphs=" + std::to_string(count) +
                          " " + std::to_string(timer.secs()) + "s");
    }
    return rep;
}

SuiteReport suite_original_game(int n_max, std::ostream* log) {
    SuiteReport rep = make_report("original-game", n_max > 0 ? n_max : 7);
    const RuleSet rules{FeedbackChannel::Binary, MovementRule::MustMove};
    {
        ++rep.instances;
        SolveResult sr = solve(make_named("t_star"), rules);
        if (sr.cat_wins)
            add_failure(rep, "t-star", "capture-or-not feedback should not beat the spider");
    }
    for (int n = 1; n <= rep.n; ++n) {
        Timer timer;
        long idx = 0;
        LabeledTreeStream stream(n);
        while (auto g = stream.next()) {
            std::string inst = "tree" + std::to_string(n) + "-" + std::to_string(idx++);
            ++rep.instances;
            try {
                SolveResult sr = solve(*g, rules);
                if (!sr.cat_wins) add_failure(rep, inst, "cat should win every tree here");
            } catch (const std::exception& e) {
                add_failure(rep, inst, e.what());
            }
        }
        log_line(log, "[original-game] n=" + std::to_string(n) + " trees=" + std::to_string(idx) +
                          " " + std::to_string(timer.secs()) + "s");
    }
    add_stat(rep, "trees", rep.instances - 1);
    return rep;
}

SuiteReport suite_tstar_weakened(int, std::ostream* log) {
    SuiteReport rep = make_report("tstar-weakened", 10);
    Graph g = make_named("t_star");
    for (FeedbackChannel ch : {FeedbackChannel::Coarse, FeedbackChannel::CmpOnly}) {
        Timer timer;
        std::string inst = channel_token(ch);
        ++rep.instances;
        RuleSet rules{ch, MovementRule::MustMove};
        try {
            SolveResult sr = solve(g, rules, SolveLimits{11, 10, 500000});
            if (!sr.cat_wins) {
                add_failure(rep, inst, "solver says the mouse escapes this channel");
            } else {
                add_stat(rep, "optimal-" + inst, sr.optimal_rounds);
            }
            TstarWeakenedCat cat(g, ch);
            BehaviorCheck bc = explore_behaviors(g, rules, cat);
            if (!bc.ok) {
                add_failure(rep, inst, bc.reason);
            } else {
                add_stat(rep, "max-rounds-" + inst, bc.max_rounds);
                add_stat(rep, "nodes-" + inst, bc.nodes);
            }
        } catch (const std::exception& e) {
            add_failure(rep, inst, e.what());
        }
        log_line(log, "[tstar-weakened] " + inst + " " + std::to_string(timer.secs()) + "s");
    }
    return rep;
}

SuiteReport suite_seager_demo(int, std::ostream* log) {
    SuiteReport rep = make_report("seager-demo", 10);
    Graph g = make_named("t_star");
    const std::vector<Vertex> script{0, 2, 0, 5, 0, 8, 0};
    Timer timer;
    {
        ++rep.instances;
        auto sets = script_survivors(
            g, RuleSet{FeedbackChannel::Coarse, MovementRule::MustMoveAvoidCat}, script);
        for (std::size_t i = 0; i < sets.size(); ++i)
            add_stat(rep, "avoid-survivors-r" + std::to_string(i + 1),
                     static_cast<long>(sets[i].size()));
        if (!sets.back().empty())
            add_failure(rep, "avoid-cat", "mice survive the seven-move script");
        if (sets[sets.size() - 2].empty())
            add_failure(rep, "avoid-cat", "script should need all seven moves");
    }
    {
        ++rep.instances;
        auto sets = script_survivors(g, RuleSet{FeedbackChannel::Coarse, MovementRule::MustMove},
                                     script);
        add_stat(rep, "free-survivors-r7", static_cast<long>(sets.back().size()));
        if (sets.back().empty())
            add_failure(rep, "free-movement", "backtracking mice should beat this script");
    }
    log_line(log, "[seager-demo] " + std::to_string(timer.secs()) + "s");
    return rep;
}

// Consistent mouse positions must never sit inside the certified sets: X is
// checked after every move, Y only when the strategy is back at its reference
// (mid-probe Y is conditional knowledge that the next reference read settles).
void certified_sets_check(const CatStrategy& cat, const ConsistencySet& set, Vertex) {
    const auto* tc = dynamic_cast<const TransitionCat*>(&cat);
    if (!tc) return;
    const TransitionState& st = tc->state();
    for (auto [v, d] : set.elements()) {
        if (st.x[v])
            throw std::runtime_error("a consistent mouse position lies in the certified set");
        if (st.phase == TransitionPhase::AtReference && st.y[v])
            throw std::runtime_error("a consistent mouse position lies in Y at a reference read");
    }
}

SuiteReport suite_accounting(int n_max, std::ostream* log) {
    SuiteReport rep = make_report("accounting", n_max > 0 ? n_max : 5);
    for (int n = 1; n <= rep.n; ++n) {
        Timer timer;
        long idx = 0;
        long nodes = 0;
        int max_rounds = 0;
        const long bound = transition_round_bound(n);
        LabeledTreeStream stream(n);
        while (auto g = stream.next()) {
            std::string inst = "tree" + std::to_string(n) + "-" + std::to_string(idx++);
            ++rep.instances;
            try {
                TransitionCat cat(*g, kTreeRules);
                BehaviorCheck bc = explore_behaviors(*g, kTreeRules, cat, {},
                                                     certified_sets_check);
                if (!bc.ok) {
                    add_failure(rep, inst, bc.reason);
                    continue;
                }
                nodes += bc.nodes;
                max_rounds = std::max(max_rounds, bc.max_rounds);
                if (bc.max_rounds > bound) add_failure(rep, inst, "round bound exceeded");
                else if (bc.max_t1_slack > 1) add_failure(rep, inst, "t1 bound violated");
                else if (bc.max_t2 > n - 1) add_failure(rep, inst, "t2 bound violated");
                else if (bc.max_t3 > 2 * n - 2) add_failure(rep, inst, "t3 bound violated");
                else if (bc.max_t4 > (2 * n - 2) * (2 * n - 2))
                    add_failure(rep, inst, "t4 bound violated");
            } catch (const std::exception& e) {
                add_failure(rep, inst, e.what());
            }
        }
        add_stat(rep, "max-rounds-n" + std::to_string(n), max_rounds);
        log_line(log, "[accounting] n=" + std::to_string(n) + " trees=" + std::to_string(idx) +
                          " nodes=" + std::to_string(nodes) + " " + std::to_string(timer.secs()) +
                          "s");
    }
    return rep;
}

SuiteReport suite_consistency_oracle(int n_max, std::ostream* log) {
    SuiteReport rep = make_report("consistency-oracle", n_max > 0 ? n_max : 5);
    constexpr int kDepth = 4;
    for (int n = 1; n <= rep.n; ++n) {
        Timer timer;
        long idx = 0;
        for_each_graph(n, [&](const Graph& g) {
            long mask = idx++;
            for (FeedbackChannel ch :
                 {FeedbackChannel::Binary, FeedbackChannel::Coarse, FeedbackChannel::CoarseCmp,
                  FeedbackChannel::CmpOnly, FeedbackChannel::Exact}) {
                for (MovementRule mv : {MovementRule::MustMove, MovementRule::MayStayAvoidCat,
                                        MovementRule::MustMoveAvoidCat, MovementRule::MayStay}) {
                    RuleSet rules{ch, mv};
                    std::string inst = "graph" + std::to_string(n) + "-" + std::to_string(mask) +
                                       "-" + channel_token(ch) + "-" + movement_token(mv);
                    ++rep.instances;
                    try {
                        std::string diag = check_consistency_oracle(g, rules, kDepth);
                        if (!diag.empty()) add_failure(rep, inst, diag);
                    } catch (const std::exception& e) {
                        add_failure(rep, inst, e.what());
                    }
                }
            }
        });
        log_line(log, "[consistency-oracle] n=" + std::to_string(n) + " graphs=" +
                          std::to_string(idx) + " " + std::to_string(timer.secs()) + "s");
    }
    add_stat(rep, "depth", kDepth);
    return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "tree-bound", "cycles",     "original-game",      "tstar-weakened",
        "seager-demo", "accounting", "consistency-oracle",
    };
    return names;
}

SuiteReport run_suite(const std::string& name, int n_max, std::ostream* log) {
    if (name == "tree-bound") return suite_tree_bound(n_max, log);
    if (name == "cycles") return suite_cycles(n_max, log);
    if (name == "original-game") return suite_original_game(n_max, log);
    if (name == "tstar-weakened") return suite_tstar_weakened(n_max, log);
    if (name == "seager-demo") return suite_seager_demo(n_max, log);
    if (name == "accounting") return suite_accounting(n_max, log);
    if (name == "consistency-oracle") return suite_consistency_oracle(n_max, log);
    throw std::invalid_argument("unknown suite: " + name);
}

std::string format_suite_line(const SuiteReport& rep) {
    std::ostringstream out;
    out << "suite=" << rep.suite << " n=" << rep.n << " instances=" << rep.instances
        << " failures=" << rep.failures;
    return out.str();
}

void write_suite_report(std::ostream& out, const SuiteReport& rep) {
    out << format_suite_line(rep) << '\n';
    for (const auto& line : rep.failure_lines) out << line << '\n';
    for (const auto& [key, value] : rep.stats) out << "stat " << key << "=" << value << '\n';
}

// ------------------------------------------------------------- graph text

std::optional<Graph> graph_from_spec(const std::string& spec) {
    std::string name = spec;
    int k = 0;
    if (auto p = spec.find(':'); p != std::string::npos) {
        name = spec.substr(0, p);
        try {
            std::size_t used = 0;
            k = std::stoi(spec.substr(p + 1), &used);
            if (used != spec.size() - p - 1) return std::nullopt;
        } catch (...) {
            return std::nullopt;
        }
    }
    try {
        return make_named(name, k);
    } catch (const GraphError&) {
        return std::nullopt;
    }
}

}  // namespace catmouse
