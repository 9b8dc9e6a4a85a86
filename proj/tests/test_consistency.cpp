#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "catmouse/consistency.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

using namespace catmouse;

namespace {

Observation obs_of(const RuleSet& r, Dist d, std::optional<Dist> d_prev = std::nullopt) {
    return feedback(r, d, d_prev);
}

// Brute-force mirror of ConsistencySet: every full trajectory kept explicitly,
// no deduplication, successors recomputed from the rules each round.
struct TrajectoryOracle {
    const Graph& g;
    RuleSet rules;
    DistanceTable dist;
    std::vector<Vertex> cats;
    std::vector<std::vector<Vertex>> trajs;

    TrajectoryOracle(const Graph& g_, RuleSet r) : g(g_), rules(r), dist(g_) {}

    template <class Fn>
    void for_each_successor(Vertex c, Fn&& fn) const {  // fn(traj*, to, d, obs)
        if (cats.empty()) {
            for (Vertex v = 0; v < g.order(); ++v)
                fn(nullptr, v, dist(c, v), obs_of(rules, dist(c, v)));
            return;
        }
        for (const auto& t : trajs) {
            Dist d_prev = dist(cats.back(), t.back());
            for (Vertex to : legal_mouse_moves(rules, g, t.back(), cats.back()))
                fn(&t, to, dist(c, to), obs_of(rules, dist(c, to), d_prev));
        }
    }

    void advance(Vertex c, const Observation& want) {
        std::vector<std::vector<Vertex>> next;
        for_each_successor(c, [&](const std::vector<Vertex>* t, Vertex to, Dist,
                                  const Observation& got) {
            if (!(got == want)) return;
            std::vector<Vertex> nt = t ? *t : std::vector<Vertex>{};
            nt.push_back(to);
            next.push_back(std::move(nt));
        });
        trajs = std::move(next);
        cats.push_back(c);
    }

    std::vector<std::pair<Vertex, Dist>> elements() const {
        std::set<std::pair<Vertex, Dist>> s;
        for (const auto& t : trajs) s.insert({t.back(), dist(cats.back(), t.back())});
        return {s.begin(), s.end()};
    }

    // (observation, distinct successor elements) per feasible class, rank order
    std::vector<std::pair<Observation, int>> classes(Vertex c) const {
        std::map<int, std::pair<Observation, std::set<std::pair<Vertex, Dist>>>> m;
        for_each_successor(c, [&](const std::vector<Vertex>*, Vertex to, Dist d,
                                  const Observation& got) {
            auto& slot = m[observation_rank(got)];
            slot.first = got;
            slot.second.insert({to, d});
        });
        std::vector<std::pair<Observation, int>> out;
        for (auto& [rank, slot] : m)
            out.emplace_back(slot.first, static_cast<int>(slot.second.size()));
        return out;
    }

    bool all_successors_empty() const {
        if (cats.empty() || trajs.empty()) return false;
        for (const auto& t : trajs)
            if (!legal_mouse_moves(rules, g, t.back(), cats.back()).empty()) return false;
        return true;
    }
};

bool feasible_trajectory(const Graph& g, const RuleSet& rules, const std::vector<Vertex>& cats,
                         const std::vector<Observation>& sigs, const std::vector<Vertex>& traj) {
    if (traj.size() != cats.size()) return false;
    DistanceTable dist(g);
    std::optional<Dist> d_prev;
    for (size_t i = 0; i < cats.size(); ++i) {
        if (traj[i] < 0 || traj[i] >= g.order()) return false;
        if (i >= 1) {
            auto legal = legal_mouse_moves(rules, g, traj[i - 1], cats[i - 1]);
            if (!std::binary_search(legal.begin(), legal.end(), traj[i])) return false;
        }
        Dist d = dist(cats[i], traj[i]);
        if (!(feedback(rules, d, d_prev) == sigs[i])) return false;
        d_prev = d;
    }
    return true;
}

struct CrossChecker {
    const Graph& g;
    RuleSet rules;
    std::vector<Vertex> cats;
    std::vector<Observation> sigs;
    long nodes = 0;

    void compare(const ConsistencySet& s, const TrajectoryOracle& o) {
        REQUIRE(s.elements() == o.elements());
        REQUIRE(s.all_successors_empty() == o.all_successors_empty());
        if (s.started() && !s.empty()) {
            auto w = s.witness();
            REQUIRE(feasible_trajectory(g, rules, cats, sigs, w));
        }
    }

    void explore(const ConsistencySet& s, const TrajectoryOracle& o, int depth) {
        ++nodes;
        compare(s, o);
        if (depth == 0) return;
        for (Vertex c = 0; c < g.order(); ++c) {
            auto sc = s.feasible_classes(c);
            auto oc = o.classes(c);
            REQUIRE(sc.size() == oc.size());
            for (size_t i = 0; i < sc.size(); ++i) {
                REQUIRE(sc[i].obs == oc[i].first);
                REQUIRE(sc[i].count == oc[i].second);
            }
            for (const auto& cls : sc) {
                ConsistencySet s2 = s;
                s2.advance(c, cls.obs);
                TrajectoryOracle o2 = o;
                o2.advance(c, cls.obs);
                cats.push_back(c);
                sigs.push_back(cls.obs);
                explore(s2, o2, depth - 1);
                cats.pop_back();
                sigs.pop_back();
            }
        }
    }
};

std::vector<RuleSet> all_rule_sets() {
    std::vector<RuleSet> out;
    for (auto c : {FeedbackChannel::Binary, FeedbackChannel::Coarse, FeedbackChannel::CoarseCmp,
                   FeedbackChannel::CmpOnly, FeedbackChannel::Exact})
        for (auto m : {MovementRule::MustMove, MovementRule::MayStayAvoidCat,
                       MovementRule::MustMoveAvoidCat, MovementRule::MayStay})
            out.push_back({c, m});
    return out;
}

std::vector<Graph> small_graph_pool() {
    std::vector<Graph> out;
    for (int n = 1; n <= 3; ++n) {
        std::vector<std::pair<Vertex, Vertex>> ps;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) ps.emplace_back(u, v);
        for (std::uint32_t mask = 0; mask < (1u << ps.size()); ++mask) {
            std::vector<std::pair<Vertex, Vertex>> edges;
            for (size_t i = 0; i < ps.size(); ++i)
                if (mask >> i & 1) edges.push_back(ps[i]);
            out.push_back(Graph(n, edges));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("two-vertex walkthrough") {
    Graph k2 = make_named("path", 2);
    RuleSet r{FeedbackChannel::CoarseCmp, MovementRule::MustMove};
    ConsistencySet s(k2, r);
    CHECK(!s.started());
    CHECK(!s.empty());
    CHECK(s.elements().empty());
    CHECK(!s.last_cat().has_value());

    auto classes = s.feasible_classes(0);
    REQUIRE(classes.size() == 2);
    CHECK(classes[0].obs.cls == DistClass::Zero);
    CHECK(classes[0].count == 1);
    CHECK(classes[1].obs.cls == DistClass::One);
    CHECK(classes[1].count == 1);

    s.advance(0, classes[1].obs);
    CHECK(s.rounds() == 1);
    CHECK(s.element_count() == 1);
    CHECK(s.elements() == std::vector<std::pair<Vertex, Dist>>{{1, 1}});
    CHECK(s.last_cat() == 0);

    // forced move back onto the cat's old square
    auto classes2 = s.feasible_classes(0);
    REQUIRE(classes2.size() == 1);
    CHECK(classes2[0].obs.cls == DistClass::Zero);
    CHECK(classes2[0].obs.cmp == DistCmp::NotGreater);
    s.advance(0, classes2[0].obs);
    CHECK(s.witness() == std::vector<Vertex>{1, 0});

    // an impossible signal empties the set
    ConsistencySet t(k2, r);
    Observation far = obs_of(r, 2);
    t.advance(0, far);
    CHECK(t.empty());
    CHECK_THROWS_AS(t.witness(), RulesError);
}

TEST_CASE("trapped mice are detected and witnessed") {
    Graph k2 = make_named("path", 2);
    RuleSet r{FeedbackChannel::Coarse, MovementRule::MustMoveAvoidCat};
    ConsistencySet s(k2, r);
    CHECK(!s.all_successors_empty());
    s.advance(0, obs_of(r, 1));
    CHECK(s.elements() == std::vector<std::pair<Vertex, Dist>>{{1, 1}});
    CHECK(s.all_successors_empty());
    CHECK(s.stuck_witness() == std::vector<Vertex>{1});

    // with MayStayAvoidCat the mouse can wait in place instead
    RuleSet r2{FeedbackChannel::Coarse, MovementRule::MayStayAvoidCat};
    ConsistencySet s2(k2, r2);
    s2.advance(0, obs_of(r2, 1));
    CHECK(!s2.all_successors_empty());
    CHECK_THROWS_AS(s2.stuck_witness(), RulesError);
}

TEST_CASE("unreachable components stay distinguishable through distances") {
    Graph two(4, {{0, 1}, {2, 3}});  // two separate edges
    RuleSet r{FeedbackChannel::Binary, MovementRule::MustMove};
    ConsistencySet s(two, r);
    Observation nz = obs_of(r, 1);
    s.advance(0, nz);
    CHECK(s.elements() == std::vector<std::pair<Vertex, Dist>>{
                              {1, 1}, {2, kInfDist}, {3, kInfDist}});
    CHECK(s.packed_key() == 0b1110);
}

TEST_CASE("packed keys separate states and respect their limits") {
    Graph p3 = make_named("path", 3);
    RuleSet r{FeedbackChannel::CoarseCmp, MovementRule::MustMove};
    ConsistencySet s(p3, r);
    CHECK(s.packed_key() == 0);
    s.advance(0, obs_of(r, 2));
    CHECK(s.elements() == std::vector<std::pair<Vertex, Dist>>{{2, 2}});
    CHECK(s.packed_key() == std::uint64_t(1) << (2 * 3 + 1));

    ConsistencySet cap(p3, r);
    cap.advance(0, obs_of(r, 0));  // capture layer holds d = 0
    CHECK_THROWS_AS(cap.packed_key(), RulesError);

    ConsistencySet big(make_named("path", 9), r);
    big.advance(0, obs_of(r, 2));
    CHECK_THROWS_AS(big.packed_key(), RulesError);  // 81 (pos, d) codes > 64 bits

    RuleSet rb{FeedbackChannel::Binary, MovementRule::MustMove};
    ConsistencySet wide(make_named("path", 9), rb);
    wide.advance(0, obs_of(rb, 1));
    CHECK(wide.packed_key() == 0b111111110);  // "not here": position bits 1..8
}

TEST_CASE("copying updates match in-place updates") {
    Graph p4 = make_named("path", 4);
    RuleSet r{FeedbackChannel::CoarseCmp, MovementRule::MustMove};
    ConsistencySet s(p4, r);
    ConsistencySet s2 = update_consistency(s, p4, r, 1, obs_of(r, 2));
    s.advance(1, obs_of(r, 2));
    CHECK(s.elements() == s2.elements());
    CHECK(s.elements() == std::vector<std::pair<Vertex, Dist>>{{3, 2}});

    CHECK_THROWS_AS(update_consistency(s, make_named("path", 5), r, 0, obs_of(r, 1)), RulesError);
    RuleSet other{FeedbackChannel::Binary, MovementRule::MustMove};
    CHECK_THROWS_AS(update_consistency(s, p4, other, 0, obs_of(other, 1)), RulesError);
}

TEST_CASE("consistency tracking equals explicit trajectory enumeration") {
    long nodes = 0;
    for (const Graph& g : small_graph_pool()) {
        for (const RuleSet& r : all_rule_sets()) {
            CrossChecker chk{g, r, {}, {}, 0};
            chk.explore(ConsistencySet(g, r), TrajectoryOracle(g, r), 3);
            nodes += chk.nodes;
        }
    }
    for (const char* name : {"path", "cycle"}) {
        Graph g = make_named(name, 4);
        for (const RuleSet& r : all_rule_sets()) {
            CrossChecker chk{g, r, {}, {}, 0};
            chk.explore(ConsistencySet(g, r), TrajectoryOracle(g, r), 3);
            nodes += chk.nodes;
        }
    }
    {
        Graph g = make_named("t_star");
        for (const RuleSet& r : {RuleSet{FeedbackChannel::CoarseCmp, MovementRule::MustMove},
                                 RuleSet{FeedbackChannel::CmpOnly, MovementRule::MustMoveAvoidCat},
                                 RuleSet{FeedbackChannel::Exact, MovementRule::MayStay},
                                 RuleSet{FeedbackChannel::Binary, MovementRule::MustMove},
                                 RuleSet{FeedbackChannel::Coarse, MovementRule::MayStayAvoidCat}}) {
            CrossChecker chk{g, r, {}, {}, 0};
            chk.explore(ConsistencySet(g, r), TrajectoryOracle(g, r), 2);
            nodes += chk.nodes;
        }
    }
    CHECK(nodes > 50000);  // the sweep actually covered ground
}
