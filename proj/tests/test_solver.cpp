#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "catmouse/consistency.hpp"
#include "catmouse/solver.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

using namespace catmouse;

namespace {

Graph k2() { return make_named("path", 2); }

Observation obs(DistClass cls) { return {cls, -1, std::nullopt}; }

std::vector<RuleSet> some_rule_sets() {
    return {
        {FeedbackChannel::CoarseCmp, MovementRule::MustMove},
        {FeedbackChannel::Binary, MovementRule::MustMove},
        {FeedbackChannel::Coarse, MovementRule::MayStayAvoidCat},
        {FeedbackChannel::CmpOnly, MovementRule::MustMoveAvoidCat},
        {FeedbackChannel::Exact, MovementRule::MayStay},
    };
}

// Worst-case adversary against an optimal cat: pick the feasible non-capture
// class with the largest level (unassigned = immortal, should never appear
// when the cat plays optimally from a winning state).
int play_optimally(const Solver& solver) {
    InfoState s = solver.initial_state();
    for (int round = 1;; ++round) {
        REQUIRE(round <= 10000);
        Vertex v = solver.optimal_move(s);
        auto cs = solver.classes(s, v);
        const Solver::ClassSucc* worst = nullptr;
        int worst_level = -1;
        for (const auto& c : cs) {
            if (c.capture) continue;
            auto lev = solver.level(c.next);
            REQUIRE(lev.has_value());  // optimal move never exposes a losing class
            if (*lev > worst_level) {
                worst_level = *lev;
                worst = &c;
            }
        }
        if (!worst) return round;  // every class was a capture
        s = worst->next;
    }
}

}  // namespace

TEST_CASE("single vertex and single edge") {
    auto r1 = solve(Graph(1, {}), {});
    CHECK(r1.cat_wins);
    CHECK(r1.optimal_rounds == 1);
    CHECK(r1.states_explored == 1);

    Solver s2(k2(), {});
    CHECK(s2.result().cat_wins);
    CHECK(s2.result().optimal_rounds == 2);
    CHECK(s2.result().states_explored == 3);
    CHECK(s2.result().stall_wins == 0);
    CHECK(s2.optimal_move(s2.initial_state()) == 0);  // symmetric; smallest id wins

    // after playing 0 and hearing "one", only (1, d=1) remains; 0 recaptures
    InfoState after = s2.advance(s2.initial_state(), 0, obs(DistClass::One));
    auto dec = s2.decode(after);
    REQUIRE(dec.size() == 1);
    CHECK(dec[0] == std::pair<Vertex, Dist>{1, 1});
    CHECK(s2.level(after) == 1);
    CHECK(s2.optimal_move(after) == 0);
}

TEST_CASE("hand-checked path optima") {
    // P3, exact channel: play the center; the survivor class {0,2} funnels to
    // the center next round.
    auto r3 = solve(make_named("path", 3), {FeedbackChannel::Exact, MovementRule::MustMove});
    CHECK(r3.cat_wins);
    CHECK(r3.optimal_rounds == 2);

    auto r3cc = solve(make_named("path", 3), {});
    CHECK(r3cc.cat_wins);
    CHECK(r3cc.optimal_rounds == 2);
}

TEST_CASE("known winners and losers on small instances") {
    // cycles evade under the coarse-compare channel
    for (int n = 3; n <= 6; ++n) {
        auto res = solve(make_named("cycle", n), {});
        CHECK_FALSE(res.cat_wins);
        CHECK(res.optimal_rounds == -1);
    }
    // trees are caught under the coarse-compare channel
    for (int n = 1; n <= 5; ++n) {
        LabeledTreeStream stream(n);
        while (auto g = stream.next()) {
            auto res = solve(*g, {});
            CHECK(res.cat_wins);
            CHECK(res.optimal_rounds >= 1);
        }
    }
    // the three-legs-of-three spider beats the capture-bit-only channel
    auto tstar = solve(make_named("t_star"), {FeedbackChannel::Binary, MovementRule::MustMove});
    CHECK_FALSE(tstar.cat_wins);

    // ...but falls to the channels with more information
    SolveLimits wide{11, 10, 500000};
    auto coarse =
        solve(make_named("t_star"), {FeedbackChannel::Coarse, MovementRule::MustMove}, wide);
    CHECK(coarse.cat_wins);
    auto cmponly =
        solve(make_named("t_star"), {FeedbackChannel::CmpOnly, MovementRule::MustMove}, wide);
    CHECK(cmponly.cat_wins);
}

TEST_CASE("stalled states count as wins under avoid-cat movement") {
    // star center: every leaf mouse must move but may not cross the cat
    Graph star = make_named("star", 3);
    RuleSet rules{FeedbackChannel::Binary, MovementRule::MustMoveAvoidCat};
    Solver solver(star, rules);
    CHECK(solver.result().cat_wins);
    CHECK(solver.result().optimal_rounds == 2);
    CHECK(solver.result().stall_wins >= 1);

    InfoState leaves = solver.advance(solver.initial_state(), 0, obs(DistClass::NonZero));
    CHECK(solver.stalled(leaves));
    CHECK(solver.level(leaves) == 1);
    CHECK(solver.optimal_move(leaves) == 0);
    CHECK_FALSE(solver.stalled(solver.initial_state()));
}

TEST_CASE("advance agrees with the consistency tracker") {
    std::vector<Graph> pool = {k2(), make_named("path", 4), make_named("path", 6),
                               make_named("cycle", 4), make_named("cycle", 5),
                               make_named("star", 4),  make_named("spider", 2)};
    std::mt19937_64 rng(20260814);
    for (const Graph& g : pool) {
        for (const RuleSet& rules : some_rule_sets()) {
            Solver solver(g, rules);
            for (int rep = 0; rep < 20; ++rep) {
                InfoState s = solver.initial_state();
                ConsistencySet cons(g, rules);
                for (int round = 1; round <= 8; ++round) {
                    Vertex c = std::uniform_int_distribution<int>(0, g.order() - 1)(rng);
                    auto cs = solver.classes(s, c);
                    auto fc = cons.feasible_classes(c);
                    REQUIRE(cs.size() == fc.size());
                    std::vector<const Solver::ClassSucc*> live;
                    for (size_t i = 0; i < cs.size(); ++i) {
                        CHECK(cs[i].obs == fc[i].obs);  // same classes, same order
                        if (!cs[i].capture) live.push_back(&cs[i]);
                    }
                    if (live.empty()) break;
                    size_t pick =
                        std::uniform_int_distribution<size_t>(0, live.size() - 1)(rng);
                    const Observation& obs = live[pick]->obs;
                    s = solver.advance(s, c, obs);
                    cons.advance(c, obs);
                    REQUIRE_FALSE(cons.empty());
                    CHECK(static_cast<std::uint64_t>(s.bits) == cons.packed_key());
                    CHECK(s.bits == live[pick]->next.bits);
                    if (channel_has_cmp(rules.channel)) {
                        CHECK(solver.decode(s) == cons.elements());
                    }
                }
            }
        }
    }
}

TEST_CASE("advance rejects captures and infeasible signals") {
    Solver solver(k2(), {});
    CHECK_THROWS_AS(solver.advance(solver.initial_state(), 0, obs(DistClass::Zero)), SolverError);
    CHECK_THROWS_AS(solver.advance(solver.initial_state(), 0, obs(DistClass::TwoPlus)), SolverError);
    CHECK_THROWS_AS(solver.advance(solver.initial_state(), 2, obs(DistClass::One)), SolverError);
    CHECK_THROWS_AS(solver.level(InfoState{1, 5, false}), SolverError);
}

TEST_CASE("size caps fail loudly and are adjustable") {
    auto p9 = make_named("path", 9);
    CHECK_THROWS_AS(solve(p9, {}), SolverError);  // 9 > 8 for a comparing channel
    CHECK_NOTHROW(solve(p9, {FeedbackChannel::Exact, MovementRule::MustMove}));
    auto p11 = make_named("path", 11);
    CHECK_THROWS_AS(solve(p11, {FeedbackChannel::Binary, MovementRule::MustMove}), SolverError);
    CHECK_NOTHROW(solve(p9, {}, SolveLimits{9, 10, 500000}));
}

TEST_CASE("state cap aborts instead of truncating") {
    try {
        solve(make_named("path", 6), {}, SolveLimits{8, 10, 4});
        FAIL("expected a state-cap error");
    } catch (const SolverError& e) {
        CHECK(std::string(e.what()).find("state cap") != std::string::npos);
    }
}

TEST_CASE("optimal play ends in exactly optimal_rounds") {
    std::vector<Graph> pool = {Graph(1, {}), k2(), make_named("path", 4), make_named("path", 5),
                               make_named("star", 3), make_named("spider", 2)};
    std::vector<RuleSet> winners = {
        {FeedbackChannel::CoarseCmp, MovementRule::MustMove},
        {FeedbackChannel::Exact, MovementRule::MustMove},
        {FeedbackChannel::Binary, MovementRule::MustMove},
    };
    for (const Graph& g : pool) {
        for (const RuleSet& rules : winners) {
            Solver solver(g, rules);
            REQUIRE(solver.result().cat_wins);
            CHECK(play_optimally(solver) == solver.result().optimal_rounds);
        }
    }
}

TEST_CASE("losing states survive any horizon") {
    Solver solver(make_named("cycle", 4), {});
    REQUIRE_FALSE(solver.result().cat_wins);
    std::mt19937_64 rng(7);
    InfoState s = solver.initial_state();
    long horizon = 3 * solver.result().states_explored;
    for (long round = 0; round < horizon; ++round) {
        Vertex c = std::uniform_int_distribution<int>(0, 3)(rng);
        auto cs = solver.classes(s, c);
        const Solver::ClassSucc* escape = nullptr;
        for (const auto& cl : cs) {
            if (cl.capture) continue;
            if (!solver.level(cl.next).has_value()) {
                escape = &cl;
                break;
            }
        }
        REQUIRE(escape != nullptr);  // a losing-for-the-cat class always exists
        s = escape->next;
    }
}

TEST_CASE("variant table rows and report lines") {
    std::vector<std::pair<std::string, Graph>> instances = {
        {"k2", k2()},
        {"p9", make_named("path", 9)},
    };
    std::vector<RuleSet> rules = {
        {FeedbackChannel::CoarseCmp, MovementRule::MustMove},
        {FeedbackChannel::Binary, MovementRule::MustMove},
    };
    auto rows = variant_table(instances, rules);
    REQUIRE(rows.size() == 4);
    CHECK(format_solve_line(rows[0]) ==
          "instance=k2 channel=coarse-cmp movement=must-move outcome=cat rounds=2 states=3");
    CHECK(format_solve_line(rows[1]) ==
          "instance=k2 channel=binary movement=must-move outcome=cat rounds=2 states=3");
    // p9 exceeds the comparing-channel cap: recorded as an error row
    CHECK(rows[2].error.find("too large") != std::string::npos);
    CHECK(format_solve_line(rows[2]) ==
          "instance=p9 channel=coarse-cmp movement=must-move outcome=error rounds=- states=-");
    CHECK(rows[3].result.has_value());
    CHECK(rows[3].result->cat_wins);

    VariantRow mouse_row{"c4", {}, solve(make_named("cycle", 4), {}), ""};
    auto line = format_solve_line(mouse_row);
    CHECK(line.find("outcome=mouse rounds=- states=") != std::string::npos);
}

TEST_CASE("exact-channel paths meet the halfway survival bound") {
    int prev = 0;
    for (int n = 2; n <= 9; ++n) {
        auto res = solve(make_named("path", n), {FeedbackChannel::Exact, MovementRule::MustMove});
        REQUIRE(res.cat_wins);
        CHECK(res.optimal_rounds >= n / 2 - 1);
        CHECK(res.optimal_rounds >= prev);  // longer paths never get easier
        prev = res.optimal_rounds;
    }
}
