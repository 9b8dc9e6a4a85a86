#pragma once
// Cat strategies. The centerpiece is the certified-region tree strategy: the
// cat keeps a reference vertex r and two certified-mouse-free sets X (whole
// child subtrees of r plus everything behind r) and Y (whole child subtrees of
// the distinguished child w1), and grows them through short probe "transitions"
// of four types until the mouse's possible region collapses. A forest wrapper
// runs it per component. The scripted spider cats and the solver-backed cat
// round out the roster.

#include "catmouse/game.hpp"
#include "catmouse/graph.hpp"
#include "catmouse/solver.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace catmouse {

struct StrategyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TransitionPhase {
    AtReference,       // just played r; next observation classifies from r
    RepeatAfterOne,    // replayed r after a distance-1 reading
    ProbeX1,           // playing x1, watching the comparison bit
    ReturnAfterGreater // back on r after the probe saw the distance grow
};

// Decision state of the certified-region strategy on one tree component.
struct TransitionState {
    RootedTree tree;
    Vertex r = -1;
    std::vector<char> x, y;  // certified-free sets, indicator over vertex ids
    Vertex y_owner = -1;     // child of r whose subtrees make up Y; -1 iff Y empty
    TransitionPhase phase = TransitionPhase::AtReference;
    // current transition's cast (valid in ProbeX1 / ReturnAfterGreater)
    Vertex w1 = -1, x1 = -1;
    std::vector<Vertex> vs, ws;  // leaf / non-leaf children of r outside X
    int t1 = 0, t2 = 0, t3 = 0, t4 = 0;
    int rounds_used = 0;
    int transition_start = 0;  // round the in-flight transition began

    int x_size() const;
    int y_size() const;
};

// A fresh state rooted at `root`'s component, which must be acyclic.
TransitionState make_transition_state(const Graph& g, Vertex root);

struct TransitionStep {
    enum class Kind { Play, Capture, ComponentExhausted };
    Kind kind = Kind::Play;
    Vertex play = -1;
    std::vector<TransitionEvent> events;
};

// One decision of the certified-region strategy. obs must be absent exactly
// on the first call and is expected from the coarse-compare channel under
// must-move rules. Capture reports a Zero observation (no move); Component-
// Exhausted means X and Y cover every place the mouse could be, so it is
// provably elsewhere. Throws StrategyError on observations the strategy's
// invariants rule out.
TransitionStep transition_cat_next(TransitionState& state, const std::optional<Observation>& obs);

// Engine adapter for a single tree (or one component of a forest, when the
// mouse is known to live there). Exhausting the component is an error here.
class TransitionCat : public CatStrategy {
public:
    // root -1 means the smallest vertex of g's first component
    TransitionCat(const Graph& g, RuleSet rules, Vertex root = -1);
    Vertex next(const std::optional<Observation>& obs) override;
    std::vector<TransitionEvent> drain_events() override;
    std::optional<std::string> memo_key() const override;
    std::unique_ptr<CatStrategy> clone() const override { return std::make_unique<TransitionCat>(*this); }

    const TransitionState& state() const { return st_; }

private:
    TransitionState st_;
    std::vector<TransitionEvent> events_;
};

// Runs the certified-region strategy component by component (ascending
// smallest vertex), giving each tree of order n at most 12n^2-16n+5 rounds
// before moving on; an exhausted component is skipped early. Throws
// StrategyError once every component is exhausted without a capture.
class ForestCat : public CatStrategy {
public:
    ForestCat(const Graph& g, RuleSet rules);
    Vertex next(const std::optional<Observation>& obs) override;
    std::vector<TransitionEvent> drain_events() override;
    std::optional<std::string> memo_key() const override;
    std::unique_ptr<CatStrategy> clone() const override { return std::make_unique<ForestCat>(*this); }

    int component_index() const { return static_cast<int>(ci_); }
    const TransitionState& state() const { return *st_; }

private:
    void start_component();

    Graph g_;
    std::vector<std::vector<Vertex>> comps_;
    std::size_t ci_ = 0;
    std::optional<TransitionState> st_;
    long budget_ = 0;
    int global_rounds_ = 0;
    int round_offset_ = 0;  // global rounds before the current component started
    std::vector<TransitionEvent> events_;
};

long transition_round_bound(int n);  // 12n^2 - 16n + 5

// The weakened-feedback spider cat: probes the center until the channel
// certifies the mouse is at distance >= 2, then tests one leg's middle
// vertex; a near reading pins the mouse next to that middle, and the
// finishing script center, inner, middle, tip sweeps the leg. Needs the
// canonical three-legs-of-three spider and must-move rules.
class TstarWeakenedCat : public CatStrategy {
public:
    TstarWeakenedCat(const Graph& g, FeedbackChannel channel);
    Vertex next(const std::optional<Observation>& obs) override;
    std::optional<std::string> memo_key() const override;
    std::unique_ptr<CatStrategy> clone() const override { return std::make_unique<TstarWeakenedCat>(*this); }

private:
    enum class Phase { Certify, Excursion, Endgame };
    bool certified(const Observation& obs) const;
    bool identified(const Observation& obs) const;

    FeedbackChannel channel_;
    Phase phase_ = Phase::Certify;
    int leg_ = 0;        // leg being probed / finished
    bool gone_[3] = {false, false, false};
    int endgame_i_ = 0;
    int probes_ = 0;     // safety valve
};

// The fixed seven-move demonstration script center, middle1, center,
// middle2, center, middle3, center on the three-legs-of-three spider.
// Ignores feedback; an eighth request is an error.
class SeagerDemoCat : public CatStrategy {
public:
    explicit SeagerDemoCat(const Graph& g);
    Vertex next(const std::optional<Observation>& obs) override;
    std::optional<std::string> memo_key() const override;
    std::unique_ptr<CatStrategy> clone() const override { return std::make_unique<SeagerDemoCat>(*this); }

private:
    std::size_t i_ = 0;
};

// Plays the solver's optimal move every round. Construction fails unless the
// solver proves the cat wins.
class SolverCat : public CatStrategy {
public:
    SolverCat(const Graph& g, RuleSet rules, SolveLimits limits = {});
    Vertex next(const std::optional<Observation>& obs) override;
    std::unique_ptr<CatStrategy> clone() const override { return std::make_unique<SolverCat>(*this); }

    const Solver& solver() const { return solver_; }

private:
    Solver solver_;
    InfoState s_;
    Vertex last_ = -1;
};

// Uniform random probes; fuzzing and survival baselines only.
class RandomCat : public CatStrategy {
public:
    RandomCat(int order, std::uint64_t seed) : n_(order), rng_(seed) {}
    Vertex next(const std::optional<Observation>&) override {
        return std::uniform_int_distribution<int>(0, n_ - 1)(rng_);
    }
    std::unique_ptr<CatStrategy> clone() const override { return std::make_unique<RandomCat>(*this); }

private:
    int n_;
    std::mt19937_64 rng_;
};

}  // namespace catmouse
