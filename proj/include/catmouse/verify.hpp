#pragma once
// Verification workbench: exhaustive adversarial exploration of cat
// strategies, brute-force oracles for the consistency machinery, graph
// enumeration, and the named check suites behind the `verify` subcommand.

#include "catmouse/cat_strategies.hpp"
#include "catmouse/consistency.hpp"
#include "catmouse/game.hpp"
#include "catmouse/graph.hpp"
#include "catmouse/mouse_strategies.hpp"
#include "catmouse/rules.hpp"
#include "catmouse/solver.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace catmouse {

// ---------------------------------------------------------------- explorer

struct BehaviorLimits {
    int max_depth = 2000;         // rounds along a single branch
    long max_nodes = 20'000'000;  // distinct (strategy, knowledge) nodes
    bool allow_stall = false;     // is the mouse running out of moves a win?
};

// Invoked after every explored cat move with the strategy (already moved),
// the knowledge set (already advanced by the branch's observation), and the
// vertex just played. Throwing marks the branch as failed.
using StepCheck = std::function<void(const CatStrategy&, const ConsistencySet&, Vertex)>;

// Result of running a strategy against every feedback sequence any mouse
// behavior could produce. Branches reaching the same (strategy, knowledge)
// node are merged, so the walk is over a DAG; maxima below are over all
// root-to-leaf paths, taken independently per field.
struct BehaviorCheck {
    bool ok = true;
    std::string reason;             // first failure
    std::vector<Observation> path;  // observation prefix that reached it
    long nodes = 0;
    long leaves = 0;
    long stall_leaves = 0;
    int max_rounds = 0;                        // longest run until capture/stall
    int max_t1_slack = 0;                      // max of t1 - (t2 + t3 + t4)
    int max_t1 = 0, max_t2 = 0, max_t3 = 0, max_t4 = 0;
};

BehaviorCheck explore_behaviors(const Graph& g, const RuleSet& rules, const CatStrategy& proto,
                                const BehaviorLimits& limits = {}, const StepCheck& check = {});

// ----------------------------------------------------- enumeration helpers

// Every labeled graph on n vertices: 2^(n(n-1)/2) of them, keep n small.
void for_each_graph(int n, const std::function<void(const Graph&)>& fn);
// The connected ones that contain a cycle.
void for_each_connected_cyclic(int n, const std::function<void(const Graph&)>& fn);

// ------------------------------------------------------- specific oracles

// Entry i is the set of vertices a mouse could occupy after round i+1 of the
// fixed cat script without ever having been caught.
std::vector<std::vector<Vertex>> script_survivors(const Graph& g, const RuleSet& rules,
                                                  const std::vector<Vertex>& script);

// Replays every observation prefix of length <= depth, maintaining the set of
// surviving mouse trajectories by brute force, and compares positions, class
// lists and class counts against the incremental knowledge set. Returns an
// empty string on success, a diagnostic for the first mismatch.
std::string check_consistency_oracle(const Graph& g, const RuleSet& rules, int depth);

// The per-component tree strategy aimed at a spanning forest of an arbitrary
// graph, restarted from scratch whenever it runs out of certified places.
// The baseline a cycle-walking mouse must beat.
class RestartingForestCat : public CatStrategy {
public:
    RestartingForestCat(const Graph& g, RuleSet rules)
        : forest_(spanning_forest(g)), rules_(rules), cat_(forest_, rules_) {}
    Vertex next(const std::optional<Observation>& obs) override;
    std::unique_ptr<CatStrategy> clone() const override {
        return std::make_unique<RestartingForestCat>(*this);
    }
    int restarts() const { return restarts_; }

private:
    Graph forest_;
    RuleSet rules_;
    ForestCat cat_;
    int restarts_ = 0;
};

// ----------------------------------------------------------- check suites

struct SuiteReport {
    std::string suite;
    int n = 0;       // size parameter the suite ran with
    long instances = 0;
    long failures = 0;
    std::vector<std::string> failure_lines;                  // failure instance=... reason=...
    std::vector<std::pair<std::string, std::string>> stats;  // printed as stat key=value
};

const std::vector<std::string>& suite_names();

// Runs one suite; n_max <= 0 picks the suite's default size. Progress and
// timing chatter goes to *log when given (meant for stderr).
SuiteReport run_suite(const std::string& name, int n_max = 0, std::ostream* log = nullptr);

// suite=<name> n=<nmax> instances=<count> failures=<count>
std::string format_suite_line(const SuiteReport& rep);
// The suite line, then failure lines, then stat lines.
void write_suite_report(std::ostream& out, const SuiteReport& rep);

// ------------------------------------------------------------- graph text

// "path:5", "cycle:4", "star:3", "spider:2", "t_star" -> the named instance;
// nullopt when the string does not look like one. Graph files go through
// parse_graph instead.
std::optional<Graph> graph_from_spec(const std::string& spec);

}  // namespace catmouse
