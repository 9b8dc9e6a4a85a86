// Command-line workbench: verification suites, solving, simulation, tree
// generation, benchmarking, and interactive terminal play.
#include "CLI11.hpp"

#include "catmouse/verify.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace catmouse;

namespace {

// Large enough for the ten-vertex spider on every channel: comparing channels
// pack (position, distance) pairs and top out at n = 11 either way.
const SolveLimits kCliLimits{11, 16, 2'000'000};

struct QuitSession {};  // EOF on an interactive prompt

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Graph load_graph(const std::string& flag) {
    if (auto g = graph_from_spec(flag)) return *g;
    std::ifstream in(flag);
    if (!in) throw CliError("--graph: neither a named instance nor a readable file: " + flag);
    return parse_graph(in);
}

RuleSet load_rules(const std::string& channel, const std::string& movement) {
    auto ch = channel_from_token(channel);
    if (!ch) throw CliError("--channel: unknown channel: " + channel);
    auto mv = movement_from_token(movement);
    if (!mv) throw CliError("--movement: unknown movement rule: " + movement);
    return RuleSet{*ch, *mv};
}

std::unique_ptr<CatStrategy> make_cat(const std::string& name, const Graph& g,
                                      const RuleSet& rules) {
    if (name == "transition") return std::make_unique<TransitionCat>(g, rules);
    if (name == "forest") return std::make_unique<ForestCat>(g, rules);
    if (name == "tstar-script") return std::make_unique<TstarWeakenedCat>(g, rules.channel);
    if (name == "seager-demo") return std::make_unique<SeagerDemoCat>(g);
    if (name == "solver") return std::make_unique<SolverCat>(g, rules, kCliLimits);
    throw CliError("--cat: unknown strategy: " + name);
}

std::unique_ptr<MouseAgent> make_mouse(const std::string& name, const Graph& g,
                                       const RuleSet& rules) {
    if (name == "phantom-greedy") return std::make_unique<PhantomMouse>(g, rules, PhantomMode::Greedy);
    if (name == "phantom-exact")
        return std::make_unique<PhantomMouse>(g, rules, PhantomMode::Exact, kCliLimits);
    if (name == "cycle") {
        auto cyc = find_cycle(g);
        if (cyc.empty()) throw CliError("--mouse cycle: the graph has no cycle");
        return std::make_unique<CycleMouse>(g, cyc);
    }
    if (name == "path") return std::make_unique<PathMouse>(g);
    if (name.rfind("random", 0) == 0) {
        std::uint64_t seed = 0;
        if (name.size() > 6) {
            if (name[6] != ':') throw CliError("--mouse: unknown strategy: " + name);
            try {
                seed = std::stoull(name.substr(7));
            } catch (...) {
                throw CliError("--mouse random: bad seed: " + name);
            }
        }
        return std::make_unique<RandomMouse>(g, rules, seed);
    }
    throw CliError("--mouse: unknown strategy: " + name);
}

// stdout unless --out was given
struct OutputSink {
    std::ofstream file;
    std::ostream* out = &std::cout;
    explicit OutputSink(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw CliError("--out: cannot open " + path);
        out = &file;
    }
    std::ostream& stream() { return *out; }
};

// ------------------------------------------------------------ interactive

void show_board(std::ostream& out, const Graph& g, const RuleSet& rules) {
    out << "graph: " << g.order() << " vertices;";
    for (auto [u, v] : g.edges()) out << ' ' << u << '-' << v;
    out << "\nrules: channel=" << channel_token(rules.channel)
        << " movement=" << movement_token(rules.movement) << "\n";
}

std::optional<Vertex> prompt_vertex(const std::string& prompt) {
    std::cout << prompt << std::flush;
    std::string line;
    while (std::getline(std::cin, line)) {
        std::istringstream ls(line);
        Vertex v;
        std::string rest;
        if (ls >> v && !(ls >> rest)) return v;
        std::cout << "please enter one vertex number\n" << prompt << std::flush;
    }
    return std::nullopt;  // EOF
}

std::string join_vertices(const std::vector<Vertex>& vs) {
    std::string s;
    for (Vertex v : vs) {
        if (!s.empty()) s += ' ';
        s += std::to_string(v);
    }
    return s;
}

class HumanMouse : public MouseAgent {
public:
    HumanMouse(const Graph& g, RuleSet rules) : g_(g), rules_(rules) {}

    MouseReply respond(Vertex cat, int round) override {
        std::vector<Vertex> legal;
        if (round == 1) {
            for (Vertex v = 0; v < g_.order(); ++v) legal.push_back(v);
        } else {
            legal = legal_mouse_moves(rules_, g_, pos_, last_cat_);
        }
        std::cout << "round " << round << ": the cat is at " << cat << "\n";
        std::string prompt = (round == 1 ? "place the mouse (" : "your move (") +
                             join_vertices(legal) + "): ";
        for (;;) {
            auto v = prompt_vertex(prompt);
            if (!v) throw QuitSession{};
            if (std::find(legal.begin(), legal.end(), *v) != legal.end()) {
                pos_ = *v;
                last_cat_ = cat;
                return MouseReply::at(*v);
            }
            std::cout << "illegal; legal moves: " << join_vertices(legal) << "\n";
        }
    }

private:
    const Graph& g_;
    RuleSet rules_;
    Vertex pos_ = -1;
    Vertex last_cat_ = -1;
};

class HumanCat : public CatStrategy {
public:
    explicit HumanCat(const Graph& g) : n_(g.order()) {}

    Vertex next(const std::optional<Observation>& obs) override {
        if (obs)
            std::cout << "feedback: class=" << dist_class_token(*obs) << " cmp=" << cmp_token(*obs)
                      << "\n";
        else
            std::cout << "no feedback yet: pick the opening vertex\n";
        for (;;) {
            auto v = prompt_vertex("cat's move (0.." + std::to_string(n_ - 1) + "): ");
            if (!v) throw QuitSession{};
            if (*v >= 0 && *v < n_) return *v;
            std::cout << "that vertex is not on the graph\n";
        }
    }

private:
    int n_;
};

void announce(std::ostream& out, const GameResult& res) {
    switch (res.outcome) {
        case Outcome::CatWins:
            out << "capture in round " << res.rounds_played << "\n";
            break;
        case Outcome::MouseSurvivedHorizon:
            out << "the mouse survived all " << res.rounds_played << " rounds\n";
            break;
        case Outcome::MouseNoLegalMove:
            out << "the mouse has no legal move in round " << res.rounds_played << "\n";
            break;
    }
    if (res.witness) out << "the mouse could have been at: " << join_vertices(*res.witness) << "\n";
}

// -------------------------------------------------------------- commands

int cmd_verify(const std::string& suite, int n_max, const std::string& out_path) {
    OutputSink sink(out_path);
    std::vector<std::string> todo;
    if (suite.empty())
        todo = suite_names();
    else
        todo.push_back(suite);
    long failures = 0;
    for (const auto& name : todo) {
        SuiteReport rep = run_suite(name, n_max, &std::cerr);
        write_suite_report(sink.stream(), rep);
        failures += rep.failures;
    }
    return failures == 0 ? 0 : 1;
}

int cmd_solve(const std::string& graph_flag, const std::string& channel,
              const std::string& movement, const std::string& out_path) {
    OutputSink sink(out_path);
    Graph g = load_graph(graph_flag);
    std::vector<FeedbackChannel> channels;
    if (channel.empty())
        channels = {FeedbackChannel::Binary, FeedbackChannel::Coarse, FeedbackChannel::CoarseCmp,
                    FeedbackChannel::CmpOnly, FeedbackChannel::Exact};
    else if (auto ch = channel_from_token(channel))
        channels = {*ch};
    else
        throw CliError("--channel: unknown channel: " + channel);
    std::vector<MovementRule> movements;
    if (movement.empty())
        movements = {MovementRule::MustMove, MovementRule::MayStayAvoidCat,
                     MovementRule::MustMoveAvoidCat, MovementRule::MayStay};
    else if (auto mv = movement_from_token(movement))
        movements = {*mv};
    else
        throw CliError("--movement: unknown movement rule: " + movement);
    std::vector<RuleSet> rule_sets;
    for (auto ch : channels)
        for (auto mv : movements) rule_sets.push_back(RuleSet{ch, mv});
    for (const auto& row : variant_table({{graph_flag, g}}, rule_sets, kCliLimits))
        sink.stream() << format_solve_line(row) << '\n';
    return 0;
}

int cmd_simulate(const std::string& graph_flag, const RuleSet& rules, const std::string& cat_name,
                 const std::string& mouse_name, int max_rounds, const std::string& out_path) {
    if (cat_name == "human" || mouse_name == "human")
        throw CliError("simulate runs engine vs engine; use the play command for a human side");
    OutputSink sink(out_path);
    Graph g = load_graph(graph_flag);
    auto cat = make_cat(cat_name, g, rules);
    auto mouse = make_mouse(mouse_name, g, rules);
    GameResult res = play_game(g, rules, *cat, *mouse, max_rounds);
    write_trace(sink.stream(), res);
    sink.stream() << "outcome=" << outcome_token(res.outcome) << " rounds=" << res.rounds_played
                  << '\n';
    return 0;
}

int cmd_gen(int n, const std::string& out_path) {
    OutputSink sink(out_path);
    LabeledTreeStream stream(n);
    long i = 0;
    while (auto g = stream.next()) {
        sink.stream() << "# tree " << i++ << '\n';
        write_graph(sink.stream(), *g);
    }
    std::cerr << "generated " << i << " trees on " << n << " vertices\n";
    return 0;
}

int cmd_bench(int max_order, const std::string& out_path) {
    OutputSink sink(out_path);
    const RuleSet rules{FeedbackChannel::CoarseCmp, MovementRule::MustMove};
    struct Family {
        const char* name;
        int order_per_param;  // vertices as a function of the parameter
        int offset;
    };
    // path:k has k vertices, star:k has k+1, spider:k has 3k+1
    const Family families[] = {{"path", 1, 0}, {"star", 1, 1}, {"spider", 3, 1}};
    for (const auto& fam : families) {
        for (int k = 1;; ++k) {
            int order = fam.order_per_param * k + fam.offset;
            if (order > max_order) break;
            Graph g = make_named(fam.name, k);
            TransitionCat cat(g, rules);
            PhantomMouse mouse(g, rules, PhantomMode::Greedy);
            GameResult res = play_game(g, rules, cat, mouse,
                                       static_cast<int>(transition_round_bound(order)) + 5);
            sink.stream() << "bench family=" << fam.name << " param=" << k << " order=" << order
                          << " rounds=" << res.rounds_played
                          << " bound=" << transition_round_bound(order) << '\n';
        }
    }
    return 0;
}

int cmd_play(const std::string& graph_flag, const RuleSet& rules, const std::string& cat_name,
             const std::string& mouse_name, int max_rounds) {
    Graph g = load_graph(graph_flag);
    const bool human_cat = cat_name == "human";
    const bool human_mouse = mouse_name == "human";
    if (human_cat == human_mouse)
        throw CliError("play needs exactly one human side (--cat human or --mouse human)");
    std::unique_ptr<CatStrategy> cat =
        human_cat ? std::make_unique<HumanCat>(g) : make_cat(cat_name, g, rules);
    std::unique_ptr<MouseAgent> mouse =
        human_mouse ? std::make_unique<HumanMouse>(g, rules) : make_mouse(mouse_name, g, rules);
    if (human_mouse) show_board(std::cout, g, rules);  // the cat plays blind
    try {
        GameResult res = play_game(
            g, rules, *cat, *mouse, max_rounds, [&](const RoundRecord& rec) {
                if (human_mouse)
                    std::cout << "round " << rec.round << ": cat=" << rec.cat << " you are at "
                              << (rec.mouse ? std::to_string(*rec.mouse) : "?") << "\n";
            });
        announce(std::cout, res);
    } catch (const QuitSession&) {
        std::cout << "\nsession closed\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cat-and-mouse pursuit workbench"};
    app.require_subcommand(1);

    std::string graph_flag, channel = "coarse-cmp", movement = "must-move";
    std::string cat_name = "transition", mouse_name = "phantom-greedy";
    std::string solve_channel, solve_movement;  // empty = every one
    std::string suite, out_path;
    int max_rounds = 1000, verify_n = 0, gen_n = 0, bench_n = 16;

    auto* verify = app.add_subcommand("verify", "run a named check suite (or all of them)");
    verify->add_option("suite", suite, "one of: tree-bound cycles original-game tstar-weakened "
                                       "seager-demo accounting consistency-oracle");
    verify->add_option("--n", verify_n, "size cap override (0 = suite default)");
    verify->add_option("--out", out_path, "write the report here instead of stdout");

    auto* solve = app.add_subcommand("solve", "exact game value for an instance");
    solve->add_option("--graph", graph_flag, "named instance (path:5, t_star, ...) or file")
        ->required();
    solve->add_option("--channel", solve_channel, "restrict to one feedback channel");
    solve->add_option("--movement", solve_movement, "restrict to one movement rule");
    solve->add_option("--out", out_path, "write the table here instead of stdout");

    auto* simulate = app.add_subcommand("simulate", "run one engine-vs-engine game");
    simulate->add_option("--graph", graph_flag)->required();
    simulate->add_option("--channel", channel);
    simulate->add_option("--movement", movement);
    simulate->add_option("--cat", cat_name, "transition|forest|tstar-script|seager-demo|solver");
    simulate->add_option("--mouse", mouse_name,
                         "phantom-greedy|phantom-exact|cycle|path|random:<seed>");
    simulate->add_option("--max-rounds", max_rounds);
    simulate->add_option("--out", out_path, "write the trace here instead of stdout");

    auto* gen = app.add_subcommand("gen", "stream every labeled tree on n vertices");
    gen->add_option("--n", gen_n, "number of vertices")->required();
    gen->add_option("--out", out_path);

    auto* bench = app.add_subcommand("bench", "capture rounds vs size for the transition cat");
    bench->add_option("--n", bench_n, "largest graph order to include");
    bench->add_option("--out", out_path);

    auto* play = app.add_subcommand("play", "interactive game with a human side");
    play->add_option("--graph", graph_flag)->required();
    play->add_option("--channel", channel);
    play->add_option("--movement", movement);
    play->add_option("--cat", cat_name, "human or an engine strategy");
    play->add_option("--mouse", mouse_name, "human or an engine strategy");
    play->add_option("--max-rounds", max_rounds);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(suite, verify_n, out_path);
        if (solve->parsed()) return cmd_solve(graph_flag, solve_channel, solve_movement, out_path);
        if (simulate->parsed())
            return cmd_simulate(graph_flag, load_rules(channel, movement), cat_name, mouse_name,
                                max_rounds, out_path);
        if (gen->parsed()) return cmd_gen(gen_n, out_path);
        if (bench->parsed()) return cmd_bench(bench_n, out_path);
        if (play->parsed())
            return cmd_play(graph_flag, load_rules(channel, movement), cat_name, mouse_name,
                            max_rounds);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
