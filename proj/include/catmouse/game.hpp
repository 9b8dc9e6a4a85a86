#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catmouse/consistency.hpp"
#include "catmouse/rules.hpp"

namespace catmouse {

struct GameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RoundRecord {
    int round = 0;
    Vertex cat = -1;
    std::optional<Vertex> mouse;  // absent in phantom games
    Observation obs;
    bool operator==(const RoundRecord&) const = default;
};

enum class Outcome { CatWins, MouseSurvivedHorizon, MouseNoLegalMove };
std::string outcome_token(Outcome o);

// Progress markers emitted by the certified-region tree strategy; see
// cat_strategies.hpp for what the four types mean.
struct TransitionEvent {
    int type = 0;        // 1..4
    int start_round = 0; // round whose reference observation opened the transition
    int j = 0;           // rounds the transition spans (1 or 2)
    int x_before = 0, x_after = 0;
    int y_before = 0, y_after = 0;
};

class CatStrategy {
public:
    virtual ~CatStrategy() = default;
    // obs is the feedback for the previous round; absent in round 1.
    virtual Vertex next(const std::optional<Observation>& obs) = 0;
    // events recorded while computing recent moves (cleared by the call)
    virtual std::vector<TransitionEvent> drain_events() { return {}; }
    // Compact serialization of all decision-relevant internal state, used to
    // merge equivalent branches during exhaustive behavior exploration.
    // Strategies without a compact form return nullopt.
    virtual std::optional<std::string> memo_key() const { return std::nullopt; }
    // Independent copy carrying the full decision state, for branching
    // exploration. Strategies that cannot be forked return nullptr.
    virtual std::unique_ptr<CatStrategy> clone() const { return nullptr; }
};

struct MouseReply {
    enum class Kind { Move, Signal, Stalled };
    Kind kind = Kind::Move;
    Vertex move = -1;    // Kind::Move
    Observation signal;  // Kind::Signal
    static MouseReply at(Vertex v) { return {Kind::Move, v, {}}; }
    static MouseReply say(Observation o) { return {Kind::Signal, -1, o}; }
    static MouseReply stalled() { return {Kind::Stalled, -1, {}}; }
};

class MouseAgent {
public:
    virtual ~MouseAgent() = default;
    // Round order: the cat has already committed to `cat`; the mouse answers
    // with either a concrete vertex (round 1: free placement, later rounds: a
    // legal move) or, for phantom adversaries, a feedback signal.
    virtual MouseReply respond(Vertex cat, int round) = 0;
};

struct GameResult {
    Outcome outcome = Outcome::MouseSurvivedHorizon;
    // Round the game ended in. A mouse stalled with no legal move ends the
    // game in a round that gets no trace record (the signal never happens).
    int rounds_played = 0;
    std::vector<RoundRecord> trace;
    std::vector<std::pair<int, TransitionEvent>> events;  // (round emitted, event)
    std::optional<std::vector<Vertex>> witness;           // phantom games
};

// Runs the round loop: cat commits from feedback history alone, the mouse
// answers knowing every cat move so far, feedback (or a verified phantom
// signal) closes the round. A Zero observation ends the game immediately.
GameResult play_game(const Graph& g, const RuleSet& rules, CatStrategy& cat, MouseAgent& mouse,
                     int max_rounds,
                     const std::function<void(const RoundRecord&)>& observer = {});

struct TraceVerdict {
    bool ok = true;
    int bad_round = 0;
    std::string reason;
};
// Omniscient replay of a trace (every record must carry the mouse position):
// legality of each move plus feedback recomputed from scratch.
TraceVerdict validate_trace(const Graph& g, const RuleSet& rules,
                            std::span<const RoundRecord> trace);

// One line per round:  round=<i> cat=<v> class=<0|1|2+|nz|k:<d>> cmp=<le|gt|-> mouse=<v|->
std::string format_round(const RoundRecord& rec);
// transition type=<1|2|3|4> start=<i> j=<1|2> X=<size-after> Y=<size-after>
std::string format_event(const TransitionEvent& ev);
// Round lines with transition events interleaved and, for phantom games, a
// trailing witness=<v1,v2,...> line.
void write_trace(std::ostream& out, const GameResult& result);
std::optional<RoundRecord> parse_round_line(const std::string& line);
std::vector<RoundRecord> read_trace(std::istream& in);  // ignores non-round lines

}  // namespace catmouse
