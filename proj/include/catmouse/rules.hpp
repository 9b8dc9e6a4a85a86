#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "catmouse/graph.hpp"

namespace catmouse {

// What the cat hears about its distance d to the mouse each round.
//   Binary    : caught / not caught
//   Coarse    : 0, 1, or "2 or more"
//   CoarseCmp : Coarse plus, from round 2 on, whether d grew since last round
//   CmpOnly   : caught / not caught plus the same growth bit
//   Exact     : d itself
enum class FeedbackChannel : std::uint8_t { Binary, Coarse, CoarseCmp, CmpOnly, Exact };

// How the mouse may step from its previous vertex m once the game is running.
// "AvoidCat" variants forbid the vertex the cat occupied last round.
enum class MovementRule : std::uint8_t { MustMove, MayStayAvoidCat, MustMoveAvoidCat, MayStay };

struct RuleSet {
    FeedbackChannel channel = FeedbackChannel::CoarseCmp;
    MovementRule movement = MovementRule::MustMove;
    bool operator==(const RuleSet&) const = default;
};

enum class DistClass : std::uint8_t { Zero, One, TwoPlus, NonZero, Exact };
enum class DistCmp : std::uint8_t { NotGreater, Greater };

struct Observation {
    DistClass cls = DistClass::Zero;
    Dist exact = -1;                 // meaningful only when cls == Exact
    std::optional<DistCmp> cmp;      // present iff channel compares and round >= 2
    bool operator==(const Observation&) const = default;
};

struct RulesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool channel_has_cmp(FeedbackChannel c);
bool movement_avoids_cat(MovementRule m);
bool movement_may_stay(MovementRule m);

// The signal for true distance d, given last round's distance when the
// channel compares (absent in round 1). kInfDist never reads as Zero or One.
Observation feedback(const RuleSet& rules, Dist d, std::optional<Dist> d_prev);

// Moves available from m_prev when the cat sat on c_prev last round.
// Sorted ascending; may be empty only under the AvoidCat rules.
std::vector<Vertex> legal_mouse_moves(const RuleSet& rules, const Graph& g, Vertex m_prev,
                                      Vertex c_prev);

// Total order on observations used everywhere a tie between feedback classes
// must break deterministically: class ascending, NotGreater before Greater.
int observation_rank(const Observation& obs);

// Token forms used by traces and reports.
std::string dist_class_token(const Observation& obs);   // 0 | 1 | 2+ | nz | k:<d>
std::string cmp_token(const Observation& obs);          // le | gt | -
std::string channel_token(FeedbackChannel c);           // binary | coarse | ...
std::string movement_token(MovementRule m);             // must-move | ...
std::optional<FeedbackChannel> channel_from_token(const std::string& s);
std::optional<MovementRule> movement_from_token(const std::string& s);

}  // namespace catmouse
