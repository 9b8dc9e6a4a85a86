#include "catmouse/game.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace catmouse {

std::string outcome_token(Outcome o) {
    switch (o) {
        case Outcome::CatWins: return "cat-wins";
        case Outcome::MouseSurvivedHorizon: return "survived-horizon";
        case Outcome::MouseNoLegalMove: return "no-legal-move";
    }
    return "?";
}

GameResult play_game(const Graph& g, const RuleSet& rules, CatStrategy& cat, MouseAgent& mouse,
                     int max_rounds, const std::function<void(const RoundRecord&)>& observer) {
    if (max_rounds < 1) throw GameError("max_rounds must be at least 1");
    if (g.order() < 1) throw GameError("game needs a nonempty graph");
    DistanceTable dist(g);

    std::optional<Observation> last_obs;
    std::optional<Dist> d_prev;
    Vertex c_prev = -1, m_prev = -1;
    bool phantom = false;
    std::optional<ConsistencySet> verified;  // engine-side check of phantom signals

    GameResult res;
    auto drain = [&](int round) {
        for (auto& ev : cat.drain_events()) res.events.emplace_back(round, ev);
    };

    for (int round = 1; round <= max_rounds; ++round) {
        Vertex c = cat.next(last_obs);
        if (c < 0 || c >= g.order()) throw GameError("cat strategy returned an invalid vertex");

        if (!phantom && round >= 2) {
            auto legal = legal_mouse_moves(rules, g, m_prev, c_prev);
            if (legal.empty()) {
                drain(round);
                res.outcome = Outcome::MouseNoLegalMove;
                res.rounds_played = round;
                return res;
            }
        }

        MouseReply rep = mouse.respond(c, round);
        Observation obs;
        std::optional<Vertex> mouse_pos;
        if (rep.kind == MouseReply::Kind::Move) {
            if (phantom) throw GameError("mouse agent switched from signals to moves");
            Vertex m = rep.move;
            if (m < 0 || m >= g.order()) throw GameError("mouse agent returned an invalid vertex");
            if (round >= 2) {
                auto legal = legal_mouse_moves(rules, g, m_prev, c_prev);
                if (!std::binary_search(legal.begin(), legal.end(), m))
                    throw GameError("mouse agent returned an illegal move");
            }
            Dist d = dist(c, m);
            obs = feedback(rules, d, d_prev);
            d_prev = d;
            m_prev = m;
            mouse_pos = m;
        } else {
            if (round == 1) {
                phantom = true;
                verified.emplace(g, rules);
            } else if (!phantom) {
                throw GameError("mouse agent switched from moves to signals");
            }
            if (rep.kind == MouseReply::Kind::Stalled) {
                if (!verified->all_successors_empty())
                    throw GameError("phantom agent declared a stall but moves remain");
                drain(round);
                res.outcome = Outcome::MouseNoLegalMove;
                res.rounds_played = round;
                res.witness = verified->stuck_witness();
                return res;
            }
            obs = rep.signal;
            verified->advance(c, obs);
            if (verified->empty()) throw GameError("phantom agent emitted an infeasible signal");
        }

        RoundRecord rec{round, c, mouse_pos, obs};
        res.trace.push_back(rec);
        if (observer) observer(rec);
        drain(round);

        if (obs.cls == DistClass::Zero) {
            res.outcome = Outcome::CatWins;
            res.rounds_played = round;
            if (phantom) res.witness = verified->witness();
            return res;
        }
        c_prev = c;
        last_obs = obs;
    }
    res.outcome = Outcome::MouseSurvivedHorizon;
    res.rounds_played = max_rounds;
    if (phantom && !verified->empty()) res.witness = verified->witness();
    return res;
}

TraceVerdict validate_trace(const Graph& g, const RuleSet& rules,
                            std::span<const RoundRecord> trace) {
    auto bad = [](int round, const std::string& why) { return TraceVerdict{false, round, why}; };
    DistanceTable dist(g);
    std::optional<Dist> d_prev;
    Vertex c_prev = -1, m_prev = -1;
    for (size_t i = 0; i < trace.size(); ++i) {
        const RoundRecord& rec = trace[i];
        int round = static_cast<int>(i) + 1;
        if (rec.round != round) return bad(round, "rounds are not consecutive from 1");
        if (!rec.mouse) return bad(round, "record lacks the mouse position");
        Vertex c = rec.cat, m = *rec.mouse;
        if (c < 0 || c >= g.order() || m < 0 || m >= g.order())
            return bad(round, "vertex out of range");
        if (round >= 2) {
            auto legal = legal_mouse_moves(rules, g, m_prev, c_prev);
            if (!std::binary_search(legal.begin(), legal.end(), m))
                return bad(round, "mouse move is not legal");
        }
        Dist d = dist(c, m);
        Observation expect = feedback(rules, d, d_prev);
        if (!(expect == rec.obs)) return bad(round, "observation does not match feedback");
        if (rec.obs.cls == DistClass::Zero && i + 1 != trace.size())
            return bad(round, "records continue past a capture");
        d_prev = d;
        c_prev = c;
        m_prev = m;
    }
    return {};
}

std::string format_round(const RoundRecord& rec) {
    std::ostringstream out;
    out << "round=" << rec.round << " cat=" << rec.cat << " class=" << dist_class_token(rec.obs)
        << " cmp=" << cmp_token(rec.obs) << " mouse=";
    if (rec.mouse)
        out << *rec.mouse;
    else
        out << '-';
    return out.str();
}

std::string format_event(const TransitionEvent& ev) {
    std::ostringstream out;
    out << "transition type=" << ev.type << " start=" << ev.start_round << " j=" << ev.j
        << " X=" << ev.x_after << " Y=" << ev.y_after;
    return out.str();
}

void write_trace(std::ostream& out, const GameResult& result) {
    size_t next_ev = 0;
    for (const RoundRecord& rec : result.trace) {
        out << format_round(rec) << '\n';
        while (next_ev < result.events.size() && result.events[next_ev].first <= rec.round)
            out << format_event(result.events[next_ev++].second) << '\n';
    }
    while (next_ev < result.events.size())  // events from a recordless final round
        out << format_event(result.events[next_ev++].second) << '\n';
    if (result.witness) {
        out << "witness=";
        for (size_t i = 0; i < result.witness->size(); ++i)
            out << (i ? "," : "") << (*result.witness)[i];
        out << '\n';
    }
}

namespace {
bool parse_class(const std::string& tok, Observation& obs) {
    if (tok == "0") {
        obs.cls = DistClass::Zero;
    } else if (tok == "1") {
        obs.cls = DistClass::One;
    } else if (tok == "2+") {
        obs.cls = DistClass::TwoPlus;
    } else if (tok == "nz") {
        obs.cls = DistClass::NonZero;
    } else if (tok.rfind("k:", 0) == 0) {
        obs.cls = DistClass::Exact;
        std::string v = tok.substr(2);
        if (v == "inf") {
            obs.exact = kInfDist;
        } else {
            try {
                obs.exact = std::stoi(v);
            } catch (...) {
                return false;
            }
        }
    } else {
        return false;
    }
    return true;
}
}  // namespace

std::optional<RoundRecord> parse_round_line(const std::string& line) {
    if (line.rfind("round=", 0) != 0) return std::nullopt;
    RoundRecord rec;
    std::istringstream in(line);
    std::string tok;
    bool have_cat = false, have_class = false, have_cmp = false, have_mouse = false;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) return std::nullopt;
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        try {
            if (key == "round") {
                rec.round = std::stoi(val);
            } else if (key == "cat") {
                rec.cat = std::stoi(val);
                have_cat = true;
            } else if (key == "class") {
                if (!parse_class(val, rec.obs)) return std::nullopt;
                have_class = true;
            } else if (key == "cmp") {
                if (val == "le")
                    rec.obs.cmp = DistCmp::NotGreater;
                else if (val == "gt")
                    rec.obs.cmp = DistCmp::Greater;
                else if (val != "-")
                    return std::nullopt;
                have_cmp = true;
            } else if (key == "mouse") {
                if (val != "-") rec.mouse = std::stoi(val);
                have_mouse = true;
            } else {
                return std::nullopt;
            }
        } catch (...) {
            return std::nullopt;
        }
    }
    if (!have_cat || !have_class || !have_cmp || !have_mouse || rec.round < 1) return std::nullopt;
    return rec;
}

std::vector<RoundRecord> read_trace(std::istream& in) {
    std::vector<RoundRecord> out;
    std::string line;
    while (std::getline(in, line))
        if (auto rec = parse_round_line(line)) out.push_back(*rec);
    return out;
}

}  // namespace catmouse
