#include "catmouse/solver.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace catmouse {

namespace {

int ctz128(StateBits b) {
    auto lo = static_cast<std::uint64_t>(b);
    if (lo) return std::countr_zero(lo);
    return 64 + std::countr_zero(static_cast<std::uint64_t>(b >> 64));
}

}  // namespace

Solver::Solver(const Graph& g, RuleSet rules, SolveLimits limits)
    : g_(g), dist_(g_), rules_(rules), limits_(limits) {
    int n = g_.order();
    if (n < 1) throw SolverError("solver needs a nonempty graph");
    if (tracks_d()) {
        if (n > limits_.max_n_cmp || n * n > 128)
            throw SolverError("instance too large: comparing channels track (position, distance) "
                              "pairs and are capped at n = " +
                              std::to_string(std::min(limits_.max_n_cmp, 11)));
    } else if (n > limits_.max_n_plain || n > 128) {
        throw SolverError("instance too large: position-only channels are capped at n = " +
                          std::to_string(std::min(limits_.max_n_plain, 128)));
    }
    explore_and_solve();
}

int Solver::pack(Vertex pos, Dist d) const {
    if (!tracks_d()) return pos;
    int n = g_.order();
    int code = d == kInfDist ? n - 1 : d - 1;  // finite nonzero d is at most n-1
    return pos * n + code;
}

std::vector<std::pair<Vertex, Dist>> Solver::decode(const InfoState& s) const {
    std::vector<std::pair<Vertex, Dist>> out;
    if (s.initial) return out;
    int n = g_.order();
    StateBits b = s.bits;
    while (b) {
        int idx = ctz128(b);
        b &= b - 1;
        if (tracks_d()) {
            int code = idx % n;
            out.emplace_back(idx / n, code == n - 1 ? kInfDist : code + 1);
        } else {
            out.emplace_back(idx, -1);  // d_prev not tracked on this channel
        }
    }
    return out;
}

template <class Fn>
void Solver::for_each_successor(const InfoState& s, Vertex c, Fn&& fn) const {
    int n = g_.order();
    if (s.initial) {
        for (Vertex v = 0; v < n; ++v) {
            Dist d = dist_(c, v);
            fn(v, d, feedback(rules_, d, std::nullopt));
        }
        return;
    }
    bool stay = movement_may_stay(rules_.movement);
    bool avoid = movement_avoids_cat(rules_.movement);
    StateBits b = s.bits;
    while (b) {
        int idx = ctz128(b);
        b &= b - 1;
        Vertex pos;
        std::optional<Dist> d_prev;
        if (tracks_d()) {
            pos = idx / n;
            int code = idx % n;
            d_prev = code == n - 1 ? kInfDist : code + 1;
        } else {
            pos = idx;
        }
        auto step = [&](Vertex to) {
            if (avoid && to == s.c_prev) return;
            Dist d = dist_(c, to);
            fn(to, d, feedback(rules_, d, d_prev));
        };
        if (stay) step(pos);
        for (Vertex to : g_.neighbors(pos)) step(to);
    }
}

InfoState Solver::advance(const InfoState& s, Vertex c, const Observation& obs) const {
    if (c < 0 || c >= g_.order()) throw SolverError("advance: vertex out of range");
    if (obs.cls == DistClass::Zero) throw SolverError("advance through a capture signal");
    StateBits bits = 0;
    for_each_successor(s, c, [&](Vertex pos, Dist d, const Observation& got) {
        if (got == obs) bits |= StateBits(1) << pack(pos, d);
    });
    if (!bits) throw SolverError("advance with an infeasible observation");
    bool avoid = movement_avoids_cat(rules_.movement);
    return InfoState{bits, avoid ? c : -1, false};
}

std::vector<Solver::ClassSucc> Solver::classes(const InfoState& s, Vertex c) const {
    if (c < 0 || c >= g_.order()) throw SolverError("classes: vertex out of range");
    // (rank, obs, successor bits), kept sorted by rank; class count is small
    std::vector<std::tuple<int, Observation, StateBits>> buckets;
    for_each_successor(s, c, [&](Vertex pos, Dist d, const Observation& got) {
        int rank = observation_rank(got);
        auto it = std::lower_bound(buckets.begin(), buckets.end(), rank,
                                   [](const auto& t, int r) { return std::get<0>(t) < r; });
        if (it == buckets.end() || std::get<0>(*it) != rank)
            it = buckets.insert(it, {rank, got, 0});
        std::get<2>(*it) |= StateBits(1) << pack(pos, d);
    });
    bool avoid = movement_avoids_cat(rules_.movement);
    std::vector<ClassSucc> out;
    out.reserve(buckets.size());
    for (auto& [rank, obs, bits] : buckets) {
        bool capture = obs.cls == DistClass::Zero;
        out.push_back({obs, InfoState{capture ? StateBits(0) : bits, avoid ? c : -1, false},
                       capture});
    }
    return out;
}

bool Solver::stalled(const InfoState& s) const {
    if (s.initial) return false;
    int n = g_.order();
    bool stay = movement_may_stay(rules_.movement);
    bool avoid = movement_avoids_cat(rules_.movement);
    StateBits b = s.bits;
    while (b) {
        int idx = ctz128(b);
        b &= b - 1;
        Vertex pos = tracks_d() ? idx / n : idx;
        if (stay && !(avoid && pos == s.c_prev)) return false;
        for (Vertex to : g_.neighbors(pos))
            if (!(avoid && to == s.c_prev)) return false;
    }
    return s.bits != 0;
}

int Solver::state_id(const InfoState& s) {
    Key k{s.bits, s.c_prev, s.initial};
    auto [it, inserted] = memo_.try_emplace(k, static_cast<int>(states_.size()));
    if (inserted) {
        if (states_.size() >= limits_.max_states)
            throw SolverError("state cap exceeded (" + std::to_string(limits_.max_states) +
                              " information states)");
        states_.push_back(s);
    }
    return it->second;
}

std::optional<int> Solver::find_state(const InfoState& s) const {
    auto it = memo_.find(Key{s.bits, s.c_prev, s.initial});
    if (it == memo_.end()) return std::nullopt;
    return it->second;
}

void Solver::explore_and_solve() {
    int n = g_.order();
    bool avoid = movement_avoids_cat(rules_.movement);

    struct Action {
        int state;
        int pending;  // class-successors not yet assigned a level
        int maxlev;
    };
    std::vector<Action> actions;
    std::vector<std::vector<int>> parents;  // class-successor state -> action ids
    std::vector<std::vector<int>> buckets(2);
    auto propose = [&](int state, int lev) {
        if (static_cast<std::size_t>(lev) >= buckets.size()) buckets.resize(lev + 1);
        buckets[lev].push_back(state);
    };

    state_id(InfoState{});
    stall_.assign(1, 0);
    // scratch class buckets: (rank, zero-class?, successor bits)
    std::vector<std::tuple<int, bool, StateBits>> cls;
    for (int sid = 0; sid < static_cast<int>(states_.size()); ++sid) {
        InfoState s = states_[sid];
        if (stalled(s)) {
            stall_[sid] = 1;
            ++result_.stall_wins;
            propose(sid, 1);
            continue;
        }
        for (Vertex v = 0; v < n; ++v) {
            cls.clear();
            for_each_successor(s, v, [&](Vertex pos, Dist d, const Observation& got) {
                int rank = observation_rank(got);
                auto it =
                    std::lower_bound(cls.begin(), cls.end(), rank,
                                     [](const auto& t, int r) { return std::get<0>(t) < r; });
                if (it == cls.end() || std::get<0>(*it) != rank)
                    it = cls.insert(it, {rank, got.cls == DistClass::Zero, 0});
                std::get<2>(*it) |= StateBits(1) << pack(pos, d);
            });
            int nonzero = 0;
            for (auto& t : cls)
                if (!std::get<1>(t)) ++nonzero;
            if (nonzero == 0) {  // every consistent trajectory is captured at v
                propose(sid, 1);
                continue;
            }
            int aid = static_cast<int>(actions.size());
            actions.push_back({sid, nonzero, 0});
            for (auto& [rank, zero, bits] : cls) {
                if (zero) continue;
                int child = state_id(InfoState{bits, avoid ? v : Vertex(-1), false});
                if (parents.size() < states_.size()) parents.resize(states_.size());
                if (stall_.size() < states_.size()) stall_.resize(states_.size(), 0);
                parents[child].push_back(aid);
            }
        }
    }
    parents.resize(states_.size());
    stall_.resize(states_.size(), 0);
    level_.assign(states_.size(), -1);

    // Backward attractor: a state's level is the best over actions of
    // 1 + the worst class-successor level; stall and immediate-capture
    // states seed level 1. Bucket FIFO keeps assignment monotone in level.
    for (int lev = 1; lev < static_cast<int>(buckets.size()); ++lev) {
        for (std::size_t qi = 0; qi < buckets[lev].size(); ++qi) {
            int sid = buckets[lev][qi];
            if (level_[sid] != -1) continue;
            level_[sid] = lev;
            for (int aid : parents[sid]) {
                Action& a = actions[aid];
                a.maxlev = std::max(a.maxlev, lev);
                if (--a.pending == 0) propose(a.state, a.maxlev + 1);
            }
        }
    }

    result_.states_explored = static_cast<std::int64_t>(states_.size());
    result_.cat_wins = level_[0] != -1;
    result_.optimal_rounds = result_.cat_wins ? level_[0] : -1;
}

std::optional<int> Solver::level(const InfoState& s) const {
    auto id = find_state(s);
    if (!id) throw SolverError("level of a state the solver never reached");
    if (level_[*id] == -1) return std::nullopt;
    return level_[*id];
}

Vertex Solver::optimal_move(const InfoState& s) const {
    auto id = find_state(s);
    if (!id) throw SolverError("optimal move of a state the solver never reached");
    if (level_[*id] == -1)
        throw SolverError("optimal move requested in the mouse's winning region");
    int target = level_[*id];
    if (stall_[*id]) return 0;  // every vertex wins; smallest id
    for (Vertex v = 0; v < g_.order(); ++v) {
        auto cs = classes(s, v);
        int value = 1;
        bool known = true;
        for (const ClassSucc& c : cs) {
            if (c.capture) continue;
            auto cid = find_state(c.next);
            if (!cid || level_[*cid] == -1) {
                known = false;
                break;
            }
            value = std::max(value, level_[*cid] + 1);
        }
        if (known && value == target) return v;
    }
    throw SolverError("no action achieves the state's level (solver bug)");
}

SolveResult solve(const Graph& g, RuleSet rules, SolveLimits limits) {
    return Solver(g, rules, limits).result();
}

Vertex optimal_cat_move(const Graph& g, RuleSet rules, const InfoState& s, SolveLimits limits) {
    return Solver(g, rules, limits).optimal_move(s);
}

std::vector<VariantRow> variant_table(const std::vector<std::pair<std::string, Graph>>& instances,
                                      const std::vector<RuleSet>& rule_sets, SolveLimits limits) {
    std::vector<VariantRow> rows;
    for (const auto& [name, g] : instances) {
        for (const RuleSet& r : rule_sets) {
            VariantRow row{name, r, std::nullopt, ""};
            try {
                row.result = solve(g, r, limits);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string format_solve_line(const VariantRow& row) {
    std::ostringstream out;
    out << "instance=" << row.instance << " channel=" << channel_token(row.rules.channel)
        << " movement=" << movement_token(row.rules.movement);
    if (!row.result) {
        out << " outcome=error rounds=- states=-";
    } else if (row.result->cat_wins) {
        out << " outcome=cat rounds=" << row.result->optimal_rounds
            << " states=" << row.result->states_explored;
    } else {
        out << " outcome=mouse rounds=- states=" << row.result->states_explored;
    }
    return out.str();
}

}  // namespace catmouse
