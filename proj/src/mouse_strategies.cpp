#include "catmouse/mouse_strategies.hpp"

#include <algorithm>
#include <limits>

namespace catmouse {

PhantomMouse::PhantomMouse(const Graph& g, RuleSet rules, PhantomMode mode, SolveLimits limits)
    : set_(g, rules), mode_(mode) {
    if (mode_ == PhantomMode::Exact) solver_.emplace(g, rules, limits);
}

MouseReply PhantomMouse::respond(Vertex cat, int round) {
    (void)round;
    auto fc = set_.feasible_classes(cat);
    if (fc.empty()) return MouseReply::stalled();  // every consistent position is stuck

    std::optional<Observation> picked;
    if (mode_ == PhantomMode::Greedy) {
        int best = -1;
        for (const auto& cc : fc) {
            if (cc.obs.cls == DistClass::Zero) continue;
            if (cc.count > best) {  // rank order breaks ties toward lower rank
                best = cc.count;
                picked = cc.obs;
            }
        }
    } else {
        long best = -1;
        constexpr long kImmortal = std::numeric_limits<long>::max();
        for (const auto& c : solver_->classes(info_, cat)) {
            if (c.capture) continue;
            auto lev = solver_->level(c.next);
            long score = lev ? *lev : kImmortal;
            if (score > best) {  // rank order breaks ties toward lower rank
                best = score;
                picked = c.obs;
            }
        }
    }
    if (!picked) picked = fc.front().obs;  // only the capture class is left

    Observation obs = *picked;
    if (obs.cls != DistClass::Zero) {
        set_.advance(cat, obs);
        if (mode_ == PhantomMode::Exact) info_ = solver_->advance(info_, cat, obs);
    }
    return MouseReply::say(obs);
}

CycleMouse::CycleMouse(const Graph& g, std::vector<Vertex> cycle) : dist_(g), cyc_(std::move(cycle)) {
    // accept the closed form a cycle finder produces
    if (cyc_.size() >= 2 && cyc_.front() == cyc_.back()) cyc_.pop_back();
    if (cyc_.size() < 3) throw GameError("cycle mouse needs a cycle of length >= 3");
    idx_.assign(g.order(), -1);
    for (size_t i = 0; i < cyc_.size(); ++i) {
        Vertex v = cyc_[i];
        if (v < 0 || v >= g.order() || idx_[v] != -1)
            throw GameError("cycle mouse: vertex list is not a simple cycle");
        idx_[v] = static_cast<int>(i);
    }
    for (size_t i = 0; i < cyc_.size(); ++i)
        if (!g.adjacent(cyc_[i], cyc_[(i + 1) % cyc_.size()]))
            throw GameError("cycle mouse: consecutive vertices are not adjacent");
}

MouseReply CycleMouse::respond(Vertex cat, int round) {
    (void)round;
    if (pos_ == -1) {
        // farthest cycle vertex from the cat; among those the smallest id
        for (Vertex v : cyc_) {
            if (pos_ == -1 || dist_(cat, v) > dist_(cat, pos_) ||
                (dist_(cat, v) == dist_(cat, pos_) && v < pos_))
                pos_ = v;
        }
        return MouseReply::at(pos_);
    }
    int i = idx_[pos_];
    int len = static_cast<int>(cyc_.size());
    Vertex a = cyc_[(i + 1) % len];
    Vertex b = cyc_[(i + len - 1) % len];
    Vertex pick = -1;
    for (Vertex cand : {std::min(a, b), std::max(a, b)}) {
        if (cand == cat) continue;
        if (pick == -1 || dist_(cat, cand) > dist_(cat, pick)) pick = cand;
    }
    pos_ = pick;  // at most one neighbor can be the cat
    return MouseReply::at(pos_);
}

PathMouse::PathMouse(const Graph& g) {
    int n = g.order();
    ForestCheck fc = is_forest(g);
    if (!fc.forest || static_cast<int>(components(g).size()) != 1)
        throw GameError("path mouse needs a path graph");
    Vertex start = -1;
    for (Vertex v = 0; v < n; ++v) {
        if (g.neighbors(v).size() > 2) throw GameError("path mouse needs a path graph");
        if (g.neighbors(v).size() <= 1 && start == -1) start = v;
    }
    index_.assign(n, -1);
    Vertex prev = -1, cur = start;
    while (cur != -1) {
        index_[cur] = static_cast<int>(order_.size());
        order_.push_back(cur);
        Vertex nxt = -1;
        for (Vertex u : g.neighbors(cur))
            if (u != prev) nxt = u;
        prev = cur;
        cur = nxt;
    }
}

MouseReply PathMouse::respond(Vertex cat, int round) {
    (void)round;
    int n = static_cast<int>(order_.size());
    if (i_ == -1) {
        i_ = n / 2;
        if (order_[i_] == cat && n > 1) {
            // sidestep a collision toward whichever side has more room
            i_ += (n - 1 - i_ >= i_ ? 1 : -1);
        }
        return MouseReply::at(order_[i_]);
    }
    int ci = index_[cat];
    int ni;
    if (ci != i_) {
        ni = i_ + (ci < i_ ? 1 : -1);         // away from the cat
        if (ni < 0 || ni >= n) ni = 2 * i_ - ni;  // endpoint: the only move left
    } else {
        int left = i_, right = n - 1 - i_;    // segment sizes of P minus the mouse
        ni = i_ + (right > left ? 1 : -1);    // equal halves: lower-index side
    }
    i_ = ni;
    return MouseReply::at(order_[i_]);
}

RandomMouse::RandomMouse(const Graph& g, RuleSet rules, std::uint64_t seed)
    : g_(g), rules_(rules), rng_(seed) {}

MouseReply RandomMouse::respond(Vertex cat, int round) {
    (void)round;
    if (pos_ == -1) {
        pos_ = std::uniform_int_distribution<int>(0, g_.order() - 1)(rng_);
    } else {
        auto legal = legal_mouse_moves(rules_, g_, pos_, last_cat_);
        if (legal.empty()) throw GameError("random mouse asked to move with no legal move");
        pos_ = legal[std::uniform_int_distribution<size_t>(0, legal.size() - 1)(rng_)];
    }
    last_cat_ = cat;
    return MouseReply::at(pos_);
}

}  // namespace catmouse
