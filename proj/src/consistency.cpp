#include "catmouse/consistency.hpp"

#include <algorithm>
#include <map>

namespace catmouse {

namespace {
int dist_code(Dist d, int n) { return d == kInfDist ? n + 1 : d; }  // 0..n+1
}

ConsistencySet::ConsistencySet(const Graph& g, RuleSet rules)
    : ctx_(std::make_shared<Ctx>(Ctx{g, DistanceTable(g), rules})) {
    if (g.order() < 1) throw RulesError("consistency set needs a nonempty graph");
}

std::vector<std::pair<Vertex, Dist>> ConsistencySet::elements() const {
    std::vector<std::pair<Vertex, Dist>> out;
    if (!started()) return out;
    for (const Entry& e : layers_.back()) out.emplace_back(e.pos, e.d);
    std::sort(out.begin(), out.end());
    return out;
}

template <class Fn>
void ConsistencySet::for_each_successor(Vertex c, Fn&& fn) const {
    const Graph& g = ctx_->g;
    const auto& dist = ctx_->dist;
    if (!started()) {
        // round 1: the mouse may sit anywhere
        for (Vertex v = 0; v < g.order(); ++v) {
            Dist d = dist(c, v);
            fn(-1, v, d, feedback(ctx_->rules, d, std::nullopt));
        }
        return;
    }
    Vertex c_prev = cats_.back();
    bool stay = movement_may_stay(ctx_->rules.movement);
    bool avoid = movement_avoids_cat(ctx_->rules.movement);
    const auto& layer = layers_.back();
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(layer.size()); ++i) {
        const Entry& e = layer[i];
        auto step = [&](Vertex to) {
            if (avoid && to == c_prev) return;
            Dist d = dist(c, to);
            fn(i, to, d, feedback(ctx_->rules, d, e.d));
        };
        if (stay) step(e.pos);
        for (Vertex to : g.neighbors(e.pos)) step(to);
    }
}

std::vector<ConsistencySet::ClassCount> ConsistencySet::feasible_classes(Vertex c) const {
    if (c < 0 || c >= ctx_->g.order()) throw RulesError("feasible_classes: vertex out of range");
    int n = ctx_->g.order();
    // rank -> (observation, seen-markers over (pos, d) pairs)
    std::map<int, std::pair<Observation, std::vector<char>>> buckets;
    for_each_successor(c, [&](std::int32_t, Vertex pos, Dist d, const Observation& obs) {
        auto& slot = buckets[observation_rank(obs)];
        if (slot.second.empty()) {
            slot.first = obs;
            slot.second.assign(static_cast<size_t>(n) * (n + 2), 0);
        }
        slot.second[static_cast<size_t>(pos) * (n + 2) + dist_code(d, n)] = 1;
    });
    std::vector<ClassCount> out;
    for (auto& [rank, slot] : buckets) {
        int cnt = static_cast<int>(std::count(slot.second.begin(), slot.second.end(), 1));
        out.push_back({slot.first, cnt});
    }
    return out;
}

bool ConsistencySet::all_successors_empty() const {
    if (!started()) return false;
    bool any = false;
    // any legal move at all, regardless of where the cat goes next
    Vertex c_prev = cats_.back();
    bool stay = movement_may_stay(ctx_->rules.movement);
    bool avoid = movement_avoids_cat(ctx_->rules.movement);
    for (const Entry& e : layers_.back()) {
        if (stay && !(avoid && e.pos == c_prev)) any = true;
        for (Vertex to : ctx_->g.neighbors(e.pos))
            if (!(avoid && to == c_prev)) any = true;
        if (any) break;
    }
    return !any && !layers_.back().empty();
}

void ConsistencySet::advance(Vertex c, const Observation& obs) {
    if (c < 0 || c >= ctx_->g.order()) throw RulesError("advance: vertex out of range");
    int n = ctx_->g.order();
    std::vector<Entry> next;
    std::vector<std::int32_t> seen(static_cast<size_t>(n) * (n + 2), -1);
    for_each_successor(c, [&](std::int32_t parent, Vertex pos, Dist d, const Observation& got) {
        if (!(got == obs)) return;
        size_t key = static_cast<size_t>(pos) * (n + 2) + dist_code(d, n);
        if (seen[key] < 0) {
            seen[key] = static_cast<std::int32_t>(next.size());
            next.push_back({pos, d, parent});
        }
    });
    layers_.push_back(std::move(next));
    cats_.push_back(c);
}

std::vector<Vertex> ConsistencySet::witness() const {
    if (!started() || layers_.back().empty())
        throw RulesError("witness requested from an empty consistency set");
    std::vector<Vertex> out;
    int layer = static_cast<int>(layers_.size()) - 1;
    std::int32_t idx = 0;
    while (layer >= 0) {
        const Entry& e = layers_[layer][idx];
        out.push_back(e.pos);
        idx = e.parent;
        --layer;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<Vertex> ConsistencySet::stuck_witness() const {
    if (!started()) throw RulesError("stuck_witness needs at least one round");
    Vertex c_prev = cats_.back();
    bool stay = movement_may_stay(ctx_->rules.movement);
    bool avoid = movement_avoids_cat(ctx_->rules.movement);
    const auto& layer = layers_.back();
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(layer.size()); ++i) {
        bool any = stay && !(avoid && layer[i].pos == c_prev);
        for (Vertex to : ctx_->g.neighbors(layer[i].pos))
            if (!(avoid && to == c_prev)) any = true;
        if (any) continue;
        std::vector<Vertex> out;
        int l = static_cast<int>(layers_.size()) - 1;
        std::int32_t idx = i;
        while (l >= 0) {
            out.push_back(layers_[l][idx].pos);
            idx = layers_[l][idx].parent;
            --l;
        }
        std::reverse(out.begin(), out.end());
        return out;
    }
    throw RulesError("no stuck state in the consistency set");
}

std::uint64_t ConsistencySet::packed_key() const {
    if (!started()) return 0;
    int n = ctx_->g.order();
    std::uint64_t bits = 0;
    if (channel_has_cmp(ctx_->rules.channel)) {
        if (n * n > 64) throw RulesError("packed_key needs n*n <= 64 on comparing channels");
        for (const Entry& e : layers_.back()) {
            if (e.d == 0) throw RulesError("packed_key on a capture layer");
            int code = e.d == kInfDist ? n - 1 : e.d - 1;  // finite d is at most n-1
            bits |= std::uint64_t(1) << (e.pos * n + code);
        }
    } else {
        if (n > 64) throw RulesError("packed_key needs n <= 64");
        for (const Entry& e : layers_.back()) bits |= std::uint64_t(1) << e.pos;
    }
    return bits;
}

ConsistencySet update_consistency(const ConsistencySet& s, const Graph& g, const RuleSet& rules,
                                  Vertex c, const Observation& obs) {
    if (g.order() != s.graph().order() || !(rules == s.rules()))
        throw RulesError("update_consistency: graph or rules mismatch");
    ConsistencySet out = s;
    out.advance(c, obs);
    return out;
}

std::vector<Vertex> extract_witness(const ConsistencySet& s) { return s.witness(); }

}  // namespace catmouse
