#include "catmouse/rules.hpp"

#include <algorithm>

namespace catmouse {

bool channel_has_cmp(FeedbackChannel c) {
    return c == FeedbackChannel::CoarseCmp || c == FeedbackChannel::CmpOnly;
}

bool movement_avoids_cat(MovementRule m) {
    return m == MovementRule::MayStayAvoidCat || m == MovementRule::MustMoveAvoidCat;
}

bool movement_may_stay(MovementRule m) {
    return m == MovementRule::MayStay || m == MovementRule::MayStayAvoidCat;
}

Observation feedback(const RuleSet& rules, Dist d, std::optional<Dist> d_prev) {
    if (d < 0) throw RulesError("negative distance");
    Observation obs;
    switch (rules.channel) {
        case FeedbackChannel::Binary:
            obs.cls = d == 0 ? DistClass::Zero : DistClass::NonZero;
            break;
        case FeedbackChannel::Coarse:
        case FeedbackChannel::CoarseCmp:
            obs.cls = d == 0 ? DistClass::Zero : d == 1 ? DistClass::One : DistClass::TwoPlus;
            break;
        case FeedbackChannel::CmpOnly:
            obs.cls = d == 0 ? DistClass::Zero : DistClass::NonZero;
            break;
        case FeedbackChannel::Exact:
            if (d == 0) {
                obs.cls = DistClass::Zero;
            } else {
                obs.cls = DistClass::Exact;
                obs.exact = d;
            }
            break;
    }
    if (channel_has_cmp(rules.channel) && d_prev.has_value())
        obs.cmp = d > *d_prev ? DistCmp::Greater : DistCmp::NotGreater;
    return obs;
}

std::vector<Vertex> legal_mouse_moves(const RuleSet& rules, const Graph& g, Vertex m_prev,
                                      Vertex c_prev) {
    if (m_prev < 0 || m_prev >= g.order() || c_prev < 0 || c_prev >= g.order())
        throw RulesError("legal_mouse_moves: vertex out of range");
    std::vector<Vertex> out;
    bool stay = movement_may_stay(rules.movement);
    bool avoid = movement_avoids_cat(rules.movement);
    if (stay && !(avoid && m_prev == c_prev)) out.push_back(m_prev);
    for (Vertex v : g.neighbors(m_prev))
        if (!(avoid && v == c_prev)) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

int observation_rank(const Observation& obs) {
    int cls;
    switch (obs.cls) {
        case DistClass::Zero: cls = 0; break;
        case DistClass::One: cls = 1; break;
        case DistClass::NonZero: cls = 1; break;
        case DistClass::TwoPlus: cls = 2; break;
        case DistClass::Exact: cls = obs.exact == kInfDist ? 1 << 20 : 2 + obs.exact; break;
        default: cls = 0;
    }
    int cmp = !obs.cmp ? 0 : *obs.cmp == DistCmp::NotGreater ? 1 : 2;
    return cls * 3 + cmp;
}

std::string dist_class_token(const Observation& obs) {
    switch (obs.cls) {
        case DistClass::Zero: return "0";
        case DistClass::One: return "1";
        case DistClass::TwoPlus: return "2+";
        case DistClass::NonZero: return "nz";
        case DistClass::Exact:
            return obs.exact == kInfDist ? "k:inf" : "k:" + std::to_string(obs.exact);
    }
    return "?";
}

std::string cmp_token(const Observation& obs) {
    if (!obs.cmp) return "-";
    return *obs.cmp == DistCmp::NotGreater ? "le" : "gt";
}

std::string channel_token(FeedbackChannel c) {
    switch (c) {
        case FeedbackChannel::Binary: return "binary";
        case FeedbackChannel::Coarse: return "coarse";
        case FeedbackChannel::CoarseCmp: return "coarse-cmp";
        case FeedbackChannel::CmpOnly: return "cmp-only";
        case FeedbackChannel::Exact: return "exact";
    }
    return "?";
}

std::string movement_token(MovementRule m) {
    switch (m) {
        case MovementRule::MustMove: return "must-move";
        case MovementRule::MayStayAvoidCat: return "may-stay-avoid-cat";
        case MovementRule::MustMoveAvoidCat: return "must-move-avoid-cat";
        case MovementRule::MayStay: return "may-stay";
    }
    return "?";
}

std::optional<FeedbackChannel> channel_from_token(const std::string& s) {
    if (s == "binary") return FeedbackChannel::Binary;
    if (s == "coarse") return FeedbackChannel::Coarse;
    if (s == "coarse-cmp") return FeedbackChannel::CoarseCmp;
    if (s == "cmp-only") return FeedbackChannel::CmpOnly;
    if (s == "exact") return FeedbackChannel::Exact;
    return std::nullopt;
}

std::optional<MovementRule> movement_from_token(const std::string& s) {
    if (s == "must-move") return MovementRule::MustMove;
    if (s == "may-stay-avoid-cat") return MovementRule::MayStayAvoidCat;
    if (s == "must-move-avoid-cat") return MovementRule::MustMoveAvoidCat;
    if (s == "may-stay") return MovementRule::MayStay;
    return std::nullopt;
}

}  // namespace catmouse
