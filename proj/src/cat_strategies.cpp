#include "catmouse/cat_strategies.hpp"

#include <algorithm>
#include <sstream>

namespace catmouse {

namespace {

int count_set(const std::vector<char>& flags) {
    return static_cast<int>(std::count(flags.begin(), flags.end(), char(1)));
}

void add_subtree(const TransitionState& st, std::vector<char>& flags, Vertex u) {
    for (Vertex v : st.tree.subtree[u]) flags[v] = 1;
}

bool whole_or_none(const std::vector<char>& flags, const std::vector<Vertex>& verts) {
    bool any = false, all = true;
    for (Vertex v : verts) {
        if (flags[v]) any = true;
        else all = false;
    }
    return !any || all;
}

// X must decompose into non-descendants of r, r itself, and whole child
// subtrees; Y into whole child subtrees of y_owner. Violations mean the
// bookkeeping broke, so they throw rather than assert.
void audit_sets(const TransitionState& st) {
    const RootedTree& t = st.tree;
    for (Vertex v : t.verts)
        if (st.x[v] && st.y[v]) throw StrategyError("bookkeeping: X and Y overlap");
    for (Vertex c : t.children[st.r])
        if (!whole_or_none(st.x, t.subtree[c]))
            throw StrategyError("bookkeeping: X splits a child subtree of the reference");
    // descendants of r inside X are covered by the whole-subtree rule above;
    // everything else in X must be r or a non-descendant
    if (st.y_owner == -1) {
        for (Vertex v : t.verts)
            if (st.y[v]) throw StrategyError("bookkeeping: Y nonempty without an owner");
    } else {
        if (t.parent[st.y_owner] != st.r || st.x[st.y_owner])
            throw StrategyError("bookkeeping: Y's owner is not an eligible child of r");
        std::vector<char> inside(st.y.size(), 0);
        for (Vertex v : t.subtree[st.y_owner]) inside[v] = 1;
        for (Vertex v : t.verts)
            if (st.y[v] && (!inside[v] || v == st.y_owner))
                throw StrategyError("bookkeeping: Y leaks outside the owner's subtrees");
        bool any = false;
        for (Vertex c : t.children[st.y_owner]) {
            if (!whole_or_none(st.y, t.subtree[c]))
                throw StrategyError("bookkeeping: Y splits a child subtree of its owner");
            if (st.y[c]) any = true;
        }
        if (!any) throw StrategyError("bookkeeping: Y's owner has no owned subtree");
    }
}

TransitionEvent begin_event(const TransitionState& st, int type, int start, int j) {
    TransitionEvent ev;
    ev.type = type;
    ev.start_round = start;
    ev.j = j;
    ev.x_before = st.x_size();
    ev.y_before = st.y_size();
    return ev;
}

void finish_event(TransitionStep& step, TransitionState& st, TransitionEvent ev) {
    ev.x_after = st.x_size();
    ev.y_after = st.y_size();
    step.events.push_back(ev);
    audit_sets(st);
}

// The at-reference TWO_PLUS handler: split the reference's untouched children
// into leaves vs and non-leaves ws, honor Y's forced choice of w1, repair the
// "every child of w1 already certified" corner, then either finish (Type 2)
// or launch a two-round probe.
TransitionStep classify_and_play(TransitionState& st, int start_round) {
    const RootedTree& t = st.tree;
    TransitionStep step;
    for (int pass = 0;; ++pass) {
        if (pass > 2) throw StrategyError("bookkeeping: child refinement did not settle");
        st.vs.clear();
        st.ws.clear();
        for (Vertex c : t.children[st.r]) {
            if (st.x[c]) continue;
            (t.is_leaf(c) ? st.vs : st.ws).push_back(c);
        }
        if (st.y_owner != -1) {
            auto it = std::find(st.ws.begin(), st.ws.end(), st.y_owner);
            if (it == st.ws.end())
                throw StrategyError("bookkeeping: Y's owner vanished from the candidates");
            std::rotate(st.ws.begin(), it, it + 1);  // Y forces w1 to the front
        }
        if (st.ws.empty()) {
            step.kind = TransitionStep::Kind::ComponentExhausted;
            return step;
        }
        st.w1 = st.ws.front();
        st.x1 = -1;
        for (Vertex c : t.children[st.w1]) {
            if (!st.y[c]) {
                st.x1 = c;
                break;
            }
        }
        if (st.x1 != -1) break;
        // every child subtree of w1 is already in Y: the distance-2 reading at
        // r clears w1 itself, so the whole branch is certified free
        add_subtree(st, st.x, st.w1);
        std::fill(st.y.begin(), st.y.end(), 0);
        st.y_owner = -1;
    }

    if (st.ws.size() == 1) {
        TransitionEvent ev = begin_event(st, 2, start_round, 1);
        for (Vertex v : st.tree.verts)
            if (st.y[v]) st.x[v] = 1;
        std::fill(st.y.begin(), st.y.end(), 0);
        st.y_owner = -1;
        for (Vertex v : st.vs) add_subtree(st, st.x, v);
        st.x[st.w1] = 1;
        st.r = st.w1;
        st.t2 += 1;
        st.phase = TransitionPhase::AtReference;
        finish_event(step, st, ev);
        step.play = st.r;
        return step;
    }
    st.phase = TransitionPhase::ProbeX1;
    st.transition_start = start_round;
    step.play = st.x1;
    return step;
}

}  // namespace

int TransitionState::x_size() const { return count_set(x); }
int TransitionState::y_size() const { return count_set(y); }

TransitionState make_transition_state(const Graph& g, Vertex root) {
    TransitionState st;
    st.tree = root_tree(g, root, root);
    st.r = root;
    st.x.assign(g.order(), 0);
    st.y.assign(g.order(), 0);
    return st;
}

TransitionStep transition_cat_next(TransitionState& st, const std::optional<Observation>& obs) {
    if (!obs) {
        if (st.rounds_used != 0)
            throw StrategyError("observation missing after the opening round");
        st.rounds_used = 1;
        TransitionStep step;
        step.play = st.r;
        return step;
    }
    if (st.rounds_used == 0) throw StrategyError("unexpected observation before the opening round");
    if (obs->cls == DistClass::Zero) {
        TransitionStep step;
        step.kind = TransitionStep::Kind::Capture;
        return step;
    }
    if (obs->cls != DistClass::One && obs->cls != DistClass::TwoPlus)
        throw StrategyError("the certified-region strategy needs the coarse distance classes");

    const int round_obs = st.rounds_used;  // the round this observation describes
    TransitionStep step;
    switch (st.phase) {
    case TransitionPhase::AtReference:
        if (obs->cls == DistClass::One) {
            st.transition_start = round_obs;
            st.phase = TransitionPhase::RepeatAfterOne;
            step.play = st.r;
        } else {
            step = classify_and_play(st, round_obs);
        }
        break;
    case TransitionPhase::RepeatAfterOne:
        if (obs->cls == DistClass::One)
            throw StrategyError("the mouse must move: distance one twice at the reference");
        {
            TransitionEvent ev = begin_event(st, 1, st.transition_start, 1);
            std::fill(st.y.begin(), st.y.end(), 0);
            st.y_owner = -1;
            st.t1 += 1;
            finish_event(step, st, ev);
        }
        {
            TransitionStep cont = classify_and_play(st, round_obs);
            cont.events.insert(cont.events.begin(), step.events.begin(), step.events.end());
            step = std::move(cont);
        }
        break;
    case TransitionPhase::ProbeX1:
        if (!obs->cmp)
            throw StrategyError("the probe needs the comparison bit");
        if (*obs->cmp == DistCmp::NotGreater) {
            TransitionEvent ev = begin_event(st, 3, st.transition_start, 2);
            for (Vertex v : st.vs) add_subtree(st, st.x, v);
            for (std::size_t i = 1; i < st.ws.size(); ++i) add_subtree(st, st.x, st.ws[i]);
            std::fill(st.y.begin(), st.y.end(), 0);
            st.y_owner = -1;
            st.t3 += 1;
            st.phase = TransitionPhase::AtReference;
            finish_event(step, st, ev);
            step.play = st.r;
        } else {
            st.phase = TransitionPhase::ReturnAfterGreater;
            step.play = st.r;
        }
        break;
    case TransitionPhase::ReturnAfterGreater:
        if (obs->cls == DistClass::One) {
            TransitionEvent ev = begin_event(st, 3, st.transition_start, 2);
            for (Vertex v : st.vs) add_subtree(st, st.x, v);
            add_subtree(st, st.x, st.w1);
            std::fill(st.y.begin(), st.y.end(), 0);
            st.y_owner = -1;
            st.t3 += 1;
            finish_event(step, st, ev);
            st.transition_start = round_obs;
            st.phase = TransitionPhase::RepeatAfterOne;
            step.play = st.r;
        } else {
            TransitionEvent ev = begin_event(st, 4, st.transition_start, 2);
            for (Vertex v : st.vs) add_subtree(st, st.x, v);
            add_subtree(st, st.y, st.x1);
            st.y_owner = st.w1;
            st.t4 += 1;
            finish_event(step, st, ev);
            TransitionStep cont = classify_and_play(st, round_obs);
            cont.events.insert(cont.events.begin(), step.events.begin(), step.events.end());
            step = std::move(cont);
        }
        break;
    }
    if (step.kind == TransitionStep::Kind::Play) st.rounds_used += 1;
    return step;
}

TransitionCat::TransitionCat(const Graph& g, RuleSet rules, Vertex root) {
    if (rules.channel != FeedbackChannel::CoarseCmp || rules.movement != MovementRule::MustMove)
        throw StrategyError("the certified-region strategy needs coarse-compare, must-move rules");
    if (root == -1) root = components(g).front().front();
    st_ = make_transition_state(g, root);
}

Vertex TransitionCat::next(const std::optional<Observation>& obs) {
    TransitionStep step = transition_cat_next(st_, obs);
    events_.insert(events_.end(), step.events.begin(), step.events.end());
    switch (step.kind) {
    case TransitionStep::Kind::Play:
        return step.play;
    case TransitionStep::Kind::Capture:
        throw StrategyError("asked to move after the capture");
    case TransitionStep::Kind::ComponentExhausted:
    default:
        throw StrategyError("component exhausted: the mouse is provably not here");
    }
}

std::vector<TransitionEvent> TransitionCat::drain_events() {
    std::vector<TransitionEvent> out;
    out.swap(events_);
    return out;
}

static std::string transition_key(const TransitionState& st) {
    std::ostringstream key;
    key << static_cast<int>(st.phase) << ':' << st.r << ':' << st.w1 << ':' << st.x1 << ':';
    for (Vertex v : st.tree.verts) key << (st.x[v] ? '1' : '0');
    key << ':';
    for (Vertex v : st.tree.verts) key << (st.y[v] ? '1' : '0');
    return key.str();
}

std::optional<std::string> TransitionCat::memo_key() const { return transition_key(st_); }

long transition_round_bound(int n) { return 12L * n * n - 16L * n + 5; }

ForestCat::ForestCat(const Graph& g, RuleSet rules) : g_(g) {
    if (rules.channel != FeedbackChannel::CoarseCmp || rules.movement != MovementRule::MustMove)
        throw StrategyError("the certified-region strategy needs coarse-compare, must-move rules");
    if (!is_forest(g_).forest) throw StrategyError("the component-by-component cat needs a forest");
    comps_ = components(g_);
    if (comps_.empty()) throw StrategyError("empty graph");
    start_component();
}

void ForestCat::start_component() {
    const auto& comp = comps_[ci_];
    Vertex root = *std::min_element(comp.begin(), comp.end());
    st_ = make_transition_state(g_, root);
    budget_ = transition_round_bound(static_cast<int>(comp.size()));
    round_offset_ = global_rounds_;
}

Vertex ForestCat::next(const std::optional<Observation>& obs) {
    for (;;) {
        if (st_->rounds_used >= budget_) {
            // round budget spent without capture: the mouse is elsewhere
            if (++ci_ >= comps_.size())
                throw StrategyError("every component exhausted without a capture");
            start_component();
        }
        // a freshly started component begins its own observation history
        std::optional<Observation> pass = st_->rounds_used == 0 ? std::nullopt : obs;
        TransitionStep step = transition_cat_next(*st_, pass);
        for (TransitionEvent ev : step.events) {
            ev.start_round += round_offset_;
            events_.push_back(ev);
        }
        switch (step.kind) {
        case TransitionStep::Kind::Play:
            ++global_rounds_;
            return step.play;
        case TransitionStep::Kind::Capture:
            throw StrategyError("asked to move after the capture");
        case TransitionStep::Kind::ComponentExhausted:
            if (++ci_ >= comps_.size())
                throw StrategyError("every component exhausted without a capture");
            start_component();
            break;
        }
    }
}

std::vector<TransitionEvent> ForestCat::drain_events() {
    std::vector<TransitionEvent> out;
    out.swap(events_);
    return out;
}

std::optional<std::string> ForestCat::memo_key() const {
    std::ostringstream key;
    key << 'F' << ci_ << ':' << st_->rounds_used << ':' << transition_key(*st_);
    return key.str();
}

TstarWeakenedCat::TstarWeakenedCat(const Graph& g, FeedbackChannel channel) : channel_(channel) {
    if (channel_ != FeedbackChannel::Coarse && channel_ != FeedbackChannel::CmpOnly)
        throw StrategyError("this cat is built for the coarse or compare-only channels");
    if (!(g == make_named("t_star")))
        throw StrategyError("this cat only knows the three-legs-of-three spider");
}

bool TstarWeakenedCat::certified(const Observation& obs) const {
    if (channel_ == FeedbackChannel::Coarse) return obs.cls == DistClass::TwoPlus;
    return obs.cmp && *obs.cmp == DistCmp::Greater;
}

bool TstarWeakenedCat::identified(const Observation& obs) const {
    if (channel_ == FeedbackChannel::Coarse) return obs.cls == DistClass::One;
    return obs.cmp && *obs.cmp == DistCmp::NotGreater;
}

Vertex TstarWeakenedCat::next(const std::optional<Observation>& obs) {
    if (++probes_ > 64) throw StrategyError("the spider hunt did not converge");
    if (!obs) return 0;  // opening probe at the center
    if (obs->cls == DistClass::Zero) throw StrategyError("asked to move after the capture");
    switch (phase_) {
    case Phase::Certify:
        if (!certified(*obs)) return 0;
        while (leg_ < 3 && gone_[leg_]) ++leg_;
        if (leg_ >= 3) throw StrategyError("every leg eliminated yet no capture");
        phase_ = Phase::Excursion;
        return 3 * leg_ + 2;  // the leg's middle vertex
    case Phase::Excursion:
        if (identified(*obs)) {
            // the mouse sits next to this middle vertex: sweep the leg
            phase_ = Phase::Endgame;
            endgame_i_ = 0;
            return 0;
        }
        gone_[leg_] = true;
        leg_ = 0;
        phase_ = Phase::Certify;
        if (gone_[0] && gone_[1] && gone_[2])
            throw StrategyError("every leg eliminated yet no capture");
        return 0;  // re-certify from the center
    case Phase::Endgame:
    default:
        ++endgame_i_;
        if (endgame_i_ > 3) throw StrategyError("finishing sweep ended without a capture");
        return 3 * leg_ + endgame_i_;  // inner, middle, tip
    }
}

std::optional<std::string> TstarWeakenedCat::memo_key() const {
    std::ostringstream key;
    key << 'W' << static_cast<int>(phase_) << ':' << leg_ << ':' << gone_[0] << gone_[1]
        << gone_[2] << ':' << endgame_i_;
    return key.str();
}

SeagerDemoCat::SeagerDemoCat(const Graph& g) {
    if (!(g == make_named("t_star")))
        throw StrategyError("this script only knows the three-legs-of-three spider");
}

Vertex SeagerDemoCat::next(const std::optional<Observation>&) {
    static constexpr Vertex script[7] = {0, 2, 0, 5, 0, 8, 0};
    if (i_ >= 7) throw StrategyError("the seven-move demonstration is over");
    return script[i_++];
}

std::optional<std::string> SeagerDemoCat::memo_key() const {
    return "D" + std::to_string(i_);
}

SolverCat::SolverCat(const Graph& g, RuleSet rules, SolveLimits limits)
    : solver_(g, rules, limits), s_(solver_.initial_state()) {
    if (!solver_.result().cat_wins)
        throw StrategyError("no forced capture exists here: the mouse wins this variant");
}

Vertex SolverCat::next(const std::optional<Observation>& obs) {
    if (obs) s_ = solver_.advance(s_, last_, *obs);
    last_ = solver_.optimal_move(s_);
    return last_;
}

}  // namespace catmouse
