#include "abslog/value.hpp"

#include <algorithm>

namespace abslog {

std::vector<State> FinStateSpace::enumerate() const {
    if (state_count() > kDefaultCap)
        throw EvalError("state space exceeds the configured cap");
    std::vector<State> out;
    State cur(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) cur[i] = vars[i].lo;
    if (vars.empty()) return {State{}};
    // Vary the last variable fastest so the output is already sorted.
    for (;;) {
        out.push_back(cur);
        size_t i = vars.size();
        while (i > 0) {
            --i;
            if (cur[i] < vars[i].hi) {
                ++cur[i];
                for (size_t j = i + 1; j < vars.size(); ++j) cur[j] = vars[j].lo;
                break;
            }
            if (i == 0) return out;
        }
    }
}

namespace {

template <typename T>
int cmp3(const T& a, const T& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

int cmp_bound(const Bound& a, const Bound& b) {
    if (a == b) return 0;
    return a < b ? -1 : 1;
}

int cmp_state(const State& a, const State& b) {
    if (int c = cmp3(a.size(), b.size())) return c;
    for (size_t i = 0; i < a.size(); ++i)
        if (int c = cmp3(a[i], b[i])) return c;
    return 0;
}

template <typename Seq, typename Cmp>
int cmp_seq(const Seq& a, const Seq& b, Cmp cmp) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i)
        if (int c = cmp(a[i], b[i])) return c;
    return cmp3(a.size(), b.size());
}

} // namespace

int value_cmp(const Value& a, const Value& b) {
    if (int c = cmp3(static_cast<int>(a.kind()), static_cast<int>(b.kind()))) return c;
    switch (a.kind()) {
        case Value::Kind::StateSet:
            return cmp_seq(a.state_set().states, b.state_set().states, cmp_state);
        case Value::Kind::Interval: {
            const Interval &x = a.interval(), &y = b.interval();
            if (int c = cmp3(static_cast<int>(x.empty), static_cast<int>(y.empty))) return c;
            if (x.empty) return 0;
            if (int c = cmp_bound(x.lo, y.lo)) return c;
            return cmp_bound(x.hi, y.hi);
        }
        case Value::Kind::HyperSet:
            return cmp_seq(a.hyper().members, b.hyper().members, value_cmp);
        case Value::Kind::DownSet: {
            if (int c = cmp_seq(a.down().gens, b.down().gens, value_cmp)) return c;
            auto cmp_prog = [](const Progression& p, const Progression& q) {
                if (int c = cmp3(p.start, q.start)) return c;
                return cmp3(p.step, q.step);
            };
            return cmp_seq(a.down().progs, b.down().progs, cmp_prog);
        }
        case Value::Kind::ProductPair:
            return cmp_seq(a.pair().parts, b.pair().parts, value_cmp);
        case Value::Kind::TopPoint:
            return 0;
    }
    return 0;
}

StateSet normalize(StateSet s) {
    std::sort(s.states.begin(), s.states.end(),
              [](const State& a, const State& b) { return cmp_state(a, b) < 0; });
    s.states.erase(std::unique(s.states.begin(), s.states.end()), s.states.end());
    return s;
}

HyperSet normalize(HyperSet h) {
    std::sort(h.members.begin(), h.members.end());
    h.members.erase(std::unique(h.members.begin(), h.members.end()), h.members.end());
    return h;
}

StateSet stateset_union(const StateSet& a, const StateSet& b) {
    StateSet out;
    out.states.reserve(a.states.size() + b.states.size());
    std::set_union(a.states.begin(), a.states.end(), b.states.begin(), b.states.end(),
                   std::back_inserter(out.states),
                   [](const State& x, const State& y) { return cmp_state(x, y) < 0; });
    return out;
}

StateSet stateset_intersect(const StateSet& a, const StateSet& b) {
    StateSet out;
    std::set_intersection(a.states.begin(), a.states.end(), b.states.begin(), b.states.end(),
                          std::back_inserter(out.states),
                          [](const State& x, const State& y) { return cmp_state(x, y) < 0; });
    return out;
}

bool stateset_subset(const StateSet& a, const StateSet& b) {
    return std::includes(b.states.begin(), b.states.end(), a.states.begin(), a.states.end(),
                         [](const State& x, const State& y) { return cmp_state(x, y) < 0; });
}

} // namespace abslog
