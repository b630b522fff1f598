#include <algorithm>

#include "abslog/domain.hpp"
#include "abslog/galois.hpp"

namespace abslog {

namespace {

constexpr const char* kDefaultSpace = "x:-1024..1024";

std::pair<std::string, std::string> split_gi_spec(const std::string& spec) {
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto lp = s.find('(');
    if (lp != std::string::npos) {
        if (s.back() != ')') throw ParseError("unbalanced abstraction spec '" + spec + "'");
        return {s.substr(0, lp), s.substr(lp + 1, s.size() - lp - 2)};
    }
    return {s, ""};
}

GaloisInsertionPtr make_interval_over_powerset(const std::string& space_arg) {
    std::string space_spec = space_arg.empty() ? kDefaultSpace : space_arg;
    DomainPtr coll = make_domain("collecting(" + space_spec + ")");
    const FinStateSpace space = *coll->space;
    if (space.vars.size() != 1)
        throw ParseError("interval-over-powerset needs a single-variable state space");
    const int64_t lo = space.vars[0].lo, hi = space.vars[0].hi;
    const Interval range = Interval::make(Bound::of(lo), Bound::of(hi));

    auto gi = std::make_shared<GaloisInsertion>();
    gi->spec = "interval-over-powerset(" + space_spec + ")";
    gi->space = space;
    gi->lower = coll->lattice;
    gi->reflects_density = true;

    LatticeDescriptor& up = gi->upper;
    up.carrier_tag = "interval within " + space_spec;
    up.leq = [](const Value& a, const Value& b) { return a.interval().subset_of(b.interval()); };
    up.bot_fn = [] { return Value(Interval::make_empty()); };
    up.top_fn = [range] { return Value(range); };
    up.join_family = [](const std::vector<Value>& f) {
        Interval acc = Interval::make_empty();
        for (const auto& v : f) acc = interval_hull(acc, v.interval());
        return Value(acc);
    };
    up.meet_family = [range](const std::vector<Value>& f) {
        Interval acc = range;
        for (const auto& v : f) acc = interval_meet(acc, v.interval());
        return Value(acc);
    };
    up.basis_kind = BasisKind::Irreducible;
    up.enumerate_basis_below = [](const Value& v) -> std::optional<std::vector<Value>> {
        const Interval& a = v.interval();
        std::vector<Value> out{Value(Interval::make_empty())};
        if (!a.empty)
            for (int64_t z = a.lo.v; z <= a.hi.v; ++z) out.push_back(Value(Interval::singleton(z)));
        return out;
    };
    up.in_carrier = [range](const Value& v) {
        return v.is_interval() && v.interval().subset_of(range);
    };
    up.sample = [lo, hi](std::mt19937_64& rng) {
        if (rng() % 10 == 0) return Value(Interval::make_empty());
        uint64_t w = static_cast<uint64_t>(hi - lo + 1);
        int64_t a = lo + static_cast<int64_t>(rng() % w);
        int64_t b = a + static_cast<int64_t>(rng() % std::min<uint64_t>(w - (a - lo), 8));
        return Value(Interval::make(Bound::of(a), Bound::of(std::min(b, hi))));
    };

    gi->alpha = [space](const Value& v) {
        Interval acc = Interval::make_empty();
        for (const auto& s : v.state_set().states) acc = interval_hull(acc, Interval::singleton(s[0]));
        return Value(acc);
    };
    gi->gamma = [range](const Value& v) {
        Interval a = interval_meet(v.interval(), range);
        StateSet out;
        if (!a.empty)
            for (int64_t z = a.lo.v; z <= a.hi.v; ++z) out.states.push_back(State{z});
        return Value(std::move(out));
    };
    gi->abstract_transfer = [range](const ElcAtom& e, const Value& a) {
        if (e.kind == ElcAtom::Kind::Diverge) return Value(Interval::make_empty());
        Interval in = interval_meet(a.interval(), range);
        return Value(interval_meet(interval_transfer(e, in), range));
    };
    return gi;
}

GaloisInsertionPtr make_trivial_top(const std::string& space_arg) {
    std::string space_spec = space_arg.empty() ? kDefaultSpace : space_arg;
    DomainPtr coll = make_domain("collecting(" + space_spec + ")");
    const FinStateSpace space = *coll->space;

    auto gi = std::make_shared<GaloisInsertion>();
    gi->spec = "trivial-top(" + space_spec + ")";
    gi->space = space;
    gi->lower = coll->lattice;
    gi->reflects_density = false;

    LatticeDescriptor& up = gi->upper;
    up.carrier_tag = "one-point carrier";
    up.leq = [](const Value&, const Value&) { return true; };
    up.bot_fn = [] { return Value(TopPoint{}); };
    up.top_fn = [] { return Value(TopPoint{}); };
    up.join_family = [](const std::vector<Value>&) { return Value(TopPoint{}); };
    up.meet_family = [](const std::vector<Value>&) { return Value(TopPoint{}); };
    up.basis_kind = BasisKind::Trivial;
    up.enumerate_basis_below = [](const Value&) -> std::optional<std::vector<Value>> {
        return std::vector<Value>{Value(TopPoint{})};
    };
    up.in_carrier = [](const Value& v) { return v.is_top_point(); };
    up.sample = [](std::mt19937_64&) { return Value(TopPoint{}); };

    LatticeDescriptor lower = gi->lower;
    gi->alpha = [](const Value&) { return Value(TopPoint{}); };
    gi->gamma = [lower](const Value&) { return lower.top(); };
    gi->abstract_transfer = [](const ElcAtom&, const Value&) { return Value(TopPoint{}); };
    return gi;
}

} // namespace

GaloisInsertionPtr make_gi(const std::string& spec) {
    auto [head, arg] = split_gi_spec(spec);
    if (head == "interval-over-powerset") return make_interval_over_powerset(arg);
    if (head == "trivial-top") return make_trivial_top(arg);
    throw ParseError("unknown abstraction spec '" + spec + "'");
}

} // namespace abslog
