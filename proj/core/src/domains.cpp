#include <algorithm>
#include <memory>

#include "abslog/domain.hpp"

namespace abslog {

// ---------------------------------------------------------------------------
// Spec-string parsing.
// ---------------------------------------------------------------------------

namespace {

constexpr size_t kBasisEnumCap = 65536;
constexpr size_t kHyperOmegaCap = 20;

// Splits "head(arg)" (or "head:arg" or bare "head") into head and argument.
std::pair<std::string, std::string> split_spec(const std::string& spec) {
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto lp = s.find('(');
    if (lp != std::string::npos) {
        if (s.back() != ')') throw ParseError("unbalanced domain spec '" + spec + "'");
        return {s.substr(0, lp), s.substr(lp + 1, s.size() - lp - 2)};
    }
    auto colon = s.find(':');
    if (colon != std::string::npos) return {s.substr(0, colon), s.substr(colon + 1)};
    return {s, ""};
}

FinStateSpace parse_space(const std::string& text) {
    FinStateSpace space;
    size_t pos = 0;
    auto parse_int = [&](size_t& p) {
        size_t start = p;
        if (p < text.size() && (text[p] == '-' || text[p] == '+')) ++p;
        while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
        if (p == start) throw ParseError("expected an integer in state-space spec '" + text + "'");
        return std::stoll(text.substr(start, p - start));
    };
    while (pos < text.size()) {
        size_t colon = text.find(':', pos);
        if (colon == std::string::npos)
            throw ParseError("expected 'var:lo..hi' in state-space spec '" + text + "'");
        VarRange v;
        v.name = text.substr(pos, colon - pos);
        if (v.name.empty()) throw ParseError("empty variable name in state-space spec");
        size_t p = colon + 1;
        v.lo = parse_int(p);
        if (text.compare(p, 2, "..") != 0)
            throw ParseError("expected '..' in state-space spec '" + text + "'");
        p += 2;
        v.hi = parse_int(p);
        if (v.hi < v.lo) throw ParseError("empty range for variable '" + v.name + "'");
        space.vars.push_back(std::move(v));
        if (p < text.size()) {
            if (text[p] != ',') throw ParseError("expected ',' in state-space spec");
            ++p;
        }
        pos = p;
    }
    if (space.vars.empty()) throw ParseError("state space declares no variables");
    if (space.state_count() > FinStateSpace::kDefaultCap)
        throw EvalError("state space exceeds the size cap");
    return space;
}

StateSet all_states(const FinStateSpace& space) {
    StateSet s;
    s.states = space.enumerate();
    return s;
}

} // namespace

// ---------------------------------------------------------------------------
// Elementary transfers.
// ---------------------------------------------------------------------------

StateSet post_elementary(const ElcAtom& e, const StateSet& X, const FinStateSpace& space) {
    switch (e.kind) {
        case ElcAtom::Kind::Skip: return X;
        case ElcAtom::Kind::Diverge: return StateSet{};
        default: break;
    }
    int idx = space.index_of(e.var);
    if (idx < 0) throw EvalError("variable '" + e.var + "' not in the state space");
    StateSet out;
    for (const auto& s : X.states) {
        if (e.kind == ElcAtom::Kind::Filter) {
            if (e.bexp.holds(s[idx])) out.states.push_back(s);
            continue;
        }
        State t = s;
        switch (e.aexp.kind) {
            case AExp::Kind::Const: t[idx] = e.aexp.c; break;
            case AExp::Kind::Var: break;
            case AExp::Kind::AddC: t[idx] = s[idx] + e.aexp.c; break;
            case AExp::Kind::SubC: t[idx] = s[idx] - e.aexp.c; break;
            case AExp::Kind::Neg: t[idx] = -s[idx]; break;
        }
        if (space.in_range(t)) out.states.push_back(std::move(t));
    }
    return normalize(std::move(out));
}

Interval interval_transfer(const ElcAtom& e, const Interval& a) {
    switch (e.kind) {
        case ElcAtom::Kind::Skip: return a;
        case ElcAtom::Kind::Diverge: return Interval::make_empty();
        case ElcAtom::Kind::Assign:
            if (a.empty) return a;
            switch (e.aexp.kind) {
                case AExp::Kind::Const: return Interval::singleton(e.aexp.c);
                case AExp::Kind::Var: return a;
                case AExp::Kind::AddC: return Interval::make(a.lo + e.aexp.c, a.hi + e.aexp.c);
                case AExp::Kind::SubC: return Interval::make(a.lo - e.aexp.c, a.hi - e.aexp.c);
                case AExp::Kind::Neg: return Interval::make(a.hi.negate(), a.lo.negate());
            }
            return a;
        case ElcAtom::Kind::Filter: break;
    }
    if (a.empty) return a;
    const BExp& b = e.bexp;
    if (b.kind == BExp::Kind::Cmp) {
        switch (b.op) {
            case BExp::CmpOp::Lt:
                return interval_meet(a, Interval::make(Bound::neg_inf(), Bound::of(b.c - 1)));
            case BExp::CmpOp::Le:
                return interval_meet(a, Interval::make(Bound::neg_inf(), Bound::of(b.c)));
            case BExp::CmpOp::Gt:
                return interval_meet(a, Interval::make(Bound::of(b.c + 1), Bound::pos_inf()));
            case BExp::CmpOp::Ge:
                return interval_meet(a, Interval::make(Bound::of(b.c), Bound::pos_inf()));
            case BExp::CmpOp::Eq:
                return interval_meet(a, Interval::singleton(b.c));
            case BExp::CmpOp::Ne: {
                // Only an excluded endpoint tightens the hull.
                Interval r = a;
                if (r.is_singleton() && r.lo.v == b.c) return Interval::make_empty();
                if (r.lo == Bound::of(b.c)) r = Interval::make(r.lo + 1, r.hi);
                if (!r.empty && r.hi == Bound::of(b.c)) r = Interval::make(r.lo, r.hi - 1);
                return r;
            }
        }
        return a;
    }
    // Residue filter: tightest interval around the satisfying subset.
    int64_t m = b.m;
    auto matches = [&](int64_t v) { return (((v % m) + m) % m == ((b.r % m) + m) % m) != b.negated; };
    if (m == 1) return b.negated ? Interval::make_empty() : a;
    Bound lo = a.lo, hi = a.hi;
    if (lo.finite()) {
        int64_t v = lo.v;
        // The nearest satisfying value is at most m steps away.
        int64_t limit = hi.finite() ? hi.v : v + m;
        while (v <= limit && !matches(v)) ++v;
        if (v > limit && hi.finite()) return Interval::make_empty();
        lo = Bound::of(v);
    }
    if (hi.finite()) {
        int64_t v = hi.v;
        int64_t limit = lo.finite() ? lo.v : v - m;
        while (v >= limit && !matches(v)) --v;
        if (v < limit && lo.finite()) return Interval::make_empty();
        hi = Bound::of(v);
    }
    return Interval::make(lo, hi);
}

// ---------------------------------------------------------------------------
// Collecting and incorrectness instances (powerset of a finite state space).
// ---------------------------------------------------------------------------

namespace {

std::function<bool(const Value&)> stateset_in_carrier(const FinStateSpace& space) {
    return [space](const Value& v) {
        if (!v.is_state_set()) return false;
        for (const auto& s : v.state_set().states)
            if (s.size() != space.vars.size() || !space.in_range(s)) return false;
        return true;
    };
}

std::function<Value(std::mt19937_64&)> stateset_sampler(const FinStateSpace& space) {
    return [space](std::mt19937_64& rng) {
        StateSet out;
        size_t n = rng() % 7; // up to 6 states
        for (size_t i = 0; i < n; ++i) {
            State s;
            for (const auto& v : space.vars) {
                uint64_t w = static_cast<uint64_t>(v.hi - v.lo + 1);
                s.push_back(v.lo + static_cast<int64_t>(rng() % w));
            }
            out.states.push_back(std::move(s));
        }
        return Value(normalize(std::move(out)));
    };
}

DomainPtr make_collecting(const FinStateSpace& space, const std::string& spec) {
    auto d = std::make_shared<DomainDescriptor>();
    d->spec = spec;
    d->space = space;
    d->shape = CarrierShape::states();

    LatticeDescriptor& lat = d->lattice;
    lat.carrier_tag = "state set";
    lat.leq = [](const Value& a, const Value& b) {
        return stateset_subset(a.state_set(), b.state_set());
    };
    lat.bot_fn = [] { return Value(StateSet{}); };
    lat.top_fn = [space] { return Value(all_states(space)); };
    lat.join_family = [](const std::vector<Value>& f) {
        StateSet acc;
        for (const auto& v : f) acc = stateset_union(acc, v.state_set());
        return Value(std::move(acc));
    };
    lat.meet_family = [space](const std::vector<Value>& f) {
        if (f.empty()) return Value(all_states(space));
        StateSet acc = f[0].state_set();
        for (size_t i = 1; i < f.size(); ++i) acc = stateset_intersect(acc, f[i].state_set());
        return Value(std::move(acc));
    };
    lat.basis_kind = BasisKind::Irreducible;
    lat.enumerate_basis_below = [](const Value& v) -> std::optional<std::vector<Value>> {
        std::vector<Value> out{Value(StateSet{})};
        for (const auto& s : v.state_set().states) out.push_back(Value(StateSet{{s}}));
        return out;
    };
    lat.dense_fast_path = true;
    lat.in_carrier = stateset_in_carrier(space);
    lat.sample = stateset_sampler(space);

    MonoidDescriptor& mon = d->monoid;
    mon.carrier_tag = lat.carrier_tag;
    mon.oplus_pair = [](const Value& a, const Value& b) {
        return Value(stateset_union(a.state_set(), b.state_set()));
    };
    mon.neutral_fn = [] { return Value(StateSet{}); };
    mon.omega_sum = [](const Value& v) { return v; };
    mon.idempotent = true;
    mon.equals_lattice_join = true;

    d->elementary_transfer = [space](const ElcAtom& e, const Value& v) {
        return Value(post_elementary(e, v.state_set(), space));
    };
    d->dense_fast_path = true;
    d->oplus_idempotent = true;
    d->equals_lattice_join = true;
    d->additive_semantics = true;
    return d;
}

DomainPtr make_incorrectness(const FinStateSpace& space, const std::string& spec) {
    auto d = std::make_shared<DomainDescriptor>();
    d->spec = spec;
    d->space = space;
    d->shape = CarrierShape::states();

    LatticeDescriptor& lat = d->lattice;
    lat.carrier_tag = "state set (reversed order)";
    lat.leq = [](const Value& a, const Value& b) {
        return stateset_subset(b.state_set(), a.state_set());
    };
    lat.bot_fn = [space] { return Value(all_states(space)); };
    lat.top_fn = [] { return Value(StateSet{}); };
    lat.join_family = [space](const std::vector<Value>& f) {
        if (f.empty()) return Value(all_states(space));
        StateSet acc = f[0].state_set();
        for (size_t i = 1; i < f.size(); ++i) acc = stateset_intersect(acc, f[i].state_set());
        return Value(std::move(acc));
    };
    lat.meet_family = [](const std::vector<Value>& f) {
        StateSet acc;
        for (const auto& v : f) acc = stateset_union(acc, v.state_set());
        return Value(std::move(acc));
    };
    lat.basis_kind = BasisKind::Trivial;
    lat.enumerate_basis_below = [](const Value& v) -> std::optional<std::vector<Value>> {
        return std::vector<Value>{v};
    };
    lat.in_carrier = stateset_in_carrier(space);
    lat.sample = stateset_sampler(space);

    MonoidDescriptor& mon = d->monoid;
    mon.carrier_tag = lat.carrier_tag;
    mon.oplus_pair = [](const Value& a, const Value& b) {
        return Value(stateset_union(a.state_set(), b.state_set()));
    };
    mon.neutral_fn = [] { return Value(StateSet{}); };
    mon.omega_sum = [](const Value& v) { return v; };
    mon.idempotent = true;
    mon.equals_lattice_join = false; // the sum is union, the lattice join is intersection

    d->elementary_transfer = [space](const ElcAtom& e, const Value& v) {
        return Value(post_elementary(e, v.state_set(), space));
    };
    d->oplus_idempotent = true;
    d->additive_semantics = true; // trivial basis: full semantics is the basis semantics
    return d;
}

// ---------------------------------------------------------------------------
// Interval instances.
// ---------------------------------------------------------------------------

std::function<Value(std::mt19937_64&)> interval_sampler() {
    return [](std::mt19937_64& rng) {
        uint64_t roll = rng() % 20;
        if (roll == 0) return Value(Interval::make_empty());
        if (roll == 1) return Value(Interval::make(Bound::of(-(int64_t)(rng() % 5)), Bound::pos_inf()));
        if (roll == 2) return Value(Interval::make(Bound::neg_inf(), Bound::of((int64_t)(rng() % 5))));
        int64_t lo = static_cast<int64_t>(rng() % 17) - 8;
        int64_t w = static_cast<int64_t>(rng() % 7);
        return Value(Interval::make(Bound::of(lo), Bound::of(lo + w)));
    };
}

DomainPtr make_interval(bool irreducible, const std::string& spec) {
    auto d = std::make_shared<DomainDescriptor>();
    d->spec = spec;
    d->shape = CarrierShape::interval();

    LatticeDescriptor& lat = d->lattice;
    lat.carrier_tag = "interval";
    lat.leq = [](const Value& a, const Value& b) { return a.interval().subset_of(b.interval()); };
    lat.bot_fn = [] { return Value(Interval::make_empty()); };
    lat.top_fn = [] { return Value(Interval::whole()); };
    lat.join_family = [](const std::vector<Value>& f) {
        Interval acc = Interval::make_empty();
        for (const auto& v : f) acc = interval_hull(acc, v.interval());
        return Value(acc);
    };
    lat.meet_family = [](const std::vector<Value>& f) {
        Interval acc = Interval::whole();
        for (const auto& v : f) acc = interval_meet(acc, v.interval());
        return Value(acc);
    };
    lat.basis_kind = irreducible ? BasisKind::Irreducible : BasisKind::Trivial;
    if (irreducible) {
        lat.enumerate_basis_below = [](const Value& v) -> std::optional<std::vector<Value>> {
            const Interval& a = v.interval();
            std::vector<Value> out{Value(Interval::make_empty())};
            if (a.empty) return out;
            if (!a.bounded()) return std::nullopt;
            if (static_cast<uint64_t>(a.hi.v - a.lo.v) + 1 > kBasisEnumCap)
                throw EvalError("interval too wide for basis enumeration");
            for (int64_t z = a.lo.v; z <= a.hi.v; ++z)
                out.push_back(Value(Interval::singleton(z)));
            return out;
        };
    } else {
        lat.enumerate_basis_below = [](const Value& v) -> std::optional<std::vector<Value>> {
            return std::vector<Value>{v};
        };
    }
    lat.in_carrier = [](const Value& v) { return v.is_interval(); };
    lat.sample = interval_sampler();

    MonoidDescriptor& mon = d->monoid;
    mon.carrier_tag = lat.carrier_tag;
    mon.oplus_pair = [](const Value& a, const Value& b) {
        return Value(interval_hull(a.interval(), b.interval()));
    };
    mon.neutral_fn = [] { return Value(Interval::make_empty()); };
    mon.omega_sum = [](const Value& v) { return v; };
    mon.idempotent = true;
    mon.equals_lattice_join = true;

    d->elementary_transfer = [](const ElcAtom& e, const Value& v) {
        return Value(interval_transfer(e, v.interval()));
    };
    d->oplus_idempotent = true;
    d->equals_lattice_join = true;
    d->additive_semantics = !irreducible; // simple monoid: inductive = full
    d->widenable = true;
    return d;
}

// ---------------------------------------------------------------------------
// Hyper instances (powerset of a base carrier, selection-join sum).
// ---------------------------------------------------------------------------

bool hyper_subset(const HyperSet& a, const HyperSet& b) {
    return std::includes(b.members.begin(), b.members.end(), a.members.begin(), a.members.end(),
                         [](const Value& x, const Value& y) { return value_cmp(x, y) < 0; });
}

HyperSet hyper_union(const HyperSet& a, const HyperSet& b) {
    HyperSet out = a;
    out.members.insert(out.members.end(), b.members.begin(), b.members.end());
    return normalize(std::move(out));
}

HyperSet hyper_intersect(const HyperSet& a, const HyperSet& b) {
    HyperSet out;
    std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                          std::back_inserter(out.members),
                          [](const Value& x, const Value& y) { return value_cmp(x, y) < 0; });
    return out;
}

// Shared scaffolding for hyper-style domains: `base_join` joins two members,
// `base_bot` is the member-level bottom, `member_transfer` is the exact
// member-level semantics of one elementary command.
DomainPtr make_hyper_like(std::function<Value(const Value&, const Value&)> base_join,
                          std::function<Value()> base_bot,
                          std::function<bool(const Value&)> member_in_carrier,
                          std::function<Value(std::mt19937_64&)> member_sampler,
                          std::function<std::optional<std::vector<Value>>()> enumerate_members,
                          std::function<Value(const ElcAtom&, const Value&)> member_transfer,
                          CarrierShape member_shape, const std::string& spec) {
    auto d = std::make_shared<DomainDescriptor>();
    d->spec = spec;
    d->shape = CarrierShape::hyper(std::move(member_shape));

    LatticeDescriptor& lat = d->lattice;
    lat.carrier_tag = "hyperset";
    lat.leq = [](const Value& a, const Value& b) { return hyper_subset(a.hyper(), b.hyper()); };
    lat.bot_fn = [] { return Value(HyperSet{}); };
    lat.top_fn = [enumerate_members]() -> Value {
        auto all = enumerate_members();
        if (!all) throw EvalError("hyperset top is not materializable for this base carrier");
        HyperSet h;
        h.members = *all;
        return Value(normalize(std::move(h)));
    };
    lat.join_family = [](const std::vector<Value>& f) {
        HyperSet acc;
        for (const auto& v : f) acc = hyper_union(acc, v.hyper());
        return Value(std::move(acc));
    };
    lat.meet_family = [enumerate_members](const std::vector<Value>& f) -> Value {
        if (f.empty()) {
            auto all = enumerate_members();
            if (!all) throw EvalError("hyperset top is not materializable for this base carrier");
            HyperSet h;
            h.members = *all;
            return Value(normalize(std::move(h)));
        }
        HyperSet acc = f[0].hyper();
        for (size_t i = 1; i < f.size(); ++i) acc = hyper_intersect(acc, f[i].hyper());
        return Value(std::move(acc));
    };
    lat.basis_kind = BasisKind::Irreducible;
    lat.enumerate_basis_below = [](const Value& v) -> std::optional<std::vector<Value>> {
        std::vector<Value> out{Value(HyperSet{})};
        for (const auto& m : v.hyper().members) out.push_back(Value(HyperSet{{m}}));
        return out;
    };
    lat.dense_fast_path = true;
    lat.in_carrier = [member_in_carrier](const Value& v) {
        if (!v.is_hyper()) return false;
        for (const auto& m : v.hyper().members)
            if (!member_in_carrier(m)) return false;
        return true;
    };
    lat.sample = [member_sampler](std::mt19937_64& rng) {
        HyperSet h;
        size_t n = rng() % 4;
        for (size_t i = 0; i < n; ++i) h.members.push_back(member_sampler(rng));
        return Value(normalize(std::move(h)));
    };

    MonoidDescriptor& mon = d->monoid;
    mon.carrier_tag = lat.carrier_tag;
    mon.oplus_pair = [base_join](const Value& a, const Value& b) {
        HyperSet out;
        for (const auto& x : a.hyper().members)
            for (const auto& y : b.hyper().members) out.members.push_back(base_join(x, y));
        return Value(normalize(std::move(out)));
    };
    mon.neutral_fn = [base_bot] {
        HyperSet h;
        h.members.push_back(base_bot());
        return Value(std::move(h));
    };
    mon.omega_sum = [base_join](const Value& v) {
        const auto& ms = v.hyper().members;
        if (ms.size() > kHyperOmegaCap)
            throw UnsupportedInfiniteSum("hyperset too large for the selection-sum closed form");
        HyperSet out;
        for (uint64_t mask = 1; mask < (uint64_t{1} << ms.size()); ++mask) {
            std::optional<Value> acc;
            for (size_t i = 0; i < ms.size(); ++i)
                if (mask & (uint64_t{1} << i)) acc = acc ? base_join(*acc, ms[i]) : ms[i];
            out.members.push_back(std::move(*acc));
        }
        return Value(normalize(std::move(out)));
    };
    mon.idempotent = false;
    mon.equals_lattice_join = false;

    d->elementary_transfer = [member_transfer](const ElcAtom& e, const Value& v) {
        HyperSet out;
        for (const auto& m : v.hyper().members) out.members.push_back(member_transfer(e, m));
        return Value(normalize(std::move(out)));
    };
    d->dense_fast_path = true;
    return d;
}

DomainPtr make_hyper(const DomainPtr& base, const std::string& spec) {
    if (base->shape.kind != CarrierShape::Kind::States &&
        base->shape.kind != CarrierShape::Kind::Interval)
        throw ParseError("hyper expects a collecting or interval base domain");
    const LatticeDescriptor& bl = base->lattice;
    auto base_join = [bl](const Value& x, const Value& y) { return bl.join_family({x, y}); };
    auto base_bot = [bl] { return bl.bot(); };
    std::function<std::optional<std::vector<Value>>()> enum_members;
    if (base->space && base->space->state_count() <= 16) {
        FinStateSpace space = *base->space;
        enum_members = [space]() -> std::optional<std::vector<Value>> {
            auto states = space.enumerate();
            std::vector<Value> out;
            for (uint64_t mask = 0; mask < (uint64_t{1} << states.size()); ++mask) {
                StateSet s;
                for (size_t i = 0; i < states.size(); ++i)
                    if (mask & (uint64_t{1} << i)) s.states.push_back(states[i]);
                out.push_back(Value(normalize(std::move(s))));
            }
            return out;
        };
    } else {
        enum_members = []() -> std::optional<std::vector<Value>> { return std::nullopt; };
    }
    auto dom = make_hyper_like(base_join, base_bot, bl.in_carrier, bl.sample, enum_members,
                               base->elementary_transfer, base->shape, spec);
    auto mut = std::const_pointer_cast<DomainDescriptor>(dom);
    mut->space = base->space;
    return dom;
}

// ---------------------------------------------------------------------------
// Down-closed instance over hypersets of intervals.
// ---------------------------------------------------------------------------

DomainPtr make_downclosed(const std::string& arg, const std::string& spec) {
    auto [head, inner] = split_spec(arg);
    if (head != "hyper") throw ParseError("downclosed expects a hyper base domain");
    auto [ih, iarg] = split_spec(inner);
    if (ih != "interval")
        throw ParseError("downclosed supports only interval-based hyper domains");
    (void)iarg;

    auto d = std::make_shared<DomainDescriptor>();
    d->spec = spec;
    d->shape = CarrierShape::down(CarrierShape::interval());

    LatticeDescriptor& lat = d->lattice;
    lat.carrier_tag = "down-set";
    lat.leq = [](const Value& a, const Value& b) { return downset_leq(a.down(), b.down()); };
    lat.bot_fn = [] { return Value(DownSet{}); };
    lat.top_fn = [] {
        DownSet t;
        t.gens.push_back(Value(Interval::whole()));
        return Value(std::move(t));
    };
    lat.join_family = [](const std::vector<Value>& f) {
        DownSet acc;
        for (const auto& v : f) acc = downset_join(acc, v.down());
        return Value(std::move(acc));
    };
    lat.meet_family = [](const std::vector<Value>& f) {
        DownSet acc;
        acc.gens.push_back(Value(Interval::whole()));
        for (const auto& v : f) acc = downset_meet(acc, v.down());
        return Value(std::move(acc));
    };
    lat.basis_kind = BasisKind::Irreducible;
    lat.enumerate_basis_below = [](const Value& v) -> std::optional<std::vector<Value>> {
        const DownSet& ds = v.down();
        if (!ds.progs.empty()) return std::nullopt;
        std::vector<Value> out{Value(DownSet{})};
        std::vector<Value> inner;
        for (const auto& gv : ds.gens) {
            const Interval& g = gv.interval();
            inner.push_back(Value(Interval::make_empty()));
            if (g.empty) continue;
            if (!g.bounded()) return std::nullopt;
            uint64_t w = static_cast<uint64_t>(g.hi.v - g.lo.v) + 1;
            if (w * (w + 1) / 2 > kBasisEnumCap)
                throw EvalError("down-set too wide for basis enumeration");
            for (int64_t a = g.lo.v; a <= g.hi.v; ++a)
                for (int64_t b = a; b <= g.hi.v; ++b)
                    inner.push_back(Value(Interval::make(Bound::of(a), Bound::of(b))));
        }
        std::sort(inner.begin(), inner.end());
        inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
        for (const auto& x : inner) {
            DownSet p;
            p.gens.push_back(x);
            out.push_back(Value(std::move(p)));
        }
        return out;
    };
    lat.dense_fast_path = true;
    lat.in_carrier = [](const Value& v) { return v.is_down(); };
    lat.sample = [](std::mt19937_64& rng) {
        DownSet ds;
        size_t n = rng() % 3;
        auto iv = interval_sampler();
        for (size_t i = 0; i < n; ++i) {
            Value x = iv(rng);
            if (!x.interval().bounded()) x = Value(Interval::singleton(static_cast<int64_t>(rng() % 9) - 4));
            ds.gens.push_back(std::move(x));
        }
        return Value(normalize_downset(std::move(ds)));
    };

    MonoidDescriptor& mon = d->monoid;
    mon.carrier_tag = lat.carrier_tag;
    mon.oplus_pair = [](const Value& a, const Value& b) {
        return Value(downset_oplus(a.down(), b.down()));
    };
    mon.neutral_fn = [] {
        DownSet n;
        n.gens.push_back(Value(Interval::make_empty()));
        return Value(std::move(n));
    };
    mon.omega_sum = [](const Value& v) { return Value(downset_omega(v.down())); };
    mon.idempotent = false;
    mon.equals_lattice_join = false;

    d->elementary_transfer = [](const ElcAtom& e, const Value& v) {
        if (e.kind == ElcAtom::Kind::Diverge) {
            DownSet n;
            n.gens.push_back(Value(Interval::make_empty()));
            return Value(std::move(n));
        }
        return Value(downset_transfer(e, v.down()));
    };
    d->dense_fast_path = true;
    return d;
}

// ---------------------------------------------------------------------------
// Pointwise and product abstractions.
// ---------------------------------------------------------------------------

DomainPtr make_pointwise(const GaloisInsertionPtr& gi, const std::string& spec) {
    const LatticeDescriptor up = gi->upper;
    auto base_join = [up](const Value& x, const Value& y) { return up.join_family({x, y}); };
    auto base_bot = [up] { return up.bot(); };
    std::function<std::optional<std::vector<Value>>()> enum_members =
        [up]() -> std::optional<std::vector<Value>> {
        return up.enumerate_basis_below ? up.enumerate_basis_below(up.top()) : std::nullopt;
    };
    auto transfer = [gi](const ElcAtom& e, const Value& a) { return gi->abstract_transfer(e, a); };
    CarrierShape member_shape =
        gi->upper.basis_kind == BasisKind::Trivial && gi->spec.rfind("trivial-top", 0) == 0
            ? CarrierShape::point()
            : CarrierShape::interval();
    auto dom = make_hyper_like(base_join, base_bot, up.in_carrier, up.sample, enum_members,
                               transfer, member_shape, spec);
    auto mut = std::const_pointer_cast<DomainDescriptor>(dom);
    mut->gi = gi;
    mut->space = gi->space;
    mut->reflects_density = gi->reflects_density;
    return dom;
}

DomainPtr make_product(const GaloisInsertionPtr& gi, const std::string& spec) {
    auto d = std::make_shared<DomainDescriptor>();
    d->spec = spec;
    d->gi = gi;
    d->space = gi->space;
    CarrierShape ashape = gi->spec.rfind("trivial-top", 0) == 0 ? CarrierShape::point()
                                                                : CarrierShape::interval();
    d->shape = CarrierShape::pair(CarrierShape::states(), ashape);

    const LatticeDescriptor lo = gi->lower;
    const LatticeDescriptor up = gi->upper;
    GaloisInsertionPtr g = gi;

    LatticeDescriptor& lat = d->lattice;
    lat.carrier_tag = "concrete-abstract pair";
    lat.leq = [lo, up](const Value& a, const Value& b) {
        return lo.leq(b.pair_c(), a.pair_c()) && up.leq(a.pair_a(), b.pair_a());
    };
    lat.bot_fn = [lo, up] { return make_pair_value(lo.top(), up.bot()); };
    lat.top_fn = [lo, up] { return make_pair_value(lo.bot(), up.top()); };
    lat.join_family = [lo, up](const std::vector<Value>& f) {
        std::vector<Value> cs, as;
        for (const auto& v : f) { cs.push_back(v.pair_c()); as.push_back(v.pair_a()); }
        return make_pair_value(lo.meet_family(cs), up.join_family(as));
    };
    lat.meet_family = [lo, up](const std::vector<Value>& f) {
        std::vector<Value> cs, as;
        for (const auto& v : f) { cs.push_back(v.pair_c()); as.push_back(v.pair_a()); }
        return make_pair_value(lo.join_family(cs), up.meet_family(as));
    };
    lat.basis_kind = BasisKind::Irreducible;
    lat.enumerate_basis_below = [lo, up, g](const Value& v) -> std::optional<std::vector<Value>> {
        // Basis elements below <c,a>: pairs <X, alpha(X)> with c <= X <= gamma(a),
        // plus the bottom pair.
        const StateSet& c = v.pair_c().state_set();
        StateSet ga = g->gamma(v.pair_a()).state_set();
        if (!stateset_subset(c, ga)) return std::vector<Value>{make_pair_value(lo.top(), up.bot())};
        std::vector<State> extra;
        for (const auto& s : ga.states)
            if (!std::binary_search(c.states.begin(), c.states.end(), s,
                                    [](const State& x, const State& y) { return x < y; }))
                extra.push_back(s);
        if (extra.size() > 12) return std::nullopt;
        std::vector<Value> out{make_pair_value(lo.top(), up.bot())};
        for (uint64_t mask = 0; mask < (uint64_t{1} << extra.size()); ++mask) {
            StateSet X = c;
            for (size_t i = 0; i < extra.size(); ++i)
                if (mask & (uint64_t{1} << i)) X.states.push_back(extra[i]);
            Value xv(normalize(std::move(X)));
            out.push_back(make_pair_value(xv, g->alpha(xv)));
        }
        return out;
    };
    lat.dense_fast_path = true;
    lat.dense_fast_path_literal = false; // declared by construction; see README
    lat.in_carrier = [lo, up](const Value& v) {
        return v.is_pair() && lo.in_carrier(v.pair_c()) && up.in_carrier(v.pair_a());
    };
    lat.sample = [lo, up, g](std::mt19937_64& rng) {
        Value c = lo.sample(rng);
        Value a = up.join_family({g->alpha(c), up.sample(rng)});
        return make_pair_value(std::move(c), std::move(a));
    };

    MonoidDescriptor& mon = d->monoid;
    mon.carrier_tag = lat.carrier_tag;
    mon.oplus_pair = [lo, up](const Value& a, const Value& b) {
        return make_pair_value(lo.join_family({a.pair_c(), b.pair_c()}),
                               up.join_family({a.pair_a(), b.pair_a()}));
    };
    mon.neutral_fn = [lo, up] { return make_pair_value(lo.bot(), up.bot()); };
    mon.omega_sum = [](const Value& v) { return v; };
    mon.idempotent = true;
    mon.equals_lattice_join = false;

    d->elementary_transfer = [g](const ElcAtom& e, const Value& v) {
        if (e.kind == ElcAtom::Kind::Diverge)
            return make_pair_value(g->lower.bot(), g->upper.bot());
        return make_pair_value(
            Value(post_elementary(e, v.pair_c().state_set(), g->space)),
            g->abstract_transfer(e, v.pair_a()));
    };
    d->dense_fast_path = true;
    d->oplus_idempotent = true;
    d->additive_semantics = true;
    d->prefer_inductive = true;
    d->reflects_density = gi->reflects_density;
    return d;
}

} // namespace

HyperSet abstract_pointwise(const GaloisInsertion& gi, const HyperSet& H) {
    HyperSet out;
    for (const auto& m : H.members) out.members.push_back(gi.alpha(m));
    return normalize(std::move(out));
}

Value abstract_product(const GaloisInsertion& gi, const HyperSet& H) {
    std::vector<Value> members(H.members.begin(), H.members.end());
    Value c = gi.lower.meet_family(members);
    std::vector<Value> alphas;
    for (const auto& m : members) alphas.push_back(gi.alpha(m));
    Value a = gi.upper.join_family(alphas);
    return make_pair_value(std::move(c), std::move(a));
}

DomainPtr bca_lift(const GaloisInsertionPtr& gi, const DomainPtr& base) {
    auto d = std::make_shared<DomainDescriptor>();
    d->spec = "bca(" + gi->spec + "," + base->spec + ")";
    d->space = gi->space;
    d->gi = gi;
    d->shape = gi->spec.rfind("trivial-top", 0) == 0 ? CarrierShape::point()
                                                     : CarrierShape::interval();

    LatticeDescriptor baseLat = base->lattice;
    MonoidDescriptor baseMon = base->monoid;
    auto baseTransfer = base->elementary_transfer;
    GaloisInsertionPtr g = gi;

    d->lattice = gi->upper;
    d->lattice.enumerate_basis_below = [g, baseLat](const Value& a)
        -> std::optional<std::vector<Value>> {
        auto e = baseLat.enumerate_basis_below ? baseLat.enumerate_basis_below(g->gamma(a))
                                               : std::nullopt;
        if (!e) return std::nullopt;
        std::vector<Value> out;
        for (const auto& b : *e) out.push_back(g->alpha(b));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    d->lattice.dense_fast_path = false;

    d->monoid.carrier_tag = gi->upper.carrier_tag;
    d->monoid.oplus_pair = [g, baseMon](const Value& x, const Value& y) {
        return g->alpha(baseMon.oplus_pair(g->gamma(x), g->gamma(y)));
    };
    d->monoid.neutral_fn = [g, baseMon] { return g->alpha(baseMon.neutral()); };
    d->monoid.omega_sum = [g, baseMon](const Value& x) {
        return g->alpha(baseMon.omega(g->gamma(x)));
    };
    d->monoid.idempotent = baseMon.idempotent;
    d->monoid.equals_lattice_join = baseMon.equals_lattice_join;

    d->elementary_transfer = [g, baseTransfer](const ElcAtom& e, const Value& a) {
        return g->alpha(baseTransfer(e, g->gamma(a)));
    };
    d->oplus_idempotent = base->oplus_idempotent;
    d->equals_lattice_join = base->equals_lattice_join;
    d->reflects_density = gi->reflects_density;
    d->widenable = d->shape.kind == CarrierShape::Kind::Interval;
    return d;
}

DomainPtr make_domain(const std::string& spec) {
    auto [head, arg] = split_spec(spec);
    if (head == "collecting") return make_collecting(parse_space(arg), spec);
    if (head == "incorrectness") return make_incorrectness(parse_space(arg), spec);
    if (head == "interval") {
        if (arg == "simple") return make_interval(false, spec);
        if (arg == "irreducible") return make_interval(true, spec);
        throw ParseError("interval expects 'simple' or 'irreducible', got '" + arg + "'");
    }
    if (head == "hyper") return make_hyper(make_domain(arg), spec);
    if (head == "downclosed") return make_downclosed(arg, spec);
    if (head == "pointwise") return make_pointwise(make_gi(arg), spec);
    if (head == "product") return make_product(make_gi(arg), spec);
    throw ParseError("unknown domain spec '" + spec + "'");
}

} // namespace abslog
