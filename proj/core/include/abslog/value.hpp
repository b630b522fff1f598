#ifndef ABSLOG_VALUE_HPP
#define ABSLOG_VALUE_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "abslog/errors.hpp"

namespace abslog {

// ---------------------------------------------------------------------------
// Extended integers (bounds of intervals).
// ---------------------------------------------------------------------------

struct Bound {
    enum Kind : int8_t { NegInf = -1, Finite = 0, PosInf = 1 };
    Kind kind = Finite;
    int64_t v = 0;

    static Bound neg_inf() { return Bound{NegInf, 0}; }
    static Bound pos_inf() { return Bound{PosInf, 0}; }
    static Bound of(int64_t x) { return Bound{Finite, x}; }

    bool finite() const { return kind == Finite; }

    friend bool operator==(const Bound& a, const Bound& b) {
        return a.kind == b.kind && (a.kind != Finite || a.v == b.v);
    }
    friend bool operator!=(const Bound& a, const Bound& b) { return !(a == b); }
    friend bool operator<(const Bound& a, const Bound& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.kind == Finite && a.v < b.v;
    }
    friend bool operator<=(const Bound& a, const Bound& b) { return a < b || a == b; }

    // Shift by a finite amount; infinities absorb.
    Bound operator+(int64_t c) const { return finite() ? of(v + c) : *this; }
    Bound operator-(int64_t c) const { return finite() ? of(v - c) : *this; }
    // Negation swaps the infinities.
    Bound negate() const {
        if (kind == NegInf) return pos_inf();
        if (kind == PosInf) return neg_inf();
        return of(-v);
    }
};

inline Bound bound_min(const Bound& a, const Bound& b) { return a < b ? a : b; }
inline Bound bound_max(const Bound& a, const Bound& b) { return a < b ? b : a; }

// ---------------------------------------------------------------------------
// Intervals over the integers, possibly unbounded, possibly empty.
// ---------------------------------------------------------------------------

struct Interval {
    bool empty = true;
    Bound lo, hi; // meaningful only when !empty; invariant lo <= hi

    static Interval make_empty() { return Interval{}; }
    static Interval make(Bound lo, Bound hi) {
        if (hi < lo) return make_empty();
        return Interval{false, lo, hi};
    }
    static Interval singleton(int64_t z) { return make(Bound::of(z), Bound::of(z)); }
    static Interval whole() { return make(Bound::neg_inf(), Bound::pos_inf()); }

    bool is_singleton() const { return !empty && lo == hi && lo.finite(); }
    bool bounded() const { return empty || (lo.finite() && hi.finite()); }

    bool contains(int64_t z) const {
        return !empty && !(Bound::of(z) < lo) && !(hi < Bound::of(z));
    }
    bool subset_of(const Interval& o) const {
        if (empty) return true;
        if (o.empty) return false;
        return !(lo < o.lo) && !(o.hi < hi);
    }

    friend bool operator==(const Interval& a, const Interval& b) {
        if (a.empty || b.empty) return a.empty == b.empty;
        return a.lo == b.lo && a.hi == b.hi;
    }
    friend bool operator!=(const Interval& a, const Interval& b) { return !(a == b); }
};

inline Interval interval_hull(const Interval& a, const Interval& b) {
    if (a.empty) return b;
    if (b.empty) return a;
    return Interval::make(bound_min(a.lo, b.lo), bound_max(a.hi, b.hi));
}

inline Interval interval_meet(const Interval& a, const Interval& b) {
    if (a.empty || b.empty) return Interval::make_empty();
    return Interval::make(bound_max(a.lo, b.lo), bound_min(a.hi, b.hi));
}

// ---------------------------------------------------------------------------
// Finite state spaces and program states.
// ---------------------------------------------------------------------------

struct VarRange {
    std::string name;
    int64_t lo = 0, hi = 0; // inclusive
};

// A state is a tuple of variable values, ordered as in the space declaration.
using State = std::vector<int64_t>;

struct FinStateSpace {
    std::vector<VarRange> vars;
    static constexpr uint64_t kDefaultCap = 1000000;

    uint64_t state_count() const {
        uint64_t n = 1;
        for (const auto& v : vars) {
            uint64_t w = static_cast<uint64_t>(v.hi - v.lo + 1);
            if (w == 0 || n > kDefaultCap / w + 1) return kDefaultCap + 1;
            n *= w;
        }
        return n;
    }
    int index_of(const std::string& name) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i].name == name) return static_cast<int>(i);
        return -1;
    }
    bool in_range(const State& s) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (s[i] < vars[i].lo || s[i] > vars[i].hi) return false;
        return true;
    }
    std::vector<State> enumerate() const;
    std::vector<std::string> var_names() const {
        std::vector<std::string> out;
        for (const auto& v : vars) out.push_back(v.name);
        return out;
    }
};

// ---------------------------------------------------------------------------
// The value variant: one alternative per carrier in the domain zoo.
// ---------------------------------------------------------------------------

class Value;

// Finite set of states, kept sorted and duplicate-free.
struct StateSet {
    std::vector<State> states;
};

// Finite set of values of some inner carrier, kept sorted and duplicate-free.
struct HyperSet {
    std::vector<Value> members;
};

// The arithmetic progression of singleton generators start, start+step, ...
// (step > 0), used by the down-set carrier.
struct Progression {
    int64_t start = 0;
    int64_t step = 1;
    bool contains(int64_t z) const { return z >= start && (z - start) % step == 0; }
};

// A down-closed set represented by its generators: finitely many concrete
// inner-carrier values plus finitely many singleton progressions. The
// represented set is the union of the principal down-sets of all generators;
// no generators at all denotes the empty set (the lattice bottom).
struct DownSet {
    std::vector<Value> gens;
    std::vector<Progression> progs;
};

// A pair of a concrete-carrier component and an abstract-carrier component.
struct ProductPair {
    std::vector<Value> parts; // exactly two: [concrete, abstract]
};

// The unique point of a one-element abstract carrier.
struct TopPoint {};

class Value {
public:
    using Rep = std::variant<StateSet, Interval, HyperSet, DownSet, ProductPair, TopPoint>;

    Value() : rep_(Interval::make_empty()) {}
    Value(StateSet v) : rep_(std::move(v)) {}
    Value(Interval v) : rep_(std::move(v)) {}
    Value(HyperSet v) : rep_(std::move(v)) {}
    Value(DownSet v) : rep_(std::move(v)) {}
    Value(ProductPair v) : rep_(std::move(v)) {}
    Value(TopPoint v) : rep_(v) {}

    enum class Kind { StateSet, Interval, HyperSet, DownSet, ProductPair, TopPoint };
    Kind kind() const { return static_cast<Kind>(rep_.index()); }

    bool is_state_set() const { return kind() == Kind::StateSet; }
    bool is_interval() const { return kind() == Kind::Interval; }
    bool is_hyper() const { return kind() == Kind::HyperSet; }
    bool is_down() const { return kind() == Kind::DownSet; }
    bool is_pair() const { return kind() == Kind::ProductPair; }
    bool is_top_point() const { return kind() == Kind::TopPoint; }

    const StateSet& state_set() const { return expect<StateSet>("state set"); }
    const Interval& interval() const { return expect<Interval>("interval"); }
    const HyperSet& hyper() const { return expect<HyperSet>("hyperset"); }
    const DownSet& down() const { return expect<DownSet>("down-set"); }
    const ProductPair& pair() const { return expect<ProductPair>("product pair"); }

    const Value& pair_c() const { return pair().parts[0]; }
    const Value& pair_a() const { return pair().parts[1]; }

    friend int value_cmp(const Value& a, const Value& b);
    friend bool operator==(const Value& a, const Value& b) { return value_cmp(a, b) == 0; }
    friend bool operator!=(const Value& a, const Value& b) { return value_cmp(a, b) != 0; }
    friend bool operator<(const Value& a, const Value& b) { return value_cmp(a, b) < 0; }

private:
    template <typename T>
    const T& expect(const char* what) const {
        if (const T* p = std::get_if<T>(&rep_)) return *p;
        throw CarrierMismatch(std::string("expected ") + what);
    }
    Rep rep_;
};

inline Value make_pair_value(Value c, Value a) {
    ProductPair p;
    p.parts.push_back(std::move(c));
    p.parts.push_back(std::move(a));
    return Value(std::move(p));
}

// Total order on values (used to canonicalize sets of values).
int value_cmp(const Value& a, const Value& b);

// Canonicalization helpers.
StateSet normalize(StateSet s);
HyperSet normalize(HyperSet h);

// Set algebra on sorted state sets.
StateSet stateset_union(const StateSet& a, const StateSet& b);
StateSet stateset_intersect(const StateSet& a, const StateSet& b);
bool stateset_subset(const StateSet& a, const StateSet& b);

} // namespace abslog

#endif // ABSLOG_VALUE_HPP
