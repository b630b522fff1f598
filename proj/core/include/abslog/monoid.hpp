#ifndef ABSLOG_MONOID_HPP
#define ABSLOG_MONOID_HPP

#include <functional>
#include <string>
#include <vector>

#include "abslog/value.hpp"

namespace abslog {

// The infinitary monoidal sum of a carrier. `omega_sum` is the closed form
// of the sum of countably many copies of one element; it is absent (null)
// for carriers without one.
struct MonoidDescriptor {
    std::string carrier_tag;
    std::function<Value(const Value&, const Value&)> oplus_pair;
    std::function<Value()> neutral_fn;
    std::function<Value(const Value&)> omega_sum; // may be null
    bool idempotent = false;
    bool equals_lattice_join = false;

    Value neutral() const { return neutral_fn(); }
    Value omega(const Value& m) const {
        if (!omega_sum)
            throw UnsupportedInfiniteSum("no closed form for " + carrier_tag);
        return omega_sum(m);
    }
};

// Finite encoding of a countable index family of summands.
struct FamilySpec {
    enum class Kind { Finite, ConstantInfinite, EventuallyPeriodic };
    Kind kind = Kind::Finite;
    std::vector<Value> prefix; // Finite: the whole list; EventuallyPeriodic: prefix
    std::vector<Value> period; // EventuallyPeriodic only; non-empty
    Value element;             // ConstantInfinite only

    static FamilySpec finite(std::vector<Value> xs) {
        FamilySpec f;
        f.kind = Kind::Finite;
        f.prefix = std::move(xs);
        return f;
    }
    static FamilySpec constant_infinite(Value x) {
        FamilySpec f;
        f.kind = Kind::ConstantInfinite;
        f.element = std::move(x);
        return f;
    }
    static FamilySpec eventually_periodic(std::vector<Value> prefix, std::vector<Value> period) {
        if (period.empty()) throw EvalError("eventually-periodic family needs a non-empty period");
        FamilySpec f;
        f.kind = Kind::EventuallyPeriodic;
        f.prefix = std::move(prefix);
        f.period = std::move(period);
        return f;
    }
};

// Sum of a (finitely encoded) family. For the eventually-periodic case each
// period element occurs infinitely often, so the tail is the fold of
// omega_sum over the period, combined with the finite prefix.
Value oplus(const FamilySpec& family, const MonoidDescriptor& mon);

} // namespace abslog

#endif // ABSLOG_MONOID_HPP
