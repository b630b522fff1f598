#include "abslog/monoid.hpp"

namespace abslog {

namespace {

Value fold_oplus(const std::vector<Value>& xs, const MonoidDescriptor& mon) {
    Value acc = mon.neutral();
    for (const auto& x : xs) acc = mon.oplus_pair(acc, x);
    return acc;
}

} // namespace

Value oplus(const FamilySpec& family, const MonoidDescriptor& mon) {
    switch (family.kind) {
        case FamilySpec::Kind::Finite:
            return fold_oplus(family.prefix, mon);
        case FamilySpec::Kind::ConstantInfinite:
            return mon.omega(family.element);
        case FamilySpec::Kind::EventuallyPeriodic: {
            Value acc = fold_oplus(family.prefix, mon);
            for (const auto& q : family.period) acc = mon.oplus_pair(acc, mon.omega(q));
            return acc;
        }
    }
    throw EvalError("unreachable family kind");
}

} // namespace abslog
