#include "abslog/lattice.hpp"

#include <algorithm>

namespace abslog {

Value combine(CombineKind kind, const std::vector<Value>& family, const LatticeDescriptor& lat) {
    if (lat.in_carrier)
        for (const auto& v : family)
            if (!lat.in_carrier(v))
                throw CarrierMismatch("element outside the " + lat.carrier_tag + " carrier");
    return kind == CombineKind::Join ? lat.join_family(family) : lat.meet_family(family);
}

std::vector<Value> basis_below(const Value& d, const LatticeDescriptor& lat) {
    if (lat.in_carrier && !lat.in_carrier(d))
        throw CarrierMismatch("element outside the " + lat.carrier_tag + " carrier");
    if (lat.basis_kind == BasisKind::Trivial) return {d};
    auto e = lat.enumerate_basis_below(d);
    if (!e) throw InfiniteBasisDecomposition(lat.carrier_tag + " element");
    return *e;
}

bool is_dense(const std::vector<Value>& family, const LatticeDescriptor& lat) {
    if (family.empty()) return false; // the empty family is never dense
    Value j = lat.join_family(family);
    if (lat.dense_fast_path) return true;
    if (lat.basis_kind == BasisKind::Trivial) {
        // Every element is a basis element; density reduces to the join
        // itself lying below some member.
        for (const auto& x : family)
            if (lat.le(j, x)) return true;
        return false;
    }
    auto e = lat.enumerate_basis_below(j);
    if (!e) throw InfiniteBasisDecomposition("join of the family under " + lat.carrier_tag);
    for (const auto& b : *e) {
        bool covered = false;
        for (const auto& x : family)
            if (lat.le(b, x)) { covered = true; break; }
        if (!covered) return false;
    }
    return true;
}

std::optional<size_t> weight_of(const Value& d, const LatticeDescriptor& lat, size_t bound) {
    std::vector<Value> e = basis_below(d, lat);
    // Discard bottom entries: they generate nothing beyond bottom itself.
    Value bot = lat.bot();
    e.erase(std::remove_if(e.begin(), e.end(),
                           [&](const Value& b) { return lat.eq(b, bot); }),
            e.end());
    if (e.empty()) return 0;

    // Dedupe order-equivalent entries, then keep the maximal ones. A cover
    // Y of ebase(d) must dominate every maximal element, and within ebase(d)
    // only the element itself can do that (antisymmetry), so the maxima form
    // the unique least cover.
    std::vector<Value> distinct;
    for (const auto& b : e) {
        bool seen = false;
        for (const auto& x : distinct)
            if (lat.eq(b, x)) { seen = true; break; }
        if (!seen) distinct.push_back(b);
    }
    size_t maxima = 0;
    for (size_t i = 0; i < distinct.size(); ++i) {
        bool strictly_below = false;
        for (size_t j = 0; j < distinct.size(); ++j)
            if (j != i && lat.le(distinct[i], distinct[j])) { strictly_below = true; break; }
        if (!strictly_below) ++maxima;
    }
    if (maxima > bound) return std::nullopt;
    return maxima;
}

} // namespace abslog
