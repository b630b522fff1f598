#ifndef ABSLOG_DOMAIN_HPP
#define ABSLOG_DOMAIN_HPP

#include <memory>
#include <optional>
#include <string>

#include "abslog/galois.hpp"
#include "abslog/lattice.hpp"
#include "abslog/monoid.hpp"
#include "abslog/regcmd.hpp"

namespace abslog {

// Shape of a carrier, used to parse and print value literals.
struct CarrierShape {
    enum class Kind { States, Interval, Hyper, Down, Pair, Point };
    Kind kind = Kind::Interval;
    std::vector<CarrierShape> inner; // Hyper/Down: 1 element; Pair: 2

    static CarrierShape states() { return {Kind::States, {}}; }
    static CarrierShape interval() { return {Kind::Interval, {}}; }
    static CarrierShape point() { return {Kind::Point, {}}; }
    static CarrierShape hyper(CarrierShape in) { return {Kind::Hyper, {std::move(in)}}; }
    static CarrierShape down(CarrierShape in) { return {Kind::Down, {std::move(in)}}; }
    static CarrierShape pair(CarrierShape c, CarrierShape a) {
        return {Kind::Pair, {std::move(c), std::move(a)}};
    }
};

// An interpretation monoid instance: a complete lattice with a pointed join
// basis, an infinitary sum, elementary transfers, and capability flags.
struct DomainDescriptor {
    std::string spec;
    LatticeDescriptor lattice;
    MonoidDescriptor monoid;
    // Elementary transfer: exact join extension of the basis semantics,
    // total on the whole carrier (not just basis elements).
    std::function<Value(const ElcAtom&, const Value&)> elementary_transfer;

    // Capability flags.
    bool dense_fast_path = false;    // mirrored into lattice
    bool oplus_idempotent = false;   // mirrored into monoid
    bool equals_lattice_join = false;
    bool reflects_density = false;
    bool additive_semantics = false; // inductive semantics agrees with full
    bool prefer_inductive = false;   // route full evaluation through isem
    bool widenable = false;          // interval-shaped: widening applies

    std::optional<FinStateSpace> space;
    GaloisInsertionPtr gi; // pointwise/product instances only
    CarrierShape shape;
};

using DomainPtr = std::shared_ptr<const DomainDescriptor>;

// Domain spec strings (':' accepted in place of parentheses):
//   collecting(x:-2..2), incorrectness(x:-2..1002),
//   interval(simple), interval(irreducible),
//   hyper(collecting(x:0..3)), downclosed(hyper(interval(irreducible))),
//   pointwise(GI-SPEC), product(GI-SPEC)
DomainPtr make_domain(const std::string& spec);

// ---------------------------------------------------------------------------
// Elementary transfers.
// ---------------------------------------------------------------------------

// Strongest post of one elementary command on a finite state set; states
// pushed outside the space by an assignment are dropped.
StateSet post_elementary(const ElcAtom& e, const StateSet& X, const FinStateSpace& space);

// Exact best correct approximation of one elementary command on intervals;
// total, including unbounded inputs.
Interval interval_transfer(const ElcAtom& e, const Interval& a);

// ---------------------------------------------------------------------------
// Down-set generator algebra (inner carrier: intervals).
// ---------------------------------------------------------------------------

DownSet normalize_downset(DownSet d);
bool downset_leq(const DownSet& a, const DownSet& b);
DownSet downset_oplus(const DownSet& a, const DownSet& b);
DownSet downset_join(const DownSet& a, const DownSet& b);
DownSet downset_meet(const DownSet& a, const DownSet& b);
DownSet downset_omega(const DownSet& d);
DownSet downset_transfer(const ElcAtom& e, const DownSet& d);

// Down-closure of a hyperset of intervals, normalized to maximal generators.
DownSet abstract_down(const HyperSet& H);

// ---------------------------------------------------------------------------
// Abstraction constructors.
// ---------------------------------------------------------------------------

// Elementwise abstraction of a hyperset through a Galois insertion.
HyperSet abstract_pointwise(const GaloisInsertion& gi, const HyperSet& H);

// Product abstraction alpha_I(H) = <meet of H, join of alpha-images>.
Value abstract_product(const GaloisInsertion& gi, const HyperSet& H);

// Lift a concrete domain through a Galois insertion: transfers alpha.f.gamma,
// sum alpha(gamma(.) (+) gamma(.)), basis alpha(B).
DomainPtr bca_lift(const GaloisInsertionPtr& gi, const DomainPtr& base);

} // namespace abslog

#endif // ABSLOG_DOMAIN_HPP
