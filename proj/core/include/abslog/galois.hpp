#ifndef ABSLOG_GALOIS_HPP
#define ABSLOG_GALOIS_HPP

#include <functional>
#include <memory>
#include <string>

#include "abslog/lattice.hpp"
#include "abslog/regcmd.hpp"

namespace abslog {

// An adjoint pair (alpha, gamma) with alpha . gamma = id between a concrete
// powerset-of-states lattice and an abstract lattice, plus the closed-form
// best correct approximation of each elementary command on the abstract side.
struct GaloisInsertion {
    std::string spec;
    FinStateSpace space;
    LatticeDescriptor lower; // concrete: powerset of the state space
    LatticeDescriptor upper; // abstract carrier
    std::function<Value(const Value&)> alpha; // lower -> upper
    std::function<Value(const Value&)> gamma; // upper -> lower
    // alpha . post_e . gamma in closed form (total on the upper carrier).
    std::function<Value(const ElcAtom&, const Value&)> abstract_transfer;
    // Declared (trusted) flag: density of covers is reflected through gamma.
    bool reflects_density = false;
};

using GaloisInsertionPtr = std::shared_ptr<const GaloisInsertion>;

// Spec strings: "interval-over-powerset(x:-1024..1024)" (space optional,
// defaults to x:-1024..1024) and "trivial-top(...)" with the same space
// convention. ':' may be used instead of parentheses: "interval-over-powerset".
GaloisInsertionPtr make_gi(const std::string& spec);

} // namespace abslog

#endif // ABSLOG_GALOIS_HPP
