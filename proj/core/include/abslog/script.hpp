#ifndef ABSLOG_SCRIPT_HPP
#define ABSLOG_SCRIPT_HPP

#include <string>

#include "abslog/logic.hpp"

namespace abslog {

// A derivation script: an s-expression carrying the domain, the triple and
// the proof. Example:
//
//   (triple
//     (domain interval(irreducible))
//     (pre [-1,1])
//     (cmd "(x<>0?);(x=0?)")
//     (post empty)
//     (proof (join (:cover [-1,0] [0,1])
//              (seq (basic) (basic) :mid [-1,-1])
//              (seq (basic) (basic) :mid [1,1]))))
//
// An optional (mode abstract GI-SPEC) form reinterprets the domain as the
// abstraction of the given domain through the named Galois insertion; all
// literals are then drawn from the abstract carrier.
struct Script {
    std::string domain_spec;
    bool abstract_mode = false;
    std::string gi_spec;
    std::string program_text;
    Triple triple;
    DerivationPtr proof;
};

Script parse_script(const std::string& text);
std::string write_script(const Triple& t, const DerivationNode& proof,
                         const std::string& program_text);

} // namespace abslog

#endif // ABSLOG_SCRIPT_HPP
