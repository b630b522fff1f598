#ifndef ABSLOG_LAWS_HPP
#define ABSLOG_LAWS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "abslog/domain.hpp"

namespace abslog {

// One sampled law: checked counts the instances actually exercised (samples
// that hit unsupported operations are skipped, not failed).
struct LawEntry {
    std::string law;
    size_t checked = 0;
    size_t failures = 0;
    std::string counterexample; // first failure, rendered

    bool pass() const { return failures == 0; }
};

struct LawReport {
    std::string subject;
    uint64_t seed = 0;
    std::vector<LawEntry> entries;

    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass()) return false;
        return true;
    }
};

// Order, join/meet and basis laws of the carrier lattice.
LawReport check_lattice_laws(const DomainDescriptor& dom, size_t samples, uint64_t seed);

// Monoid laws of the infinitary sum: associativity, commutativity, neutral
// element, declared idempotence, monotonicity, distributivity over joins,
// and consistency of the closed-form infinite sum with stabilized partial sums.
LawReport check_monoid_laws(const DomainDescriptor& dom, size_t samples, uint64_t seed);

// Insertion, adjunction, monotonicity, join preservation and transfer
// exactness of a Galois insertion.
LawReport check_galois_laws(const GaloisInsertion& gi, size_t samples, uint64_t seed);

// Program-level identities of the semantics: left expansion of the star,
// left distributivity of composition over choice, monotonicity of sem, and
// additivity on dense (basis) families.
LawReport check_program_laws(const DomainPtr& dom, size_t samples, uint64_t seed);

// Random command over the given variables, with bounded nesting depth.
RegCmdPtr random_program(std::mt19937_64& rng, const std::vector<std::string>& vars,
                         int max_depth);

} // namespace abslog

#endif // ABSLOG_LAWS_HPP
