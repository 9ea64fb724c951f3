#ifndef WILDRED_STABILITY_HPP
#define WILDRED_STABILITY_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "wildred/orbitflat.hpp"

namespace wildred {

struct StabilityWitness {
    std::size_t omitted_simple = 0;            // the simple root cut out of the base
    std::vector<std::size_t> weyl_tuple;       // indices into the Weyl group, one per point
    Vec residue_sum;                           // the offending translated residue sum
};

struct StabilityVerdict {
    bool stable_certified = false;
    std::optional<StabilityWitness> witness_failure;
    std::size_t subsets_enumerated = 0;
    std::size_t tuples_enumerated = 0;
};

/// Sufficient stability criterion: over every maximal standard subsystem and
/// every Weyl tuple, some parabolic character must be nonzero on the sum of
/// translated residues.
StabilityVerdict stability_check(const LieAlgebra& g, const WildConfig& config);

/// Independent formulation: the translated residue sums must avoid every
/// coroot span of a maximal standard subsystem (membership by exact solve).
StabilityVerdict avoidance_check(const LieAlgebra& g, const WildConfig& config);

}  // namespace wildred

#endif
