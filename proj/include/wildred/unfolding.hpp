#ifndef WILDRED_UNFOLDING_HPP
#define WILDRED_UNFOLDING_HPP

#include <cstdint>
#include <vector>

#include "wildred/orbitflat.hpp"

namespace wildred {

/// Pole positions for splitting an order-s principal part into s simple
/// poles. The source must be Cartan-valued; the epsilons must be pairwise
/// distinct and satisfy the centralizer condition (each unfolded residue
/// centralizes exactly the matching fission Levi).
struct UnfoldingConfig {
    std::vector<Rat> epsilons;
    PrincipalPart source;
};

struct UnfoldedResidues {
    std::vector<AlgElement> residues;  // Cartan-valued, one per epsilon
};

/// Builds a config with epsilons 0,1,...,s-1, nudging the last epsilon
/// upward until the centralizer condition holds.
UnfoldingConfig make_unfolding_config(const LieAlgebra& g, const PrincipalPart& source);

/// Residues of the partial-fraction unfolding; their sum is exactly the
/// residue of the source.
UnfoldedResidues unfold_residues(const LieAlgebra& g, const UnfoldingConfig& cfg);

/// A point of the order-s orbit mapped into a tuple of s simple-pole orbit
/// points (one per unfolded residue, which are their markings).
struct UnfoldedTuple {
    UnfoldedResidues residues;
    std::vector<OrbitPoint> components;
};

/// Splits an orbit point over cfg.source into tame components whose values
/// sum to the residue of p. Supported for s <= 2.
UnfoldedTuple unfolding_map(const LieAlgebra& g, const OrbitPoint& p,
                            const UnfoldingConfig& cfg);

/// Big-cell membership of the witness ratios M_i M_0^{-1}, i >= 1, tested
/// via leading principal minors in the defining representation.
bool image_membership(const LieAlgebra& g, const std::vector<OrbitPoint>& components);

/// Two regular Cartan residues and a Weyl twist describing a pair of simple
/// poles colliding into one order-2 pole.
struct ConfluenceData {
    AlgElement lambda;      // residue of the first simple pole; also the
                            // leading coefficient after collision
    AlgElement lambda_bar;  // residue of the second simple pole
    WeylElement twist;
};

/// Residue lambda + twist^{-1}(lambda_bar) over leading coefficient lambda.
PrincipalPart coalesced_normal_form(const LieAlgebra& g, const ConfluenceData& data);

struct ConfluencePair {
    OrbitPoint first;   // on the orbit of lambda
    OrbitPoint second;  // on the orbit of lambda_bar
};

/// Chart inverse: splits an order-2 orbit point into the pair of tame orbit
/// points it coalesces from.
ConfluencePair confluence_project(const LieAlgebra& g, const ConfluenceData& data,
                                  const OrbitPoint& p);

/// Partial embedding of a tame pair into the order-2 orbit; throws
/// chart_miss when the pair sits outside the cell of the given twist.
OrbitPoint confluence_embed(const LieAlgebra& g, const ConfluenceData& data,
                            const ConfluencePair& pair);

/// Evidence that a three-point configuration unfolds to a tame
/// configuration with the expected residue sums and generic moment rank.
struct BridgeCertificate {
    std::vector<UnfoldingConfig> configs;      // one per point
    std::vector<UnfoldedResidues> per_point;
    bool residue_sums_ok = false;
    WildConfig tame;
    RankReport rank_evidence;
};

BridgeCertificate unfolded_flatness_bridge(const LieAlgebra& g, const WildConfig& config,
                                           std::size_t n_samples, std::uint64_t seed);

}  // namespace wildred

#endif
