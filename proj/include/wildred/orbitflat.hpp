#ifndef WILDRED_ORBITFLAT_HPP
#define WILDRED_ORBITFLAT_HPP

#include <optional>
#include <random>
#include <string>

#include "wildred/matgroup.hpp"
#include "wildred/normalform.hpp"

namespace wildred {

/// A wild configuration on the sphere: marked Cartan-valued normal forms.
struct WildPoint {
    std::string label;
    PrincipalPart marked;
};

struct WildConfig {
    std::vector<WildPoint> points;
    bool semisimple_flag = true;
};

/// Orbit point with the group witness that produced it from the marking.
struct OrbitPoint {
    std::size_t base_index = 0;
    PrincipalPart value;
    GroupWord word;
    TruncatedCurrent birkhoff;
};

enum class FlatnessKind { holds, fails, unsupported };

struct FlatnessVerdict {
    std::vector<std::size_t> nus;
    Rat chi;
    FlatnessKind verdict = FlatnessKind::fails;
    std::string clause;
};

struct RankReport {
    std::size_t min_rank = 0, max_rank = 0, full_rank = 0;
    std::vector<std::size_t> per_sample;
};

/// Chart coordinates around a marked normal form (times a Weyl translate).
struct DarbouxDatum {
    MatOs u_plus;          // block-upper unipotent over O_s
    PrincipalPart y;       // opposite-nilradical-valued transfer term
    PrincipalPart a_sub;   // Levi-valued part (L_1-orbit coordinate)
};

/// Requires Cartan-valued markings with distinct labels.
void validate_config(const LieAlgebra& g, const WildConfig& config);

/// Deterministic orbit sampling: short root-group words and small Birkhoff
/// exponents from the seeded generator.
OrbitPoint orbit_sample(const LieAlgebra& g, const WildConfig& config, std::size_t index,
                        std::mt19937_64& rng);

Rat kks_pairing(const LieAlgebra& g, const OrbitPoint& p, const TruncatedCurrent& x,
                const TruncatedCurrent& y);

/// Sum of residues.
AlgElement moment(const LieAlgebra& g, const std::vector<OrbitPoint>& points);

/// Exact ranks of the moment differential restricted to the orbit-product
/// tangent spaces, at seeded samples.
RankReport moment_rank(const LieAlgebra& g, const WildConfig& config, std::size_t n_samples,
                       std::uint64_t seed);

FlatnessVerdict flatness_verdict(const LieAlgebra& g, const WildConfig& config);

/// Defining-representation block sizes of the Levi of the marking's top
/// coefficient; requires equal diagonal entries to be contiguous.
std::vector<std::size_t> levi_block_sizes(const LieAlgebra& g, const AlgElement& top);

/// Factorization m = h * u_minus * u_plus of the inverse-witness matrix with
/// h in the lifted Levi group; chart_miss outside the big cell.
BigCellFactors big_cell_factorize(const LieAlgebra& g, const GroupWord& word,
                                  const TruncatedCurrent& birkhoff,
                                  const std::vector<std::size_t>& block_sizes);

/// Y' = Gamma_{exp(x)}(abar) - abar for x valued in the opposite nilradical
/// of the Levi of abar's top coefficient.
PrincipalPart nilpotent_transfer(const LieAlgebra& g, const TruncatedCurrent& x_minus,
                                 const PrincipalPart& abar);
/// Exact inverse by graded defect correction; requires the top coefficient
/// to pair nonzero with every nilradical root.
TruncatedCurrent nilpotent_transfer_inverse(const LieAlgebra& g, const PrincipalPart& y,
                                            const PrincipalPart& abar);

/// Forward chart map: value = Gamma_{u_plus^{-1} applied after the lower and
/// Levi factors} of the marking; origin maps to a_sub itself.
PrincipalPart darboux_forward(const LieAlgebra& g, const DarbouxDatum& d);
/// Inverse on the chart image via the reversed block factorization of the
/// acting matrix; chart_miss outside the cell.
DarbouxDatum darboux_inverse(const LieAlgebra& g, const OrbitPoint& p,
                             const PrincipalPart& marked);

/// Rank report for the Cartan projection of the moment differential;
/// requires the final Levi of the fission to be the torus.
RankReport composite_moment_rank(const LieAlgebra& g, const WildConfig& config,
                                 std::size_t point_index, std::size_t n_samples,
                                 std::uint64_t seed);

/// Constructive preimage of a moment value on a product of three orbits with
/// nu >= 1 each; rank-one algebras only.
std::vector<OrbitPoint> moment_preimage_three_orbits(const LieAlgebra& g,
                                                     const AlgElement& target,
                                                     const WildConfig& config);

} // namespace wildred

#endif
