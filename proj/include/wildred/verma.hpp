#ifndef WILDRED_VERMA_HPP
#define WILDRED_VERMA_HPP

#include <cstddef>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "wildred/normalform.hpp"
#include "wildred/tcla.hpp"

namespace wildred {

/// Nested chain of opposite standard parabolic pairs p^+-_i with common Levi
/// factors l_i (from fission), plus the graded nilradicals; balanced_flag is
/// the exact bracket-closure test of the graded spaces
/// u^+- = (+)_i u^+-_{s-i} w^i inside g_s.
struct ParabolicFiltration {
    std::size_t s = 1;
    std::vector<LeviSubsystem> levi_subsystems;                // l_i, i = 1..s
    std::vector<std::vector<std::size_t>> upper_nilradicals;   // u^+_i root indices
    std::vector<std::vector<std::size_t>> lower_nilradicals;   // u^-_i root indices
    bool balanced_flag = false;

    bool operator==(const ParabolicFiltration&) const = default;
};

/// Generator f_root * w^grade of the graded opposite nilradical u^-.
struct VermaGenerator {
    std::size_t root_index = 0;  // a negative root
    std::size_t pi_grade = 0;    // power of w
    std::size_t height = 1;      // height of the positive counterpart

    bool operator==(const VermaGenerator&) const = default;
};

/// PBW monomial: nondecreasing generator indices.
using Monomial = std::vector<std::size_t>;

struct WeightBlock {
    Vec weight;                              // covector, sum of the root covectors
    std::size_t grade = 0;
    std::vector<std::size_t> monomials;      // indices into VermaSlice::basis
    Mat gram;
};

/// Grade-truncated lowest-grades model of the parabolic Verma module with
/// its Shapovalov Gram blocks.
struct VermaSlice {
    ParabolicFiltration filtration;
    PrincipalPart character;
    std::size_t grade_bound = 0;
    std::vector<VermaGenerator> generators;  // fixed PBW order
    std::vector<Monomial> basis;             // all monomials of grade <= bound
    std::vector<WeightBlock> blocks;
};

struct SimplicityVerdict {
    bool simple_up_to_grade = false;
    std::optional<std::size_t> first_degenerate_grade;
    bool integral_criterion = false;   // <lambda' + rho, alpha^vee> not in Z \ {0}
    bool positive_criterion = false;   // ... not in Z_{>0} over positive roots
    std::vector<std::pair<std::size_t, long>> flagged;  // (root index, integer value)
};

/// Per-grade tensors of the inverse Shapovalov form at the dilated character.
struct InverseShapovalovSlice {
    Rat c_value;
    std::size_t grade_bound = 0;
    // terms[k]: (coefficient, lower monomial index, raising monomial index).
    std::vector<std::vector<std::tuple<Rat, std::size_t, std::size_t>>> terms;
};

/// A coadjoint-orbit point with the group witness that produced it.
struct OrbitSample {
    GroupWord word;
    TruncatedCurrent birkhoff;
    PrincipalPart value;
};

ParabolicFiltration build_filtration(const LieAlgebra& g, const FissionData& fission);

/// Builds the slice and all weight-block Gram matrices; requires
/// balanced_flag (unsupported otherwise). Orthogonality across weight
/// blocks is asserted on sampled pairs.
VermaSlice shapovalov_gram(const LieAlgebra& g, const ParabolicFiltration& filtration,
                           const PrincipalPart& character, std::size_t grade_bound);

SimplicityVerdict simplicity_test(const LieAlgebra& g, const VermaSlice& slice);

InverseShapovalovSlice inverse_shapovalov(const LieAlgebra& g, const VermaSlice& slice,
                                          const Rat& c);

/// Order-hbar star-commutator check: the grade-one bivector built from
/// chi-dual bases of u^+- reproduces <sample, [x, y]> at every sample.
bool comoment_check(const LieAlgebra& g, const VermaSlice& slice, const TruncatedCurrent& x,
                    const TruncatedCurrent& y, const std::vector<OrbitSample>& samples);

/// Exact check of the image identity for the inverse Shapovalov form applied
/// to v+ (x) A' in the grade <= 1 model; requires all generators at grade 1.
bool image_identity_check(const LieAlgebra& g, const VermaSlice& slice, const Rat& c);

/// Transport of the slice along a unit coordinate change; asserts the
/// isomorphism witness on Gram determinants and verdicts.
VermaSlice character_transport(const LieAlgebra& g, const VermaSlice& slice,
                               const UnitSeries& f);

} // namespace wildred

#endif
