#ifndef WILDRED_MATGROUP_HPP
#define WILDRED_MATGROUP_HPP

#include "wildred/series.hpp"
#include "wildred/tcla.hpp"

namespace wildred {

/// Square matrix over Q[w]/(w^s): row-major truncated-series entries.
struct MatOs {
    std::size_t n = 0;
    std::size_t s = 1;
    std::vector<series::Trunc> entries; // n * n, row-major

    series::Trunc& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    const series::Trunc& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
    bool operator==(const MatOs&) const = default;
};

MatOs mos_identity(std::size_t n, std::size_t s);
MatOs mos_from_constant(const Mat& m, std::size_t s);
/// Coefficient of w^k as a constant matrix.
Mat mos_coefficient(const MatOs& m, std::size_t k);

MatOs mos_mul(const MatOs& a, const MatOs& b);
/// Inverse; requires the constant term to be invertible (validation error).
MatOs mos_inverse(const MatOs& m);
/// Determinant in Q[w]/(w^s).
series::Trunc mos_det(const MatOs& m);

/// Defining matrix of a constant root-group word.
MatOs mos_from_word(const LieAlgebra& g, const GroupWord& w, std::size_t s);
/// exp of an element of g (x) w Q[w]/(w^s) or of a nilpotent constant part;
/// the series must terminate (invariant violation otherwise).
MatOs mos_exp(const LieAlgebra& g, const TruncatedCurrent& b);

/// Coadjoint action of m on a pole-order-s principal part: conjugate the
/// matrix-valued polynomial sum_i A_i w^{s-1-i} by m modulo w^s. Agrees with
/// coadjoint_group on (word, exponential) factorizations.
PrincipalPart mos_gamma(const LieAlgebra& g, const MatOs& m, const PrincipalPart& a);

/// Block LDU decomposition with the given diagonal block sizes:
/// m = lower * diag * upper with lower/upper block-unipotent. Each leading
/// pivot block must be invertible over the series ring; a non-invertible
/// pivot raises chart_miss.
struct BlockLDU {
    MatOs lower, diag, upper;
};
BlockLDU mos_ldu(const MatOs& m, const std::vector<std::size_t>& block_sizes);

/// Reordered factorization m = diag * uminus * uplus with
/// uminus = diag^{-1} lower diag.
struct BigCellFactors {
    MatOs diag, uminus, uplus;
};
BigCellFactors mos_big_cell(const MatOs& m, const std::vector<std::size_t>& block_sizes);

} // namespace wildred

#endif
