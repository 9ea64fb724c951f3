#ifndef WILDRED_TCLA_HPP
#define WILDRED_TCLA_HPP

#include <cstddef>
#include <vector>

#include "wildred/liealg.hpp"
#include "wildred/series.hpp"

namespace wildred {

/// Element of g_s = g (x) Q[w]/(w^s): coefficients X_0..X_{s-1} of w^i.
struct TruncatedCurrent {
    std::size_t s = 1;
    std::vector<AlgElement> coeffs;

    bool operator==(const TruncatedCurrent&) const = default;
};

/// Principal part A = sum A_i w^{-i-1} dw with pole order <= s; A_0 is the
/// residue. Identified with the dual of g_s under the residue pairing.
struct PrincipalPart {
    std::size_t s = 1;
    std::vector<AlgElement> coeffs;

    bool operator==(const PrincipalPart&) const = default;
};

/// Formal unit coordinate change F(w) = w (f_0 + f_1 w + ... + f_{s-1} w^{s-1})
/// with f_0 != 0, acting on principal parts by pullback.
struct UnitSeries {
    std::size_t s = 1;
    std::vector<Rat> f_coeffs;

    bool operator==(const UnitSeries&) const = default;
};

/// Exact matrix of a filtration-preserving bracket automorphism of g_s, in
/// the flattened basis (coefficient block i = Chevalley basis of g).
struct TclaAutomorphism {
    std::size_t s = 1;
    Mat matrix;
};

/// Semidirect factorization phi = diag o Ad(exp(conj)) o (substitution by poly).
struct AutomorphismFactors {
    Mat diag;              // automorphism of g, dim x dim
    TruncatedCurrent conj; // zero constant term
    UnitSeries poly;
};

TruncatedCurrent tc_zero(const LieAlgebra& g, std::size_t s);
PrincipalPart pp_zero(const LieAlgebra& g, std::size_t s);
UnitSeries unit_identity(std::size_t s);

PrincipalPart pp_add(const PrincipalPart& a, const PrincipalPart& b);
PrincipalPart pp_sub(const PrincipalPart& a, const PrincipalPart& b);
PrincipalPart pp_scale(const Rat& c, const PrincipalPart& a);
bool pp_is_zero(const PrincipalPart& a);

/// Flatten to / rebuild from a length s*dim(g) coordinate vector.
Vec tc_flatten(const TruncatedCurrent& x);
TruncatedCurrent tc_unflatten(const LieAlgebra& g, std::size_t s, const Vec& v);
Vec pp_flatten(const PrincipalPart& a);
PrincipalPart pp_unflatten(const LieAlgebra& g, std::size_t s, const Vec& v);

/// Coefficientwise-truncated bracket: coefficient k = sum_{i+j=k} [x_i, y_j].
TruncatedCurrent tcla_bracket(const LieAlgebra& g, const TruncatedCurrent& x,
                              const TruncatedCurrent& y);

/// sum_i (A_i | X_i) under the invariant form.
Rat residue_pairing(const LieAlgebra& g, const PrincipalPart& a,
                    const TruncatedCurrent& x);

/// Coadjoint action of g_s, pinned by the adjointness identity
/// <coadjoint_inf(x,a), y> = -<a, tcla_bracket(x,y)>.
PrincipalPart coadjoint_inf(const LieAlgebra& g, const TruncatedCurrent& x,
                            const PrincipalPart& a);

/// Coadjoint action of the group element m = (constant word g0) * exp(b),
/// b_0 = 0, acting through m^{-1} so that composition is a right action:
/// acting by g0 then by (g0', b') equals acting by the product.
PrincipalPart coadjoint_group(const LieAlgebra& g, const GroupWord& g0,
                              const TruncatedCurrent& b, const PrincipalPart& a);

/// Pullback of the principal part along the unit F; fixes the residue A_0.
PrincipalPart apply_unit(const LieAlgebra& g, const UnitSeries& f,
                         const PrincipalPart& a);

/// (F o G)(w) = F(G(w)), truncated.
UnitSeries unit_compose(const UnitSeries& f, const UnitSeries& g);

/// Automorphism matrices of the three factor types on g_s.
Mat diag_automorphism_matrix(const LieAlgebra& g, std::size_t s, const Mat& diag);
Mat conj_automorphism_matrix(const LieAlgebra& g, const TruncatedCurrent& b);
Mat unit_automorphism_matrix(const LieAlgebra& g, std::size_t s, const UnitSeries& f);

/// Nested semidirect factorization of a filtration-preserving bracket
/// automorphism; throws invariant_violation if the input is not one.
AutomorphismFactors decompose_automorphism(const LieAlgebra& g,
                                           const TclaAutomorphism& phi);

} // namespace wildred

#endif
