#ifndef WILDRED_NORMALFORM_HPP
#define WILDRED_NORMALFORM_HPP

#include <optional>
#include <utility>
#include <vector>

#include "wildred/tcla.hpp"

namespace wildred {

/// Meromorphic connection germ dA/dw = ... truncated at working order m:
/// principal part (pole coefficients) plus nonsingular coefficients
/// B_0..B_{m-1} of w^i dw.
struct ConnectionGerm {
    PrincipalPart principal;
    std::vector<AlgElement> nonsingular;
    std::size_t m = 0;

    bool operator==(const ConnectionGerm&) const = default;
};

/// Nested centralizer sequence l_s <= ... <= l_1 of a Cartan-valued
/// principal part, with the matching root subsystems and the moduli number
/// nu = #{i : l_i is the Cartan}.
struct FissionData {
    std::vector<Subalgebra> levis;            // levis[i-1] = l_i
    std::vector<LeviSubsystem> levi_subsystems;
    std::size_t nu = 0;
    std::vector<std::size_t> torus_indices;   // the i with dim l_i = rank
};

/// Integrality analysis of the residue against the Levi subsystem of the
/// irregular type.
struct ResonanceReport {
    bool nonresonant = true;
    std::vector<std::pair<std::size_t, long>> offenders;  // (root index, kappa)
    std::vector<long> resonance_degrees;                  // positive kappa, sorted
};

/// Ordered product of elementary based gauges exp(X w^k), k >= 1, applied
/// left to right.
struct GaugeWord {
    std::vector<std::pair<std::size_t, AlgElement>> factors;

    bool operator==(const GaugeWord&) const = default;
};

struct NormalizeResult {
    PrincipalPart normal;
    GaugeWord gauge;  // re-gauging `normal` by this word reproduces the input
};

struct ResonantNormalizeResult {
    PrincipalPart normal;
    std::vector<std::pair<long, AlgElement>> leftover;  // (degree kappa, element)
    std::size_t stabilizer_dim = 0;
    GaugeWord gauge;
};

struct UtsResult {
    bool uts = false;
    bool marked = false;   // false when eigenvalues are irrational
    GroupWord marking;     // conjugates all coefficients into the Cartan
};

/// Thrown by normalize when a resonant degree blocks the elimination.
struct resonant_obstruction : validation_error {
    long degree;
    std::size_t cokernel_dim;
    resonant_obstruction(long d, std::size_t c)
        : validation_error("resonant obstruction in normalization at degree " +
                           std::to_string(d)),
          degree(d),
          cokernel_dim(c) {}
};

FissionData fission(const LieAlgebra& g, const PrincipalPart& a);

ResonanceReport resonance_report(const LieAlgebra& g, const PrincipalPart& a);

UtsResult is_uts(const LieAlgebra& g, const PrincipalPart& a);

/// Apply the elementary gauge exp(X w^k), k >= 1, exactly on the truncated
/// window (degrees < m of the nonsingular part).
ConnectionGerm apply_elementary_gauge(const LieAlgebra& g, const ConnectionGerm& germ,
                                      std::size_t k, const AlgElement& x);

ConnectionGerm apply_gauge_word(const LieAlgebra& g, const ConnectionGerm& germ,
                                const GaugeWord& w);

GaugeWord inverse_gauge_word(const GaugeWord& w);

/// Defining-representation matrix of the gauge word over Q[w]/(w^order),
/// entry (i,j) a coefficient vector; used for gauge uniqueness checks.
std::vector<Mat> gauge_word_poly_matrix(const LieAlgebra& g, const GaugeWord& w,
                                        std::size_t order);

NormalizeResult normalize(const LieAlgebra& g, const ConnectionGerm& germ);

ResonantNormalizeResult resonant_normalize(const LieAlgebra& g, const ConnectionGerm& germ);

} // namespace wildred

#endif
