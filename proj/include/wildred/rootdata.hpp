#ifndef WILDRED_ROOTDATA_HPP
#define WILDRED_ROOTDATA_HPP

#include <string>
#include <vector>

#include "wildred/linalg.hpp"

namespace wildred {

/// Conventions: covectors (roots, weights, characters of the Cartan space)
/// are coordinate vectors in the simple-root basis; Cartan-space vectors are
/// coordinate vectors in the simple-coroot basis. With the Cartan matrix
/// A[i][j] = <alpha_j, alpha_i^vee>, the pairing of a covector c with a
/// vector d is d^T A c, an integer-matrix bilinear form.
struct WeylElement {
    std::vector<int> word;     // simple-reflection indices
    Mat covector_action;       // action on covectors (simple-root coords)
    Mat vector_action;         // action on vectors (simple-coroot coords)

    bool operator==(const WeylElement& o) const { return covector_action == o.covector_action; }
};

struct LeviSubsystem {
    std::vector<std::size_t> root_indices;     // indices into RootDatum::roots (both signs)
    std::vector<std::size_t> simple_subset;    // simple roots contained, when standard

    bool operator==(const LeviSubsystem& o) const { return root_indices == o.root_indices; }
};

class RootDatum {
public:
    /// Supported: type "A" rank 1..4, type "B" rank 2.
    static RootDatum build(const std::string& cartan_type, std::size_t rank);

    const std::string& cartan_type() const { return type_; }
    std::size_t rank() const { return rank_; }
    const Mat& cartan_matrix() const { return cartan_; }

    /// All roots; the first `num_positive()` entries are the positive roots,
    /// ordered by height then lexicographically; roots[i + num_positive()] is
    /// the negative of roots[i].
    const std::vector<Vec>& roots() const { return roots_; }
    std::size_t num_positive() const { return roots_.size() / 2; }

    /// Coroot of roots()[i], in simple-coroot coordinates.
    const Vec& coroot(std::size_t i) const { return coroots_[i]; }

    /// Weyl vector rho as a covector: <rho, alpha_i^vee> = 1 for all i.
    const Vec& rho() const { return rho_; }

    /// Simple root / coroot as coordinate vectors (unit vectors).
    Vec simple_root(std::size_t i) const;
    Vec simple_coroot(std::size_t i) const;

    /// Fundamental weight omega_i: <omega_i, alpha_j^vee> = delta_ij.
    Vec fundamental_weight(std::size_t i) const;

    /// <covector, vector> pairing.
    Rat pairing(const Vec& covector, const Vec& vector) const;

    /// Pairing of covector c with the coroot of roots()[i].
    Rat pairing_with_coroot(const Vec& covector, std::size_t root_index) const;

    /// Height of a root (sum of simple-root coordinates).
    Rat height(std::size_t root_index) const;

    /// Index of -roots()[i].
    std::size_t negative_of(std::size_t i) const;

    /// Index of a root given its covector coordinates; throws if not a root.
    std::size_t root_index(const Vec& covector) const;
    bool is_root(const Vec& covector) const;

    /// The full Weyl group, enumerated eagerly (identity first).
    const std::vector<WeylElement>& weyl_group() const { return weyl_; }
    const WeylElement& simple_reflection(std::size_t i) const;

    /// Roots annihilating every element of `vectors` (Cartan vectors).
    LeviSubsystem levi_of_annihilated_roots(const std::vector<Vec>& vectors) const;

    /// Standard Levi subsystem generated by the given simple-root subset:
    /// roots supported on the subset.
    LeviSubsystem standard_levi(const std::vector<std::size_t>& simple_subset) const;

    /// Weyl orbit of a Cartan vector.
    std::vector<Vec> weyl_orbit(const Vec& v) const;

    /// Basis of characters of the standard parabolic whose Levi keeps
    /// Delta \ omitted: fundamental weights of the omitted simple roots.
    /// `omitted` must be nonempty.
    std::vector<Vec> parabolic_characters(const std::vector<std::size_t>& omitted) const;

private:
    std::string type_;
    std::size_t rank_ = 0;
    Mat cartan_;         // A[i][j] = <alpha_j, alpha_i^vee>
    Mat cartan_inv_;
    std::vector<Vec> roots_;
    std::vector<Vec> coroots_;
    Vec rho_;
    std::vector<WeylElement> weyl_;
    std::vector<std::size_t> simple_reflection_index_;
};

} // namespace wildred

#endif
