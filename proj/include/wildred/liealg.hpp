#ifndef WILDRED_LIEALG_HPP
#define WILDRED_LIEALG_HPP

#include <utility>
#include <vector>

#include "wildred/rootdata.hpp"

namespace wildred {

/// A Lie-algebra element: exact-rational coordinates in the ordered Chevalley
/// basis {e_alpha (alpha in Phi+, in RootDatum order), h_1..h_rank,
/// f_alpha (alpha in Phi+)}. Length |Phi| + rank.
using AlgElement = Vec;

/// Span of exact basis elements; closed_flag certifies bracket closure.
struct Subalgebra {
    std::vector<AlgElement> basis;
    bool closed_flag = false;
};

/// A word in root-group generators: factors (root_index, parameter), each
/// meaning exp(parameter * x_root) where x_root is the Chevalley root vector.
/// Group elements are used only through their adjoint / defining matrices.
struct GroupWord {
    std::vector<std::pair<std::size_t, Rat>> factors;
};

/// Exact model of sl_{n+1} (type A only) in its defining representation,
/// with the trace form as the invariant pairing.
class LieAlgebra {
public:
    /// Requires rd.cartan_type() == "A"; other types are combinatorially
    /// supported by RootDatum but have no Lie-algebra backend here.
    explicit LieAlgebra(RootDatum rd);

    const RootDatum& root_datum() const { return rd_; }
    std::size_t dim() const { return dim_; }
    std::size_t matrix_size() const { return n1_; }

    AlgElement zero() const { return AlgElement(dim_, Rat(0)); }
    AlgElement basis_element(std::size_t k) const;

    /// Chevalley root vector for roots()[i] (e_alpha or f_alpha).
    AlgElement root_vector(std::size_t root_index) const;
    /// h_i.
    AlgElement cartan_basis_element(std::size_t i) const;

    /// Cartan vector (simple-coroot coords) -> sum d_i h_i, and back.
    AlgElement from_cartan_vector(const Vec& d) const;
    /// Requires x to lie in the Cartan (root coordinates all zero).
    Vec to_cartan_vector(const AlgElement& x) const;
    bool is_cartan(const AlgElement& x) const;

    /// Defining (n+1)x(n+1) matrix of an element, and the exact inverse for
    /// traceless matrices.
    Mat to_matrix(const AlgElement& x) const;
    AlgElement from_matrix(const Mat& m) const;

    AlgElement bracket(const AlgElement& x, const AlgElement& y) const;
    Rat invariant_form(const AlgElement& x, const AlgElement& y) const;

    /// Matrix of ad(x) on the Chevalley basis.
    Mat ad_matrix(const AlgElement& x) const;

    /// Intersection of the ad-kernels; closed_flag always true.
    Subalgebra centralizer(const std::vector<AlgElement>& elements) const;

    /// Orthogonal projection onto a subalgebra along the invariant form;
    /// requires the restricted form to be nondegenerate.
    AlgElement project_to_subalgebra(const AlgElement& x, const Subalgebra& s) const;

    /// Exact adjoint matrix of a group word (product of nilpotent
    /// exponentials exp(ad(param * x_root))).
    Mat adjoint_of_word(const GroupWord& w) const;

    /// Defining-representation matrix of a group word.
    Mat defining_matrix_of_word(const GroupWord& w) const;

    GroupWord inverse_word(const GroupWord& w) const;

    /// Root whose Chevalley vector is the elementary matrix unit E_{rc}.
    std::size_t root_index_of_entry(std::size_t r, std::size_t c) const;

    /// Factor a determinant-one matrix as a product of root-group elements:
    /// defining_matrix_of_word(result) == m exactly. Throws validation_error
    /// if det(m) != 1.
    GroupWord word_of_matrix(const Mat& m) const;

    /// Word lifting a Weyl element: product over the reflection word of
    /// exp(e_i) exp(-f_i) exp(e_i).
    GroupWord weyl_lift(const WeylElement& w) const;

    /// Component of x along the root line of roots()[i].
    Rat root_component(const AlgElement& x, std::size_t root_index) const;
    void set_root_component(AlgElement& x, std::size_t root_index, const Rat& value) const;

    /// <alpha, x> for x Cartan-valued.
    Rat root_pairing(std::size_t root_index, const AlgElement& cartan_x) const;

    bool in_span(const std::vector<AlgElement>& basis, const AlgElement& x) const;
    bool is_semisimple_element(const AlgElement& x) const;

private:
    std::pair<std::size_t, std::size_t> root_entry(std::size_t root_index) const;

    RootDatum rd_;
    std::size_t n1_ = 0, dim_ = 0;
};

} // namespace wildred

#endif
