#include "wildred/liealg.hpp"

#include <algorithm>

#include "wildred/errors.hpp"

namespace wildred {

LieAlgebra::LieAlgebra(RootDatum rd) : rd_(std::move(rd)) {
    if (rd_.cartan_type() != "A")
        throw unsupported_error("LieAlgebra: only type A has a Lie-algebra backend (got " +
                                rd_.cartan_type() + ")");
    n1_ = rd_.rank() + 1;
    dim_ = rd_.roots().size() + rd_.rank();
}

AlgElement LieAlgebra::basis_element(std::size_t k) const {
    AlgElement x = zero();
    x[k] = 1;
    return x;
}

// Matrix position (row, col) of the elementary matrix attached to a root:
// a positive root alpha_i + ... + alpha_j (0-based support i..j) maps to
// E_{i, j+1}; the negative root maps to the transpose position.
std::pair<std::size_t, std::size_t> LieAlgebra::root_entry(std::size_t root_index) const {
    const Vec& c = rd_.roots()[root_index];
    const bool positive = root_index < rd_.num_positive();
    std::size_t lo = rd_.rank(), hi = 0;
    for (std::size_t k = 0; k < rd_.rank(); ++k) {
        if (c[k] == 0) continue;
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    if (positive) return {lo, hi + 1};
    return {hi + 1, lo};
}

AlgElement LieAlgebra::root_vector(std::size_t root_index) const {
    AlgElement x = zero();
    const std::size_t p = rd_.num_positive();
    if (root_index < p)
        x[root_index] = 1;
    else
        x[p + rd_.rank() + (root_index - p)] = 1;
    return x;
}

AlgElement LieAlgebra::cartan_basis_element(std::size_t i) const {
    AlgElement x = zero();
    x[rd_.num_positive() + i] = 1;
    return x;
}

AlgElement LieAlgebra::from_cartan_vector(const Vec& d) const {
    require(d.size() == rd_.rank(), "from_cartan_vector: wrong length");
    AlgElement x = zero();
    for (std::size_t i = 0; i < rd_.rank(); ++i) x[rd_.num_positive() + i] = d[i];
    return x;
}

bool LieAlgebra::is_cartan(const AlgElement& x) const {
    const std::size_t p = rd_.num_positive();
    for (std::size_t i = 0; i < p; ++i)
        if (x[i] != 0 || x[p + rd_.rank() + i] != 0) return false;
    return true;
}

Vec LieAlgebra::to_cartan_vector(const AlgElement& x) const {
    require(is_cartan(x), "to_cartan_vector: element has root components");
    Vec d(rd_.rank());
    for (std::size_t i = 0; i < rd_.rank(); ++i) d[i] = x[rd_.num_positive() + i];
    return d;
}

Mat LieAlgebra::to_matrix(const AlgElement& x) const {
    ensure_invariant(x.size() == dim_, "to_matrix: wrong coordinate length");
    Mat m(n1_, n1_);
    const std::size_t p = rd_.num_positive();
    for (std::size_t i = 0; i < p; ++i) {
        if (x[i] != 0) {
            const auto [r, c] = root_entry(i);
            m.at(r, c) += x[i];
        }
        const Rat& fc = x[p + rd_.rank() + i];
        if (fc != 0) {
            const auto [r, c] = root_entry(p + i);
            m.at(r, c) += fc;
        }
    }
    for (std::size_t i = 0; i < rd_.rank(); ++i) {
        const Rat& hc = x[p + i];
        if (hc != 0) {
            m.at(i, i) += hc;
            m.at(i + 1, i + 1) -= hc;
        }
    }
    return m;
}

AlgElement LieAlgebra::from_matrix(const Mat& m) const {
    ensure_invariant(m.rows() == n1_ && m.cols() == n1_, "from_matrix: wrong shape");
    Rat tr(0);
    for (std::size_t i = 0; i < n1_; ++i) tr += m.at(i, i);
    ensure_invariant(tr == 0, "from_matrix: matrix not traceless");
    AlgElement x = zero();
    const std::size_t p = rd_.num_positive();
    for (std::size_t i = 0; i < p; ++i) {
        {
            const auto [r, c] = root_entry(i);
            x[i] = m.at(r, c);
        }
        {
            const auto [r, c] = root_entry(p + i);
            x[p + rd_.rank() + i] = m.at(r, c);
        }
    }
    Rat partial(0);
    for (std::size_t i = 0; i < rd_.rank(); ++i) {
        partial += m.at(i, i);
        x[p + i] = partial;
    }
    return x;
}

AlgElement LieAlgebra::bracket(const AlgElement& x, const AlgElement& y) const {
    const Mat mx = to_matrix(x), my = to_matrix(y);
    return from_matrix(mx * my - my * mx);
}

Rat LieAlgebra::invariant_form(const AlgElement& x, const AlgElement& y) const {
    const Mat mx = to_matrix(x), my = to_matrix(y);
    Rat tr(0);
    for (std::size_t i = 0; i < n1_; ++i)
        for (std::size_t k = 0; k < n1_; ++k) tr += mx.at(i, k) * my.at(k, i);
    return tr;
}

Mat LieAlgebra::ad_matrix(const AlgElement& x) const {
    Mat m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        const AlgElement col = bracket(x, basis_element(j));
        for (std::size_t i = 0; i < dim_; ++i) m.at(i, j) = col[i];
    }
    return m;
}

Subalgebra LieAlgebra::centralizer(const std::vector<AlgElement>& elements) const {
    Mat stacked(dim_ * std::max<std::size_t>(elements.size(), 1), dim_);
    for (std::size_t e = 0; e < elements.size(); ++e) {
        const Mat ad = ad_matrix(elements[e]);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) stacked.at(e * dim_ + i, j) = ad.at(i, j);
    }
    Subalgebra s;
    s.basis = nullspace(stacked);
    s.closed_flag = true;
    return s;
}

AlgElement LieAlgebra::project_to_subalgebra(const AlgElement& x, const Subalgebra& s) const {
    const std::size_t k = s.basis.size();
    Mat gram(k, k);
    Vec rhs(k);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) gram.at(a, b) = invariant_form(s.basis[a], s.basis[b]);
        rhs[a] = invariant_form(s.basis[a], x);
    }
    if (det(gram) == 0)
        throw validation_error("project_to_subalgebra: invariant form degenerate on subalgebra");
    const Vec c = inverse(gram) * rhs;
    AlgElement out = zero();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t i = 0; i < dim_; ++i) out[i] += c[a] * s.basis[a][i];
    return out;
}

namespace {

// exp of a nilpotent matrix (finite series); throws if not nilpotent.
Mat exp_nilpotent(const Mat& m) {
    const std::size_t n = m.rows();
    Mat term = Mat::identity(n), acc = Mat::identity(n);
    for (std::size_t k = 1; k <= n + 1; ++k) {
        term = term * m * (Rat(1) / Rat(static_cast<long>(k)));
        if (term.is_zero()) return acc;
        acc = acc + term;
    }
    throw invariant_violation("exp_nilpotent: matrix not nilpotent");
}

} // namespace

Mat LieAlgebra::adjoint_of_word(const GroupWord& w) const {
    Mat acc = Mat::identity(dim_);
    for (const auto& [root, param] : w.factors) {
        AlgElement x = root_vector(root);
        for (auto& c : x) c *= param;
        acc = acc * exp_nilpotent(ad_matrix(x));
    }
    return acc;
}

Mat LieAlgebra::defining_matrix_of_word(const GroupWord& w) const {
    Mat acc = Mat::identity(n1_);
    for (const auto& [root, param] : w.factors) {
        AlgElement x = root_vector(root);
        for (auto& c : x) c *= param;
        acc = acc * exp_nilpotent(to_matrix(x));
    }
    return acc;
}

GroupWord LieAlgebra::inverse_word(const GroupWord& w) const {
    GroupWord r;
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it)
        r.factors.emplace_back(it->first, -it->second);
    return r;
}

GroupWord LieAlgebra::weyl_lift(const WeylElement& w) const {
    GroupWord g;
    for (int i : w.word) {
        const std::size_t pos = rd_.root_index(rd_.simple_root(static_cast<std::size_t>(i)));
        const std::size_t neg = rd_.negative_of(pos);
        g.factors.emplace_back(pos, Rat(1));
        g.factors.emplace_back(neg, Rat(-1));
        g.factors.emplace_back(pos, Rat(1));
    }
    return g;
}

Rat LieAlgebra::root_component(const AlgElement& x, std::size_t root_index) const {
    const std::size_t p = rd_.num_positive();
    return root_index < p ? x[root_index] : x[p + rd_.rank() + (root_index - p)];
}

void LieAlgebra::set_root_component(AlgElement& x, std::size_t root_index, const Rat& value) const {
    const std::size_t p = rd_.num_positive();
    if (root_index < p)
        x[root_index] = value;
    else
        x[p + rd_.rank() + (root_index - p)] = value;
}

Rat LieAlgebra::root_pairing(std::size_t root_index, const AlgElement& cartan_x) const {
    return rd_.pairing(rd_.roots()[root_index], to_cartan_vector(cartan_x));
}

bool LieAlgebra::in_span(const std::vector<AlgElement>& basis, const AlgElement& x) const {
    Mat m(dim_, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < dim_; ++i) m.at(i, j) = basis[j][i];
    return solve(m, x).has_value();
}

bool LieAlgebra::is_semisimple_element(const AlgElement& x) const {
    return matrix_semisimple(to_matrix(x));
}

std::size_t LieAlgebra::root_index_of_entry(std::size_t r, std::size_t c) const {
    require(r < n1_ && c < n1_ && r != c, "root_index_of_entry: off-diagonal entry required");
    Vec covector(rd_.rank(), Rat(0));
    const std::size_t lo = std::min(r, c), hi = std::max(r, c);
    const Rat sign = r < c ? Rat(1) : Rat(-1);
    for (std::size_t k = lo; k < hi; ++k) covector[k] = sign;
    return rd_.root_index(covector);
}

GroupWord LieAlgebra::word_of_matrix(const Mat& m) const {
    require(m.rows() == n1_ && m.cols() == n1_, "word_of_matrix: wrong shape");
    require(det(m) == 1, "word_of_matrix: determinant must be 1");

    Mat a = m;
    // Left-multiplications applied so far, in application order; each is a
    // transvection 1 + p * E_{rc}. The total left factor is the product of
    // the recorded letters last-to-first, so the inverse word lists the
    // letters in the same order with negated parameters.
    std::vector<std::pair<std::size_t, Rat>> applied;
    const auto apply_left = [&](std::size_t r, std::size_t c, const Rat& p) {
        if (p == 0) return;
        for (std::size_t k = 0; k < n1_; ++k) a.at(r, k) += p * a.at(c, k);
        applied.emplace_back(root_index_of_entry(r, c), p);
    };

    for (std::size_t col = 0; col < n1_; ++col) {
        if (a.at(col, col) == 0) {
            std::size_t r = col;
            while (r < n1_ && a.at(r, col) == 0) ++r;
            ensure_invariant(r < n1_, "word_of_matrix: singular column");
            apply_left(col, r, Rat(1));
        }
        for (std::size_t r = 0; r < n1_; ++r)
            if (r != col && a.at(r, col) != 0) apply_left(r, col, -a.at(r, col) / a.at(col, col));
    }

    // a is now diagonal with determinant 1; clear it with the standard
    // h(u) = w(u) w(1)^{-1} chains in adjacent rank-one subgroups, where
    // w(u) = x_+(u) x_-(-1/u) x_+(u).
    const auto apply_h = [&](std::size_t i, const Rat& u) {
        // Letters of h_i(u) in product order (leftmost first); apply in
        // reverse so the accumulated left factor is their product.
        const std::pair<std::size_t, std::size_t> pos{i, i + 1}, neg{i + 1, i};
        const std::vector<std::tuple<std::size_t, std::size_t, Rat>> letters = {
            {pos.first, pos.second, u},  {neg.first, neg.second, -Rat(1) / u},
            {pos.first, pos.second, u},  {pos.first, pos.second, Rat(-1)},
            {neg.first, neg.second, Rat(1)}, {pos.first, pos.second, Rat(-1)}};
        for (auto it = letters.rbegin(); it != letters.rend(); ++it)
            apply_left(std::get<0>(*it), std::get<1>(*it), std::get<2>(*it));
    };
    for (std::size_t i = 0; i + 1 < n1_; ++i)
        if (a.at(i, i) != 1) apply_h(i, Rat(1) / a.at(i, i));
    ensure_invariant(a == Mat::identity(n1_), "word_of_matrix: reduction failed");

    GroupWord w;
    for (const auto& [root, p] : applied) w.factors.emplace_back(root, -p);
    return w;
}

} // namespace wildred
