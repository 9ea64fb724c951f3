#include "wildred/matgroup.hpp"

#include <functional>

namespace wildred {

namespace {

series::Trunc neg(series::Trunc t) {
    for (auto& c : t) c = -c;
    return t;
}

MatOs mos_zero(std::size_t n, std::size_t s) {
    MatOs m;
    m.n = n;
    m.s = s;
    m.entries.assign(n * n, series::zero(s));
    return m;
}

/// Rectangular block helpers for the block LDU elimination.
struct Block {
    std::size_t rows = 0, cols = 0, s = 1;
    std::vector<series::Trunc> e;
    series::Trunc& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
    const series::Trunc& at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }
};

Block block_zero(std::size_t r, std::size_t c, std::size_t s) {
    return {r, c, s, std::vector<series::Trunc>(r * c, series::zero(s))};
}

Block get_block(const MatOs& m, std::size_t r0, std::size_t nr, std::size_t c0,
                std::size_t nc) {
    Block b = block_zero(nr, nc, m.s);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b.at(i, j) = m.at(r0 + i, c0 + j);
    return b;
}

void set_block(MatOs& m, std::size_t r0, std::size_t c0, const Block& b) {
    for (std::size_t i = 0; i < b.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) m.at(r0 + i, c0 + j) = b.at(i, j);
}

Block block_mul(const Block& a, const Block& b) {
    ensure_invariant(a.cols == b.rows, "block product shape mismatch");
    Block r = block_zero(a.rows, b.cols, a.s);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j)
            for (std::size_t k = 0; k < a.cols; ++k)
                r.at(i, j) = series::add(r.at(i, j), series::mul(a.at(i, k), b.at(k, j)));
    return r;
}

Block block_sub(const Block& a, const Block& b) {
    Block r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = series::add(r.e[i], neg(b.e[i]));
    return r;
}

MatOs block_to_mos(const Block& b) {
    ensure_invariant(b.rows == b.cols, "square block expected");
    MatOs m = mos_zero(b.rows, b.s);
    m.entries = b.e;
    return m;
}

Block mos_to_block(const MatOs& m) { return {m.n, m.n, m.s, m.entries}; }

} // namespace

MatOs mos_identity(std::size_t n, std::size_t s) {
    MatOs m = mos_zero(n, s);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = series::one(s);
    return m;
}

MatOs mos_from_constant(const Mat& c, std::size_t s) {
    require(c.rows() == c.cols(), "square matrix expected");
    MatOs m = mos_zero(c.rows(), s);
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) m.at(i, j)[0] = c.at(i, j);
    return m;
}

Mat mos_coefficient(const MatOs& m, std::size_t k) {
    require(k < m.s, "coefficient index out of range");
    Mat c(m.n, m.n);
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) c.at(i, j) = m.at(i, j)[k];
    return c;
}

MatOs mos_mul(const MatOs& a, const MatOs& b) {
    require(a.n == b.n && a.s == b.s, "matrix product shape mismatch");
    MatOs r = mos_zero(a.n, a.s);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j)
            for (std::size_t k = 0; k < a.n; ++k)
                r.at(i, j) = series::add(r.at(i, j), series::mul(a.at(i, k), b.at(k, j)));
    return r;
}

MatOs mos_inverse(const MatOs& m) {
    const Mat c0 = mos_coefficient(m, 0);
    require(det(c0) != 0, "matrix is not invertible over the series ring");
    const MatOs x0 = mos_from_constant(inverse(c0), m.s);
    // m^{-1} = (sum_k N^k) x0 with N = 1 - x0 m, which has zero constant term.
    MatOs n = mos_identity(m.n, m.s);
    {
        const MatOs p = mos_mul(x0, m);
        for (std::size_t i = 0; i < n.entries.size(); ++i)
            n.entries[i] = series::add(n.entries[i], neg(p.entries[i]));
    }
    MatOs acc = mos_identity(m.n, m.s), term = mos_identity(m.n, m.s);
    for (std::size_t k = 1; k < m.s; ++k) {
        term = mos_mul(term, n);
        for (std::size_t i = 0; i < acc.entries.size(); ++i)
            acc.entries[i] = series::add(acc.entries[i], term.entries[i]);
    }
    const MatOs result = mos_mul(acc, x0);
    ensure_invariant(mos_mul(result, m) == mos_identity(m.n, m.s), "inverse check failed");
    return result;
}

series::Trunc mos_det(const MatOs& m) {
    // Cofactor expansion; matrix sizes here are tiny.
    std::vector<std::size_t> cols(m.n);
    for (std::size_t j = 0; j < m.n; ++j) cols[j] = j;
    std::function<series::Trunc(std::size_t, std::vector<std::size_t>)> go =
        [&](std::size_t row, std::vector<std::size_t> cs) -> series::Trunc {
        if (cs.empty()) return series::one(m.s);
        series::Trunc acc = series::zero(m.s);
        for (std::size_t p = 0; p < cs.size(); ++p) {
            std::vector<std::size_t> rest = cs;
            rest.erase(rest.begin() + p);
            series::Trunc term = series::mul(m.at(row, cs[p]), go(row + 1, rest));
            if (p % 2) term = neg(term);
            acc = series::add(acc, term);
        }
        return acc;
    };
    return go(0, cols);
}

MatOs mos_from_word(const LieAlgebra& g, const GroupWord& w, std::size_t s) {
    return mos_from_constant(g.defining_matrix_of_word(w), s);
}

MatOs mos_exp(const LieAlgebra& g, const TruncatedCurrent& b) {
    const std::size_t n = g.matrix_size(), s = b.s;
    MatOs bm = mos_zero(n, s);
    for (std::size_t i = 0; i < s; ++i) {
        const Mat c = g.to_matrix(b.coeffs[i]);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t q = 0; q < n; ++q) bm.at(r, q)[i] += c.at(r, q);
    }
    MatOs acc = mos_identity(n, s), term = mos_identity(n, s);
    Rat fact(1);
    const MatOs zero = mos_zero(n, s);
    for (std::size_t k = 1;; ++k) {
        term = mos_mul(term, bm);
        if (term == zero) break;
        ensure_invariant(k <= n * s + 1, "exponential series does not terminate");
        fact *= Rat(static_cast<long>(k));
        for (std::size_t i = 0; i < acc.entries.size(); ++i)
            for (std::size_t d = 0; d < s; ++d)
                acc.entries[i][d] += term.entries[i][d] / fact;
    }
    return acc;
}

PrincipalPart mos_gamma(const LieAlgebra& g, const MatOs& m, const PrincipalPart& a) {
    require(m.s == a.s && m.n == g.matrix_size(), "gamma action shape mismatch");
    const std::size_t s = a.s;
    MatOs p = mos_zero(m.n, s);
    for (std::size_t i = 0; i < s; ++i) {
        const Mat c = g.to_matrix(a.coeffs[i]);
        for (std::size_t r = 0; r < m.n; ++r)
            for (std::size_t q = 0; q < m.n; ++q) p.at(r, q)[s - 1 - i] += c.at(r, q);
    }
    const MatOs conj = mos_mul(mos_mul(m, p), mos_inverse(m));
    PrincipalPart out = pp_zero(g, s);
    for (std::size_t i = 0; i < s; ++i)
        out.coeffs[i] = g.from_matrix(mos_coefficient(conj, s - 1 - i));
    return out;
}

BlockLDU mos_ldu(const MatOs& m, const std::vector<std::size_t>& block_sizes) {
    std::size_t total = 0;
    for (std::size_t b : block_sizes) total += b;
    require(total == m.n, "block sizes must partition the matrix");
    std::vector<std::size_t> off(block_sizes.size() + 1, 0);
    for (std::size_t k = 0; k < block_sizes.size(); ++k) off[k + 1] = off[k] + block_sizes[k];

    MatOs w = m;
    BlockLDU out{mos_identity(m.n, m.s), mos_zero(m.n, m.s), mos_identity(m.n, m.s)};
    for (std::size_t k = 0; k < block_sizes.size(); ++k) {
        const std::size_t r0 = off[k], nb = block_sizes[k];
        const Block piv = get_block(w, r0, nb, r0, nb);
        const MatOs piv_m = block_to_mos(piv);
        if (det(mos_coefficient(piv_m, 0)) == 0)
            throw chart_miss("non-invertible pivot block " + std::to_string(k));
        const Block piv_inv = mos_to_block(mos_inverse(piv_m));
        set_block(out.diag, r0, r0, piv);
        for (std::size_t i = k + 1; i < block_sizes.size(); ++i)
            set_block(out.lower, off[i], r0,
                      block_mul(get_block(w, off[i], block_sizes[i], r0, nb), piv_inv));
        for (std::size_t j = k + 1; j < block_sizes.size(); ++j)
            set_block(out.upper, r0, off[j],
                      block_mul(piv_inv, get_block(w, r0, nb, off[j], block_sizes[j])));
        for (std::size_t i = k + 1; i < block_sizes.size(); ++i)
            for (std::size_t j = k + 1; j < block_sizes.size(); ++j) {
                const Block upd = block_mul(
                    get_block(out.lower, off[i], block_sizes[i], r0, nb),
                    block_mul(piv, get_block(out.upper, r0, nb, off[j], block_sizes[j])));
                set_block(w, off[i], off[j],
                          block_sub(get_block(w, off[i], block_sizes[i], off[j], block_sizes[j]),
                                    upd));
            }
    }
    ensure_invariant(mos_mul(out.lower, mos_mul(out.diag, out.upper)) == m,
                     "LDU reassembly failed");
    return out;
}

BigCellFactors mos_big_cell(const MatOs& m, const std::vector<std::size_t>& block_sizes) {
    const BlockLDU ldu = mos_ldu(m, block_sizes);
    BigCellFactors out;
    out.diag = ldu.diag;
    out.uplus = ldu.upper;
    out.uminus = mos_mul(mos_inverse(ldu.diag), mos_mul(ldu.lower, ldu.diag));
    ensure_invariant(mos_mul(out.diag, mos_mul(out.uminus, out.uplus)) == m,
                     "big-cell reassembly failed");
    return out;
}

} // namespace wildred
