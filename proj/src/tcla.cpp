#include "wildred/tcla.hpp"

#include <optional>

#include "wildred/errors.hpp"

namespace wildred {

namespace {

void check_same_s(std::size_t a, std::size_t b) {
    require(a == b, "truncation orders must agree");
}

void add_into(AlgElement& x, const AlgElement& y) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
}

bool is_zero_vec(const Vec& v) {
    for (const auto& c : v)
        if (c != 0) return false;
    return true;
}

/// exp of a nilpotent matrix (throws if the series does not terminate).
Mat exp_nilpotent_mat(const Mat& n) {
    const std::size_t d = n.rows();
    Mat result = Mat::identity(d);
    Mat term = Mat::identity(d);
    for (std::size_t k = 1; k <= d; ++k) {
        term = term * n * (Rat(1) / Rat(static_cast<long>(k)));
        if (term.is_zero()) return result;
        result = result + term;
    }
    ensure_invariant(false, "exp of non-nilpotent matrix");
    return result;
}

/// log of a unipotent matrix (1 + nilpotent).
Mat log_unipotent_mat(const Mat& u) {
    const std::size_t d = u.rows();
    const Mat n = u - Mat::identity(d);
    Mat result(d, d);
    Mat power = Mat::identity(d);
    Rat sign(1);
    for (std::size_t k = 1; k <= d; ++k) {
        power = power * n;
        if (power.is_zero()) return result;
        result = result + power * (sign / Rat(static_cast<long>(k)));
        sign = -sign;
    }
    ensure_invariant(false, "log of non-unipotent matrix");
    return result;
}

/// Solve ad(z) = m for z in g; nullopt if no exact solution.
std::optional<AlgElement> solve_ad_equation(const LieAlgebra& g, const Mat& m) {
    const std::size_t d = g.dim();
    Mat stacked(d * d, d);
    Vec rhs(d * d, Rat(0));
    for (std::size_t j = 0; j < d; ++j) {
        const Mat adj = g.ad_matrix(g.basis_element(j));
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) stacked.at(r * d + c, j) = adj.at(r, c);
    }
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) rhs[r * d + c] = m.at(r, c);
    return solve(stacked, rhs);
}

Mat block_of(const Mat& big, std::size_t i, std::size_t j, std::size_t dim) {
    Mat b(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) b.at(r, c) = big.at(i * dim + r, j * dim + c);
    return b;
}

} // namespace

TruncatedCurrent tc_zero(const LieAlgebra& g, std::size_t s) {
    require(s >= 1, "truncation order must be >= 1");
    return TruncatedCurrent{s, std::vector<AlgElement>(s, g.zero())};
}

PrincipalPart pp_zero(const LieAlgebra& g, std::size_t s) {
    require(s >= 1, "pole order bound must be >= 1");
    return PrincipalPart{s, std::vector<AlgElement>(s, g.zero())};
}

UnitSeries unit_identity(std::size_t s) {
    UnitSeries f{s, std::vector<Rat>(s, Rat(0))};
    f.f_coeffs[0] = 1;
    return f;
}

PrincipalPart pp_add(const PrincipalPart& a, const PrincipalPart& b) {
    check_same_s(a.s, b.s);
    PrincipalPart r = a;
    for (std::size_t i = 0; i < r.s; ++i) add_into(r.coeffs[i], b.coeffs[i]);
    return r;
}

PrincipalPart pp_sub(const PrincipalPart& a, const PrincipalPart& b) {
    return pp_add(a, pp_scale(Rat(-1), b));
}

PrincipalPart pp_scale(const Rat& c, const PrincipalPart& a) {
    PrincipalPart r = a;
    for (auto& coeff : r.coeffs)
        for (auto& entry : coeff) entry *= c;
    return r;
}

bool pp_is_zero(const PrincipalPart& a) {
    for (const auto& coeff : a.coeffs)
        if (!is_zero_vec(coeff)) return false;
    return true;
}

Vec tc_flatten(const TruncatedCurrent& x) {
    Vec v;
    for (const auto& coeff : x.coeffs) v.insert(v.end(), coeff.begin(), coeff.end());
    return v;
}

TruncatedCurrent tc_unflatten(const LieAlgebra& g, std::size_t s, const Vec& v) {
    require(v.size() == s * g.dim(), "flattened length mismatch");
    TruncatedCurrent x = tc_zero(g, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t k = 0; k < g.dim(); ++k) x.coeffs[i][k] = v[i * g.dim() + k];
    return x;
}

Vec pp_flatten(const PrincipalPart& a) {
    Vec v;
    for (const auto& coeff : a.coeffs) v.insert(v.end(), coeff.begin(), coeff.end());
    return v;
}

PrincipalPart pp_unflatten(const LieAlgebra& g, std::size_t s, const Vec& v) {
    require(v.size() == s * g.dim(), "flattened length mismatch");
    PrincipalPart a = pp_zero(g, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t k = 0; k < g.dim(); ++k) a.coeffs[i][k] = v[i * g.dim() + k];
    return a;
}

TruncatedCurrent tcla_bracket(const LieAlgebra& g, const TruncatedCurrent& x,
                              const TruncatedCurrent& y) {
    check_same_s(x.s, y.s);
    TruncatedCurrent r = tc_zero(g, x.s);
    for (std::size_t i = 0; i < x.s; ++i)
        for (std::size_t j = 0; i + j < x.s; ++j)
            add_into(r.coeffs[i + j], g.bracket(x.coeffs[i], y.coeffs[j]));
    return r;
}

Rat residue_pairing(const LieAlgebra& g, const PrincipalPart& a,
                    const TruncatedCurrent& x) {
    check_same_s(a.s, x.s);
    Rat r(0);
    for (std::size_t i = 0; i < a.s; ++i) r += g.invariant_form(a.coeffs[i], x.coeffs[i]);
    return r;
}

PrincipalPart coadjoint_inf(const LieAlgebra& g, const TruncatedCurrent& x,
                            const PrincipalPart& a) {
    check_same_s(x.s, a.s);
    PrincipalPart r = pp_zero(g, a.s);
    for (std::size_t j = 0; j < a.s; ++j)
        for (std::size_t i = 0; i + j < a.s; ++i)
            add_into(r.coeffs[j], g.bracket(x.coeffs[i], a.coeffs[i + j]));
    return r;
}

PrincipalPart coadjoint_group(const LieAlgebra& g, const GroupWord& g0,
                              const TruncatedCurrent& b, const PrincipalPart& a) {
    check_same_s(b.s, a.s);
    require(is_zero_vec(b.coeffs[0]), "Birkhoff exponent must have zero constant term");

    // Constant part: coefficientwise adjoint action of the inverse word.
    const Mat ad = g.adjoint_of_word(g.inverse_word(g0));
    PrincipalPart r = a;
    for (auto& coeff : r.coeffs) coeff = ad * coeff;

    // exp(ad*_{-b}); nilpotent since b has zero constant term.
    TruncatedCurrent nb = b;
    for (auto& coeff : nb.coeffs)
        for (auto& c : coeff) c = -c;
    PrincipalPart term = r;
    for (std::size_t k = 1; k < a.s; ++k) {
        term = pp_scale(Rat(1) / Rat(static_cast<long>(k)), coadjoint_inf(g, nb, term));
        if (pp_is_zero(term)) break;
        r = pp_add(r, term);
    }
    return r;
}

PrincipalPart apply_unit(const LieAlgebra& g, const UnitSeries& f,
                         const PrincipalPart& a) {
    check_same_s(f.s, a.s);
    require(f.f_coeffs.size() == f.s && f.f_coeffs[0] != 0, "unit needs f_0 != 0");
    const std::size_t s = a.s;
    const series::Trunc fc = f.f_coeffs;
    // u_i = f^{-i-1} (f + w f'), coefficientwise in Q[w]/(w^s).
    // f + w f' has coefficients (l+1) f_l.
    series::Trunc numer = fc;
    for (std::size_t l = 1; l < s; ++l) numer[l] *= Rat(static_cast<long>(l + 1));
    const series::Trunc finv = series::inv(fc);

    PrincipalPart r = pp_zero(g, s);
    series::Trunc u = numer; // will hold f^{-i-1}(f + w f') for current i
    for (std::size_t i = 0; i < s; ++i) {
        u = (i == 0) ? series::mul(numer, finv) : series::mul(u, finv);
        for (std::size_t j = 0; j <= i; ++j) {
            AlgElement scaled = a.coeffs[i];
            for (auto& c : scaled) c *= u[i - j];
            add_into(r.coeffs[j], scaled);
        }
    }
    ensure_invariant(r.coeffs[0] == a.coeffs[0], "unit action must fix the residue");
    return r;
}

UnitSeries unit_compose(const UnitSeries& f, const UnitSeries& g) {
    check_same_s(f.s, g.s);
    const std::size_t s = f.s;
    // F(G(w)) = G(w) * f(G(w)) = w * [ g(w) * (f o (w g))(w) ].
    series::Trunc wg(s, Rat(0));
    for (std::size_t l = 1; l < s; ++l) wg[l] = g.f_coeffs[l - 1];
    const series::Trunc h = series::mul(g.f_coeffs, series::compose(f.f_coeffs, wg));
    return UnitSeries{s, h};
}

Mat diag_automorphism_matrix(const LieAlgebra& g, std::size_t s, const Mat& diag) {
    const std::size_t d = g.dim();
    Mat big(s * d, s * d);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) big.at(i * d + r, i * d + c) = diag.at(r, c);
    return big;
}

Mat conj_automorphism_matrix(const LieAlgebra& g, const TruncatedCurrent& b) {
    require(is_zero_vec(b.coeffs[0]), "conjugation exponent must have zero constant term");
    const std::size_t d = g.dim(), s = b.s;
    // ad(b) on g_s, block (i+k, i) = ad(b_k).
    Mat adb(s * d, s * d);
    for (std::size_t k = 1; k < s; ++k) {
        const Mat adk = g.ad_matrix(b.coeffs[k]);
        for (std::size_t i = 0; i + k < s; ++i)
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) adb.at((i + k) * d + r, i * d + c) = adk.at(r, c);
    }
    return exp_nilpotent_mat(adb);
}

Mat unit_automorphism_matrix(const LieAlgebra& g, std::size_t s, const UnitSeries& f) {
    require(f.f_coeffs[0] != 0, "unit needs f_0 != 0");
    const std::size_t d = g.dim();
    Mat big(s * d, s * d);
    // x w^j -> x w^j f(w)^j ; block (i, j) = (f^j)_{i-j} * Id.
    series::Trunc fc = f.f_coeffs;
    fc.resize(s, Rat(0));
    series::Trunc power = series::one(s);
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t i = j; i < s; ++i)
            for (std::size_t r = 0; r < d; ++r) big.at(i * d + r, j * d + r) = power[i - j];
        power = series::mul(power, fc);
    }
    return big;
}

AutomorphismFactors decompose_automorphism(const LieAlgebra& g,
                                           const TclaAutomorphism& phi) {
    const std::size_t d = g.dim(), s = phi.s;
    require(phi.matrix.rows() == s * d && phi.matrix.cols() == s * d,
            "automorphism matrix size mismatch");

    // Filtration preservation: block upper part vanishes.
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j)
            ensure_invariant(block_of(phi.matrix, i, j, d).is_zero(),
                             "automorphism must preserve the degree filtration");

    // Bracket preservation on basis pairs of g_s.
    {
        std::vector<Vec> images(s * d);
        for (std::size_t k = 0; k < s * d; ++k) {
            Vec e(s * d, Rat(0));
            e[k] = 1;
            images[k] = phi.matrix * e;
        }
        for (std::size_t p = 0; p < s * d; ++p)
            for (std::size_t q = p + 1; q < s * d; ++q) {
                const std::size_t ip = p / d, iq = q / d;
                TruncatedCurrent bx = tc_zero(g, s), by = tc_zero(g, s);
                bx.coeffs[ip][p % d] = 1;
                by.coeffs[iq][q % d] = 1;
                const Vec lhs = phi.matrix * tc_flatten(tcla_bracket(g, bx, by));
                const Vec rhs = tc_flatten(tcla_bracket(g, tc_unflatten(g, s, images[p]),
                                                        tc_unflatten(g, s, images[q])));
                ensure_invariant(lhs == rhs, "input does not preserve the bracket");
            }
    }

    AutomorphismFactors out;
    out.diag = block_of(phi.matrix, 0, 0, d);
    const auto diag_inv = inverse(out.diag);
    Mat psi = diag_automorphism_matrix(g, s, diag_inv) * phi.matrix;

    // Peel the inner conjugation factors from column 0.
    Mat u = Mat::identity(s * d);
    for (std::size_t k = 1; k < s; ++k) {
        const Mat mk = block_of(psi, k, 0, d);
        const auto zk = solve_ad_equation(g, mk);
        ensure_invariant(zk.has_value(), "column block is not an ad image");
        TruncatedCurrent step = tc_zero(g, s);
        step.coeffs[k] = *zk;
        const Mat factor = conj_automorphism_matrix(g, step);
        u = u * factor;
        psi = inverse(factor) * psi;
    }

    // Remaining factor must be substitution by a unit.
    out.poly = unit_identity(s);
    if (s >= 2) {
        const Mat b11 = block_of(psi, 1, 1, d);
        for (std::size_t l = 0; l + 1 < s; ++l) out.poly.f_coeffs[l] = block_of(psi, l + 1, 1, d).at(0, 0);
        ensure_invariant(out.poly.f_coeffs[0] != 0, "leading unit coefficient must be nonzero");
        ensure_invariant(b11 == Mat::identity(d) * out.poly.f_coeffs[0],
                         "degree-one block is not scalar");
    }
    ensure_invariant(psi == unit_automorphism_matrix(g, s, out.poly),
                     "residual factor is not a unit substitution");

    // Convert the peeled product to a single Birkhoff exponent.
    out.conj = tc_zero(g, s);
    const Mat lu = log_unipotent_mat(u);
    for (std::size_t k = 1; k < s; ++k) {
        const auto bk = solve_ad_equation(g, block_of(lu, k, 0, d));
        ensure_invariant(bk.has_value(), "log block is not an ad image");
        out.conj.coeffs[k] = *bk;
    }
    ensure_invariant(conj_automorphism_matrix(g, out.conj) == u,
                     "single-exponent conversion failed");

    ensure_invariant(diag_automorphism_matrix(g, s, out.diag) * u *
                             unit_automorphism_matrix(g, s, out.poly) ==
                         phi.matrix,
                     "reassembly mismatch");
    return out;
}

} // namespace wildred
