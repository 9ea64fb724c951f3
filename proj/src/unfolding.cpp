#include "wildred/unfolding.hpp"

#include <array>
#include <string>

#include "wildred/matgroup.hpp"
#include "wildred/normalform.hpp"

namespace wildred {

namespace {

Mat mat_exp_nilpotent(const Mat& x) {
    const std::size_t n = x.rows();
    Mat out = Mat::identity(n);
    Mat term = Mat::identity(n);
    for (std::size_t k = 1; k <= n + 1; ++k) {
        term = term * x;
        bool zero = true;
        for (std::size_t i = 0; i < n && zero; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (term.at(i, j) != 0) {
                    zero = false;
                    break;
                }
        if (zero) return out;
        term = term * (Rat(1) / Rat(static_cast<long>(k)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.at(i, j) += term.at(i, j);
        term = term * Rat(static_cast<long>(k));
    }
    ensure_invariant(false, "exponent argument was not nilpotent");
    return out;
}

Mat mat_log_unipotent(const Mat& u) {
    const std::size_t n = u.rows();
    Mat nil = u;
    for (std::size_t i = 0; i < n; ++i) nil.at(i, i) -= 1;
    Mat out(n, n);
    Mat power = Mat::identity(n);
    for (std::size_t k = 1; k <= n + 1; ++k) {
        power = power * nil;
        bool zero = true;
        for (std::size_t i = 0; i < n && zero; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (power.at(i, j) != 0) {
                    zero = false;
                    break;
                }
        if (zero) return out;
        const Rat c = Rat(k % 2 == 1 ? 1 : -1) / Rat(static_cast<long>(k));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.at(i, j) += c * power.at(i, j);
    }
    ensure_invariant(false, "logarithm argument was not unipotent");
    return out;
}

Mat conj(const Mat& m, const Mat& x) { return m * x * inverse(m); }

/// Solves Ad_{exp x}(base) = target with x supported on the given root lines,
/// by defect correction; base is Cartan-valued and pairs nonzero with every
/// listed root.
AlgElement solve_conj(const LieAlgebra& g, const AlgElement& base, const AlgElement& target,
                      const std::vector<std::size_t>& root_set) {
    for (std::size_t r : root_set)
        require(g.root_pairing(r, base) != 0, "base element must pair nonzero with the solve roots");
    AlgElement x = g.zero();
    const std::size_t cap = g.root_datum().num_positive() + 3;
    const Mat base_m = g.to_matrix(base);
    for (std::size_t pass = 0; pass <= cap; ++pass) {
        const Mat e = mat_exp_nilpotent(g.to_matrix(x));
        const AlgElement cur = g.from_matrix(conj(e, base_m));
        AlgElement d = target;
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= cur[i];
        if (d == g.zero()) return x;
        AlgElement probe = d;
        for (std::size_t r : root_set) g.set_root_component(probe, r, Rat(0));
        ensure_invariant(probe == g.zero(), "conjugation defect left the solve span");
        for (std::size_t r : root_set)
            g.set_root_component(x, r,
                                 g.root_component(x, r) -
                                     g.root_component(d, r) / g.root_pairing(r, base));
    }
    ensure_invariant(false, "unipotent conjugation solve did not terminate");
    return x;
}

struct OppositeCell {
    Mat u_plus;
    Mat h;
    Mat u_minus;
};

Mat index_reversed(const Mat& m) {
    const std::size_t n = m.rows();
    Mat r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.at(i, j) = m.at(n - 1 - i, n - 1 - j);
    return r;
}

/// Factorization m = u_plus * h * u_minus (upper-unipotent, diagonal,
/// lower-unipotent); throws chart_miss when m is outside the opposite cell.
OppositeCell opposite_cell_factor(const Mat& m) {
    const std::size_t n = m.rows();
    const auto ldu = mos_ldu(mos_from_constant(index_reversed(m), 1),
                             std::vector<std::size_t>(n, 1));
    OppositeCell out;
    out.u_plus = index_reversed(mos_coefficient(ldu.lower, 0));
    out.h = index_reversed(mos_coefficient(ldu.diag, 0));
    out.u_minus = index_reversed(mos_coefficient(ldu.upper, 0));
    ensure_invariant(out.u_plus * out.h * out.u_minus == m, "opposite cell factors do not reassemble");
    return out;
}

bool in_root_set(const std::vector<std::size_t>& set, std::size_t r) {
    for (std::size_t q : set)
        if (q == r) return true;
    return false;
}

/// Matrix W with W * lambda_bar * W^{-1} equal to twist^{-1}(lambda_bar),
/// picked among the Weyl lift and its inverse.
Mat weyl_translate_matrix(const LieAlgebra& g, const ConfluenceData& data,
                          const AlgElement& translated) {
    const Mat w = g.defining_matrix_of_word(g.weyl_lift(data.twist));
    const Mat lb = g.to_matrix(data.lambda_bar);
    if (g.from_matrix(conj(w, lb)) == translated) return w;
    const Mat wi = inverse(w);
    require(g.from_matrix(conj(wi, lb)) == translated, "Weyl lift does not translate the residue");
    return wi;
}

AlgElement weyl_inverse_translate(const LieAlgebra& g, const WeylElement& w,
                                  const AlgElement& cartan) {
    require(g.is_cartan(cartan), "Weyl translation needs a Cartan element");
    const auto v = inverse(w.vector_action) * g.to_cartan_vector(cartan);
    return g.from_cartan_vector(v);
}

}  // namespace

UnfoldedResidues unfold_residues(const LieAlgebra& g, const UnfoldingConfig& cfg) {
    const std::size_t s = cfg.source.s;
    require(cfg.epsilons.size() == s, "one pole position per coefficient is required");
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j)
            require(cfg.epsilons[i] != cfg.epsilons[j], "pole positions must be distinct");
    for (const auto& c : cfg.source.coeffs)
        require(g.is_cartan(c), "unfolding source must be Cartan-valued");

    UnfoldedResidues out;
    AlgElement sum = g.zero();
    for (std::size_t i = 0; i < s; ++i) {
        AlgElement h = g.zero();
        for (std::size_t j = i; j < s; ++j) {
            Rat c(1);
            for (std::size_t l = 0; l <= j; ++l)
                if (l != i) c /= cfg.epsilons[i] - cfg.epsilons[l];
            for (std::size_t k = 0; k < h.size(); ++k) h[k] += c * cfg.source.coeffs[j][k];
        }
        for (std::size_t k = 0; k < h.size(); ++k) sum[k] += h[k];
        out.residues.push_back(h);
    }
    ensure_invariant(sum == cfg.source.coeffs[0], "unfolded residues must sum to the residue");

    const auto f = fission(g, cfg.source);
    for (std::size_t i = 0; i < s; ++i) {
        const auto levi =
            g.root_datum().levi_of_annihilated_roots({g.to_cartan_vector(out.residues[i])});
        require(levi == f.levi_subsystems[s - i - 1],
                "centralizer condition fails at pole position " + std::to_string(i));
    }
    return out;
}

UnfoldingConfig make_unfolding_config(const LieAlgebra& g, const PrincipalPart& source) {
    UnfoldingConfig cfg;
    cfg.source = source;
    for (std::size_t i = 0; i < source.s; ++i) cfg.epsilons.emplace_back(static_cast<long>(i));
    for (int tries = 0; tries < 64; ++tries) {
        try {
            unfold_residues(g, cfg);
            return cfg;
        } catch (const validation_error&) {
            cfg.epsilons[source.s - 1] += 1;
        }
    }
    throw validation_error("could not satisfy the centralizer condition by perturbing poles");
}

UnfoldedTuple unfolding_map(const LieAlgebra& g, const OrbitPoint& p,
                            const UnfoldingConfig& cfg) {
    const std::size_t s = cfg.source.s;
    require(p.value.s == s && p.birkhoff.s == s, "orbit point and source order mismatch");
    UnfoldedTuple out;
    out.residues = unfold_residues(g, cfg);
    if (s == 1) {
        require(p.value.coeffs[0].size() == g.dim(), "orbit point dimension mismatch");
        out.components.push_back(p);
        return out;
    }
    if (s != 2) throw unsupported_error("unfolding map witnesses are implemented for order <= 2");

    // Witness M = W exp(b); the acting matrix is N = M^{-1} = N0 (1 + C w)
    // with N0 = W^{-1} and C = -W b1 W^{-1}.
    const MatOs witness = mos_mul(mos_from_word(g, p.word, s), mos_exp(g, p.birkhoff));
    require(p.value == mos_gamma(g, mos_inverse(witness), cfg.source),
            "orbit point witness does not reproduce its value over the source");
    const Mat w = mos_coefficient(witness, 0);
    const Mat w_inv = inverse(w);
    const AlgElement c_alg = g.from_matrix(conj(w, g.to_matrix(p.birkhoff.coeffs[1])) * Rat(-1));

    const AlgElement top = cfg.source.coeffs[1];
    const AlgElement s_corr = g.bracket(c_alg, top);

    const auto f = fission(g, cfg.source);
    const auto& l1 = f.levi_subsystems[0];
    {
        AlgElement probe = s_corr;
        for (std::size_t r = 0; r < g.root_datum().roots().size(); ++r)
            if (!in_root_set(l1.root_indices, r)) g.set_root_component(probe, r, Rat(0));
        ensure_invariant(probe == g.zero(), "moment correction has a Levi component");
    }

    std::vector<std::size_t> plus_roots, minus_roots;
    AlgElement s_plus = g.zero(), s_minus = g.zero();
    for (std::size_t r = 0; r < g.root_datum().roots().size(); ++r) {
        if (in_root_set(l1.root_indices, r)) continue;
        const bool positive = r < g.root_datum().num_positive();
        (positive ? plus_roots : minus_roots).push_back(r);
        g.set_root_component(positive ? s_plus : s_minus, r, g.root_component(s_corr, r));
    }

    const std::array<AlgElement, 2> markings = {out.residues.residues[0], out.residues.residues[1]};
    const std::array<AlgElement, 2> corrections = {s_plus, s_minus};
    const std::array<const std::vector<std::size_t>*, 2> solve_roots = {&plus_roots, &minus_roots};
    AlgElement residue_sum = g.zero();
    for (std::size_t i = 0; i < 2; ++i) {
        AlgElement target = markings[i];
        for (std::size_t k = 0; k < target.size(); ++k) target[k] += corrections[i][k];
        const AlgElement x = solve_conj(g, markings[i], target, *solve_roots[i]);
        const Mat e_neg = mat_exp_nilpotent(g.to_matrix(x) * Rat(-1));
        OrbitPoint comp;
        comp.base_index = i;
        comp.value = pp_zero(g, 1);
        comp.value.coeffs[0] = g.from_matrix(conj(w_inv, g.to_matrix(target)));
        comp.word = g.word_of_matrix(e_neg * w);
        comp.birkhoff = tc_zero(g, 1);
        for (std::size_t k = 0; k < g.dim(); ++k) residue_sum[k] += comp.value.coeffs[0][k];
        out.components.push_back(comp);
    }
    ensure_invariant(residue_sum == p.value.coeffs[0],
                     "unfolded components must sum to the residue of the source point");
    return out;
}

bool image_membership(const LieAlgebra& g, const std::vector<OrbitPoint>& components) {
    require(!components.empty(), "membership test needs at least one component");
    for (const auto& c : components)
        require(c.value.s == 1, "membership test expects simple-pole components");
    if (components.size() == 1) return true;
    const Mat m0_inv = inverse(g.defining_matrix_of_word(components[0].word));
    for (std::size_t i = 1; i < components.size(); ++i) {
        const Mat r = g.defining_matrix_of_word(components[i].word) * m0_inv;
        for (std::size_t k = 1; k <= r.rows(); ++k) {
            Mat minor(k, k);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) minor.at(a, b) = r.at(a, b);
            if (det(minor) == 0) return false;
        }
    }
    return true;
}

PrincipalPart coalesced_normal_form(const LieAlgebra& g, const ConfluenceData& data) {
    require(g.is_cartan(data.lambda) && g.is_cartan(data.lambda_bar),
            "confluence residues must be Cartan-valued");
    for (std::size_t r = 0; r < g.root_datum().roots().size(); ++r)
        require(g.root_pairing(r, data.lambda) != 0 && g.root_pairing(r, data.lambda_bar) != 0,
                "confluence residues must be regular");
    const AlgElement translated = weyl_inverse_translate(g, data.twist, data.lambda_bar);
    PrincipalPart a = pp_zero(g, 2);
    a.coeffs[1] = data.lambda;
    a.coeffs[0] = data.lambda;
    for (std::size_t k = 0; k < g.dim(); ++k) a.coeffs[0][k] += translated[k];
    return a;
}

ConfluencePair confluence_project(const LieAlgebra& g, const ConfluenceData& data,
                                  const OrbitPoint& p) {
    UnfoldingConfig cfg;
    cfg.epsilons = {Rat(0), Rat(1)};
    cfg.source = coalesced_normal_form(g, data);
    const auto tuple = unfolding_map(g, p, cfg);

    const AlgElement translated = weyl_inverse_translate(g, data.twist, data.lambda_bar);
    const Mat wm = weyl_translate_matrix(g, data, translated);

    ConfluencePair pair;
    pair.first = tuple.components[1];
    pair.first.base_index = 0;

    const Mat m0 = g.defining_matrix_of_word(tuple.components[0].word);
    pair.second.base_index = 1;
    pair.second.value = tuple.components[0].value;
    pair.second.word = g.word_of_matrix(inverse(wm) * m0);
    pair.second.birkhoff = tc_zero(g, 1);
    return pair;
}

OrbitPoint confluence_embed(const LieAlgebra& g, const ConfluenceData& data,
                            const ConfluencePair& pair) {
    const PrincipalPart a_w = coalesced_normal_form(g, data);
    const AlgElement translated = weyl_inverse_translate(g, data.twist, data.lambda_bar);
    const Mat wm = weyl_translate_matrix(g, data, translated);

    require(pair.first.value.s == 1 && pair.second.value.s == 1,
            "confluence pair must consist of simple-pole points");
    const Mat ma = g.defining_matrix_of_word(pair.first.word);
    const Mat mb = g.defining_matrix_of_word(pair.second.word);
    require(g.from_matrix(conj(inverse(ma), g.to_matrix(data.lambda))) ==
                pair.first.value.coeffs[0],
            "first witness does not reproduce its value");
    require(g.from_matrix(conj(inverse(mb), g.to_matrix(data.lambda_bar))) ==
                pair.second.value.coeffs[0],
            "second witness does not reproduce its value");

    // Acting matrices P = Ma^{-1}, Q = Mb^{-1}; the cell condition factors
    // W Q^{-1} P = u_plus * h * u_minus.
    const Mat p_act = inverse(ma);
    const auto cell = opposite_cell_factor(wm * mb * inverse(ma));

    // Gauge choice: exp(x0) = u_plus^{-1}, exp(x1) = h u_minus h^{-1},
    // N0 = P u_minus^{-1} h^{-1}.
    const Mat e0 = inverse(cell.u_plus);
    const Mat e1 = cell.h * cell.u_minus * inverse(cell.h);
    const Mat n0 = p_act * inverse(cell.u_minus) * inverse(cell.h);

    AlgElement s_corr = g.from_matrix(conj(e0, g.to_matrix(translated)));
    for (std::size_t k = 0; k < g.dim(); ++k) s_corr[k] -= translated[k];
    {
        AlgElement part = g.from_matrix(conj(e1, g.to_matrix(data.lambda)));
        for (std::size_t k = 0; k < g.dim(); ++k) s_corr[k] += part[k] - data.lambda[k];
    }

    AlgElement c_alg = g.zero();
    for (std::size_t r = 0; r < g.root_datum().roots().size(); ++r)
        g.set_root_component(c_alg, r,
                             -g.root_component(s_corr, r) / g.root_pairing(r, data.lambda));
    const Mat cm = g.to_matrix(c_alg);

    MatOs n = mos_from_constant(n0, 2);
    const Mat nc = n0 * cm;
    for (std::size_t i = 0; i < n.n; ++i)
        for (std::size_t j = 0; j < n.n; ++j) n.at(i, j)[1] = nc.at(i, j);

    OrbitPoint out;
    out.base_index = 0;
    out.value = mos_gamma(g, n, a_w);
    out.word = g.word_of_matrix(inverse(n0));
    out.birkhoff = tc_zero(g, 2);
    out.birkhoff.coeffs[1] = g.from_matrix(conj(n0, cm) * Rat(-1));

    AlgElement residue_sum = pair.first.value.coeffs[0];
    for (std::size_t k = 0; k < g.dim(); ++k) residue_sum[k] += pair.second.value.coeffs[0][k];
    ensure_invariant(residue_sum == out.value.coeffs[0],
                     "confluence must preserve the residue sum");
    return out;
}

BridgeCertificate unfolded_flatness_bridge(const LieAlgebra& g, const WildConfig& config,
                                           std::size_t n_samples, std::uint64_t seed) {
    validate_config(g, config);
    require(config.points.size() == 3, "the bridge expects three marked points");
    BridgeCertificate cert;
    cert.residue_sums_ok = true;
    for (const auto& pt : config.points) {
        const auto f = fission(g, pt.marked);
        require(!f.torus_indices.empty() && f.torus_indices.back() == pt.marked.s,
                "each point must have torus final Levi");
        const auto cfg = make_unfolding_config(g, pt.marked);
        const auto res = unfold_residues(g, cfg);
        AlgElement sum = g.zero();
        for (const auto& h : res.residues)
            for (std::size_t k = 0; k < g.dim(); ++k) sum[k] += h[k];
        if (sum != pt.marked.coeffs[0]) cert.residue_sums_ok = false;
        for (std::size_t i = 0; i < res.residues.size(); ++i) {
            WildPoint tame;
            tame.label = pt.label + "#" + std::to_string(i);
            tame.marked = pp_zero(g, 1);
            tame.marked.coeffs[0] = res.residues[i];
            cert.tame.points.push_back(tame);
        }
        cert.configs.push_back(cfg);
        cert.per_point.push_back(res);
    }
    cert.tame.semisimple_flag = config.semisimple_flag;
    cert.rank_evidence = moment_rank(g, cert.tame, n_samples, seed);
    return cert;
}

}  // namespace wildred
