#include "wildred/orbitflat.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace wildred {

namespace {

AlgElement cartan_part(const LieAlgebra& g, const AlgElement& x) {
    AlgElement h = x;
    for (std::size_t r = 0; r < g.root_datum().roots().size(); ++r)
        g.set_root_component(h, r, Rat(0));
    return h;
}

/// All coefficient-basis currents of g_s.
std::vector<TruncatedCurrent> basis_currents(const LieAlgebra& g, std::size_t s) {
    std::vector<TruncatedCurrent> out;
    out.reserve(g.dim() * s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t e = 0; e < g.dim(); ++e) {
            auto x = tc_zero(g, s);
            x.coeffs[i][e] = Rat(1);
            out.push_back(std::move(x));
        }
    return out;
}

MatOs witness_matrix(const LieAlgebra& g, const GroupWord& word, const TruncatedCurrent& b) {
    return mos_mul(mos_from_word(g, word, b.s), mos_exp(g, b));
}

MatOs reversed(const MatOs& m) {
    MatOs r = m;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) r.at(i, j) = m.at(m.n - 1 - i, m.n - 1 - j);
    return r;
}

} // namespace

void validate_config(const LieAlgebra& g, const WildConfig& config) {
    std::set<std::string> labels;
    for (const auto& p : config.points) {
        require(labels.insert(p.label).second, "duplicate point label: " + p.label);
        require(p.marked.s >= 1, "pole order must be at least 1");
        for (const auto& c : p.marked.coeffs)
            require(g.is_cartan(c), "marked normal forms must have Cartan coefficients");
    }
}

OrbitPoint orbit_sample(const LieAlgebra& g, const WildConfig& config, std::size_t index,
                        std::mt19937_64& rng) {
    require(index < config.points.size(), "orbit index out of range");
    const auto& marked = config.points[index].marked;
    std::uniform_int_distribution<std::size_t> root(0, g.root_datum().roots().size() - 1);
    // Nonzero word parameters keep the samples away from the degenerate
    // (Cartan-fixing) locus; Birkhoff coefficients may vanish freely.
    static const Rat params[] = {Rat(-2), Rat(-1), Rat(1), Rat(2)};
    std::uniform_int_distribution<std::size_t> param(0, 3);
    std::uniform_int_distribution<int> num(-2, 2);
    std::uniform_int_distribution<std::size_t> len(1, 6);
    OrbitPoint p;
    p.base_index = index;
    const std::size_t l = len(rng);
    for (std::size_t i = 0; i < l; ++i) p.word.factors.emplace_back(root(rng), params[param(rng)]);
    p.birkhoff = tc_zero(g, marked.s);
    for (std::size_t i = 1; i < marked.s; ++i)
        for (auto& c : p.birkhoff.coeffs[i]) c = Rat(num(rng));
    p.value = coadjoint_group(g, p.word, p.birkhoff, marked);
    return p;
}

Rat kks_pairing(const LieAlgebra& g, const OrbitPoint& p, const TruncatedCurrent& x,
                const TruncatedCurrent& y) {
    return residue_pairing(g, p.value, tcla_bracket(g, x, y));
}

AlgElement moment(const LieAlgebra& g, const std::vector<OrbitPoint>& points) {
    AlgElement sum = g.zero();
    for (const auto& p : points) {
        require(p.value.coeffs[0].size() == g.dim(), "mixed algebras in moment");
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p.value.coeffs[0][i];
    }
    return sum;
}

RankReport moment_rank(const LieAlgebra& g, const WildConfig& config, std::size_t n_samples,
                       std::uint64_t seed) {
    require(n_samples >= 1, "need at least one sample");
    validate_config(g, config);
    RankReport report;
    report.full_rank = g.dim();
    for (std::size_t t = 0; t < n_samples; ++t) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (t + 1));
        std::vector<Vec> columns;
        for (std::size_t a = 0; a < config.points.size(); ++a) {
            const OrbitPoint p = orbit_sample(g, config, a, rng);
            for (const auto& xi : basis_currents(g, p.value.s))
                columns.push_back(coadjoint_inf(g, xi, p.value).coeffs[0]);
        }
        Mat m(g.dim(), columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j)
            for (std::size_t i = 0; i < g.dim(); ++i) m.at(i, j) = columns[j][i];
        const std::size_t r = rank(m);
        report.per_sample.push_back(r);
        report.min_rank = t == 0 ? r : std::min(report.min_rank, r);
        report.max_rank = std::max(report.max_rank, r);
    }
    return report;
}

FlatnessVerdict flatness_verdict(const LieAlgebra& g, const WildConfig& config) {
    validate_config(g, config);
    if (!config.semisimple_flag)
        throw unsupported_error("non-semisimple configuration: apply central reduction first");
    FlatnessVerdict v;
    Rat total(0);
    for (const auto& p : config.points) {
        const auto f = fission(g, p.marked);
        v.nus.push_back(f.nu);
        total += Rat(static_cast<long>(f.nu));
    }
    v.chi = Rat(2) - total;

    std::size_t ge1 = 0, ge2 = 0, ge3 = 0;
    for (std::size_t nu : v.nus) {
        ge1 += nu >= 1;
        ge2 += nu >= 2;
        ge3 += nu >= 3;
    }
    if (ge3 >= 1) {
        v.verdict = FlatnessKind::holds;
        v.clause = "one point with nu >= 3";
    } else if (ge2 >= 1 && ge1 >= 2) {
        v.verdict = FlatnessKind::holds;
        v.clause = "a point with nu >= 2 and another with nu >= 1";
    } else if (ge1 >= 3) {
        v.verdict = FlatnessKind::holds;
        v.clause = "three points with nu >= 1";
    } else {
        v.verdict = FlatnessKind::fails;
        v.clause = "no sufficient clause applies";
    }
    return v;
}

std::vector<std::size_t> levi_block_sizes(const LieAlgebra& g, const AlgElement& top) {
    require(g.is_cartan(top), "Levi blocks need a Cartan top coefficient");
    const Mat d = g.to_matrix(top);
    std::vector<std::size_t> sizes;
    std::vector<Rat> values;
    for (std::size_t i = 0; i < d.rows(); ++i) {
        if (i > 0 && d.at(i, i) == d.at(i - 1, i - 1)) {
            ++sizes.back();
        } else {
            sizes.push_back(1);
            values.push_back(d.at(i, i));
        }
    }
    for (std::size_t a = 0; a < values.size(); ++a)
        for (std::size_t b = a + 1; b < values.size(); ++b)
            if (values[a] == values[b])
                throw unsupported_error(
                    "Levi blocks are not contiguous in the defining representation");
    return sizes;
}

BigCellFactors big_cell_factorize(const LieAlgebra& g, const GroupWord& word,
                                  const TruncatedCurrent& birkhoff,
                                  const std::vector<std::size_t>& block_sizes) {
    return mos_big_cell(witness_matrix(g, word, birkhoff), block_sizes);
}

PrincipalPart nilpotent_transfer(const LieAlgebra& g, const TruncatedCurrent& x_minus,
                                 const PrincipalPart& abar) {
    require(x_minus.s == abar.s, "order mismatch in nilpotent transfer");
    const AlgElement top = abar.coeffs[abar.s - 1];
    for (const auto& c : x_minus.coeffs) {
        require(cartan_part(g, c) == g.zero(), "transfer exponent must avoid the Cartan");
        for (std::size_t r = 0; r < g.root_datum().roots().size(); ++r)
            if (g.root_component(c, r) != 0) {
                require(r >= g.root_datum().num_positive(),
                        "transfer exponent must lie in the opposite nilradical");
                require(g.root_pairing(r, top) != 0,
                        "top coefficient must be regular for the transfer grading");
            }
    }
    return pp_sub(mos_gamma(g, mos_exp(g, x_minus), abar), abar);
}

TruncatedCurrent nilpotent_transfer_inverse(const LieAlgebra& g, const PrincipalPart& y,
                                            const PrincipalPart& abar) {
    const std::size_t s = abar.s;
    const AlgElement top = abar.coeffs[s - 1];
    const auto& rd = g.root_datum();
    TruncatedCurrent x = tc_zero(g, s);
    // Defect correction: the top-coefficient bracket is diagonal on the
    // nilradical root lines, and each descending sweep raises the defect's
    // nilpotency level.
    const std::size_t cap = (rd.num_positive() + 2) * s + 3;
    for (std::size_t pass = 0;; ++pass) {
        ensure_invariant(pass < cap, "nilpotent transfer inversion does not terminate");
        PrincipalPart d = pp_sub(y, nilpotent_transfer(g, x, abar));
        if (pp_is_zero(d)) break;
        for (std::size_t j = s; j-- > 0;) {
            const std::size_t i = s - 1 - j;
            AlgElement dj = d.coeffs[j];
            ensure_invariant(cartan_part(g, dj) == g.zero(),
                             "transfer defect left the nilradical");
            bool touched = false;
            for (std::size_t r = rd.num_positive(); r < rd.roots().size(); ++r) {
                const Rat c = g.root_component(dj, r);
                if (c == 0) continue;
                ensure_invariant(g.root_pairing(r, top) != 0,
                                 "transfer defect hit a Levi root line");
                // [t * f_r, top] = -<root_r, top> t f_r.
                g.set_root_component(x.coeffs[i], r,
                                     g.root_component(x.coeffs[i], r) -
                                         c / g.root_pairing(r, top));
                touched = true;
            }
            if (touched) d = pp_sub(y, nilpotent_transfer(g, x, abar));
        }
    }
    ensure_invariant(nilpotent_transfer(g, x, abar) == y, "transfer inversion check failed");
    return x;
}

PrincipalPart darboux_forward(const LieAlgebra& g, const DarbouxDatum& d) {
    // Consistency of y: it must arise from some opposite-unipotent factor.
    const TruncatedCurrent x = nilpotent_transfer_inverse(g, d.y, d.a_sub);
    (void)x;
    return mos_gamma(g, d.u_plus, pp_add(d.a_sub, d.y));
}

DarbouxDatum darboux_inverse(const LieAlgebra& g, const OrbitPoint& p,
                             const PrincipalPart& marked) {
    const std::vector<std::size_t> sizes = levi_block_sizes(g, marked.coeffs[marked.s - 1]);
    // value = Gamma_M(marked) with M the inverse of the witness matrix.
    const MatOs m_act = mos_inverse(witness_matrix(g, p.word, p.birkhoff));
    ensure_invariant(mos_gamma(g, m_act, marked) == p.value, "witness does not act as claimed");

    // M = u_plus * ltilde * h: reversed-order block LDU.
    std::vector<std::size_t> rev_sizes(sizes.rbegin(), sizes.rend());
    const BlockLDU rev_ldu = mos_ldu(reversed(m_act), rev_sizes);
    const MatOs u_plus = reversed(rev_ldu.lower);   // upper unipotent
    const MatOs h = reversed(rev_ldu.diag);         // block diagonal
    const MatOs l1 = reversed(rev_ldu.upper);       // lower unipotent
    const MatOs ltilde = mos_mul(h, mos_mul(l1, mos_inverse(h)));

    DarbouxDatum out;
    out.u_plus = u_plus;
    out.a_sub = mos_gamma(g, h, marked);
    out.y = pp_sub(mos_gamma(g, ltilde, out.a_sub), out.a_sub);
    ensure_invariant(darboux_forward(g, out) == p.value, "darboux round-trip failed");
    return out;
}

RankReport composite_moment_rank(const LieAlgebra& g, const WildConfig& config,
                                 std::size_t point_index, std::size_t n_samples,
                                 std::uint64_t seed) {
    require(point_index < config.points.size(), "point index out of range");
    validate_config(g, config);
    const auto f = fission(g, config.points[point_index].marked);
    require(!f.torus_indices.empty() &&
                f.torus_indices.back() == config.points[point_index].marked.s,
            "composite moment rank requires the final Levi to be the torus");
    RankReport report;
    report.full_rank = g.root_datum().rank();
    for (std::size_t t = 0; t < n_samples; ++t) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (t + 1));
        const OrbitPoint p = orbit_sample(g, config, point_index, rng);
        std::vector<Vec> columns;
        for (const auto& xi : basis_currents(g, p.value.s))
            columns.push_back(
                g.to_cartan_vector(cartan_part(g, coadjoint_inf(g, xi, p.value).coeffs[0])));
        Mat m(report.full_rank, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j)
            for (std::size_t i = 0; i < report.full_rank; ++i) m.at(i, j) = columns[j][i];
        const std::size_t r = rank(m);
        report.per_sample.push_back(r);
        report.min_rank = t == 0 ? r : std::min(report.min_rank, r);
        report.max_rank = std::max(report.max_rank, r);
    }
    return report;
}

namespace {

/// Root-component shift of acting on `marked` with parameter mu on the given
/// direction; the dependence is exactly linear in these constructions.
struct LinearAction {
    // apply(mu) produces the orbit point; slope is the tracked component's
    // derivative.
    std::function<OrbitPoint(const Rat&)> apply;
    Rat slope;
};

LinearAction linear_shift(const LieAlgebra& g, const PrincipalPart& marked,
                          std::size_t base_index, std::size_t root_index) {
    LinearAction act;
    act.apply = [&g, marked, base_index, root_index](const Rat& mu) {
        OrbitPoint p;
        p.base_index = base_index;
        p.birkhoff = tc_zero(g, marked.s);
        if (marked.s == 1) {
            if (mu != 0) p.word.factors.emplace_back(root_index, mu);
        } else {
            AlgElement x = g.zero();
            g.set_root_component(x, root_index, mu);
            p.birkhoff.coeffs[marked.s - 1] = x;
        }
        p.value = coadjoint_group(g, p.word, p.birkhoff, marked);
        return p;
    };
    const Rat at1 = g.root_component(act.apply(Rat(1)).value.coeffs[0], root_index);
    const Rat at0 = g.root_component(act.apply(Rat(0)).value.coeffs[0], root_index);
    act.slope = at1 - at0;
    return act;
}

} // namespace

std::vector<OrbitPoint> moment_preimage_three_orbits(const LieAlgebra& g,
                                                     const AlgElement& target,
                                                     const WildConfig& config) {
    if (g.root_datum().rank() != 1)
        throw unsupported_error("constructive preimage implemented for rank one only");
    require(config.points.size() == 3, "exactly three orbits expected");
    validate_config(g, config);
    require(config.points[2].marked.s == 1, "third point must have a simple pole");
    for (const auto& p : config.points) {
        const auto f = fission(g, p.marked);
        require(f.nu >= 1, "each orbit must have nu >= 1");
    }

    const std::size_t e_root = 0, f_root = 1; // A1 root order: alpha, -alpha
    const Rat t_e = g.root_component(target, e_root);
    const Rat t_f = g.root_component(target, f_root);
    const Rat t_h = g.to_cartan_vector(cartan_part(g, target))[0];

    auto h_coeff = [&](const PrincipalPart& a) {
        return g.to_cartan_vector(a.coeffs[0])[0];
    };
    const Rat c1 = h_coeff(config.points[0].marked);
    const Rat c2 = h_coeff(config.points[1].marked);
    const Rat c3 = h_coeff(config.points[2].marked);
    require(c3 != 0, "third residue must be regular");

    // Third point: tau h + beta e + gamma f, conjugate to c3 h.
    const Rat tau = t_h - c1 - c2;
    Rat beta(0), gamma(0);
    if (c3 * c3 != tau * tau) {
        beta = 1;
        gamma = c3 * c3 - tau * tau;
    }

    // Eigenvector matrix P with P diag(c3,-c3) P^{-1} = tau h + beta e + gamma f.
    auto eigvec = [&](const Rat& lam) {
        if (beta != 0 || lam != tau) return std::pair<Rat, Rat>{beta, lam - tau};
        return std::pair<Rat, Rat>{lam + tau, gamma};
    };
    const auto [p00, p10] = eigvec(c3);
    const auto [p01, p11] = eigvec(-c3);
    Mat p_mat(2, 2);
    p_mat.at(0, 0) = p00;
    p_mat.at(1, 0) = p10;
    p_mat.at(0, 1) = p01;
    p_mat.at(1, 1) = p11;
    const Rat dp = det(p_mat);
    ensure_invariant(dp != 0, "degenerate eigenvector matrix");
    p_mat.at(0, 0) = p_mat.at(0, 0) / dp;
    p_mat.at(1, 0) = p_mat.at(1, 0) / dp;

    AlgElement a3 = g.from_cartan_vector(Vec{tau});
    g.set_root_component(a3, e_root, beta);
    g.set_root_component(a3, f_root, gamma);

    OrbitPoint point3;
    point3.base_index = 2;
    point3.birkhoff = tc_zero(g, 1);
    bool matched = false;
    for (const Mat& cand : {p_mat, inverse(p_mat)}) {
        GroupWord w = g.word_of_matrix(cand);
        const PrincipalPart v = coadjoint_group(g, w, point3.birkhoff, config.points[2].marked);
        if (v.coeffs[0] == a3) {
            point3.word = std::move(w);
            point3.value = v;
            matched = true;
            break;
        }
    }
    ensure_invariant(matched, "conjugation witness construction failed");

    // Point 2 absorbs the e-component, point 1 the f-component.
    std::vector<OrbitPoint> out(3);
    out[2] = point3;
    {
        const auto act = linear_shift(g, config.points[1].marked, 1, e_root);
        ensure_invariant(act.slope != 0, "degenerate e-shift: leading term not regular");
        out[1] = act.apply((t_e - beta) / act.slope);
    }
    {
        const auto act = linear_shift(g, config.points[0].marked, 0, f_root);
        ensure_invariant(act.slope != 0, "degenerate f-shift: leading term not regular");
        out[0] = act.apply((t_f - gamma) / act.slope);
    }
    ensure_invariant(moment(g, out) == target, "constructed preimage misses the target");
    return out;
}

} // namespace wildred
