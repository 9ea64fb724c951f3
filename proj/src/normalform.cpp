#include "wildred/normalform.hpp"

#include <algorithm>
#include <map>

namespace wildred {

namespace {

bool is_integer(const Rat& r) { return boost::multiprecision::denominator(r) == 1; }

long to_long(const Rat& r) {
    return static_cast<long>(boost::multiprecision::numerator(r).convert_to<long long>());
}

void require_cartan_coeffs(const LieAlgebra& g, const PrincipalPart& a) {
    for (const auto& c : a.coeffs)
        require(g.is_cartan(c), "principal part must have Cartan-valued coefficients");
}

/// Root indices of the Levi subsystem of the irregular type: the roots
/// annihilating A_1..A_{s-1} (all roots when s = 1).
std::vector<std::size_t> irregular_levi_roots(const LieAlgebra& g, const PrincipalPart& a) {
    const auto& rd = g.root_datum();
    if (a.s == 1) {
        std::vector<std::size_t> all(rd.roots().size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
    }
    std::vector<Vec> vectors;
    for (std::size_t i = 1; i < a.s; ++i) vectors.push_back(g.to_cartan_vector(a.coeffs[i]));
    return rd.levi_of_annihilated_roots(vectors).root_indices;
}

/// Degree-indexed window C_d, d in [-s, m-1], stored at index d + s.
struct Window {
    std::size_t s = 1, m = 0;
    std::vector<AlgElement> c;

    AlgElement& at_degree(long d) { return c[static_cast<std::size_t>(d + static_cast<long>(s))]; }
    const AlgElement& at_degree(long d) const {
        return c[static_cast<std::size_t>(d + static_cast<long>(s))];
    }
};

Window to_window(const LieAlgebra& g, const ConnectionGerm& germ) {
    Window w;
    w.s = germ.principal.s;
    w.m = germ.m;
    w.c.assign(w.s + w.m, g.zero());
    for (std::size_t i = 0; i < w.s; ++i) w.at_degree(-static_cast<long>(i) - 1) = germ.principal.coeffs[i];
    for (std::size_t i = 0; i < w.m; ++i) w.at_degree(static_cast<long>(i)) = germ.nonsingular[i];
    return w;
}

ConnectionGerm from_window(const LieAlgebra& g, const Window& w) {
    ConnectionGerm germ;
    germ.principal = pp_zero(g, w.s);
    germ.nonsingular.assign(w.m, g.zero());
    germ.m = w.m;
    for (std::size_t i = 0; i < w.s; ++i) germ.principal.coeffs[i] = w.at_degree(-static_cast<long>(i) - 1);
    for (std::size_t i = 0; i < w.m; ++i) germ.nonsingular[i] = w.at_degree(static_cast<long>(i));
    return germ;
}

void gauge_in_place(const LieAlgebra& g, Window& w, std::size_t k, const AlgElement& x) {
    require(k >= 1, "based gauge weight must be >= 1");
    const long lo = -static_cast<long>(w.s), hi = static_cast<long>(w.m) - 1;
    // e^{ad(X w^k)} applied to the connection form, exact on the window.
    std::vector<AlgElement> term = w.c;
    for (std::size_t j = 1;; ++j) {
        std::vector<AlgElement> next(w.c.size(), g.zero());
        bool nonzero = false;
        const Rat inv_j = Rat(1) / Rat(static_cast<long>(j));
        for (long d = lo; d <= hi; ++d) {
            const long src = d - static_cast<long>(k);
            if (src < lo) continue;
            AlgElement b = g.bracket(x, term[static_cast<std::size_t>(src + static_cast<long>(w.s))]);
            bool z = true;
            for (auto& e : b) {
                e *= inv_j;
                if (e != 0) z = false;
            }
            if (!z) nonzero = true;
            next[static_cast<std::size_t>(d + static_cast<long>(w.s))] = b;
        }
        if (!nonzero) break;
        for (std::size_t i = 0; i < w.c.size(); ++i)
            for (std::size_t e = 0; e < g.dim(); ++e) w.c[i][e] += next[i][e];
        term = std::move(next);
    }
    // Derivative term k X w^{k-1} dw.
    const long dk = static_cast<long>(k) - 1;
    if (dk <= hi) {
        auto& target = w.at_degree(dk);
        for (std::size_t e = 0; e < g.dim(); ++e) target[e] += Rat(static_cast<long>(k)) * x[e];
    }
}

struct GreedyResult {
    Window window;
    GaugeWord applied;                                // forward gauges, in order
    std::vector<std::pair<long, AlgElement>> leftover; // resonant remainders
};

/// Core normalization loop; `allow_resonant` keeps resonant kernel
/// components in place instead of throwing.
GreedyResult greedy_normalize(const LieAlgebra& g, const ConnectionGerm& germ,
                              bool allow_resonant) {
    const auto& rd = g.root_datum();
    const std::size_t s = germ.principal.s;
    require(germ.nonsingular.size() == germ.m, "nonsingular coefficient count must equal m");

    GreedyResult out;
    out.window = to_window(g, germ);
    Window& w = out.window;

    std::vector<std::size_t> levi_roots; // of the finalized irregular type
    bool levi_ready = false;

    for (long d = -static_cast<long>(s); d < static_cast<long>(germ.m); ++d) {
        if (d >= 0 && !levi_ready) {
            levi_roots = irregular_levi_roots(g, from_window(g, w).principal);
            levi_ready = true;
        }
        std::vector<std::size_t> pending;
        for (std::size_t r = 0; r < rd.roots().size(); ++r) {
            const Rat c = g.root_component(w.at_degree(d), r);
            if (c == 0) continue;
            // Highest finalized irregular coefficient not annihilating the root.
            const long imin = std::max<long>(1, -d);
            long istar = -1;
            for (long i = static_cast<long>(s) - 1; i >= imin; --i) {
                const AlgElement& ai = w.at_degree(-i - 1);
                if (rd.pairing(rd.roots()[r], g.to_cartan_vector(ai)) != 0) {
                    istar = i;
                    break;
                }
            }
            if (istar < 0) {
                require(d >= 0,
                        "polar coefficients are not gauge-reducible to the Cartan "
                        "(input is not in the unramified toral class)");
                pending.push_back(r);
                continue;
            }
            const std::size_t k = static_cast<std::size_t>(d + istar + 1);
            const Rat pair = rd.pairing(rd.roots()[r], g.to_cartan_vector(w.at_degree(-istar - 1)));
            AlgElement x = g.zero();
            g.set_root_component(x, r, c / pair);
            gauge_in_place(g, w, k, x);
            out.applied.factors.emplace_back(k, x);
            ensure_invariant(g.root_component(w.at_degree(d), r) == 0,
                             "elementary gauge failed to cancel the target component");
        }
        if (d < 0) {
            // Remaining coefficient is Cartan and final.
            ensure_invariant(g.is_cartan(w.at_degree(d)), "polar remainder must be Cartan");
            continue;
        }

        // Levi stage at weight k = d + 1: cancel through (k - ad_{Lambda'}).
        const std::size_t k = static_cast<std::size_t>(d) + 1;
        const AlgElement lambda = w.at_degree(-1);
        AlgElement x = g.zero();
        AlgElement resonant_part = g.zero();
        bool have_x = false, have_res = false;
        for (std::size_t r : pending) {
            const Rat c = g.root_component(w.at_degree(d), r);
            if (c == 0) continue;
            const Rat kappa = rd.pairing(rd.roots()[r], g.to_cartan_vector(lambda));
            if (kappa == Rat(static_cast<long>(k))) {
                g.set_root_component(resonant_part, r, c);
                have_res = true;
            } else {
                g.set_root_component(x, r, -c / (Rat(static_cast<long>(k)) - kappa));
                have_x = true;
            }
        }
        // Cartan component: eigenvalue 0, always removable.
        const AlgElement cur = w.at_degree(d);
        bool cartan_nonzero = false;
        {
            AlgElement h = cur;
            for (std::size_t r = 0; r < rd.roots().size(); ++r) g.set_root_component(h, r, Rat(0));
            for (std::size_t e = 0; e < g.dim(); ++e)
                if (h[e] != 0) {
                    cartan_nonzero = true;
                    x[e] += -h[e] / Rat(static_cast<long>(k));
                }
        }
        if (have_x || cartan_nonzero) {
            gauge_in_place(g, w, k, x);
            out.applied.factors.emplace_back(k, x);
        }
        const AlgElement remainder = w.at_degree(d);
        if (have_res) {
            if (!allow_resonant) {
                std::size_t coker = 0;
                for (std::size_t r : levi_roots)
                    if (rd.pairing(rd.roots()[r], g.to_cartan_vector(lambda)) ==
                        Rat(static_cast<long>(k)))
                        ++coker;
                throw resonant_obstruction(static_cast<long>(k), coker);
            }
            out.leftover.emplace_back(static_cast<long>(k), remainder);
        }
        ensure_invariant(have_res || remainder == g.zero(),
                         "nonsingular degree not fully cancelled");
    }
    return out;
}

} // namespace

FissionData fission(const LieAlgebra& g, const PrincipalPart& a) {
    require_cartan_coeffs(g, a);
    const auto& rd = g.root_datum();
    FissionData out;
    std::vector<AlgElement> window;
    std::vector<Vec> vectors;
    for (std::size_t i = 1; i <= a.s; ++i) {
        window.push_back(a.coeffs[a.s - i]);
        vectors.push_back(g.to_cartan_vector(a.coeffs[a.s - i]));
        out.levis.push_back(g.centralizer(window));
        out.levi_subsystems.push_back(rd.levi_of_annihilated_roots(vectors));
        if (out.levis.back().basis.size() == rd.rank()) {
            ++out.nu;
            out.torus_indices.push_back(i);
        }
    }
    for (std::size_t i = 1; i < out.levis.size(); ++i)
        ensure_invariant(out.levis[i].basis.size() <= out.levis[i - 1].basis.size(),
                         "fission sequence must be nested");
    return out;
}

ResonanceReport resonance_report(const LieAlgebra& g, const PrincipalPart& a) {
    require_cartan_coeffs(g, a);
    const auto& rd = g.root_datum();
    ResonanceReport out;
    const Vec lambda = g.to_cartan_vector(a.coeffs[0]);
    for (std::size_t r : irregular_levi_roots(g, a)) {
        const Rat kappa = rd.pairing(rd.roots()[r], lambda);
        if (kappa != 0 && is_integer(kappa)) {
            out.offenders.emplace_back(r, to_long(kappa));
            if (kappa > 0) out.resonance_degrees.push_back(to_long(kappa));
        }
    }
    std::sort(out.resonance_degrees.begin(), out.resonance_degrees.end());
    out.resonance_degrees.erase(
        std::unique(out.resonance_degrees.begin(), out.resonance_degrees.end()),
        out.resonance_degrees.end());
    out.nonresonant = out.offenders.empty();
    return out;
}

UtsResult is_uts(const LieAlgebra& g, const PrincipalPart& a) {
    for (const auto& c : a.coeffs)
        if (!g.is_semisimple_element(c)) return {false, false, {}};
    for (std::size_t i = 0; i < a.s; ++i)
        for (std::size_t j = i + 1; j < a.s; ++j)
            if (g.bracket(a.coeffs[i], a.coeffs[j]) != g.zero()) return {false, false, {}};

    bool all_cartan = true;
    for (const auto& c : a.coeffs) all_cartan = all_cartan && g.is_cartan(c);
    if (all_cartan) return {true, true, GroupWord{}};

    // Simultaneous rational eigenbasis, refining subspaces coefficient by
    // coefficient; commuting semisimple matrices preserve each other's
    // eigenspaces.
    const std::size_t n = g.matrix_size();
    std::vector<std::vector<Vec>> spaces;
    {
        std::vector<Vec> full;
        for (std::size_t i = 0; i < n; ++i) {
            Vec e(n, Rat(0));
            e[i] = 1;
            full.push_back(e);
        }
        spaces.push_back(full);
    }
    for (const auto& coeff : a.coeffs) {
        const Mat cm = g.to_matrix(coeff);
        std::vector<std::vector<Vec>> next;
        for (const auto& basis : spaces) {
            const std::size_t dsub = basis.size();
            Mat b(n, dsub);
            for (std::size_t j = 0; j < dsub; ++j)
                for (std::size_t i = 0; i < n; ++i) b.at(i, j) = basis[j][i];
            // Restriction R with cm * b = b * R.
            Mat restr(dsub, dsub);
            for (std::size_t j = 0; j < dsub; ++j) {
                const auto col = solve(b, cm * basis[j]);
                ensure_invariant(col.has_value(), "eigenspace not invariant");
                for (std::size_t i = 0; i < dsub; ++i) restr.at(i, j) = (*col)[i];
            }
            std::size_t found = 0;
            for (const Rat& ev : rational_roots(char_poly(restr))) {
                Mat shifted = restr;
                for (std::size_t i = 0; i < dsub; ++i) shifted.at(i, i) -= ev;
                std::vector<Vec> sub;
                for (const Vec& kv : nullspace(shifted)) sub.push_back(b * kv);
                if (!sub.empty()) {
                    found += sub.size();
                    next.push_back(std::move(sub));
                }
            }
            if (found != dsub) return {true, false, {}}; // irrational eigenvalues
        }
        spaces = std::move(next);
    }
    Mat p(n, n);
    std::size_t col = 0;
    for (const auto& basis : spaces)
        for (const auto& v : basis) {
            for (std::size_t i = 0; i < n; ++i) p.at(i, col) = v[i];
            ++col;
        }
    const Rat dp = det(p);
    ensure_invariant(dp != 0, "eigenbasis is singular");
    for (std::size_t i = 0; i < n; ++i) p.at(i, 0) /= dp;
    return {true, true, g.word_of_matrix(p)};
}

ConnectionGerm apply_elementary_gauge(const LieAlgebra& g, const ConnectionGerm& germ,
                                      std::size_t k, const AlgElement& x) {
    Window w = to_window(g, germ);
    gauge_in_place(g, w, k, x);
    return from_window(g, w);
}

ConnectionGerm apply_gauge_word(const LieAlgebra& g, const ConnectionGerm& germ,
                                const GaugeWord& w) {
    ConnectionGerm cur = germ;
    for (const auto& [k, x] : w.factors) cur = apply_elementary_gauge(g, cur, k, x);
    return cur;
}

GaugeWord inverse_gauge_word(const GaugeWord& w) {
    GaugeWord inv;
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
        AlgElement x = it->second;
        for (auto& c : x) c = -c;
        inv.factors.emplace_back(it->first, x);
    }
    return inv;
}

std::vector<Mat> gauge_word_poly_matrix(const LieAlgebra& g, const GaugeWord& w,
                                        std::size_t order) {
    const std::size_t n = g.matrix_size();
    const auto mul = [&](const std::vector<Mat>& a, const std::vector<Mat>& b) {
        std::vector<Mat> r(order, Mat(n, n));
        for (std::size_t i = 0; i < order; ++i)
            for (std::size_t j = 0; i + j < order; ++j) r[i + j] = r[i + j] + a[i] * b[j];
        return r;
    };
    std::vector<Mat> prod(order, Mat(n, n));
    prod[0] = Mat::identity(n);
    for (const auto& [k, x] : w.factors) {
        std::vector<Mat> f(order, Mat(n, n));
        f[0] = Mat::identity(n);
        Mat power = Mat::identity(n);
        Rat fact(1);
        for (std::size_t j = 1; j * k < order; ++j) {
            power = power * g.to_matrix(x);
            fact *= Rat(static_cast<long>(j));
            f[j * k] = f[j * k] + power * (Rat(1) / fact);
        }
        // Applying factor i after factors 1..i-1 means the group element is
        // the reversed product f_k ... f_1.
        prod = mul(f, prod);
    }
    return prod;
}

NormalizeResult normalize(const LieAlgebra& g, const ConnectionGerm& germ) {
    auto res = greedy_normalize(g, germ, /*allow_resonant=*/false);
    NormalizeResult out;
    out.normal = from_window(g, res.window).principal;
    out.gauge = inverse_gauge_word(res.applied);
    return out;
}

ResonantNormalizeResult resonant_normalize(const LieAlgebra& g, const ConnectionGerm& germ) {
    auto res = greedy_normalize(g, germ, /*allow_resonant=*/true);
    ResonantNormalizeResult out;
    out.normal = from_window(g, res.window).principal;
    out.leftover = std::move(res.leftover);
    out.gauge = inverse_gauge_word(res.applied);
    const auto report = resonance_report(g, out.normal);
    for (const auto& [root, kappa] : report.offenders)
        if (kappa > 0) ++out.stabilizer_dim;
    return out;
}

} // namespace wildred
