#include "wildred/verma.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wildred {

namespace {

bool is_integer(const Rat& r) { return boost::multiprecision::denominator(r) == 1; }

long to_long(const Rat& r) {
    return static_cast<long>(boost::multiprecision::numerator(r).convert_to<long long>());
}

bool is_rational_square(const Rat& r) {
    if (r < 0) return false;
    using boost::multiprecision::mpz_int;
    const mpz_int num = boost::multiprecision::numerator(r);
    const mpz_int den = boost::multiprecision::denominator(r);
    const mpz_int sn = boost::multiprecision::sqrt(num), sd = boost::multiprecision::sqrt(den);
    return sn * sn == num && sd * sd == den;
}

using State = std::map<Monomial, Rat>;

void add_term(State& s, const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = s.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) s.erase(it);
    }
}

/// Recursive PBW model of the lowest-grades slice of the Verma module.
class Model {
public:
    Model(const LieAlgebra& g, const ParabolicFiltration& filtration,
          const PrincipalPart& character)
        : g_(g), fil_(filtration), chi_(character) {
        const auto& rd = g.root_datum();
        const std::size_t s = fil_.s;
        // Membership tables: root r in the Levi at pi-grade i?
        in_levi_.assign(s, std::vector<char>(rd.roots().size(), 0));
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t r : fil_.levi_subsystems[s - 1 - i].root_indices)
                in_levi_[i][r] = 1;
        // Generators: negative-root lines of u^-_{s-i} at grade i, ordered by
        // (pi-grade, height, root index).
        for (std::size_t i = 0; i < s; ++i) {
            std::vector<VermaGenerator> level;
            for (std::size_t r : fil_.lower_nilradicals[s - 1 - i])
                level.push_back({r, i, static_cast<std::size_t>(
                                           rd.height(rd.negative_of(r)).convert_to<long long>())});
            std::sort(level.begin(), level.end(), [](const auto& a, const auto& b) {
                return std::tie(a.height, a.root_index) < std::tie(b.height, b.root_index);
            });
            for (const auto& gen : level) {
                gen_index_[{gen.root_index, gen.pi_grade}] = generators_.size();
                generators_.push_back(gen);
            }
        }
    }

    const std::vector<VermaGenerator>& generators() const { return generators_; }

    TruncatedCurrent generator_current(std::size_t j) const {
        TruncatedCurrent x = tc_zero(g_, fil_.s);
        x.coeffs[generators_[j].pi_grade] = g_.root_vector(generators_[j].root_index);
        return x;
    }

    TruncatedCurrent raising_current(std::size_t j) const {
        TruncatedCurrent x = tc_zero(g_, fil_.s);
        x.coeffs[generators_[j].pi_grade] =
            g_.root_vector(g_.root_datum().negative_of(generators_[j].root_index));
        return x;
    }

    /// chi-hat: residue pairing against the Levi part.
    Rat chi(const TruncatedCurrent& x) const {
        TruncatedCurrent z = tc_zero(g_, fil_.s);
        const auto& rd = g_.root_datum();
        for (std::size_t i = 0; i < fil_.s; ++i) {
            AlgElement levi = x.coeffs[i];
            for (std::size_t r = 0; r < rd.roots().size(); ++r)
                if (!in_levi_[i][r]) g_.set_root_component(levi, r, Rat(0));
            z.coeffs[i] = levi;
        }
        return residue_pairing(g_, chi_, z);
    }

    /// Coefficients of the u^--part of x in the generator basis.
    std::vector<std::pair<std::size_t, Rat>> lower_components(const TruncatedCurrent& x) const {
        std::vector<std::pair<std::size_t, Rat>> out;
        const auto& rd = g_.root_datum();
        for (std::size_t i = 0; i < fil_.s; ++i)
            for (std::size_t r = rd.num_positive(); r < rd.roots().size(); ++r) {
                if (in_levi_[i][r]) continue;
                const Rat c = g_.root_component(x.coeffs[i], r);
                if (c == 0) continue;
                const auto it = gen_index_.find({r, i});
                ensure_invariant(it != gen_index_.end(), "missing lower generator");
                out.emplace_back(it->second, c);
            }
        return out;
    }

    bool has_no_upper_or_levi(const TruncatedCurrent& x) const {
        const auto& rd = g_.root_datum();
        for (std::size_t i = 0; i < fil_.s; ++i) {
            // Must be purely a combination of lower-nilradical root lines.
            AlgElement rest = x.coeffs[i];
            for (std::size_t r = rd.num_positive(); r < rd.roots().size(); ++r)
                if (!in_levi_[i][r]) g_.set_root_component(rest, r, Rat(0));
            if (rest != g_.zero()) return false;
        }
        return true;
    }

    /// Left multiplication by generator j in PBW form.
    State mult_gen(std::size_t j, const State& s) const {
        State out;
        for (const auto& [mono, c] : s) {
            State part = mult_gen_mono(j, mono);
            for (const auto& [m2, c2] : part) add_term(out, m2, c * c2);
        }
        return out;
    }

    State mult_gen_mono(std::size_t j, const Monomial& n) const {
        if (n.empty() || j <= n.front()) {
            Monomial m;
            m.reserve(n.size() + 1);
            m.push_back(j);
            m.insert(m.end(), n.begin(), n.end());
            return {{m, Rat(1)}};
        }
        const std::size_t k = n.front();
        const Monomial rest(n.begin() + 1, n.end());
        // g_j g_k = g_k g_j + [g_j, g_k]; the bracket stays in u^- by
        // balancedness.
        State out = mult_gen(k, mult_gen_mono(j, rest));
        const TruncatedCurrent br =
            tcla_bracket(g_, generator_current(j), generator_current(k));
        ensure_invariant(has_no_upper_or_levi(br),
                         "generator bracket leaves the opposite nilradical");
        for (const auto& [l, c] : lower_components(br)) {
            State part = mult_gen_mono(l, rest);
            for (const auto& [m2, c2] : part) add_term(out, m2, c * c2);
        }
        return out;
    }

    /// Action of x in g_s on a state of the module.
    State act(const TruncatedCurrent& x, const State& s) const {
        State out;
        for (const auto& [mono, c] : s) {
            State part = act_mono(x, mono);
            for (const auto& [m2, c2] : part) add_term(out, m2, c * c2);
        }
        return out;
    }

    State act_mono(const TruncatedCurrent& x, const Monomial& m) const {
        if (m.empty()) {
            State out;
            add_term(out, {}, chi(x));
            for (const auto& [j, c] : lower_components(x)) add_term(out, Monomial{j}, c);
            return out;
        }
        const std::size_t j0 = m.front();
        const Monomial rest(m.begin() + 1, m.end());
        State out = mult_gen(j0, act_mono(x, rest));
        const State lower = act_mono(tcla_bracket(g_, x, generator_current(j0)), rest);
        for (const auto& [m2, c2] : lower) add_term(out, m2, c2);
        return out;
    }

    /// Shapovalov pairing S(F_m v, F_n v).
    Rat gram_entry(const Monomial& m, const Monomial& n) const {
        State s{{n, Rat(1)}};
        for (std::size_t j : m) {
            s = act(raising_current(j), s);
            if (s.empty()) return Rat(0);
        }
        const auto it = s.find(Monomial{});
        return it == s.end() ? Rat(0) : it->second;
    }

private:
    const LieAlgebra& g_;
    ParabolicFiltration fil_;
    PrincipalPart chi_;
    std::vector<std::vector<char>> in_levi_;
    std::vector<VermaGenerator> generators_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> gen_index_;
};

void enumerate_monomials(const std::vector<VermaGenerator>& gens, std::size_t bound,
                         std::size_t start, Monomial& cur, std::size_t grade,
                         std::vector<Monomial>& out) {
    out.push_back(cur);
    for (std::size_t j = start; j < gens.size(); ++j) {
        if (grade + gens[j].height > bound) continue;
        cur.push_back(j);
        // Recurse with nondecreasing indices; pop after.
        const std::size_t saved = out.size();
        (void)saved;
        enumerate_monomials(gens, bound, j, cur, grade + gens[j].height, out);
        cur.pop_back();
    }
}

std::size_t monomial_grade(const std::vector<VermaGenerator>& gens, const Monomial& m) {
    std::size_t grade = 0;
    for (std::size_t j : m) grade += gens[j].height;
    return grade;
}

} // namespace

ParabolicFiltration build_filtration(const LieAlgebra& g, const FissionData& fission) {
    const auto& rd = g.root_datum();
    ParabolicFiltration out;
    out.s = fission.levis.size();
    out.levi_subsystems = fission.levi_subsystems;
    out.upper_nilradicals.resize(out.s);
    out.lower_nilradicals.resize(out.s);
    for (std::size_t i = 0; i < out.s; ++i) {
        std::set<std::size_t> levi(out.levi_subsystems[i].root_indices.begin(),
                                   out.levi_subsystems[i].root_indices.end());
        for (std::size_t r = 0; r < rd.roots().size(); ++r) {
            if (levi.count(r)) continue;
            (r < rd.num_positive() ? out.upper_nilradicals[i] : out.lower_nilradicals[i])
                .push_back(r);
        }
    }

    // Balancedness: the graded spaces u^+- = (+)_i u^+-_{s-i} w^i close
    // under the truncated bracket.
    out.balanced_flag = true;
    const std::size_t s = out.s;
    for (int side = 0; side < 2 && out.balanced_flag; ++side) {
        const auto& nil = side == 0 ? out.upper_nilradicals : out.lower_nilradicals;
        for (std::size_t i = 0; i < s && out.balanced_flag; ++i)
            for (std::size_t j = 0; i + j < s && out.balanced_flag; ++j)
                for (std::size_t r1 : nil[s - 1 - i])
                    for (std::size_t r2 : nil[s - 1 - j]) {
                        const Vec sum = [&] {
                            Vec v = rd.roots()[r1];
                            for (std::size_t k = 0; k < v.size(); ++k) v[k] += rd.roots()[r2][k];
                            return v;
                        }();
                        if (!rd.is_root(sum)) continue;
                        const std::size_t rs = rd.root_index(sum);
                        const auto& target = nil[s - 1 - (i + j)];
                        if (std::find(target.begin(), target.end(), rs) == target.end()) {
                            out.balanced_flag = false;
                            break;
                        }
                    }
    }
    return out;
}

VermaSlice shapovalov_gram(const LieAlgebra& g, const ParabolicFiltration& filtration,
                           const PrincipalPart& character, std::size_t grade_bound) {
    require(filtration.s == character.s, "filtration and character orders must agree");
    if (!filtration.balanced_flag)
        throw unsupported_error("unbalanced parabolic filtration is not supported");

    VermaSlice slice;
    slice.filtration = filtration;
    slice.character = character;
    slice.grade_bound = grade_bound;

    Model model(g, filtration, character);
    slice.generators = model.generators();
    Monomial cur;
    enumerate_monomials(slice.generators, grade_bound, 0, cur, 0, slice.basis);

    // Group by weight covector.
    const auto& rd = g.root_datum();
    std::map<std::vector<Rat>, std::vector<std::size_t>> by_weight;
    for (std::size_t i = 0; i < slice.basis.size(); ++i) {
        Vec w(rd.rank(), Rat(0));
        for (std::size_t j : slice.basis[i]) {
            const Vec& root = rd.roots()[slice.generators[j].root_index];
            for (std::size_t k = 0; k < w.size(); ++k) w[k] += root[k];
        }
        by_weight[w].push_back(i);
    }
    for (auto& [w, idx] : by_weight) {
        WeightBlock block;
        block.weight = w;
        block.grade = monomial_grade(slice.generators, slice.basis[idx.front()]);
        block.monomials = idx;
        block.gram = Mat(idx.size(), idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b)
                block.gram.at(a, b) = model.gram_entry(slice.basis[idx[a]], slice.basis[idx[b]]);
        ensure_invariant(block.gram == block.gram.transpose(),
                         "Shapovalov block must be symmetric");
        slice.blocks.push_back(std::move(block));
    }

    // Cross-weight orthogonality, asserted on a bounded sample of pairs.
    std::size_t checked = 0;
    for (std::size_t p = 0; p < slice.blocks.size() && checked < 120; ++p)
        for (std::size_t q = p + 1; q < slice.blocks.size() && checked < 120; ++q) {
            const std::size_t a = slice.blocks[p].monomials.front();
            const std::size_t b = slice.blocks[q].monomials.back();
            ensure_invariant(model.gram_entry(slice.basis[a], slice.basis[b]) == 0,
                             "weight blocks must be Shapovalov-orthogonal");
            ++checked;
        }
    return slice;
}

SimplicityVerdict simplicity_test(const LieAlgebra& g, const VermaSlice& slice) {
    SimplicityVerdict out;
    out.simple_up_to_grade = true;
    for (const auto& block : slice.blocks) {
        if (det(block.gram) != 0) continue;
        out.simple_up_to_grade = false;
        if (!out.first_degenerate_grade || block.grade < *out.first_degenerate_grade)
            out.first_degenerate_grade = block.grade;
    }

    const auto& rd = g.root_datum();
    const std::size_t s = slice.filtration.s;
    std::set<std::size_t> levi_s(slice.filtration.levi_subsystems[s - 1].root_indices.begin(),
                                 slice.filtration.levi_subsystems[s - 1].root_indices.end());
    out.integral_criterion = true;
    out.positive_criterion = true;
    const AlgElement residue = slice.character.coeffs[0];
    for (std::size_t r = 0; r < rd.roots().size(); ++r) {
        if (levi_s.count(r)) continue;
        const AlgElement coroot_elem = g.from_cartan_vector(rd.coroot(r));
        const Rat value = g.invariant_form(residue, coroot_elem) + rd.pairing(rd.rho(), rd.coroot(r));
        if (!is_integer(value) || value == 0) continue;
        out.flagged.emplace_back(r, to_long(value));
        out.integral_criterion = false;
        if (r < rd.num_positive() && value > 0) out.positive_criterion = false;
    }
    return out;
}

InverseShapovalovSlice inverse_shapovalov(const LieAlgebra& g, const VermaSlice& slice,
                                          const Rat& c) {
    require(c != 0, "dilation parameter must be nonzero");
    const VermaSlice dilated =
        shapovalov_gram(g, slice.filtration, pp_scale(c, slice.character), slice.grade_bound);
    InverseShapovalovSlice out;
    out.c_value = c;
    out.grade_bound = slice.grade_bound;
    out.terms.assign(slice.grade_bound + 1, {});
    for (const auto& block : dilated.blocks) {
        if (det(block.gram) == 0)
            throw validation_error("inverse Shapovalov degenerate at grade " +
                                   std::to_string(block.grade));
        const Mat inv = inverse(block.gram);
        for (std::size_t a = 0; a < block.monomials.size(); ++a)
            for (std::size_t b = 0; b < block.monomials.size(); ++b)
                if (inv.at(a, b) != 0)
                    out.terms[block.grade].emplace_back(inv.at(a, b), block.monomials[a],
                                                        block.monomials[b]);
    }
    return out;
}

namespace {

/// chi-dual raising elements X_a = sum_i (M^{-1})_{a i} E_i against the
/// lowering generators Y_a; M_{ij} = chi([E_i, F_j]).
Mat dual_basis_matrix(const LieAlgebra& g, const Model& model) {
    const std::size_t n = model.generators().size();
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) =
                model.chi(tcla_bracket(g, model.raising_current(i), model.generator_current(j)));
    return m;
}

TruncatedCurrent transport_current(const LieAlgebra& g, const GroupWord& word,
                                   const TruncatedCurrent& b, const TruncatedCurrent& x) {
    // m^{-1} x m for m = mat(word) exp(b).
    const Mat ad = g.adjoint_of_word(g.inverse_word(word));
    TruncatedCurrent cur = x;
    for (auto& coeff : cur.coeffs) coeff = ad * coeff;
    // exp(-ad_b), truncated; b has zero constant term.
    TruncatedCurrent result = cur, term = cur;
    for (std::size_t k = 1; k < x.s; ++k) {
        term = tcla_bracket(g, b, term);
        bool zero = true;
        Rat scale = Rat(k % 2 == 0 ? 1 : -1);
        for (std::size_t j = 2; j <= k; ++j) scale /= Rat(static_cast<long>(j));
        for (std::size_t i = 0; i < result.coeffs.size(); ++i)
            for (std::size_t e = 0; e < result.coeffs[i].size(); ++e) {
                result.coeffs[i][e] += scale * term.coeffs[i][e];
                if (term.coeffs[i][e] != 0) zero = false;
            }
        if (zero) break;
    }
    return result;
}

} // namespace

bool comoment_check(const LieAlgebra& g, const VermaSlice& slice, const TruncatedCurrent& x,
                    const TruncatedCurrent& y, const std::vector<OrbitSample>& samples) {
    Model model(g, slice.filtration, slice.character);
    const std::size_t n = model.generators().size();
    const Mat m = dual_basis_matrix(g, model);
    require(det(m) != 0, "chi-pairing of the nilradicals is degenerate");
    const Mat minv = inverse(m);
    const PrincipalPart& a = slice.character;

    std::vector<PrincipalPart> adx(n, pp_zero(g, a.s)); // ad*_{X_a} A'
    std::vector<PrincipalPart> ady(n, pp_zero(g, a.s)); // ad*_{Y_a} A'
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t i = 0; i < n; ++i)
            if (minv.at(t, i) != 0)
                adx[t] = pp_add(adx[t], pp_scale(minv.at(t, i),
                                                 coadjoint_inf(g, model.raising_current(i), a)));
        ady[t] = coadjoint_inf(g, model.generator_current(t), a);
    }

    for (const auto& sample : samples) {
        require(coadjoint_group(g, sample.word, sample.birkhoff, a) == sample.value,
                "sample witness does not reproduce the orbit point");
        const auto xt = transport_current(g, sample.word, sample.birkhoff, x);
        const auto yt = transport_current(g, sample.word, sample.birkhoff, y);
        Rat lhs(0);
        for (std::size_t t = 0; t < n; ++t)
            lhs += residue_pairing(g, adx[t], xt) * residue_pairing(g, ady[t], yt) -
                   residue_pairing(g, adx[t], yt) * residue_pairing(g, ady[t], xt);
        const Rat rhs = residue_pairing(g, a, tcla_bracket(g, xt, yt));
        if (lhs != rhs) return false;
    }
    return true;
}

bool image_identity_check(const LieAlgebra& g, const VermaSlice& slice, const Rat& c) {
    require(c != 0, "dilation parameter must be nonzero");
    Model model(g, slice.filtration, slice.character);
    for (const auto& gen : model.generators())
        if (gen.height != 1)
            throw unsupported_error("image identity check requires grade-one nilradicals");

    const PrincipalPart& a = slice.character;
    const std::size_t n = model.generators().size();

    // Left side: grade <= 1 part of the inverse Shapovalov form at the
    // dilated character, acting on v+ (x) A'; the raising factor acts on the
    // principal part by the negative of the infinitesimal coadjoint action.
    const VermaSlice dil = shapovalov_gram(g, slice.filtration, pp_scale(c, a), 1);
    std::map<Monomial, PrincipalPart> lhs, rhs;
    lhs[{}] = a;
    rhs[{}] = a;
    for (const auto& block : dil.blocks) {
        if (block.grade != 1) continue;
        require(det(block.gram) != 0, "image identity: grade-one block degenerate");
        const Mat inv = inverse(block.gram);
        for (std::size_t p = 0; p < block.monomials.size(); ++p)
            for (std::size_t q = 0; q < block.monomials.size(); ++q) {
                if (inv.at(p, q) == 0) continue;
                const Monomial& lower = dil.basis[block.monomials[p]];
                const Monomial& upper = dil.basis[block.monomials[q]];
                const PrincipalPart move =
                    coadjoint_inf(g, model.raising_current(upper.front()), a);
                auto [it, fresh] = lhs.emplace(lower, pp_zero(g, a.s));
                it->second = pp_add(it->second, pp_scale(-inv.at(p, q), move));
            }
    }

    // Right side: v+ (x) A' - (1/c) sum_a (Y_a v+) (x) ad*_{X_a} A'.
    const Mat m = dual_basis_matrix(g, model);
    require(det(m) != 0, "image identity: chi-pairing degenerate");
    const Mat minv = inverse(m);
    for (std::size_t t = 0; t < n; ++t) {
        PrincipalPart move = pp_zero(g, a.s);
        for (std::size_t i = 0; i < n; ++i)
            if (minv.at(t, i) != 0)
                move = pp_add(move, pp_scale(minv.at(t, i),
                                             coadjoint_inf(g, model.raising_current(i), a)));
        auto [it, fresh] = rhs.emplace(Monomial{t}, pp_zero(g, a.s));
        it->second = pp_add(it->second, pp_scale(-Rat(1) / c, move));
    }

    for (auto* side : {&lhs, &rhs})
        for (auto it = side->begin(); it != side->end();)
            it = pp_is_zero(it->second) ? side->erase(it) : std::next(it);
    return lhs == rhs;
}

VermaSlice character_transport(const LieAlgebra& g, const VermaSlice& slice,
                               const UnitSeries& f) {
    const PrincipalPart moved = apply_unit(g, f, slice.character);
    VermaSlice out = shapovalov_gram(g, slice.filtration, moved, slice.grade_bound);

    // Isomorphism witness: matched weight blocks have determinants equal up
    // to a nonzero rational square, and identical degeneracy pattern.
    ensure_invariant(out.blocks.size() == slice.blocks.size(), "block structure changed");
    for (std::size_t i = 0; i < out.blocks.size(); ++i) {
        const auto& oldb = slice.blocks[i];
        const auto& newb = out.blocks[i];
        ensure_invariant(oldb.weight == newb.weight, "weight mismatch in transport");
        const Rat d0 = det(oldb.gram), d1 = det(newb.gram);
        ensure_invariant((d0 == 0) == (d1 == 0), "degeneracy pattern changed in transport");
        if (d0 != 0)
            ensure_invariant(is_rational_square(d1 / d0),
                             "transported Gram determinant is not a square multiple");
    }
    return out;
}

} // namespace wildred
