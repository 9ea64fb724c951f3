#include "wildred/stability.hpp"

namespace wildred {

namespace {

constexpr std::size_t kTupleCap = 1000000;

std::vector<Vec> residue_vectors(const LieAlgebra& g, const WildConfig& config) {
    validate_config(g, config);
    std::vector<Vec> out;
    for (const auto& p : config.points) {
        require(g.is_cartan(p.marked.coeffs[0]), "stability checks need Cartan-valued residues");
        out.push_back(g.to_cartan_vector(p.marked.coeffs[0]));
    }
    return out;
}

std::size_t checked_tuple_count(std::size_t weyl_size, std::size_t n_points) {
    std::size_t total = 1;
    for (std::size_t a = 0; a < n_points; ++a) {
        require(total <= kTupleCap / weyl_size, "Weyl tuple enumeration exceeds the supported size");
        total *= weyl_size;
    }
    return total;
}

/// Walks all Weyl tuples; `test` gets (tuple, translated residue sum) and
/// returns an optional witness sum when the criterion fails there.
template <typename Test>
std::optional<StabilityWitness> enumerate_tuples(const RootDatum& rd,
                                                 const std::vector<Vec>& residues,
                                                 std::size_t total, const Test& test) {
    const auto& weyl = rd.weyl_group();
    std::vector<std::size_t> tuple(residues.size(), 0);
    for (std::size_t k = 0; k < total; ++k) {
        Vec sum(rd.rank(), Rat(0));
        for (std::size_t a = 0; a < residues.size(); ++a) {
            const Vec moved = weyl[tuple[a]].vector_action * residues[a];
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += moved[i];
        }
        if (auto w = test(tuple, sum)) return w;
        for (std::size_t a = 0; a < tuple.size(); ++a) {
            if (++tuple[a] < weyl.size()) break;
            tuple[a] = 0;
        }
    }
    return std::nullopt;
}

}  // namespace

StabilityVerdict stability_check(const LieAlgebra& g, const WildConfig& config) {
    const auto& rd = g.root_datum();
    const auto residues = residue_vectors(g, config);
    StabilityVerdict verdict;
    verdict.stable_certified = true;
    const std::size_t total = checked_tuple_count(rd.weyl_group().size(), residues.size());
    for (std::size_t omit = 0; omit < rd.rank(); ++omit) {
        ++verdict.subsets_enumerated;
        const auto chars = rd.parabolic_characters({omit});
        const auto witness = enumerate_tuples(
            rd, residues, total,
            [&](const std::vector<std::size_t>& tuple,
                const Vec& sum) -> std::optional<StabilityWitness> {
                verdict.tuples_enumerated++;
                for (const auto& chi : chars)
                    if (rd.pairing(chi, sum) != 0) return std::nullopt;
                return StabilityWitness{omit, tuple, sum};
            });
        if (witness) {
            verdict.stable_certified = false;
            verdict.witness_failure = witness;
            return verdict;
        }
    }
    return verdict;
}

StabilityVerdict avoidance_check(const LieAlgebra& g, const WildConfig& config) {
    const auto& rd = g.root_datum();
    const auto residues = residue_vectors(g, config);
    StabilityVerdict verdict;
    verdict.stable_certified = true;
    const std::size_t total = checked_tuple_count(rd.weyl_group().size(), residues.size());
    for (std::size_t omit = 0; omit < rd.rank(); ++omit) {
        ++verdict.subsets_enumerated;
        // Coroot span of the subsystem generated by the kept simple roots:
        // all roots with zero coefficient on the omitted simple root.
        std::vector<Vec> span_basis;
        for (std::size_t r = 0; r < rd.roots().size(); ++r)
            if (rd.roots()[r][omit] == 0) span_basis.push_back(rd.coroot(r));
        Mat cols(rd.rank(), span_basis.size());
        for (std::size_t j = 0; j < span_basis.size(); ++j)
            for (std::size_t i = 0; i < rd.rank(); ++i) cols.at(i, j) = span_basis[j][i];
        const auto witness = enumerate_tuples(
            rd, residues, total,
            [&](const std::vector<std::size_t>& tuple,
                const Vec& sum) -> std::optional<StabilityWitness> {
                verdict.tuples_enumerated++;
                const bool member =
                    span_basis.empty() ? sum == Vec(rd.rank(), Rat(0)) : solve(cols, sum).has_value();
                if (member) return StabilityWitness{omit, tuple, sum};
                return std::nullopt;
            });
        if (witness) {
            verdict.stable_certified = false;
            verdict.witness_failure = witness;
            return verdict;
        }
    }
    return verdict;
}

}  // namespace wildred
