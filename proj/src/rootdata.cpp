#include "wildred/rootdata.hpp"

#include <algorithm>
#include <map>

#include "wildred/errors.hpp"

namespace wildred {

namespace {

Mat cartan_matrix_for(const std::string& type, std::size_t rank) {
    if (type == "A" && rank >= 1 && rank <= 4) {
        Mat a(rank, rank);
        for (std::size_t i = 0; i < rank; ++i) {
            a.at(i, i) = 2;
            if (i + 1 < rank) {
                a.at(i, i + 1) = -1;
                a.at(i + 1, i) = -1;
            }
        }
        return a;
    }
    if (type == "B" && rank == 2) {
        Mat a(2, 2);
        a.at(0, 0) = 2;
        a.at(1, 1) = 2;
        a.at(0, 1) = -1; // <alpha_2, alpha_1^vee>
        a.at(1, 0) = -2; // <alpha_1, alpha_2^vee>
        return a;
    }
    throw unsupported_error("unsupported Cartan type " + type + std::to_string(rank) +
                            " (supported: A1..A4, B2)");
}

Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n, Rat(0));
    v[i] = 1;
    return v;
}

} // namespace

RootDatum RootDatum::build(const std::string& type, std::size_t rank) {
    RootDatum rd;
    rd.type_ = type;
    rd.rank_ = rank;
    rd.cartan_ = cartan_matrix_for(type, rank);
    rd.cartan_inv_ = inverse(rd.cartan_);

    // Simple-reflection matrices on covectors and vectors.
    std::vector<Mat> refl_cov, refl_vec;
    for (std::size_t i = 0; i < rank; ++i) {
        Mat sc = Mat::identity(rank), sv = Mat::identity(rank);
        for (std::size_t j = 0; j < rank; ++j) {
            sc.at(i, j) -= rd.cartan_.at(i, j); // c_i -= (A c)_i
            sv.at(i, j) -= rd.cartan_.at(j, i); // d_i -= (A^T d)_i
        }
        refl_cov.push_back(sc);
        refl_vec.push_back(sv);
    }

    // Generate (root, coroot) pairs as the reflection closure of the simple pairs.
    std::vector<std::pair<Vec, Vec>> pairs;
    for (std::size_t i = 0; i < rank; ++i) pairs.emplace_back(unit_vec(rank, i), unit_vec(rank, i));
    for (std::size_t head = 0; head < pairs.size(); ++head) {
        for (std::size_t i = 0; i < rank; ++i) {
            Vec nr = refl_cov[i] * pairs[head].first;
            Vec nc = refl_vec[i] * pairs[head].second;
            bool seen = false;
            for (const auto& p : pairs)
                if (p.first == nr) {
                    ensure_invariant(p.second == nc, "rootdata: inconsistent coroot closure");
                    seen = true;
                    break;
                }
            if (!seen) pairs.emplace_back(std::move(nr), std::move(nc));
        }
    }

    // Order: positive roots by (height, lex), then matching negatives.
    std::vector<std::pair<Vec, Vec>> pos;
    for (const auto& p : pairs) {
        bool nonneg = true;
        for (const auto& c : p.first)
            if (c < 0) nonneg = false;
        if (nonneg) pos.push_back(p);
    }
    std::sort(pos.begin(), pos.end(), [](const auto& x, const auto& y) {
        Rat hx(0), hy(0);
        for (const auto& c : x.first) hx += c;
        for (const auto& c : y.first) hy += c;
        if (hx != hy) return hx < hy;
        return x.first < y.first;
    });
    ensure_invariant(pos.size() * 2 == pairs.size(), "rootdata: sign balance of root set");
    for (const auto& p : pos) {
        rd.roots_.push_back(p.first);
        rd.coroots_.push_back(p.second);
    }
    for (const auto& p : pos) {
        Vec nr = p.first, nc = p.second;
        for (auto& c : nr) c = -c;
        for (auto& c : nc) c = -c;
        rd.roots_.push_back(std::move(nr));
        rd.coroots_.push_back(std::move(nc));
    }

    // rho = A^{-1} * (1,...,1).
    rd.rho_ = rd.cartan_inv_ * Vec(rank, Rat(1));

    // Eager Weyl group (BFS over right multiplication by simple reflections).
    rd.weyl_.push_back({{}, Mat::identity(rank), Mat::identity(rank)});
    for (std::size_t head = 0; head < rd.weyl_.size(); ++head) {
        for (std::size_t i = 0; i < rank; ++i) {
            WeylElement next;
            next.word = rd.weyl_[head].word;
            next.word.push_back(static_cast<int>(i));
            next.covector_action = rd.weyl_[head].covector_action * refl_cov[i];
            next.vector_action = rd.weyl_[head].vector_action * refl_vec[i];
            bool seen = false;
            for (const auto& w : rd.weyl_)
                if (w.covector_action == next.covector_action) {
                    seen = true;
                    break;
                }
            if (!seen) rd.weyl_.push_back(std::move(next));
        }
    }
    rd.simple_reflection_index_.assign(rank, 0);
    for (std::size_t i = 0; i < rank; ++i) {
        bool found = false;
        for (std::size_t k = 0; k < rd.weyl_.size(); ++k)
            if (rd.weyl_[k].word == std::vector<int>{static_cast<int>(i)}) {
                rd.simple_reflection_index_[i] = k;
                found = true;
            }
        ensure_invariant(found, "rootdata: simple reflection missing from Weyl enumeration");
    }
    return rd;
}

Vec RootDatum::simple_root(std::size_t i) const { return unit_vec(rank_, i); }
Vec RootDatum::simple_coroot(std::size_t i) const { return unit_vec(rank_, i); }

Vec RootDatum::fundamental_weight(std::size_t i) const {
    return cartan_inv_ * unit_vec(rank_, i);
}

Rat RootDatum::pairing(const Vec& covector, const Vec& vector) const {
    const Vec ac = cartan_ * covector;
    Rat r(0);
    for (std::size_t i = 0; i < rank_; ++i) r += vector[i] * ac[i];
    return r;
}

Rat RootDatum::pairing_with_coroot(const Vec& covector, std::size_t root_index) const {
    return pairing(covector, coroots_[root_index]);
}

Rat RootDatum::height(std::size_t root_index) const {
    Rat h(0);
    for (const auto& c : roots_[root_index]) h += c;
    return h;
}

std::size_t RootDatum::negative_of(std::size_t i) const {
    const std::size_t p = num_positive();
    return i < p ? i + p : i - p;
}

bool RootDatum::is_root(const Vec& covector) const {
    return std::find(roots_.begin(), roots_.end(), covector) != roots_.end();
}

std::size_t RootDatum::root_index(const Vec& covector) const {
    const auto it = std::find(roots_.begin(), roots_.end(), covector);
    ensure_invariant(it != roots_.end(), "rootdata: not a root");
    return static_cast<std::size_t>(it - roots_.begin());
}

const WeylElement& RootDatum::simple_reflection(std::size_t i) const {
    return weyl_[simple_reflection_index_[i]];
}

LeviSubsystem RootDatum::levi_of_annihilated_roots(const std::vector<Vec>& vectors) const {
    LeviSubsystem ls;
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        bool ann = true;
        for (const auto& v : vectors)
            if (pairing(roots_[i], v) != 0) {
                ann = false;
                break;
            }
        if (ann) ls.root_indices.push_back(i);
    }
    for (std::size_t i = 0; i < rank_; ++i) {
        const auto idx = root_index(simple_root(i));
        if (std::find(ls.root_indices.begin(), ls.root_indices.end(), idx) != ls.root_indices.end())
            ls.simple_subset.push_back(i);
    }
    return ls;
}

LeviSubsystem RootDatum::standard_levi(const std::vector<std::size_t>& simple_subset) const {
    LeviSubsystem ls;
    ls.simple_subset = simple_subset;
    std::vector<bool> kept(rank_, false);
    for (auto i : simple_subset) kept[i] = true;
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        bool supported = true;
        for (std::size_t j = 0; j < rank_; ++j)
            if (!kept[j] && roots_[i][j] != 0) supported = false;
        if (supported) ls.root_indices.push_back(i);
    }
    return ls;
}

std::vector<Vec> RootDatum::weyl_orbit(const Vec& v) const {
    std::vector<Vec> orbit{v};
    for (std::size_t head = 0; head < orbit.size(); ++head)
        for (std::size_t i = 0; i < rank_; ++i) {
            Vec nv = simple_reflection(i).vector_action * orbit[head];
            if (std::find(orbit.begin(), orbit.end(), nv) == orbit.end())
                orbit.push_back(std::move(nv));
        }
    return orbit;
}

std::vector<Vec> RootDatum::parabolic_characters(const std::vector<std::size_t>& omitted) const {
    require(!omitted.empty(), "parabolic_characters: omitted set must be nonempty (proper parabolic)");
    std::vector<Vec> basis;
    for (auto i : omitted) {
        require(i < rank_, "parabolic_characters: simple-root index out of range");
        basis.push_back(fundamental_weight(i));
    }
    return basis;
}

} // namespace wildred
