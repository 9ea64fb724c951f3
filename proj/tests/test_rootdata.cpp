#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wildred/rootdata.hpp"

using namespace wildred;

TEST_CASE("A1 root datum") {
    const auto rd = RootDatum::build("A", 1);
    CHECK(rd.roots().size() == 2);
    CHECK(rd.weyl_group().size() == 2);
    // <rho, alpha^vee> = 1.
    CHECK(rd.pairing_with_coroot(rd.rho(), 0) == 1);
    // Orbit of h: {h, -h}; orbit of 0: {0}.
    CHECK(rd.weyl_orbit(Vec{Rat(1)}).size() == 2);
    CHECK(rd.weyl_orbit(Vec{Rat(0)}).size() == 1);
}

TEST_CASE("A2/A3 counts and rho") {
    const auto a2 = RootDatum::build("A", 2);
    CHECK(a2.roots().size() == 6);
    CHECK(a2.weyl_group().size() == 6);
    const auto a3 = RootDatum::build("A", 3);
    CHECK(a3.roots().size() == 12);
    CHECK(a3.weyl_group().size() == 24);
    // rho = sum of fundamental weights.
    Vec fw_sum(a3.rank(), Rat(0));
    for (std::size_t i = 0; i < a3.rank(); ++i) {
        const auto w = a3.fundamental_weight(i);
        for (std::size_t j = 0; j < a3.rank(); ++j) fw_sum[j] += w[j];
    }
    CHECK(fw_sum == a3.rho());
    for (std::size_t i = 0; i < a3.rank(); ++i)
        CHECK(a3.pairing_with_coroot(a3.rho(), a3.root_index(a3.simple_root(i))) == 1);
    const auto b2 = RootDatum::build("B", 2);
    CHECK(b2.roots().size() == 8);
    CHECK(b2.weyl_group().size() == 8);
    CHECK_THROWS_AS(RootDatum::build("G", 2), unsupported_error);
}

TEST_CASE("reflections satisfy involution and braid relations") {
    for (auto kind : {std::pair<std::string, std::size_t>{"A", 2}, {"A", 3}, {"B", 2}}) {
        const auto rd = RootDatum::build(kind.first, kind.second);
        const auto n = rd.rank();
        for (std::size_t i = 0; i < n; ++i) {
            const Mat s = rd.simple_reflection(i).covector_action;
            CHECK((s * s) == Mat::identity(n));
            for (std::size_t j = i + 1; j < n; ++j) {
                const Mat t = rd.simple_reflection(j).covector_action;
                // Braid order from the Cartan matrix: m = 2,3,4 for a_ij a_ji = 0,1,2.
                const Rat prod = rd.cartan_matrix().at(i, j) * rd.cartan_matrix().at(j, i);
                const int m = prod == 0 ? 2 : (prod == 1 ? 3 : 4);
                Mat acc = Mat::identity(n);
                for (int k = 0; k < m; ++k) acc = acc * s * t;
                CHECK(acc == Mat::identity(n));
            }
        }
        // Weyl action permutes the root set.
        for (const auto& w : rd.weyl_group())
            for (const auto& r : rd.roots()) CHECK(rd.is_root(w.covector_action * r));
    }
}

TEST_CASE("levi of annihilated roots") {
    const auto a1 = RootDatum::build("A", 1);
    CHECK(a1.levi_of_annihilated_roots({Vec{Rat(1)}}).root_indices.empty());
    CHECK(a1.levi_of_annihilated_roots({Vec{Rat(0)}}).root_indices.size() == 2);

    const auto a2 = RootDatum::build("A", 2);
    // v with <alpha_1,v>=0, <alpha_2,v>=1: v = A^{-T}(0,1) in coroot coords;
    // directly: need d with (A d-column pairing) — use d = (1,2)/3 scaled: take
    // d such that pairing(alpha_1,d)=0, pairing(alpha_2,d)=1, i.e. solve.
    // alpha_i pairing with d is (A^T d)_i here? pairing(c,d) = d^T A c, c = e_1.
    // Solve 2d1 - d2 = 0 and -d1 + 2d2 = 3: d = (1,2).
    const Vec d{Rat(1), Rat(2)};
    CHECK(a2.pairing(a2.simple_root(0), d) == 0);
    const auto levi = a2.levi_of_annihilated_roots({d});
    CHECK(levi.root_indices.size() == 2); // ±alpha_1
    CHECK(levi.simple_subset == std::vector<std::size_t>{0});

    // Monotonicity: more constraints, smaller subsystem.
    const auto levi2 = a2.levi_of_annihilated_roots({d, Vec{Rat(1), Rat(1)}});
    CHECK(levi2.root_indices.size() <= levi.root_indices.size());
}

TEST_CASE("weyl orbit sizes divide group order") {
    const auto a2 = RootDatum::build("A", 2);
    const auto orb = a2.weyl_orbit(Vec{Rat(3), Rat(1)}); // regular vector
    CHECK(orb.size() == 6);
    CHECK(a2.weyl_group().size() % orb.size() == 0);
    CHECK(a2.weyl_orbit(Vec{Rat(0), Rat(0)}).size() == 1);
}

TEST_CASE("parabolic characters") {
    const auto a1 = RootDatum::build("A", 1);
    const auto borel1 = a1.parabolic_characters({0});
    REQUIRE(borel1.size() == 1);
    CHECK(borel1[0] == a1.fundamental_weight(0));

    const auto a2 = RootDatum::build("A", 2);
    const auto chars = a2.parabolic_characters({0});
    REQUIRE(chars.size() == 1);
    // Vanishes on the kept coroot alpha_2^vee.
    CHECK(a2.pairing(chars[0], a2.simple_coroot(1)) == 0);
    CHECK(a2.pairing(chars[0], a2.simple_coroot(0)) == 1);
    CHECK(a2.parabolic_characters({0, 1}).size() == 2);
    CHECK_THROWS_AS(a2.parabolic_characters({}), validation_error);
}
