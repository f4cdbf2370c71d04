#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "wpshms/hom.hpp"

using namespace wpshms;

namespace {

LatticeK K(std::initializer_list<std::int64_t> v) { return LatticeK{std::vector<std::int64_t>(v)}; }

// random corpus of weight vectors with n <= 3, q_i <= 6, gcd 1
std::vector<std::vector<std::int64_t>> random_weight_corpus(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> qd(1, 6);
    std::uniform_int_distribution<int> nd(1, 3);
    std::vector<std::vector<std::int64_t>> out;
    while (out.size() < count) {
        std::vector<std::int64_t> q(nd(rng) + 1);
        std::int64_t g = 0;
        for (auto& qi : q) {
            qi = qd(rng);
            g = std::gcd(g, qi);
        }
        if (g == 1) out.push_back(q);
    }
    return out;
}

} // namespace

TEST_CASE("weighted compositions, known instances") {
    const Weights w112 = build_weights({1, 1, 2});
    const auto d1 = weighted_compositions(w112, 1);
    REQUIRE(d1.size() == 2);
    CHECK(std::find(d1.begin(), d1.end(), K({1, 0, 0})) != d1.end());
    CHECK(std::find(d1.begin(), d1.end(), K({0, 1, 0})) != d1.end());

    const auto d3 = weighted_compositions(w112, 3);
    REQUIRE(d3.size() == 6);
    CHECK(std::find(d3.begin(), d3.end(), K({0, 1, 1})) != d3.end());
    CHECK(std::find(d3.begin(), d3.end(), K({1, 0, 1})) != d3.end());

    const Weights w32 = build_weights({3, 2});
    CHECK(weighted_compositions(w32, 1).empty()); // numerical-semigroup gap, not an error
    CHECK(weighted_compositions(w32, 0) == std::vector<LatticeK>{K({0, 0})});
    CHECK(weighted_compositions(w112, 0).size() == 1);
}

TEST_CASE("weighted compositions are lexicographically ordered, no duplicates") {
    const Weights w = build_weights({1, 2, 3});
    for (std::int64_t d = 0; d <= 12; ++d) {
        const auto all = weighted_compositions(w, d);
        CHECK(std::is_sorted(all.begin(), all.end()));
        CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
        for (const auto& k : all) CHECK(k.degree(w) == d);
    }
}

TEST_CASE("hilbert oracle, frozen values") {
    const Weights w112 = build_weights({1, 1, 2});
    CHECK(hilbert_dim_oracle(w112, 2) == 4);
    const Weights w32 = build_weights({3, 2});
    CHECK(hilbert_dim_oracle(w32, 2) == 1);
    CHECK(hilbert_dim_oracle(w32, 3) == 1);
    CHECK(hilbert_dim_oracle(w32, 4) == 1);
    CHECK(hilbert_dim_oracle(w32, 0) == 1);
    CHECK(hilbert_dim_oracle(w112, 0) == 1);
}

TEST_CASE("enumeration count equals the oracle over a random corpus") {
    for (const auto& q : random_weight_corpus(20, 101)) {
        const Weights w = build_weights(q);
        for (std::int64_t d = 0; d <= 30; ++d)
            REQUIRE(static_cast<std::int64_t>(weighted_compositions(w, d).size()) ==
                    hilbert_dim_oracle(w, d));
    }
}

TEST_CASE("exceptional bound R = sum(q) - 1") {
    CHECK(exceptional_max_R(build_weights({3, 2})) == 4);
    CHECK(exceptional_max_R(build_weights({1, 1, 2})) == 3);
    CHECK(exceptional_max_R(build_weights({1, 1})) == 1);
}

TEST_CASE("generator degrees") {
    const Weights w112 = build_weights({1, 1, 2});
    const auto fwd = generator_degree(w112, 0, 3, K({0, 1, 1}));
    CHECK(fwd.is_generator);
    CHECK(fwd.degree == 0);

    const Weights w32 = build_weights({3, 2});
    const auto interior = generator_degree(w32, 5, 0, K({1, 1}));
    CHECK(interior.is_generator);
    CHECK(interior.degree == 1); // = n

    const auto boundary = generator_degree(w32, 6, 0, K({2, 0}));
    CHECK_FALSE(boundary.is_generator);

    const auto ident = generator_degree(w32, 2, 2, K({0, 0}));
    CHECK(ident.is_generator);
    CHECK(ident.degree == 0);

    CHECK_THROWS_AS(generator_degree(w32, 0, 2, K({1, 1})), std::invalid_argument);
}

TEST_CASE("no interior labels below the bound, (1,...,1) interior at sum(q)") {
    for (const auto& q : random_weight_corpus(12, 202)) {
        const Weights w = build_weights(q);
        const std::int64_t R = exceptional_max_R(w);
        for (std::int64_t d = 1; d <= R; ++d)
            for (const auto& k : weighted_compositions(w, d)) REQUIRE_FALSE(k.interior());
        const LatticeK ones{std::vector<std::int64_t>(q.size(), 1)};
        const auto at_sum = weighted_compositions(w, R + 1);
        REQUIRE(std::find(at_sum.begin(), at_sum.end(), ones) != at_sum.end());
        REQUIRE(ones.interior());
    }
}

TEST_CASE("hom bases") {
    const Weights w112 = build_weights({1, 1, 2});
    CHECK(hom_basis(w112, 0, 1).dim() == 2);
    CHECK(hom_basis(w112, 0, 2).dim() == 4);
    CHECK(hom_basis(w112, 0, 3).dim() == 6);
    const Weights w32 = build_weights({3, 2});
    CHECK(hom_basis(w32, 0, 1).dim() == 0);
    const HomBasis ident = hom_basis(w32, 2, 2);
    REQUIRE(ident.dim() == 1);
    CHECK(ident.gens[0].is_identity());
    CHECK(ident.gens[0].degree == 0);
    CHECK_FALSE(ident.gens[0].v.has_value());
    // backward homs within the exceptional range are empty
    CHECK(hom_basis(w32, 4, 0).dim() == 0);
    // beyond the range a backward interior generator appears, of degree n
    const HomBasis back = hom_basis(w32, 5, 0);
    REQUIRE(back.dim() == 1);
    CHECK(back.gens[0].K == K({1, 1}));
    CHECK(back.gens[0].degree == 1);
    // dims agree with the oracle
    for (std::int64_t d = 1; d <= 8; ++d)
        CHECK(static_cast<std::int64_t>(hom_basis(w112, 0, d).dim()) ==
              hilbert_dim_oracle(w112, d));
}

TEST_CASE("intersection points, known instances") {
    const Weights w112 = build_weights({1, 1, 2});
    CHECK(intersection_point(w112, 0, 3, K({0, 1, 1}), 0) ==
          Vec{Rational(4, 3), Rational(4, 3)});
    CHECK(intersection_point(w112, 0, 1, K({0, 1, 0}), 0) == Vec{4, 0});
    CHECK(intersection_point(w112, 0, 2, K({0, 0, 1}), 0) == Vec{0, 2});

    const Weights w32 = build_weights({3, 2});
    CHECK(intersection_point(w32, 0, 2, K({0, 1}), 0) == Vec{6});

    // barycentric interior point at distance sum(q)
    const Vec v = intersection_point(w32, 0, 5, K({1, 1}), 0);
    CHECK(v == Vec{Rational(12, 5)});
    CHECK(in_open_polytope(w32, 0, v));

    CHECK_THROWS_AS(intersection_point(w32, 0, 2, K({1, 1}), 0), std::invalid_argument);
}

TEST_CASE("generators at distances within the bound sit on the boundary") {
    for (const auto& q :
         {std::vector<std::int64_t>{3, 2}, {1, 1, 2}, {1, 2, 3}, {1, 1, 1, 1}}) {
        const Weights w = build_weights(q);
        for (std::int64_t d = 1; d <= exceptional_max_R(w); ++d)
            for (const auto& k : weighted_compositions(w, d))
                REQUIRE_FALSE(in_open_polytope(w, 0, intersection_point(w, 0, d, k, 0)));
    }
}
