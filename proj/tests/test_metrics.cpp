#include <doctest.h>

#include "zflab/graph.hpp"
#include "zflab/metrics.hpp"

using namespace zflab;

namespace {

FamilySpec grassmann_spec(int n, int k, int q, std::vector<int> S) {
    FamilySpec s;
    s.family = Family::generalized_grassmann;
    s.n = n; s.k = k; s.q = q; s.S = std::move(S);
    return s;
}

Graph path(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle(int n) {
    Graph g = path(n);
    g.add_edge(n - 1, 0);
    return g;
}

int subspace_intersection(const Graph& g, int a, int b, const FieldTable& f) {
    auto u = detail::subspace_from_label(g.labels[a], f.q());
    auto w = detail::subspace_from_label(g.labels[b], f.q());
    return intersection_dim(u, w, f);
}

}  // namespace

TEST_CASE("bfs distances on a path") {
    auto g = path(5);
    auto d = bfs_distances(g, 0);
    CHECK(d == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(diameter(g) == 4);
    CHECK(!girth(g).has_value());
}

TEST_CASE("cycles: diameter and girth") {
    CHECK(diameter(cycle(6)) == 3);
    CHECK(girth(cycle(6)) == 6);
    CHECK(girth(cycle(5)) == 5);
    CHECK(girth(cycle(3)) == 3);
}

TEST_CASE("disconnected graph has infinite diameter") {
    Graph g(3);
    g.add_edge(0, 1);
    CHECK(!diameter(g).has_value());
    auto d = bfs_distances(g, 0);
    CHECK(d[2] == -1);
}

TEST_CASE("Petersen graph metrics") {
    FamilySpec s;
    s.family = Family::generalized_johnson;
    s.n = 5; s.k = 2; s.S = {0};
    auto g = build_generalized_johnson(s);
    CHECK(diameter(g) == 2);
    CHECK(girth(g) == 5);
}

TEST_CASE("grassmann diameter formula matches BFS on small instances") {
    auto f = FieldTable::make(2);
    for (auto spec : {grassmann_spec(4, 2, 2, {1}), grassmann_spec(5, 2, 2, {1}),
                      grassmann_spec(6, 2, 2, {1}), grassmann_spec(6, 3, 2, {2}),
                      grassmann_spec(6, 3, 2, {1, 2}), grassmann_spec(6, 2, 2, {0})}) {
        auto g = build_generalized_grassmann(spec, f);
        auto d = diameter(g);
        REQUIRE(d.has_value());
        CHECK(*d == grassmann_diameter_formula(spec));
    }
}

TEST_CASE("per-pair distance formula matches BFS on J_{2,{1}}(4,2)") {
    auto f = FieldTable::make(2);
    auto spec = grassmann_spec(4, 2, 2, {1});
    auto g = build_generalized_grassmann(spec, f);
    for (int a = 0; a < g.v_count; ++a) {
        auto dist = bfs_distances(g, a);
        for (int b = 0; b < g.v_count; ++b) {
            int t = subspace_intersection(g, a, b, f);
            CHECK(dist[b] == grassmann_distance_formula(spec, t));
        }
    }
}

TEST_CASE("distance formula hypothesis checks") {
    auto spec = grassmann_spec(4, 2, 2, {0, 1});
    CHECK_THROWS_AS(grassmann_distance_formula(spec, 1), HypothesisError);  // S not proper
    auto spec2 = grassmann_spec(3, 2, 2, {1});
    CHECK_THROWS_AS(grassmann_distance_formula(spec2, 0), HypothesisError);  // n < 2k
    auto spec3 = grassmann_spec(4, 2, 2, {1});
    CHECK_THROWS_AS(grassmann_distance_formula(spec3, 5), HypothesisError);  // t out of range
    CHECK(grassmann_distance_formula(spec3, 2) == 0);
    CHECK(grassmann_distance_formula(spec3, 1) == 1);
    CHECK(grassmann_distance_formula(spec3, 0) == 2);
}

TEST_CASE("diameter formula hypothesis checks") {
    auto spec = grassmann_spec(4, 2, 2, {0});  // n < 2k - max(S) fails? 4 >= 4 ok, s=0 -> 2
    CHECK(grassmann_diameter_formula(spec) == 2);
    auto bad = grassmann_spec(3, 2, 2, {0});
    CHECK_THROWS_AS(grassmann_diameter_formula(bad), HypothesisError);
}

TEST_CASE("walk certificate validation") {
    auto g = cycle(5);
    CHECK(validate_walk(g, {{0, 1, 2}, 2}));
    CHECK(!validate_walk(g, {{0, 2}, 1}));      // not an edge
    CHECK(!validate_walk(g, {{0, 1, 2}, 3}));  // wrong claimed length
    CHECK(!validate_walk(g, {{}, 0}));
}

TEST_CASE("constructive walks realize the distance formula on J_{2,{1}}(4,2)") {
    auto f = FieldTable::make(2);
    auto spec = grassmann_spec(4, 2, 2, {1});
    auto g = build_generalized_grassmann(spec, f);
    int checked = 0;
    for (int a = 0; a < g.v_count; ++a)
        for (int b = 0; b < g.v_count; ++b) {
            if (a == b) continue;
            int t = subspace_intersection(g, a, b, f);
            if (t >= 1) continue;  // walk builder handles t < min(S)
            auto cert = build_distance_walk(g, a, b, f);
            CHECK(validate_walk(g, cert));
            CHECK(cert.claimed_length == grassmann_distance_formula(spec, t));
            ++checked;
        }
    CHECK(checked > 0);
}

TEST_CASE("constructive walks of length 3 on J_{2,{2}}(6,3)") {
    auto f = FieldTable::make(2);
    auto spec = grassmann_spec(6, 3, 2, {2});
    auto g = build_generalized_grassmann(spec, f);
    REQUIRE(g.v_count == 1395);
    // sample pairs at every intersection dimension below s = 2
    int found_t0 = 0, found_t1 = 0;
    for (int b = 1; b < g.v_count && (found_t0 < 5 || found_t1 < 5); ++b) {
        int t = subspace_intersection(g, 0, b, f);
        if (t == 0 && found_t0 < 5) {
            auto cert = build_distance_walk(g, 0, b, f);
            CHECK(validate_walk(g, cert));
            CHECK(cert.claimed_length == 3);
            ++found_t0;
        } else if (t == 1 && found_t1 < 5) {
            auto cert = build_distance_walk(g, 0, b, f);
            CHECK(validate_walk(g, cert));
            CHECK(cert.claimed_length == 2);
            ++found_t1;
        }
    }
    CHECK(found_t0 == 5);
    CHECK(found_t1 == 5);
}
