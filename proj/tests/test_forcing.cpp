#include <doctest.h>

#include <random>

#include "zflab/forcing.hpp"
#include "zflab/graph.hpp"

using namespace zflab;

namespace {

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

Graph complete(int n) {
    Graph g(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < a; ++b) g.add_edge(a, b);
    return g;
}

Graph random_graph(std::mt19937& rng, int n, double p) {
    Graph g(n);
    std::bernoulli_distribution edge(p);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < a; ++b)
            if (edge(rng)) g.add_edge(a, b);
    return g;
}

BitVec random_subset(std::mt19937& rng, int n) {
    BitVec b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        if (rng() & 1) b.set(static_cast<std::size_t>(i));
    return b;
}

Graph petersen() {
    FamilySpec s;
    s.family = Family::generalized_johnson;
    s.n = 5; s.k = 2; s.S = {0};
    return build_generalized_johnson(s);
}

// Brute-force minimum over all leader sets satisfying `pred`.
template <class Pred>
int brute_min(const Graph& g, Pred pred) {
    int n = g.v_count;
    for (int size = 0; size <= n; ++size) {
        if (size == 0) {
            if (pred(BitVec(static_cast<std::size_t>(n)))) return 0;
            continue;
        }
        std::uint64_t m = (std::uint64_t{1} << size) - 1;
        std::uint64_t last = m << (n - size);
        while (true) {
            BitVec b(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                if (m >> i & 1) b.set(static_cast<std::size_t>(i));
            if (pred(b)) return size;
            if (m == last) break;
            std::uint64_t c = m & (~m + 1);
            std::uint64_t r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    return n;
}

}  // namespace

TEST_CASE("closure on a path") {
    auto g = path(3);
    BitVec endv(3);
    endv.set(0);
    auto [black, trace] = closure(g, endv);
    CHECK(black.count() == 3);
    CHECK(trace.steps.size() == 2);
    BitVec mid(3);
    mid.set(1);  // two white neighbors: stalls
    CHECK(closure(g, mid).first.count() == 1);
}

TEST_CASE("closure on C4 from an adjacent pair") {
    auto g = cycle(4);
    BitVec b(4);
    b.set(0);
    b.set(1);
    CHECK(closure(g, b).first.count() == 4);
    BitVec opposite(4);
    opposite.set(0);
    opposite.set(2);  // each black vertex has two white neighbors
    CHECK(closure(g, opposite).first.count() == 2);
}

TEST_CASE("closure of the full vertex set is trivial") {
    auto g = cycle(5);
    BitVec all(5);
    all.set_all();
    auto [black, trace] = closure(g, all);
    CHECK(black.count() == 5);
    CHECK(trace.steps.empty());
}

TEST_CASE("counter engine matches the naive rescan engine on random instances") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 2 + static_cast<int>(rng() % 13);
        auto g = random_graph(rng, n, 0.1 + 0.8 * (rng() % 100) / 100.0);
        auto b = random_subset(rng, n);
        CHECK(closure(g, b).first == closure_naive(g, b));
    }
}

TEST_CASE("closure is monotone and idempotent") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 2 + static_cast<int>(rng() % 13);
        auto g = random_graph(rng, n, 0.4);
        auto b = random_subset(rng, n);
        auto bigger = b;
        bigger |= random_subset(rng, n);
        auto cb = closure(g, b).first;
        auto cbig = closure(g, bigger).first;
        BitVec diff = cb;
        diff.and_not(cbig);
        CHECK(diff.none());  // cl(B) subset of cl(B')
        CHECK(closure(g, cb).first == cb);
    }
}

TEST_CASE("traces replay and corrupted traces are rejected") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + static_cast<int>(rng() % 10);
        auto g = random_graph(rng, n, 0.5);
        auto b = random_subset(rng, n);
        auto [black, trace] = closure(g, b);
        BitVec replayed(static_cast<std::size_t>(n));
        CHECK(replay_trace(g, trace, &replayed));
        CHECK(replayed == black);
        if (!trace.steps.empty()) {
            auto bad = trace;
            bad.steps.push_back(bad.steps.back());  // force an already-black vertex
            CHECK(!replay_trace(g, bad));
        }
    }
}

TEST_CASE("forbidden pivots never force") {
    auto g = path(5);
    BitVec b(5);
    b.set(0);
    BitVec forbidden(5);
    forbidden.set(2);
    auto [black, trace] = closure(g, b, &forbidden);
    // 0 forces 1, 1 forces 2, then 2 may not pivot
    CHECK(black.count() == 3);
    for (const auto& st : trace.steps) CHECK(st.pivot != 2);
}

TEST_CASE("exact search on standard small graphs") {
    CHECK(zero_forcing_number_exact(path(7)).z == 1);
    CHECK(zero_forcing_number_exact(cycle(4)).z == 2);
    CHECK(zero_forcing_number_exact(cycle(9)).z == 2);
    CHECK(zero_forcing_number_exact(complete(6)).z == 5);

    FamilySpec s;
    s.family = Family::generalized_johnson;
    s.n = 4; s.k = 2; s.S = {1};
    CHECK(zero_forcing_number_exact(build_generalized_johnson(s)).z == 4);

    auto res = zero_forcing_number_exact(petersen());
    CHECK(res.proved);
    CHECK(res.z == 5);
    CHECK(is_zero_forcing(petersen(), to_bitvec(petersen(), res.certificate)));
}

TEST_CASE("no 3-subset of the Petersen graph forces (exhaustive)") {
    auto g = petersen();
    auto masks = enumerate_k_subsets(10, 3);
    for (auto m : masks) {
        BitVec b(10);
        for (int i = 0; i < 10; ++i)
            if (m >> i & 1) b.set(static_cast<std::size_t>(i));
        CHECK(!is_zero_forcing(g, b));
    }
}

TEST_CASE("exact search certificate is reproducible and hint-aware") {
    auto g = petersen();
    auto base = zero_forcing_number_exact(g);
    auto again = zero_forcing_number_exact(g);
    CHECK(base.certificate == again.certificate);

    ExactSearchOptions opt;
    opt.upper_certificate = base.certificate;
    auto hinted = zero_forcing_number_exact(g, opt);
    CHECK(hinted.z == base.z);
    CHECK(hinted.certificate == base.certificate);  // optimal hint is kept
    CHECK(hinted.closures_tested < base.closures_tested);

    ExactSearchOptions par;
    par.workers = 4;
    CHECK(zero_forcing_number_exact(g, par).z == base.z);
}

TEST_CASE("oversized instances return a flagged bound instead of a value") {
    auto g = petersen();
    ExactSearchOptions opt;
    opt.search_cap = 5;
    auto res = zero_forcing_number_exact(g, opt);
    CHECK(!res.proved);
    CHECK(res.z == g.v_count);  // no certificate: only the trivial bound

    // a verified certificate tightens the bound without a minimality proof
    opt.upper_certificate = zero_forcing_number_exact(g).certificate;
    res = zero_forcing_number_exact(g, opt);
    CHECK(!res.proved);
    CHECK(res.z == 5);

    // an invalid hint is ignored rather than trusted
    opt.upper_certificate = std::vector<int>{0, 1, 2, 3, 4, 5};
    res = zero_forcing_number_exact(g, opt);
    CHECK(!res.proved);
    CHECK(res.z == g.v_count);
}

TEST_CASE("grundy domination on standard graphs") {
    CHECK(grundy_exact(complete(5), GrundyVariant::grundy).first == 1);
    CHECK(grundy_exact(complete(5), GrundyVariant::z_grundy).first == 1);
    CHECK(grundy_exact(cycle(4), GrundyVariant::grundy).first == 2);
    CHECK(grundy_exact(cycle(4), GrundyVariant::z_grundy).first == 2);
    CHECK(zf_from_grundy(cycle(4)) == 2);
}

TEST_CASE("grundy sequences have legal nonempty footprints") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng() % 9);
        auto g = random_graph(rng, n, 0.5);
        for (auto variant : {GrundyVariant::grundy, GrundyVariant::z_grundy}) {
            auto [gamma, seq] = grundy_exact(g, variant);
            REQUIRE(static_cast<int>(seq.sequence.size()) == gamma);
            BitVec dominated(static_cast<std::size_t>(n));
            for (std::size_t i = 0; i < seq.sequence.size(); ++i) {
                int x = seq.sequence[i];
                REQUIRE(!seq.footprints[i].empty());
                for (int fv : seq.footprints[i]) {
                    CHECK(!dominated.test(static_cast<std::size_t>(fv)));
                    bool in_nbhd = g.adjacent(x, fv) ||
                                   (variant == GrundyVariant::grundy && fv == x);
                    CHECK(in_nbhd);
                }
                dominated |= g.adj[x];
                dominated.set(static_cast<std::size_t>(x));
            }
        }
    }
}

TEST_CASE("zero forcing equals |V| minus the Z-grundy number on random graphs") {
    std::mt19937 rng(31);
    int done = 0;
    for (int trial = 0; trial < 1000 && done < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 13);
        auto g = random_graph(rng, n, 0.2 + 0.6 * (rng() % 100) / 100.0);
        if (has_isolated_vertex(g)) continue;
        int z = zero_forcing_number_exact(g).z;
        CHECK(z == zf_from_grundy(g));
        // one-sided bound from the plain grundy number
        CHECK(z >= n - grundy_exact(g, GrundyVariant::grundy).first);
        ++done;
    }
    CHECK(done == 200);
}

TEST_CASE("plain, total and connected zero forcing numbers are ordered") {
    std::mt19937 rng(41);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 40; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);
        auto g = random_graph(rng, n, 0.5);
        if (!is_connected(g)) continue;
        int z = brute_min(g, [&](const BitVec& b) { return is_zero_forcing(g, b); });
        CHECK(z == zero_forcing_number_exact(g).z);
        if (z < 2) continue;  // the chain is stated for Z >= 2 (non-paths)
        int zt = brute_min(g, [&](const BitVec& b) { return is_total_zfs(g, b); });
        int zc = brute_min(g, [&](const BitVec& b) { return is_connected_zfs(g, b); });
        CHECK(z <= zt);
        CHECK(zt <= zc);
        ++done;
    }
    CHECK(done == 40);
}

TEST_CASE("cross-intersection bound, set variant") {
    // X_i = {i}, Y_i = [m] \ {i}: conditions hold with t = 0 and the family
    // meets the bound C(m, 1) with equality.
    int m = 5;
    std::vector<std::uint64_t> X, Y;
    std::uint64_t all = (std::uint64_t{1} << m) - 1;
    for (int i = 0; i < m; ++i) {
        X.push_back(std::uint64_t{1} << i);
        Y.push_back(all ^ (std::uint64_t{1} << i));
    }
    auto verdict = bollobas_check_sets(X, Y, 0);
    CHECK(verdict.conditions_hold);
    CHECK(verdict.bound == static_cast<unsigned long long>(m));
    CHECK(verdict.within_bound);

    // violate the diagonal condition, keeping sizes uniform
    auto Y2 = Y;
    Y2[0] = all ^ (std::uint64_t{1} << 1);  // contains element 0 = X_0
    CHECK(!bollobas_check_sets(X, Y2, 0).conditions_hold);

    // nonuniform sizes are a usage error
    auto X2 = X;
    X2[0] = 3;
    CHECK_THROWS_AS(bollobas_check_sets(X2, Y, 0), HypothesisError);
}

TEST_CASE("cross-intersection bound, subspace variant") {
    auto f = FieldTable::make(2);
    int m = 3;
    std::vector<SubspaceRep> X, Y;
    for (int i = 0; i < m; ++i) {
        std::vector<std::uint8_t> line(3, 0);
        line[static_cast<std::size_t>(i)] = 1;
        X.push_back(make_subspace(line, 1, 3, f));
        std::vector<std::uint8_t> plane;
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            std::vector<std::uint8_t> e(3, 0);
            e[static_cast<std::size_t>(j)] = 1;
            plane.insert(plane.end(), e.begin(), e.end());
        }
        Y.push_back(make_subspace(plane, 2, 3, f));
    }
    auto verdict = bollobas_check_subspaces(X, Y, 0, f);
    CHECK(verdict.conditions_hold);
    CHECK(verdict.bound == 3);
    CHECK(verdict.within_bound);
}
