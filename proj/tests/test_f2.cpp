#include <doctest.h>

#include "zflab/f2.hpp"
#include "zflab/graph.hpp"

using namespace zflab;

TEST_CASE("basic F2 matrix algebra") {
    auto i3 = f2_identity(3);
    CHECK(f2_rank(i3) == 3);
    CHECK(f2_add(i3, i3).is_zero());
    CHECK(f2_mul(i3, i3) == i3);

    auto j3 = f2_ones(3, 3);
    CHECK(f2_rank(j3) == 1);
    CHECK(f2_nullity(j3) == 2);
    CHECK(f2_mul(j3, j3) == j3);  // J^2 = 3J = J over GF(2)

    auto j2 = f2_ones(2, 2);
    CHECK(f2_mul(j2, j2).is_zero());  // J^2 = 2J = 0 over GF(2)
}

TEST_CASE("tensor product identities") {
    auto i2 = f2_identity(2);
    auto i3 = f2_identity(3);
    CHECK(f2_tensor(i2, i3) == f2_identity(6));

    // mixed-product property on small random-ish matrices
    F2Matrix a(2, 2), b(2, 2);
    a.set(0, 0, true); a.set(0, 1, true); a.set(1, 1, true);
    b.set(0, 1, true); b.set(1, 0, true); b.set(1, 1, true);
    CHECK(f2_mul(f2_tensor(a, b), f2_tensor(a, b)) ==
          f2_tensor(f2_mul(a, a), f2_mul(b, b)));

    // first factor is most significant
    auto t = f2_tensor(a, i2);
    CHECK(t.rows == 4);
    CHECK(t.get(0, 2) == a.get(0, 1));
}

TEST_CASE("transpose round-trip and rank invariance") {
    F2Matrix m(3, 5);
    m.set(0, 0, true); m.set(0, 4, true); m.set(1, 2, true); m.set(2, 0, true);
    CHECK(f2_transpose(f2_transpose(m)) == m);
    CHECK(f2_rank(m) == f2_rank(f2_transpose(m)));
}

TEST_CASE("B_1 is the all-ones matrix") {
    CHECK(build_Bn(1, 5) == f2_ones(5, 5));
}

TEST_CASE("B_2 for q=2 has the support of the C_4 adjacency matrix") {
    auto b = build_Bn(2, 2);
    auto g = build_hamming(2, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(b.get(i, j) == g.adjacent(i, j));
}

TEST_CASE("B_n support equals adjacency plus diagonal pattern of H(n,q)") {
    // B_n = sum of J-at-one-position tensors = A(H(n,q)) + n I over GF(2)
    for (int q : {2, 3}) {
        for (int n = 1; n <= 3; ++n) {
            auto b = build_Bn(n, q);
            auto g = build_hamming(n, q);
            for (int i = 0; i < g.v_count; ++i)
                for (int j = 0; j < g.v_count; ++j) {
                    bool expect = (i == j) ? (n % 2 == 1) : g.adjacent(i, j);
                    CHECK(b.get(i, j) == expect);
                }
        }
    }
}

TEST_CASE("nullity of B_n matches the closed form") {
    for (int q = 2; q <= 5; ++q)
        for (int n = 1; n <= 4; ++n) {
            unsigned long long dim = 1;
            for (int i = 0; i < n; ++i) dim *= static_cast<unsigned long long>(q);
            if (dim > 1024) continue;
            CHECK(static_cast<unsigned long long>(f2_nullity(build_Bn(n, q))) ==
                  hamming_z(n, q));
        }
    CHECK(f2_nullity(build_Bn(1, 5)) == 4);
    CHECK(f2_nullity(build_Bn(3, 3)) == 14);
}

TEST_CASE("kernel basis: membership, independence, count") {
    for (int q = 2; q <= 5; ++q)
        for (int n = 1; n <= 3; ++n) {
            unsigned long long dim = 1;
            for (int i = 0; i < n; ++i) dim *= static_cast<unsigned long long>(q);
            if (dim > 256) continue;
            auto b = build_Bn(n, q);
            auto basis = kernel_basis(n, q);
            CHECK(basis.size() == hamming_z(n, q));
            F2Matrix stacked(static_cast<int>(basis.size()), b.cols);
            for (std::size_t i = 0; i < basis.size(); ++i) {
                CHECK(f2_mul(b, basis[i]).is_zero());
                for (int j = 0; j < b.cols; ++j)
                    stacked.set(static_cast<int>(i), j, basis[i].get(j, 0));
            }
            CHECK(f2_rank(stacked) == static_cast<int>(basis.size()));
        }
}

TEST_CASE("even-index binomial sum identity") {
    auto c23 = even_terms_identity(2, 3);
    CHECK(c23.equal);
    CHECK(static_cast<unsigned long long>(c23.rhs) == 5);  // (9+1)/2
    auto c32 = even_terms_identity(3, 2);
    CHECK(c32.equal);
    CHECK(static_cast<unsigned long long>(c32.rhs) == 4);
    for (int q = 2; q <= 10; ++q) {
        auto c1 = even_terms_identity(1, q);
        CHECK(c1.equal);
        CHECK(static_cast<unsigned long long>(c1.rhs) ==
              static_cast<unsigned long long>(q - 1));
    }
}

TEST_CASE("dimension caps raise SizingError") {
    CHECK_THROWS_AS(build_Bn(13, 2), SizingError);
    CHECK_THROWS_AS(kernel_basis(13, 2), SizingError);
}
