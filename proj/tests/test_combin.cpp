#include <doctest.h>

#include <cstdint>
#include <map>
#include <set>

#include "zflab/combin.hpp"

using namespace zflab;

namespace {

// Independent oracle: Pascal's triangle built by addition only.
unsigned long long pascal(unsigned n, unsigned k) {
    static std::map<std::pair<unsigned, unsigned>, unsigned long long> memo;
    if (k > n) return 0;
    if (k == 0 || k == n) return 1;
    auto key = std::make_pair(n, k);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    unsigned long long v = pascal(n - 1, k - 1) + pascal(n - 1, k);
    memo[key] = v;
    return v;
}

// Independent oracle: count k-subspaces of GF(q)^n as (number of ordered
// independent k-tuples) / (number of ordered bases of a k-space).
unsigned long long subspace_count_oracle(unsigned n, unsigned k, unsigned q) {
    auto pw = [](unsigned __int128 b, unsigned e) {
        unsigned __int128 r = 1;
        while (e--) r *= b;
        return r;
    };
    unsigned __int128 num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= pw(q, n) - pw(q, i);
        den *= pw(q, k) - pw(q, i);
    }
    return static_cast<unsigned long long>(num / den);
}

}  // namespace

TEST_CASE("binomial agrees with Pascal's triangle") {
    for (unsigned n = 0; n <= 25; ++n)
        for (unsigned k = 0; k <= n; ++k)
            CHECK(binomial(n, k) == pascal(n, k));
    CHECK(binomial(21, 14) == 116280);
    CHECK(binomial(35, 6) == 1623160);
}

TEST_CASE("binomial out-of-range and symmetry") {
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(5, 6) == 0);
    for (unsigned n = 1; n <= 30; ++n)
        for (unsigned k = 0; k <= n; ++k)
            CHECK(binomial(n, k) == binomial(n, static_cast<long long>(n) - k));
}

TEST_CASE("binomial overflow raises SizingError") {
    CHECK_THROWS_AS(binomial(200, 100), SizingError);
}

TEST_CASE("gaussian binomial against ordered-basis-pair oracle") {
    for (unsigned q : {2u, 3u, 4u, 5u})
        for (unsigned n = 0; n <= 6; ++n)
            for (unsigned k = 0; k <= n; ++k)
                CHECK(gaussian_binomial(n, k, q) == subspace_count_oracle(n, k, q));
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(7, 2, 2) == 2667);
}

TEST_CASE("gaussian binomial q=1 limit is rejected, k>n is rejected") {
    CHECK_THROWS_AS(gaussian_binomial(4, 2, 1), HypothesisError);
    CHECK_THROWS_AS(gaussian_binomial(2, 4, 2), HypothesisError);
}

TEST_CASE("k-subset enumeration: count, uniformity, order, completeness") {
    for (unsigned n = 0; n <= 10; ++n)
        for (unsigned k = 0; k <= n; ++k) {
            auto sets = enumerate_k_subsets(n, k);
            CHECK(sets.size() == binomial(n, k));
            std::set<std::uint64_t> uniq(sets.begin(), sets.end());
            CHECK(uniq.size() == sets.size());
            for (std::size_t i = 0; i < sets.size(); ++i) {
                CHECK(static_cast<unsigned>(__builtin_popcountll(sets[i])) == k);
                CHECK((sets[i] >> n) == 0);
                if (i) CHECK(sets[i] > sets[i - 1]);  // colex = numeric order
            }
        }
}

TEST_CASE("k-subset enumeration respects the cap") {
    CHECK_THROWS_AS(enumerate_k_subsets(40, 20, 1000), SizingError);
}
