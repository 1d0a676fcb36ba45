#pragma once

#include <cstdint>
#include <vector>

#include "zflab/common.hpp"

namespace zflab {

/// C(n,k) with overflow detection. Returns 0 for k < 0 or k > n.
inline unsigned long long binomial(unsigned n, long long k) {
    if (k < 0 || static_cast<unsigned long long>(k) > n) return 0;
    unsigned long long kk = static_cast<unsigned long long>(k);
    if (kk > n - kk) kk = n - kk;
    unsigned long long r = 1;
    for (unsigned long long i = 1; i <= kk; ++i) {
        // r * (n-kk+i) is always divisible by i at this point.
        r = checked_mul(r, n - kk + i, "binomial") / i;
    }
    return r;
}

/// Number of k-subspaces of GF(q)^n, by the product formula.
inline unsigned long long gaussian_binomial(unsigned n, unsigned k, unsigned q) {
    if (q < 2) throw HypothesisError("gaussian_binomial: q must be >= 2");
    if (k > n) throw HypothesisError("gaussian_binomial: k must satisfy 0 <= k <= n");
    unsigned long long g = 1;
    for (unsigned i = 0; i < k; ++i) {
        unsigned long long num = checked_pow(q, n - i, "gaussian_binomial") - 1;
        unsigned long long den = checked_pow(q, i + 1, "gaussian_binomial") - 1;
        // Each prefix product is itself a Gaussian binomial, so division is exact.
        g = checked_mul(g, num, "gaussian_binomial") / den;
    }
    return g;
}

/// All k-subsets of [n] as bitmasks (bit i-1 = element i), in colexicographic
/// order. The position in the list is the vertex id. Colex order coincides with
/// increasing numeric order of the bitmask.
inline std::vector<std::uint64_t> enumerate_k_subsets(unsigned n, unsigned k,
                                                      std::size_t cap = kDefaultVertexCap) {
    if (k > n || n > 63) throw HypothesisError("enumerate_k_subsets: need 0 <= k <= n <= 63");
    unsigned long long cnt = binomial(n, static_cast<long long>(k));
    if (cnt > cap) throw SizingError("enumerate_k_subsets: C(n,k) exceeds cap");
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(cnt));
    if (k == 0) { out.push_back(0); return out; }
    std::uint64_t v = (std::uint64_t{1} << k) - 1;
    std::uint64_t last = v << (n - k);
    while (true) {
        out.push_back(v);
        if (v == last) break;
        // Gosper's hack: next mask with the same popcount.
        std::uint64_t c = v & (~v + 1);
        std::uint64_t r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    return out;
}

}  // namespace zflab
