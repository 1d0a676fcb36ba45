#pragma once

#include <cstdint>
#include <vector>

#include "zflab/common.hpp"
#include "zflab/constructions.hpp"

namespace zflab {

/// Dense matrix over GF(2), rows packed into 64-bit words.
struct F2Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint64_t> data;

    F2Matrix() = default;
    F2Matrix(int r, int c)
        : rows(r), cols(c), data(static_cast<std::size_t>(r) * wpr(c), 0) {}

    static int wpr(int c) { return (c + 63) / 64; }
    int wpr() const { return wpr(cols); }

    bool get(int i, int j) const {
        return data[static_cast<std::size_t>(i) * wpr() + j / 64] >> (j % 64) & 1;
    }
    void set(int i, int j, bool v) {
        auto& w = data[static_cast<std::size_t>(i) * wpr() + j / 64];
        if (v) w |= std::uint64_t{1} << (j % 64);
        else w &= ~(std::uint64_t{1} << (j % 64));
    }

    bool operator==(const F2Matrix& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }
    bool is_zero() const {
        for (auto w : data)
            if (w) return false;
        return true;
    }
};

inline F2Matrix f2_identity(int n) {
    F2Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

inline F2Matrix f2_ones(int r, int c) {
    F2Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(i, j, true);
    return m;
}

inline F2Matrix f2_add(const F2Matrix& a, const F2Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw HypothesisError("f2_add: dimension mismatch");
    F2Matrix out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] ^= b.data[i];
    return out;
}

inline F2Matrix f2_mul(const F2Matrix& a, const F2Matrix& b) {
    if (a.cols != b.rows) throw HypothesisError("f2_mul: dimension mismatch");
    F2Matrix out(a.rows, b.cols);
    int w = out.wpr();
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k)
            if (a.get(i, k))
                for (int j = 0; j < w; ++j)
                    out.data[static_cast<std::size_t>(i) * w + j] ^=
                        b.data[static_cast<std::size_t>(k) * w + j];
    return out;
}

/// Kronecker product; the first factor indexes the most significant blocks.
inline F2Matrix f2_tensor(const F2Matrix& a, const F2Matrix& b) {
    unsigned long long r = checked_mul(static_cast<unsigned long long>(a.rows),
                                       static_cast<unsigned long long>(b.rows));
    unsigned long long c = checked_mul(static_cast<unsigned long long>(a.cols),
                                       static_cast<unsigned long long>(b.cols));
    F2Matrix out(static_cast<int>(r), static_cast<int>(c));
    for (int i1 = 0; i1 < a.rows; ++i1)
        for (int j1 = 0; j1 < a.cols; ++j1) {
            if (!a.get(i1, j1)) continue;
            for (int i2 = 0; i2 < b.rows; ++i2)
                for (int j2 = 0; j2 < b.cols; ++j2)
                    if (b.get(i2, j2))
                        out.set(i1 * b.rows + i2, j1 * b.cols + j2, true);
        }
    return out;
}

inline F2Matrix f2_transpose(const F2Matrix& a) {
    F2Matrix out(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (a.get(i, j)) out.set(j, i, true);
    return out;
}

inline int f2_rank(F2Matrix m) {
    int w = m.wpr();
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int pr = -1;
        for (int i = rank; i < m.rows; ++i)
            if (m.get(i, c)) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != rank)
            for (int j = 0; j < w; ++j)
                std::swap(m.data[static_cast<std::size_t>(rank) * w + j],
                          m.data[static_cast<std::size_t>(pr) * w + j]);
        for (int i = 0; i < m.rows; ++i) {
            if (i == rank || !m.get(i, c)) continue;
            for (int j = 0; j < w; ++j)
                m.data[static_cast<std::size_t>(i) * w + j] ^=
                    m.data[static_cast<std::size_t>(rank) * w + j];
        }
        ++rank;
    }
    return rank;
}

inline int f2_nullity(const F2Matrix& m) { return m.cols - f2_rank(m); }

/// B_1 = J_q (all ones), B_n = J ⊗ I + I ⊗ B_{n-1}. The first Kronecker
/// factor is most significant, matching the vertex ids of H(n,q), where the
/// last tuple coordinate is most significant.
inline F2Matrix build_Bn(int n, int q, std::size_t cap = 4096) {
    if (n < 1 || q < 2) throw HypothesisError("build_Bn: need n >= 1, q >= 2");
    unsigned long long dim = checked_pow(static_cast<unsigned long long>(q),
                                         static_cast<unsigned>(n), "build_Bn");
    if (dim > cap) throw SizingError("build_Bn: q^n exceeds cap");
    F2Matrix b = f2_ones(q, q);
    unsigned long long sub = static_cast<unsigned long long>(q);
    for (int level = 2; level <= n; ++level) {
        b = f2_add(f2_tensor(f2_ones(q, q), f2_identity(static_cast<int>(sub))),
                   f2_tensor(f2_identity(q), b));
        sub *= q;
    }
    return b;
}

namespace detail {

// Column vectors of length q used as tensor factors in the kernel bases.
inline F2Matrix f2_col_ones(int q) {
    F2Matrix v(q, 1);
    for (int i = 0; i < q; ++i) v.set(i, 0, true);
    return v;
}

inline F2Matrix f2_col_pair(int q, int a, int b) {  // e_a + e_b, 0-based
    F2Matrix v(q, 1);
    v.set(a, 0, true);
    v.set(b, 0, true);
    return v;
}

inline F2Matrix f2_col_unit(int q, int a) {
    F2Matrix v(q, 1);
    v.set(a, 0, true);
    return v;
}

}  // namespace detail

/// Explicit basis of ker(B_n) over GF(2), as column vectors.
///
/// Odd q: tensors v_1 ⊗ ... ⊗ v_n with each v_i ∈ {𝟙, e_1+e_2, ..,
/// e_{q-1}+e_q} and an even number of 𝟙 factors.
///
/// Even q: with x_1 = 𝟙 and x_i = e_{i-1}+e_i (2 <= i <= q-1), recursively
/// {x_i ⊗ v : v ∈ ker basis of B_{n-1}} together with
/// {𝟙 ⊗ w + e_1 ⊗ B_{n-1} w} for standard basis vectors w extending the
/// smaller kernel basis to a full basis.
inline std::vector<F2Matrix> kernel_basis(int n, int q, std::size_t cap = 4096) {
    if (n < 1 || q < 2) throw HypothesisError("kernel_basis: need n >= 1, q >= 2");
    unsigned long long dim = checked_pow(static_cast<unsigned long long>(q),
                                         static_cast<unsigned>(n), "kernel_basis");
    if (dim > cap) throw SizingError("kernel_basis: q^n exceeds cap");

    if (q % 2 == 1) {
        std::vector<F2Matrix> factors;
        factors.push_back(detail::f2_col_ones(q));  // index 0 = the 𝟙 factor
        for (int i = 0; i < q - 1; ++i) factors.push_back(detail::f2_col_pair(q, i, i + 1));
        std::vector<F2Matrix> out;
        std::vector<int> choice(static_cast<std::size_t>(n), 0);
        while (true) {
            int ones = 0;
            for (int c : choice) ones += (c == 0);
            if (ones % 2 == 0) {
                F2Matrix v = factors[static_cast<std::size_t>(choice[0])];
                for (int i = 1; i < n; ++i)
                    v = f2_tensor(v, factors[static_cast<std::size_t>(choice[i])]);
                out.push_back(std::move(v));
            }
            int pos = n - 1;
            while (pos >= 0 && choice[pos] == q - 1) choice[pos--] = 0;
            if (pos < 0) break;
            ++choice[pos];
        }
        return out;
    }

    // even q
    std::vector<F2Matrix> xs;
    xs.push_back(detail::f2_col_ones(q));
    for (int i = 2; i <= q - 1; ++i) xs.push_back(detail::f2_col_pair(q, i - 2, i - 1));
    if (n == 1) return xs;

    std::vector<F2Matrix> sub = kernel_basis(n - 1, q, cap);
    F2Matrix bsub = build_Bn(n - 1, q, cap);
    int d = bsub.cols;

    std::vector<F2Matrix> out;
    for (const auto& x : xs)
        for (const auto& v : sub) out.push_back(f2_tensor(x, v));

    // Extend the sub-kernel basis to a basis of GF(2)^d by standard vectors;
    // each extension vector w contributes 𝟙 ⊗ w + e_1 ⊗ B_{n-1} w.
    F2Matrix span(static_cast<int>(sub.size()) + 1, d);
    for (std::size_t i = 0; i < sub.size(); ++i)
        for (int j = 0; j < d; ++j) span.set(static_cast<int>(i), j, sub[i].get(j, 0));
    int cur = f2_rank(span);
    F2Matrix ones_q = detail::f2_col_ones(q);
    F2Matrix e1 = detail::f2_col_unit(q, 0);
    for (int j = 0; j < d && cur < d; ++j) {
        F2Matrix trial = span;
        trial.set(trial.rows - 1, j, true);
        if (f2_rank(trial) == cur + 1) {
            span = trial;
            // keep span square-ish by growing a row when full
            if (++cur < d) {
                F2Matrix bigger(span.rows + 1, d);
                for (int i = 0; i < span.rows; ++i)
                    for (int c = 0; c < d; ++c) bigger.set(i, c, span.get(i, c));
                span = std::move(bigger);
            }
            F2Matrix w(d, 1);
            w.set(j, 0, true);
            out.push_back(f2_add(f2_tensor(ones_q, w), f2_tensor(e1, f2_mul(bsub, w))));
        }
    }
    return out;
}

/// Both sides of the identity sum_{j even} C(n,j) (q-1)^(n-j) =
/// (q^n + (q-2)^n) / 2, evaluated in 128-bit arithmetic.
struct EvenTermsCheck {
    unsigned __int128 lhs = 0;
    unsigned __int128 rhs = 0;
    bool equal = false;
};

inline EvenTermsCheck even_terms_identity(int n, int q) {
    if (n < 1 || q < 2) throw HypothesisError("even_terms_identity: need n >= 1, q >= 2");
    auto pow128 = [](unsigned __int128 b, int e) {
        unsigned __int128 r = 1;
        while (e-- > 0) r *= b;
        return r;
    };
    EvenTermsCheck out;
    for (int j = 0; j <= n; j += 2) {
        // C(n,j) as u128 via the multiplicative formula
        unsigned __int128 c = 1;
        for (int i = 1; i <= j; ++i) c = c * static_cast<unsigned>(n - j + i) / static_cast<unsigned>(i);
        out.lhs += c * pow128(static_cast<unsigned>(q - 1), n - j);
    }
    out.rhs = (pow128(static_cast<unsigned>(q), n) + pow128(static_cast<unsigned>(q - 2), n)) / 2;
    out.equal = out.lhs == out.rhs;
    return out;
}

}  // namespace zflab
