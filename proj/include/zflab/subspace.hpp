#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "zflab/combin.hpp"
#include "zflab/common.hpp"
#include "zflab/gf.hpp"

namespace zflab {

/// A k-subspace of GF(q)^n, stored as its reduced row echelon basis. RREF is
/// unique per subspace, so structural equality is subspace equality.
struct SubspaceRep {
    int n = 0;
    int k = 0;
    int q = 2;
    std::vector<std::uint8_t> rows;  // k*n entries, row-major
    long long id = -1;               // ordinal in the canonical enumeration, if known

    std::uint8_t at(int i, int j) const { return rows[i * n + j]; }

    bool operator==(const SubspaceRep& o) const {
        return n == o.n && k == o.k && q == o.q && rows == o.rows;
    }
    bool operator<(const SubspaceRep& o) const { return rows < o.rows; }

    std::string to_string() const {
        std::string s = "[";
        for (int i = 0; i < k; ++i) {
            if (i) s += "; ";
            for (int j = 0; j < n; ++j) s += static_cast<char>('0' + at(i, j));
        }
        return s + "]";
    }
};

/// In-place reduced row echelon form over GF(q). Returns the rank; after the
/// call the first `rank` rows are the canonical RREF basis, the rest are zero.
inline int rref_in_place(std::vector<std::uint8_t>& m, int rows, int cols,
                         const FieldTable& f) {
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (m[i * cols + c]) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < cols; ++j) std::swap(m[r * cols + j], m[pr * cols + j]);
        int s = f.inv(m[r * cols + c]);
        if (s != 1)
            for (int j = 0; j < cols; ++j)
                m[r * cols + j] = static_cast<std::uint8_t>(f.mul(s, m[r * cols + j]));
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            int v = m[i * cols + c];
            if (!v) continue;
            for (int j = 0; j < cols; ++j)
                m[i * cols + j] = static_cast<std::uint8_t>(
                    f.sub(m[i * cols + j], f.mul(v, m[r * cols + j])));
        }
        ++r;
    }
    return r;
}

inline int rank_of(std::vector<std::uint8_t> m, int rows, int cols, const FieldTable& f) {
    return rref_in_place(m, rows, cols, f);
}

/// Canonicalize an arbitrary generating set into a SubspaceRep.
inline SubspaceRep make_subspace(std::vector<std::uint8_t> mat, int rows, int n,
                                 const FieldTable& f) {
    int rank = rref_in_place(mat, rows, n, f);
    SubspaceRep s;
    s.n = n;
    s.k = rank;
    s.q = f.q();
    s.rows.assign(mat.begin(), mat.begin() + rank * n);
    return s;
}

/// dim(U ∩ W) via the Grassmann identity: dim U + dim W - rank of stacked rows.
inline int intersection_dim(const SubspaceRep& u, const SubspaceRep& w,
                            const FieldTable& f) {
    if (u.n != w.n || u.q != w.q)
        throw HypothesisError("intersection_dim: mismatched ambient space");
    std::vector<std::uint8_t> st;
    st.reserve((u.k + w.k) * u.n);
    st.insert(st.end(), u.rows.begin(), u.rows.end());
    st.insert(st.end(), w.rows.begin(), w.rows.end());
    int r = rref_in_place(st, u.k + w.k, u.n, f);
    return u.k + w.k - r;
}

/// All k-subspaces of GF(q)^n, ordered lexicographically by the row-major
/// concatenation of their RREF entries. The position defines the vertex id.
inline std::vector<SubspaceRep> enumerate_k_subspaces(int n, int k, const FieldTable& f,
                                                      std::size_t cap = kDefaultVertexCap) {
    if (k < 0 || k > n) throw HypothesisError("enumerate_k_subspaces: need 0 <= k <= n");
    unsigned long long total = gaussian_binomial(n, k, f.q());
    if (total > cap) throw SizingError("enumerate_k_subspaces: count exceeds cap");
    std::vector<SubspaceRep> out;
    out.reserve(static_cast<std::size_t>(total));
    if (k == 0) {
        SubspaceRep s;
        s.n = n; s.k = 0; s.q = f.q(); s.id = 0;
        out.push_back(s);
        return out;
    }
    int q = f.q();
    for (std::uint64_t pivmask : enumerate_k_subsets(n, k, cap)) {
        std::vector<int> piv;
        for (int j = 0; j < n; ++j)
            if (pivmask >> j & 1) piv.push_back(j);
        // Free cells: entries right of each pivot, outside pivot columns.
        std::vector<std::pair<int, int>> free_cells;
        for (int i = 0; i < k; ++i)
            for (int j = piv[i] + 1; j < n; ++j)
                if (!(pivmask >> j & 1)) free_cells.emplace_back(i, j);
        unsigned long long patterns = checked_pow(q, free_cells.size(), "enumerate_k_subspaces");
        for (unsigned long long pat = 0; pat < patterns; ++pat) {
            SubspaceRep s;
            s.n = n; s.k = k; s.q = q;
            s.rows.assign(k * n, 0);
            for (int i = 0; i < k; ++i) s.rows[i * n + piv[i]] = 1;
            unsigned long long rem = pat;
            for (auto [i, j] : free_cells) {
                s.rows[i * n + j] = static_cast<std::uint8_t>(rem % q);
                rem /= q;
            }
            out.push_back(std::move(s));
        }
    }
    std::sort(out.begin(), out.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<long long>(i);
    if (out.size() != total) throw SizingError("enumerate_k_subspaces: count mismatch");
    return out;
}

/// Decode a vector of GF(q)^n from its integer coordinate encoding
/// (coordinate j = digit j, coordinate 0 least significant).
inline std::vector<std::uint8_t> decode_vector(unsigned long long code, int n, int q) {
    std::vector<std::uint8_t> v(n);
    for (int j = 0; j < n; ++j) { v[j] = static_cast<std::uint8_t>(code % q); code /= q; }
    return v;
}

struct AvoidanceRequest {
    int n = 0;
    int m = 0;
    std::vector<SubspaceRep> spaces;  // all of equal dimension k
};

/// Greedy construction of an m-space intersecting every given k-space
/// trivially. Requires n >= k+m and at most q^(n-k-m+1) spaces. Candidate
/// vectors are scanned in increasing coordinate-encoding order, so the result
/// is deterministic.
inline SubspaceRep find_avoiding_subspace(const AvoidanceRequest& req, const FieldTable& f) {
    if (req.spaces.empty()) throw HypothesisError("find_avoiding_subspace: no spaces given");
    int n = req.n, m = req.m, q = f.q();
    int k = req.spaces[0].k;
    for (const auto& s : req.spaces)
        if (s.n != n || s.k != k || s.q != q)
            throw HypothesisError("find_avoiding_subspace: inconsistent space list");
    if (n < k + m) throw HypothesisError("find_avoiding_subspace: need n >= k+m");
    unsigned long long limit = checked_pow(q, static_cast<unsigned>(n - k - m + 1));
    if (req.spaces.size() > limit)
        throw HypothesisError("find_avoiding_subspace: more than q^(n-k-m+1) spaces");

    std::vector<std::uint8_t> chosen;  // i*n entries so far
    unsigned long long vcount = checked_pow(q, static_cast<unsigned>(n));
    for (int step = 0; step < m; ++step) {
        bool found = false;
        for (unsigned long long code = 1; code < vcount && !found; ++code) {
            auto v = decode_vector(code, n, q);
            // outside <x_1..x_{step}>
            std::vector<std::uint8_t> t = chosen;
            t.insert(t.end(), v.begin(), v.end());
            if (rank_of(t, step + 1, n, f) != step + 1) continue;
            bool ok = true;
            for (const auto& sp : req.spaces) {
                std::vector<std::uint8_t> u = chosen;
                u.insert(u.end(), sp.rows.begin(), sp.rows.end());
                int base = rank_of(u, step + sp.k, n, f);
                u = chosen;
                u.insert(u.end(), sp.rows.begin(), sp.rows.end());
                u.insert(u.end(), v.begin(), v.end());
                if (rank_of(u, step + sp.k + 1, n, f) != base + 1) { ok = false; break; }
            }
            if (ok) {
                chosen.insert(chosen.end(), v.begin(), v.end());
                found = true;
            }
        }
        if (!found)
            throw HypothesisError("find_avoiding_subspace: exhausted candidates");
    }
    return make_subspace(chosen, m, n, f);
}

}  // namespace zflab
