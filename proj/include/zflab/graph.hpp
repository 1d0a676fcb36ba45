#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zflab/combin.hpp"
#include "zflab/common.hpp"
#include "zflab/subspace.hpp"

namespace zflab {

enum class Family : std::uint8_t {
    generalized_johnson = 0,
    generalized_grassmann = 1,
    hamming = 2,
};

/// Parameter record for the three graph families. k and S are unused for
/// hamming; q is unused for generalized_johnson.
struct FamilySpec {
    Family family = Family::generalized_johnson;
    int n = 0;
    int k = 0;
    int q = 0;
    std::vector<int> S;  // sorted

    int s_min() const { return S.front(); }
    int s_max() const { return S.back(); }

    void validate() const {
        switch (family) {
            case Family::generalized_johnson:
            case Family::generalized_grassmann:
                if (n < k || k < 1) throw HypothesisError("family spec: need n >= k >= 1");
                if (S.empty() || S.front() < 0 || S.back() > k - 1)
                    throw HypothesisError("family spec: S must be a nonempty subset of {0..k-1}");
                if (!std::is_sorted(S.begin(), S.end()))
                    throw HypothesisError("family spec: S must be sorted");
                if (family == Family::generalized_grassmann && q < 2)
                    throw HypothesisError("family spec: grassmann needs a prime power q");
                break;
            case Family::hamming:
                if (n < 1 || q < 2) throw HypothesisError("family spec: hamming needs n >= 1, q >= 2");
                break;
        }
    }

    std::string to_string() const {
        auto sset = [this] {
            std::string t;
            for (std::size_t i = 0; i < S.size(); ++i) {
                if (i) t += ",";
                t += std::to_string(S[i]);
            }
            return t;
        };
        switch (family) {
            case Family::generalized_johnson:
                return "J_{" + sset() + "}(" + std::to_string(n) + "," + std::to_string(k) + ")";
            case Family::generalized_grassmann:
                return "J_{" + std::to_string(q) + ",{" + sset() + "}}(" + std::to_string(n) +
                       "," + std::to_string(k) + ")";
            case Family::hamming:
                return "H(" + std::to_string(n) + "," + std::to_string(q) + ")";
        }
        return "?";
    }
};

struct VertexLabel {
    enum class Kind : std::uint8_t { subset = 0, subspace = 1, tuple = 2 };
    Kind kind = Kind::subset;
    // subset:   sorted 1-based elements
    // subspace: k, n, then k*n RREF entries
    // tuple:    digits a_1..a_n
    std::vector<std::uint32_t> data;

    bool operator==(const VertexLabel& o) const { return kind == o.kind && data == o.data; }
    bool operator<(const VertexLabel& o) const {
        if (kind != o.kind) return kind < o.kind;
        return data < o.data;
    }

    static VertexLabel subset_from_mask(std::uint64_t mask) {
        VertexLabel l;
        l.kind = Kind::subset;
        for (int i = 0; i < 64; ++i)
            if (mask >> i & 1) l.data.push_back(static_cast<std::uint32_t>(i + 1));
        return l;
    }

    static VertexLabel from_subspace(const SubspaceRep& s) {
        VertexLabel l;
        l.kind = Kind::subspace;
        l.data.push_back(static_cast<std::uint32_t>(s.k));
        l.data.push_back(static_cast<std::uint32_t>(s.n));
        for (auto e : s.rows) l.data.push_back(e);
        return l;
    }

    std::string to_string() const {
        std::string s;
        switch (kind) {
            case Kind::subset: {
                s = "{";
                for (std::size_t i = 0; i < data.size(); ++i) {
                    if (i) s += ",";
                    s += std::to_string(data[i]);
                }
                return s + "}";
            }
            case Kind::subspace: {
                int k = static_cast<int>(data[0]), n = static_cast<int>(data[1]);
                s = "[";
                for (int i = 0; i < k; ++i) {
                    if (i) s += "; ";
                    for (int j = 0; j < n; ++j) s += std::to_string(data[2 + i * n + j]);
                }
                return s + "]";
            }
            case Kind::tuple: {
                s = "(";
                for (std::size_t i = 0; i < data.size(); ++i) {
                    if (i) s += ",";
                    s += std::to_string(data[i]);
                }
                return s + ")";
            }
        }
        return "?";
    }
};

/// Simple loopless graph on dense bitset adjacency rows.
struct Graph {
    int v_count = 0;
    std::vector<BitVec> adj;
    std::vector<VertexLabel> labels;
    std::optional<FamilySpec> spec;

    explicit Graph(int v = 0) : v_count(v), adj(v, BitVec(static_cast<std::size_t>(v))) {}

    void add_edge(int a, int b) {
        adj[a].set(static_cast<std::size_t>(b));
        adj[b].set(static_cast<std::size_t>(a));
    }
    bool adjacent(int a, int b) const { return adj[a].test(static_cast<std::size_t>(b)); }
    std::size_t degree(int v) const { return adj[v].count(); }

    std::size_t edge_count() const {
        std::size_t d = 0;
        for (int v = 0; v < v_count; ++v) d += degree(v);
        return d / 2;
    }
};

/// Structural sanity check: symmetry, zero diagonal, distinct labels.
inline void validate_graph(const Graph& g) {
    for (int v = 0; v < g.v_count; ++v) {
        if (g.adj[v].test(static_cast<std::size_t>(v)))
            throw std::runtime_error("graph has a loop at vertex " + std::to_string(v));
        for (int w = v + 1; w < g.v_count; ++w)
            if (g.adjacent(v, w) != g.adjacent(w, v))
                throw std::runtime_error("adjacency not symmetric");
    }
    if (!g.labels.empty()) {
        auto sorted = g.labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::runtime_error("duplicate vertex labels");
    }
}

inline Graph build_generalized_johnson(const FamilySpec& spec,
                                       std::size_t cap = kDefaultVertexCap) {
    spec.validate();
    if (spec.family != Family::generalized_johnson)
        throw HypothesisError("build_generalized_johnson: wrong family tag");
    auto sets = enumerate_k_subsets(static_cast<unsigned>(spec.n),
                                    static_cast<unsigned>(spec.k), cap);
    Graph g(static_cast<int>(sets.size()));
    g.spec = spec;
    std::uint64_t smask = 0;
    for (int s : spec.S) smask |= std::uint64_t{1} << s;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        g.labels.push_back(VertexLabel::subset_from_mask(sets[i]));
        for (std::size_t j = 0; j < i; ++j) {
            int inter = __builtin_popcountll(sets[i] & sets[j]);
            if (smask >> inter & 1) g.add_edge(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return g;
}

namespace detail {

// Rank of GF(2) rows packed as bitmasks, via a leading-bit basis.
inline int gf2_rank(const std::uint32_t* rows, int cnt) {
    std::uint32_t basis[32] = {0};
    int rank = 0;
    for (int i = 0; i < cnt; ++i) {
        std::uint32_t r = rows[i];
        while (r) {
            int b = 31 - __builtin_clz(r);
            if (!basis[b]) { basis[b] = r; ++rank; break; }
            r ^= basis[b];
        }
    }
    return rank;
}

inline std::uint32_t pack_row_gf2(const SubspaceRep& s, int row) {
    std::uint32_t m = 0;
    for (int j = 0; j < s.n; ++j)
        if (s.at(row, j)) m |= std::uint32_t{1} << j;
    return m;
}

}  // namespace detail

inline Graph build_generalized_grassmann(const FamilySpec& spec, const FieldTable& f,
                                         std::size_t cap = kDefaultVertexCap) {
    spec.validate();
    if (spec.family != Family::generalized_grassmann)
        throw HypothesisError("build_generalized_grassmann: wrong family tag");
    if (f.q() != spec.q) throw HypothesisError("field order does not match spec");
    auto spaces = enumerate_k_subspaces(spec.n, spec.k, f, cap);
    Graph g(static_cast<int>(spaces.size()));
    g.spec = spec;
    std::uint64_t smask = 0;
    for (int s : spec.S) smask |= std::uint64_t{1} << s;
    for (auto& sp : spaces) g.labels.push_back(VertexLabel::from_subspace(sp));

    if (spec.q == 2 && spec.n <= 32) {
        // bit-packed fast path
        std::vector<std::uint32_t> packed(spaces.size() * spec.k);
        for (std::size_t i = 0; i < spaces.size(); ++i)
            for (int r = 0; r < spec.k; ++r)
                packed[i * spec.k + r] = detail::pack_row_gf2(spaces[i], r);
        std::uint32_t buf[64];
        for (std::size_t i = 0; i < spaces.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                for (int r = 0; r < spec.k; ++r) {
                    buf[r] = packed[i * spec.k + r];
                    buf[spec.k + r] = packed[j * spec.k + r];
                }
                int inter = 2 * spec.k - detail::gf2_rank(buf, 2 * spec.k);
                if (smask >> inter & 1) g.add_edge(static_cast<int>(i), static_cast<int>(j));
            }
        }
    } else {
        for (std::size_t i = 0; i < spaces.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) {
                int inter = intersection_dim(spaces[i], spaces[j], f);
                if (smask >> inter & 1) g.add_edge(static_cast<int>(i), static_cast<int>(j));
            }
    }
    return g;
}

/// H(n,q): q-ary n-tuples, adjacent at Hamming distance 1. Vertex id is the
/// base-q value of the tuple with the last coordinate most significant, so the
/// q copies of H(n-1,q) are contiguous id blocks.
inline Graph build_hamming(int n, int q, std::size_t cap = kDefaultVertexCap) {
    FamilySpec spec;
    spec.family = Family::hamming;
    spec.n = n; spec.q = q;
    spec.validate();
    unsigned long long v = checked_pow(static_cast<unsigned long long>(q),
                                      static_cast<unsigned>(n), "build_hamming");
    if (v > cap) throw SizingError("build_hamming: q^n exceeds cap");
    Graph g(static_cast<int>(v));
    g.spec = spec;
    std::vector<unsigned long long> pw(n + 1, 1);
    for (int i = 1; i <= n; ++i) pw[i] = pw[i - 1] * q;
    for (unsigned long long id = 0; id < v; ++id) {
        VertexLabel l;
        l.kind = VertexLabel::Kind::tuple;
        for (int i = 0; i < n; ++i)
            l.data.push_back(static_cast<std::uint32_t>((id / pw[i]) % q));
        g.labels.push_back(std::move(l));
        for (int i = 0; i < n; ++i) {
            int digit = static_cast<int>((id / pw[i]) % q);
            for (int d = 0; d < q; ++d) {
                if (d == digit) continue;
                unsigned long long nb = id + (static_cast<unsigned long long>(d) - digit) * pw[i];
                if (nb < id) g.add_edge(static_cast<int>(id), static_cast<int>(nb));
            }
        }
    }
    return g;
}

/// Cartesian product. Vertex (u_i of G, v_j of H) gets id j*|V(G)| + i, i.e.
/// the H coordinate is most significant. When both factors carry tuple labels
/// the product label is the concatenation (G digits first), which makes
/// H(n-1,q) box K_q literally equal to H(n,q) in ids and labels.
inline Graph cartesian_product(const Graph& a, const Graph& b,
                               std::size_t cap = kDefaultVertexCap) {
    unsigned long long v = checked_mul(static_cast<unsigned long long>(a.v_count),
                                      static_cast<unsigned long long>(b.v_count));
    if (v > cap) throw SizingError("cartesian_product: size exceeds cap");
    Graph g(static_cast<int>(v));
    bool tuples = !a.labels.empty() && !b.labels.empty() &&
                  a.labels[0].kind == VertexLabel::Kind::tuple &&
                  b.labels[0].kind == VertexLabel::Kind::tuple;
    for (int j = 0; j < b.v_count; ++j) {
        for (int i = 0; i < a.v_count; ++i) {
            int id = j * a.v_count + i;
            VertexLabel l;
            l.kind = VertexLabel::Kind::tuple;
            if (tuples) {
                l.data = a.labels[i].data;
                l.data.insert(l.data.end(), b.labels[j].data.begin(), b.labels[j].data.end());
            } else {
                l.data = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
            }
            g.labels.push_back(std::move(l));
            // edges within the copy
            a.adj[i].for_each([&](std::size_t i2) {
                if (static_cast<int>(i2) < i) g.add_edge(id, j * a.v_count + static_cast<int>(i2));
            });
            // edges across copies
            b.adj[j].for_each([&](std::size_t j2) {
                if (static_cast<int>(j2) < j) g.add_edge(id, static_cast<int>(j2) * a.v_count + i);
            });
        }
    }
    return g;
}

inline Graph induced_subgraph(const Graph& g, const std::vector<int>& verts) {
    Graph h(static_cast<int>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (verts[i] < 0 || verts[i] >= g.v_count)
            throw HypothesisError("induced_subgraph: vertex out of range");
        if (!g.labels.empty()) h.labels.push_back(g.labels[verts[i]]);
        for (std::size_t j = 0; j < i; ++j)
            if (g.adjacent(verts[i], verts[j]))
                h.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
    return h;
}

inline bool is_connected(const Graph& g) {
    if (g.v_count == 0) return true;
    BitVec seen(static_cast<std::size_t>(g.v_count));
    BitVec frontier(static_cast<std::size_t>(g.v_count));
    frontier.set(0);
    seen.set(0);
    while (frontier.any()) {
        BitVec next(static_cast<std::size_t>(g.v_count));
        frontier.for_each([&](std::size_t v) { next |= g.adj[v]; });
        next.and_not(seen);
        seen |= next;
        frontier = std::move(next);
    }
    return seen.count() == static_cast<std::size_t>(g.v_count);
}

inline bool has_isolated_vertex(const Graph& g) {
    for (int v = 0; v < g.v_count; ++v)
        if (g.adj[v].none()) return true;
    return false;
}

}  // namespace zflab
