#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "zflab/graph.hpp"
#include "zflab/subspace.hpp"

namespace zflab {

/// BFS layers from src; -1 marks unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, int src) {
    if (src < 0 || src >= g.v_count) throw HypothesisError("bfs_distances: source out of range");
    std::vector<int> dist(static_cast<std::size_t>(g.v_count), -1);
    BitVec seen(static_cast<std::size_t>(g.v_count));
    BitVec frontier(static_cast<std::size_t>(g.v_count));
    frontier.set(static_cast<std::size_t>(src));
    seen.set(static_cast<std::size_t>(src));
    int d = 0;
    while (frontier.any()) {
        frontier.for_each([&](std::size_t v) { dist[v] = d; });
        BitVec next(static_cast<std::size_t>(g.v_count));
        frontier.for_each([&](std::size_t v) { next |= g.adj[v]; });
        next.and_not(seen);
        seen |= next;
        frontier = std::move(next);
        ++d;
    }
    return dist;
}

/// Largest pairwise distance; nullopt when disconnected (infinite).
inline std::optional<int> diameter(const Graph& g) {
    int best = 0;
    for (int v = 0; v < g.v_count; ++v) {
        auto dist = bfs_distances(g, v);
        for (int d : dist) {
            if (d < 0) return std::nullopt;
            best = std::max(best, d);
        }
    }
    return best;
}

/// Length of a shortest cycle via BFS from every vertex with cross-edge
/// detection; nullopt for forests.
inline std::optional<int> girth(const Graph& g) {
    int best = -1;
    std::vector<int> dist(static_cast<std::size_t>(g.v_count));
    std::vector<int> parent(static_cast<std::size_t>(g.v_count));
    for (int root = 0; root < g.v_count; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::deque<int> q{root};
        dist[root] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            bool done = false;
            g.adj[u].for_each([&](std::size_t wz) {
                int w = static_cast<int>(wz);
                if (done) return;
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push_back(w);
                } else if (w != parent[u] && parent[w] != u) {
                    int c = dist[u] + dist[w] + 1;
                    if (best < 0 || c < best) best = c;
                    if (best == 3) done = true;
                }
            });
            if (done) break;
        }
        if (best == 3) break;
    }
    if (best < 0) return std::nullopt;
    return best;
}

/// Per-pair distance in J_{q,S}(n,k) for n >= 2k, as a function of the
/// intersection dimension. "1 or 2" for t >= s is disambiguated by membership
/// of t in S.
inline int grassmann_distance_formula(const FamilySpec& spec, int t_int) {
    spec.validate();
    if (spec.family != Family::generalized_grassmann)
        throw HypothesisError("grassmann_distance_formula: not a grassmann spec");
    if (spec.n < 2 * spec.k)
        throw HypothesisError("grassmann_distance_formula: requires n >= 2k");
    if (static_cast<int>(spec.S.size()) == spec.k)
        throw HypothesisError("grassmann_distance_formula: S must be a proper subset");
    if (t_int < 0 || t_int > spec.k)
        throw HypothesisError("grassmann_distance_formula: t out of range [0,k]");
    if (t_int == spec.k) return 0;  // identical vertices
    int s = spec.s_min();
    bool in_S = std::binary_search(spec.S.begin(), spec.S.end(), t_int);
    if (in_S) return 1;
    if (t_int >= s) return 2;
    return (spec.k - t_int + (spec.k - s) - 1) / (spec.k - s);
}

/// Diameter of J_{q,S}(n,k) for proper S and n >= 2k - max(S).
///
/// Two k-spaces of an n-space always intersect in dimension >= 2k - n, so
/// entries of S below that are vacuous and are dropped before taking the
/// minimum (they vanish under the complementation isomorphism that reduces
/// the n < 2k case). If S covers every feasible intersection dimension the
/// graph is complete and the diameter is 1; the closed form's "2" cases
/// presuppose a non-adjacent pair.
inline int grassmann_diameter_formula(const FamilySpec& spec) {
    spec.validate();
    if (spec.family != Family::generalized_grassmann)
        throw HypothesisError("grassmann_diameter_formula: not a grassmann spec");
    if (static_cast<int>(spec.S.size()) == spec.k)
        throw HypothesisError("grassmann_diameter_formula: S must be a proper subset");
    if (spec.n < 2 * spec.k - spec.s_max())
        throw HypothesisError("grassmann_diameter_formula: requires n >= 2k - max(S)");
    int lo = std::max(0, 2 * spec.k - spec.n);
    int s = -1;
    bool complete = true;
    for (int d = lo; d < spec.k; ++d) {
        bool in = std::find(spec.S.begin(), spec.S.end(), d) != spec.S.end();
        if (in && s < 0) s = d;
        if (!in) complete = false;
    }
    if (complete) return 1;
    if (s < 0) throw HypothesisError("grassmann_diameter_formula: no feasible dimension in S");
    if (s == 0 || s == 2 * spec.k - spec.n) return 2;
    int m = std::min(spec.k, spec.n - spec.k);
    return (m + (spec.k - s) - 1) / (spec.k - s);
}

struct WalkCertificate {
    std::vector<int> vertices;  // v, intermediates, w
    int claimed_length = 0;
};

inline bool validate_walk(const Graph& g, const WalkCertificate& cert) {
    if (cert.vertices.empty()) return false;
    if (static_cast<int>(cert.vertices.size()) != cert.claimed_length + 1) return false;
    for (std::size_t i = 0; i + 1 < cert.vertices.size(); ++i)
        if (!g.adjacent(cert.vertices[i], cert.vertices[i + 1])) return false;
    return true;
}

namespace detail {

inline SubspaceRep subspace_from_label(const VertexLabel& l, int q) {
    SubspaceRep s;
    s.k = static_cast<int>(l.data[0]);
    s.n = static_cast<int>(l.data[1]);
    s.q = q;
    for (std::size_t i = 2; i < l.data.size(); ++i)
        s.rows.push_back(static_cast<std::uint8_t>(l.data[i]));
    return s;
}

// Basis of U ∩ W by the Zassenhaus trick: reduce [U|U ; W|0], rows with zero
// left half carry an intersection basis in the right half.
inline std::vector<std::uint8_t> intersection_basis(const SubspaceRep& u, const SubspaceRep& w,
                                                    const FieldTable& f) {
    int n = u.n;
    int rows = u.k + w.k;
    std::vector<std::uint8_t> m(rows * 2 * n, 0);
    for (int i = 0; i < u.k; ++i)
        for (int j = 0; j < n; ++j) {
            m[i * 2 * n + j] = u.at(i, j);
            m[i * 2 * n + n + j] = u.at(i, j);
        }
    for (int i = 0; i < w.k; ++i)
        for (int j = 0; j < n; ++j)
            m[(u.k + i) * 2 * n + j] = w.at(i, j);
    rref_in_place(m, rows, 2 * n, f);
    std::vector<std::uint8_t> out;
    for (int i = 0; i < rows; ++i) {
        bool left_zero = true, right_zero = true;
        for (int j = 0; j < n; ++j) {
            if (m[i * 2 * n + j]) left_zero = false;
            if (m[i * 2 * n + n + j]) right_zero = false;
        }
        if (left_zero && !right_zero)
            out.insert(out.end(), m.begin() + i * 2 * n + n, m.begin() + (i + 1) * 2 * n);
    }
    return out;
}

// Rows of `space` that extend `base` (r0 x n independent rows) to a basis of
// base + space; appended in enumeration order of the space's RREF rows.
inline std::vector<std::uint8_t> extend_basis(const std::vector<std::uint8_t>& base, int r0,
                                              const SubspaceRep& space, const FieldTable& f) {
    int n = space.n;
    std::vector<std::uint8_t> cur = base;
    int rank = r0;
    std::vector<std::uint8_t> added;
    for (int i = 0; i < space.k; ++i) {
        std::vector<std::uint8_t> t = cur;
        t.insert(t.end(), space.rows.begin() + i * n, space.rows.begin() + (i + 1) * n);
        if (rank_of(t, rank + 1, n, f) == rank + 1) {
            cur.insert(cur.end(), space.rows.begin() + i * n, space.rows.begin() + (i + 1) * n);
            added.insert(added.end(), space.rows.begin() + i * n, space.rows.begin() + (i + 1) * n);
            ++rank;
        }
    }
    return added;
}

// A k-space through U0 meeting p and w in exactly dim(U0 ∩ p) and dim(U0 ∩ w):
// greedy vector-by-vector extension avoiding <U,p> and <U,w>.
inline SubspaceRep extend_avoiding(std::vector<std::uint8_t> u0, int r0, int k,
                                   const SubspaceRep& p, const SubspaceRep& w,
                                   const FieldTable& f) {
    int n = p.n, q = f.q();
    unsigned long long vcount = checked_pow(q, static_cast<unsigned>(n));
    int rank = r0;
    while (rank < k) {
        bool found = false;
        for (unsigned long long code = 1; code < vcount && !found; ++code) {
            auto v = decode_vector(code, n, q);
            auto grows = [&](const SubspaceRep& sp) {
                std::vector<std::uint8_t> t = u0;
                t.insert(t.end(), sp.rows.begin(), sp.rows.end());
                int base = rank_of(t, rank + sp.k, n, f);
                t = u0;
                t.insert(t.end(), sp.rows.begin(), sp.rows.end());
                t.insert(t.end(), v.begin(), v.end());
                return rank_of(t, rank + sp.k + 1, n, f) == base + 1;
            };
            if (grows(p) && grows(w)) {
                u0.insert(u0.end(), v.begin(), v.end());
                ++rank;
                found = true;
            }
        }
        if (!found) throw HypothesisError("extend_avoiding: exhausted candidates");
    }
    return make_subspace(u0, k, n, f);
}

// Case 1(a)/Case 2 middle step: a k-space adjacent to both p and w, meeting
// each in an s-space through (or inside) p ∩ w.
inline SubspaceRep middle_vertex(const SubspaceRep& p, const SubspaceRep& w, int s,
                                 const FieldTable& f) {
    int n = p.n, k = p.k;
    auto c = intersection_basis(p, w, f);
    int t = static_cast<int>(c.size()) / n;
    std::vector<std::uint8_t> u0;
    int r0 = 0;
    if (t >= s) {
        u0.assign(c.begin(), c.begin() + s * n);
        r0 = s;
    } else {
        // s-space through c in p, plus an s-space through c in w
        std::vector<std::uint8_t> pi = c;
        auto addp = extend_basis(pi, t, p, f);
        pi.insert(pi.end(), addp.begin(), addp.begin() + (s - t) * n);
        std::vector<std::uint8_t> tau_add = extend_basis(pi, s, w, f);
        u0 = pi;
        u0.insert(u0.end(), tau_add.begin(), tau_add.begin() + (s - t) * n);
        r0 = 2 * s - t;
    }
    auto mid = extend_avoiding(std::move(u0), r0, k, p, w, f);
    if (intersection_dim(mid, p, f) != s || intersection_dim(mid, w, f) != s)
        throw HypothesisError("middle_vertex: construction failed to meet in s-spaces");
    return mid;
}

}  // namespace detail

/// Constructive walk of length ceil((k-t)/(k-s)) between Grassmann vertices
/// with intersection dimension t < s = min(S), for n >= 2k: basis-mixing
/// intermediates followed by a two-step finish through a common neighbor.
inline WalkCertificate build_distance_walk(const Graph& g, int vid, int wid,
                                           const FieldTable& f) {
    if (!g.spec || g.spec->family != Family::generalized_grassmann)
        throw HypothesisError("build_distance_walk: graph is not generalized Grassmann");
    const FamilySpec& spec = *g.spec;
    if (spec.n < 2 * spec.k) throw HypothesisError("build_distance_walk: requires n >= 2k");
    int k = spec.k, n = spec.n, s = spec.s_min();
    if (vid == wid) return WalkCertificate{{vid}, 0};

    auto v = detail::subspace_from_label(g.labels[vid], spec.q);
    auto w = detail::subspace_from_label(g.labels[wid], spec.q);
    int t = intersection_dim(v, w, f);
    if (t >= s) throw HypothesisError("build_distance_walk: requires dim(v ∩ w) < min(S)");
    int d = (k - t + (k - s) - 1) / (k - s);

    std::map<VertexLabel, int> by_label;
    for (int i = 0; i < g.v_count; ++i) by_label[g.labels[i]] = i;
    auto id_of = [&](const SubspaceRep& sp) {
        auto it = by_label.find(VertexLabel::from_subspace(sp));
        if (it == by_label.end())
            throw HypothesisError("build_distance_walk: constructed space is not a vertex");
        return it->second;
    };

    auto xb = detail::intersection_basis(v, w, f);  // t rows
    auto yb = detail::extend_basis(xb, t, v, f);    // k-t rows
    auto zb = detail::extend_basis(xb, t, w, f);    // k-t rows

    WalkCertificate cert;
    cert.vertices.push_back(vid);
    SubspaceRep prev = v;
    for (int i = 1; i <= d - 2; ++i) {
        std::vector<std::uint8_t> rows = xb;
        int y_from = i * (k - s);  // keep y_{i(k-s)+1}..y_{k-t}
        rows.insert(rows.end(), yb.begin() + y_from * n, yb.end());
        rows.insert(rows.end(), zb.begin(), zb.begin() + y_from * n);
        prev = make_subspace(rows, k, n, f);
        cert.vertices.push_back(id_of(prev));
    }
    auto mid = detail::middle_vertex(prev, w, s, f);
    cert.vertices.push_back(id_of(mid));
    cert.vertices.push_back(wid);
    cert.claimed_length = d;
    return cert;
}

}  // namespace zflab
