#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "zflab/combin.hpp"
#include "zflab/graph.hpp"
#include "zflab/subspace.hpp"

namespace zflab {

struct ForcingStep {
    int pivot = -1;
    int forced = -1;
};

struct ForcingTrace {
    std::vector<int> initial;
    std::vector<ForcingStep> steps;
};

/// Zero forcing state: black set plus, for black vertices, the number of white
/// neighbors.
struct Coloring {
    BitVec black;
    std::vector<int> white_nbr_count;

    explicit Coloring(const Graph& g, const BitVec& initial)
        : black(initial), white_nbr_count(static_cast<std::size_t>(g.v_count), 0) {
        for (int v = 0; v < g.v_count; ++v)
            if (black.test(static_cast<std::size_t>(v)))
                white_nbr_count[v] =
                    static_cast<int>(g.degree(v) - g.adj[v].intersect_count(black));
    }
};

/// Closure of a leader set under the color rule, with a replayable trace.
/// Counter-queue engine: a black vertex enters the ready queue when its white
/// neighbor count drops to 1. Vertices in `forbidden_pivots` never force
/// (used by the Hamming construction's core-pivot discipline).
inline std::pair<BitVec, ForcingTrace> closure(const Graph& g, const BitVec& initial,
                                               const BitVec* forbidden_pivots = nullptr) {
    Coloring col(g, initial);
    ForcingTrace trace;
    trace.initial = initial.to_list();
    std::deque<int> ready;
    for (int v = 0; v < g.v_count; ++v)
        if (col.black.test(static_cast<std::size_t>(v)) && col.white_nbr_count[v] == 1 &&
            (!forbidden_pivots || !forbidden_pivots->test(static_cast<std::size_t>(v))))
            ready.push_back(v);
    while (!ready.empty()) {
        int v = ready.front();
        ready.pop_front();
        if (col.white_nbr_count[v] != 1) continue;
        BitVec whites = g.adj[v];
        whites.and_not(col.black);
        std::size_t w = whites.find_first();
        col.black.set(w);
        trace.steps.push_back({v, static_cast<int>(w)});
        int wc = static_cast<int>(g.degree(static_cast<int>(w)) -
                                  g.adj[w].intersect_count(col.black));
        col.white_nbr_count[static_cast<int>(w)] = wc;
        if (wc == 1 && (!forbidden_pivots || !forbidden_pivots->test(w)))
            ready.push_back(static_cast<int>(w));
        g.adj[w].for_each([&](std::size_t u) {
            if (!col.black.test(u)) return;
            if (--col.white_nbr_count[u] == 1 &&
                (!forbidden_pivots || !forbidden_pivots->test(u)))
                ready.push_back(static_cast<int>(u));
        });
    }
    return {col.black, trace};
}

/// Rescan engine, highest-index pivot first. Test oracle for the counter
/// engine and for closure order-independence.
inline BitVec closure_naive(const Graph& g, const BitVec& initial) {
    BitVec black = initial;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int v = g.v_count - 1; v >= 0; --v) {
            if (!black.test(static_cast<std::size_t>(v))) continue;
            BitVec whites = g.adj[v];
            whites.and_not(black);
            if (whites.count() == 1) {
                black.set(whites.find_first());
                progress = true;
            }
        }
    }
    return black;
}

/// Replay a trace from its initial set, checking the color rule at each step.
inline bool replay_trace(const Graph& g, const ForcingTrace& trace, BitVec* out = nullptr) {
    BitVec black(static_cast<std::size_t>(g.v_count));
    for (int v : trace.initial) black.set(static_cast<std::size_t>(v));
    for (const auto& st : trace.steps) {
        if (!black.test(static_cast<std::size_t>(st.pivot))) return false;
        if (black.test(static_cast<std::size_t>(st.forced))) return false;
        BitVec whites = g.adj[st.pivot];
        whites.and_not(black);
        if (whites.count() != 1 || !whites.test(static_cast<std::size_t>(st.forced)))
            return false;
        black.set(static_cast<std::size_t>(st.forced));
    }
    if (out) *out = black;
    return true;
}

inline BitVec to_bitvec(const Graph& g, const std::vector<int>& verts) {
    BitVec b(static_cast<std::size_t>(g.v_count));
    for (int v : verts) b.set(static_cast<std::size_t>(v));
    return b;
}

inline bool is_zero_forcing(const Graph& g, const BitVec& leader) {
    return closure(g, leader).first.count() == static_cast<std::size_t>(g.v_count);
}

inline bool is_connected_zfs(const Graph& g, const BitVec& leader) {
    if (!is_zero_forcing(g, leader)) return false;
    return is_connected(induced_subgraph(g, leader.to_list()));
}

inline bool is_total_zfs(const Graph& g, const BitVec& leader) {
    if (!is_zero_forcing(g, leader)) return false;
    return !has_isolated_vertex(induced_subgraph(g, leader.to_list()));
}

namespace detail {

// 64-bit adjacency rows for the exact search hot loops.
inline std::vector<std::uint64_t> adjacency64(const Graph& g) {
    if (g.v_count > 64) throw SizingError("exact search supports at most 64 vertices");
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(g.v_count), 0);
    for (int v = 0; v < g.v_count; ++v)
        g.adj[v].for_each([&](std::size_t w) { rows[v] |= std::uint64_t{1} << w; });
    return rows;
}

// Closure on mask adjacency; returns true iff everything gets forced.
// The first scan doubles as the stalled-state filter: a candidate with no
// black vertex having exactly one white neighbor is rejected in one pass.
inline bool closure64_forces_all(const std::vector<std::uint64_t>& adj, int v,
                                 std::uint64_t black) {
    const std::uint64_t all = (v == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << v) - 1;
    bool progress = true;
    while (progress && black != all) {
        progress = false;
        std::uint64_t scan = black;
        while (scan) {
            int b = __builtin_ctzll(scan);
            scan &= scan - 1;
            std::uint64_t whites = adj[b] & ~black;
            if (whites && !(whites & (whites - 1))) {
                black |= whites;
                progress = true;
            }
        }
    }
    return black == all;
}

// Does some white set of size w force the graph from its complement?
// Enumerates masks in increasing (colex) order via Gosper's hack; reports the
// first feasible mask found. With workers > 1 the enumeration is split by
// smallest white vertex; any feasible witness is returned (existence only).
inline std::optional<std::uint64_t> feasible_white_set(const std::vector<std::uint64_t>& adj,
                                                       int v, int w, int workers,
                                                       unsigned long long* tested = nullptr) {
    const std::uint64_t all = (v == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << v) - 1;
    if (w == 0) return std::uint64_t{0};
    if (w > v) return std::nullopt;
    if (workers <= 1) {
        std::uint64_t m = (std::uint64_t{1} << w) - 1;
        std::uint64_t last = m << (v - w);
        unsigned long long cnt = 0;
        while (true) {
            ++cnt;
            if (closure64_forces_all(adj, v, all & ~m)) {
                if (tested) *tested += cnt;
                return m;
            }
            if (m == last) break;
            std::uint64_t c = m & (~m + 1);
            std::uint64_t r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
        }
        if (tested) *tested += cnt;
        return std::nullopt;
    }
    // Parallel: partition by smallest white vertex.
    std::atomic<bool> found{false};
    std::atomic<std::uint64_t> witness{0};
    std::atomic<unsigned long long> total{0};
    std::atomic<int> next_low{0};
    auto task = [&] {
        unsigned long long local = 0;
        while (!found.load(std::memory_order_relaxed)) {
            int low = next_low.fetch_add(1);
            if (low > v - w) break;
            // white sets whose smallest element is `low`
            std::uint64_t base = std::uint64_t{1} << low;
            int rest = v - low - 1;
            if (w - 1 > rest) continue;
            std::uint64_t m = w == 1 ? 0 : (std::uint64_t{1} << (w - 1)) - 1;
            std::uint64_t last = w == 1 ? 0 : m << (rest - (w - 1));
            while (true) {
                std::uint64_t white = base | (m << (low + 1));
                ++local;
                if (closure64_forces_all(adj, v, all & ~white)) {
                    witness.store(white);
                    found.store(true);
                    break;
                }
                if (m == last || w == 1) break;
                std::uint64_t c = m & (~m + 1);
                std::uint64_t r = m + c;
                m = (((r ^ m) >> 2) / c) | r;
            }
        }
        total += local;
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(task);
    for (auto& t : pool) t.join();
    if (tested) *tested += total.load();
    if (found.load()) return witness.load();
    return std::nullopt;
}

}  // namespace detail

struct ExactSearchOptions {
    std::optional<std::vector<int>> upper_certificate;  // known zero forcing set
    int search_cap = 40;   // full minimality proof only attempted up to this size
    int workers = 1;
    double max_seconds = 0;  // 0 = unlimited
};

struct ExactSearchResult {
    int z = -1;                    // exact value when proved, else best upper bound
    std::vector<int> certificate;  // a zero forcing set of size z
    bool proved = false;           // exhaustive minimality established
    int lower_bound = 0;
    unsigned long long closures_tested = 0;
};

/// Exact zero forcing number by exhaustive search over white complements.
/// Feasible white sizes are downward closed (closure is monotone in the black
/// set), so the search walks white sizes upward and stops at the first
/// infeasible size. A verified upper-bound certificate skips the sizes it
/// already covers. Deterministic: the reported certificate is the hint when
/// optimal, else the first feasible set in enumeration order.
inline ExactSearchResult zero_forcing_number_exact(const Graph& g,
                                                   const ExactSearchOptions& opt = {}) {
    ExactSearchResult res;
    if (g.v_count == 0) { res.z = 0; res.proved = true; return res; }
    if (g.v_count > opt.search_cap || g.v_count > 64) {
        // bounds-only result
        res.z = g.v_count;
        res.proved = false;
        res.lower_bound = 1;
        if (opt.upper_certificate) {
            if (is_zero_forcing(g, to_bitvec(g, *opt.upper_certificate))) {
                res.z = static_cast<int>(opt.upper_certificate->size());
                res.certificate = *opt.upper_certificate;
            }
        }
        return res;
    }
    auto adj = detail::adjacency64(g);
    const int v = g.v_count;
    int w0 = 0;
    std::uint64_t best_white = 0;  // feasible white set of the current best size
    bool best_from_hint = false;
    if (opt.upper_certificate) {
        std::uint64_t leader = 0;
        for (int x : *opt.upper_certificate) leader |= std::uint64_t{1} << x;
        if (detail::closure64_forces_all(adj, v, leader)) {
            w0 = v - static_cast<int>(opt.upper_certificate->size());
            const std::uint64_t all = (v == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << v) - 1;
            best_white = all & ~leader;
            best_from_hint = true;
        }
    }
    int w = w0;
    while (w < v) {
        auto found = detail::feasible_white_set(adj, v, w + 1, opt.workers,
                                                &res.closures_tested);
        if (!found) break;
        ++w;
        best_white = *found;
        best_from_hint = false;
    }
    res.z = v - w;
    res.proved = true;
    res.lower_bound = res.z;
    std::uint64_t leader;
    if (best_from_hint) {
        leader = 0;
        for (int x : *opt.upper_certificate) leader |= std::uint64_t{1} << x;
    } else {
        const std::uint64_t all = (v == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << v) - 1;
        leader = all & ~best_white;
    }
    for (int i = 0; i < v; ++i)
        if (leader >> i & 1) res.certificate.push_back(i);
    return res;
}

enum class GrundyVariant { grundy, z_grundy };

struct DominationSequence {
    std::vector<int> sequence;
    std::vector<std::vector<int>> footprints;
    GrundyVariant variant = GrundyVariant::grundy;
};

namespace detail {

struct GrundyContext {
    const std::vector<std::uint64_t>* open;
    std::vector<std::uint64_t> closed;
    int v = 0;
    GrundyVariant variant;
    std::unordered_map<std::uint64_t, int> memo;

    int best_from(std::uint64_t dominated) {
        auto it = memo.find(dominated);
        if (it != memo.end()) return it->second;
        int best = 0;
        for (int x = 0; x < v; ++x) {
            std::uint64_t fp = (variant == GrundyVariant::grundy ? closed[x] : (*open)[x]) &
                               ~dominated;
            if (!fp) continue;
            best = std::max(best, 1 + best_from(dominated | closed[x]));
        }
        memo.emplace(dominated, best);
        return best;
    }
};

}  // namespace detail

/// Maximum (Z-)Grundy dominating sequence by memoized DFS on the dominated
/// set. Sequence reconstruction replays the DFS, taking the least vertex that
/// attains the optimum at each step.
inline std::pair<int, DominationSequence> grundy_exact(const Graph& g, GrundyVariant variant) {
    auto open = detail::adjacency64(g);
    detail::GrundyContext ctx;
    ctx.open = &open;
    ctx.v = g.v_count;
    ctx.variant = variant;
    ctx.closed.resize(open.size());
    for (int x = 0; x < g.v_count; ++x) ctx.closed[x] = open[x] | (std::uint64_t{1} << x);
    int gamma = ctx.best_from(0);

    DominationSequence seq;
    seq.variant = variant;
    std::uint64_t dominated = 0;
    for (int len = gamma; len > 0; --len) {
        for (int x = 0; x < g.v_count; ++x) {
            std::uint64_t fp = (variant == GrundyVariant::grundy ? ctx.closed[x] : open[x]) &
                               ~dominated;
            if (!fp) continue;
            if (1 + ctx.best_from(dominated | ctx.closed[x]) == len) {
                seq.sequence.push_back(x);
                std::vector<int> foot;
                for (int i = 0; i < g.v_count; ++i)
                    if (fp >> i & 1) foot.push_back(i);
                seq.footprints.push_back(std::move(foot));
                dominated |= ctx.closed[x];
                break;
            }
        }
    }
    return {gamma, seq};
}

/// Z(G) via Lemma-style identity Z = |V| - Z-Grundy domination number.
inline int zf_from_grundy(const Graph& g) {
    if (has_isolated_vertex(g))
        throw HypothesisError("zf_from_grundy: graph has an isolated vertex");
    return g.v_count - grundy_exact(g, GrundyVariant::z_grundy).first;
}

struct BollobasVerdict {
    bool conditions_hold = false;
    unsigned long long bound = 0;
    bool within_bound = false;
};

/// Cross-intersection conditions and the C(r+s-2t, r-t) bound, set variant.
inline BollobasVerdict bollobas_check_sets(const std::vector<std::uint64_t>& X,
                                           const std::vector<std::uint64_t>& Y, int t) {
    if (X.size() != Y.size()) throw HypothesisError("bollobas_check: pair count mismatch");
    std::size_t m = X.size();
    if (m == 0) return {true, 1, true};
    int r = __builtin_popcountll(X[0]);
    int s = __builtin_popcountll(Y[0]);
    for (std::size_t i = 0; i < m; ++i)
        if (__builtin_popcountll(X[i]) != r || __builtin_popcountll(Y[i]) != s)
            throw HypothesisError("bollobas_check: nonuniform set sizes");
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
        if (__builtin_popcountll(X[i] & Y[i]) > t) ok = false;
        for (std::size_t j = i + 1; j < m && ok; ++j)
            if (__builtin_popcountll(X[i] & Y[j]) < t + 1) ok = false;
    }
    unsigned long long bound = binomial(static_cast<unsigned>(r + s - 2 * t), r - t);
    return {ok, bound, m <= bound};
}

/// Subspace variant: intersections measured by dimension.
inline BollobasVerdict bollobas_check_subspaces(const std::vector<SubspaceRep>& X,
                                                const std::vector<SubspaceRep>& Y, int t,
                                                const FieldTable& f) {
    if (X.size() != Y.size()) throw HypothesisError("bollobas_check: pair count mismatch");
    std::size_t m = X.size();
    if (m == 0) return {true, 1, true};
    int r = X[0].k, s = Y[0].k;
    for (std::size_t i = 0; i < m; ++i)
        if (X[i].k != r || Y[i].k != s)
            throw HypothesisError("bollobas_check: nonuniform dimensions");
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
        if (intersection_dim(X[i], Y[i], f) > t) ok = false;
        for (std::size_t j = i + 1; j < m && ok; ++j)
            if (intersection_dim(X[i], Y[j], f) < t + 1) ok = false;
    }
    unsigned long long bound = binomial(static_cast<unsigned>(r + s - 2 * t), r - t);
    return {ok, bound, m <= bound};
}

}  // namespace zflab
