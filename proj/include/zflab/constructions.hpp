#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "zflab/combin.hpp"
#include "zflab/forcing.hpp"
#include "zflab/graph.hpp"

namespace zflab {

struct ConstructionClaims {
    bool zfs = false;
    bool total = false;
    bool connected = false;
    bool minimum_known = false;
};

struct ConstructionResult {
    FamilySpec spec;
    std::vector<int> leader;
    std::vector<int> white;
    unsigned long long predicted_size = 0;
    ConstructionClaims claims;
    std::vector<int> core;  // hamming only: vertices that must never pivot
};

namespace detail {

inline std::unordered_map<std::uint64_t, int> subset_ids(unsigned n, unsigned k) {
    auto sets = enumerate_k_subsets(n, k);
    std::unordered_map<std::uint64_t, int> ids;
    ids.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) ids[sets[i]] = static_cast<int>(i);
    return ids;
}

inline std::uint64_t interval_mask(int lo, int hi) {  // 1-based inclusive [lo,hi]
    if (hi < lo) return 0;
    return ((hi < 64 ? (std::uint64_t{1} << hi) : 0) - (std::uint64_t{1} << (lo - 1)));
}

}  // namespace detail

/// White k-sets of the generalized Johnson leader construction: contain
/// [k-s], avoid {k-s+1..2(k-s)}.
inline std::vector<std::uint64_t> johnson_white_masks(int n, int k, int s) {
    std::uint64_t need = detail::interval_mask(1, k - s);
    std::uint64_t avoid = detail::interval_mask(k - s + 1, 2 * (k - s));
    std::vector<std::uint64_t> out;
    for (std::uint64_t v : enumerate_k_subsets(static_cast<unsigned>(n),
                                               static_cast<unsigned>(k)))
        if ((v & need) == need && !(v & avoid)) out.push_back(v);
    return out;
}

inline ConstructionResult johnson_zfs(int n, int k, const std::vector<int>& S) {
    FamilySpec spec;
    spec.family = Family::generalized_johnson;
    spec.n = n; spec.k = k; spec.S = S;
    spec.validate();
    int s = spec.s_min();
    if (n < 2 * k - s) throw HypothesisError("johnson_zfs: requires n >= 2k - min(S)");

    ConstructionResult res;
    res.spec = spec;
    res.predicted_size = binomial(static_cast<unsigned>(n), k) -
                         binomial(static_cast<unsigned>(n - 2 * (k - s)), s);
    auto ids = detail::subset_ids(static_cast<unsigned>(n), static_cast<unsigned>(k));
    std::vector<bool> is_white(ids.size(), false);
    for (std::uint64_t m : johnson_white_masks(n, k, s)) is_white[ids.at(m)] = true;
    for (std::size_t i = 0; i < is_white.size(); ++i)
        (is_white[i] ? res.white : res.leader).push_back(static_cast<int>(i));
    res.claims = {true, true, true,
                  /*minimum_known=*/static_cast<int>(S.size()) == k - s &&
                      S.front() == s && S.back() == k - 1};
    if (res.leader.size() != res.predicted_size)
        throw std::runtime_error("johnson_zfs: white-set size mismatch");
    return res;
}

/// White k-sets of the generalized Kneser construction:
/// W1 = {|v ∩ T| = k-t, [t] ⊂ v}, W2 = {v ⊂ [2k-t], [t+1] ⊂ v},
/// with T = {n-2k+2t+2..n}.
inline std::vector<std::uint64_t> kneser_white_masks(int n, int k, int t) {
    std::uint64_t T = detail::interval_mask(n - 2 * k + 2 * t + 2, n);
    std::uint64_t head_t = detail::interval_mask(1, t);
    std::uint64_t head_t1 = detail::interval_mask(1, t + 1);
    std::uint64_t box = detail::interval_mask(1, 2 * k - t);
    std::vector<std::uint64_t> out;
    for (std::uint64_t v : enumerate_k_subsets(static_cast<unsigned>(n),
                                               static_cast<unsigned>(k))) {
        bool w1 = __builtin_popcountll(v & T) == k - t && (v & head_t) == head_t;
        bool w2 = (v & ~box) == 0 && (v & head_t1) == head_t1;
        if (w1 || w2) out.push_back(v);
    }
    return out;
}

namespace detail {

inline ConstructionResult kneser_result_from_whites(int n, int k, int t,
                                                    const std::vector<std::uint64_t>& whites) {
    FamilySpec spec;
    spec.family = Family::generalized_johnson;
    spec.n = n; spec.k = k;
    for (int i = 0; i <= t; ++i) spec.S.push_back(i);
    spec.validate();
    ConstructionResult res;
    res.spec = spec;
    res.predicted_size = binomial(static_cast<unsigned>(n), k) -
                         binomial(static_cast<unsigned>(2 * k - 2 * t), k - t);
    auto ids = subset_ids(static_cast<unsigned>(n), static_cast<unsigned>(k));
    std::vector<bool> is_white(ids.size(), false);
    for (std::uint64_t m : whites) is_white[ids.at(m)] = true;
    for (std::size_t i = 0; i < is_white.size(); ++i)
        (is_white[i] ? res.white : res.leader).push_back(static_cast<int>(i));
    res.claims = {true, true, true, true};
    if (res.leader.size() != res.predicted_size)
        throw std::runtime_error("kneser construction: white-set size mismatch");
    return res;
}

}  // namespace detail

inline ConstructionResult kneser_zfs(int n, int k, int t) {
    if (t < 0 || t > k - 2) throw HypothesisError("kneser_zfs: requires 0 <= t <= k-2");
    if (n < std::max(3 * k - 2 * t + 1, 2 * k + 1))
        throw HypothesisError("kneser_zfs: requires n >= max(3k-2t+1, 2k+1)");
    return detail::kneser_result_from_whites(n, k, t, kneser_white_masks(n, k, t));
}

/// The n = 3k-2t boundary case: the vertex [t+1] ∪ (T ∩ [2k-t]) is swapped
/// into the leader set and [t] ∪ {t+2} ∪ X ∪ {x} is whitened instead, with
/// x, y the least valid elements and X = (T ∩ [2k-t]) \ {y}.
///
/// Machine verification refutes the forcing claim for this family: at
/// (6,2,0) the swapped set stalls (the white vertex [t]∪{t+2}∪X∪{x} ends up
/// as the pivot of the very W2 vertex that was supposed to force it), and
/// exhaustive search shows Z(K(6,2)) = 10, one above the predicted size.
/// The result is therefore emitted with no forcing claims attached.
inline ConstructionResult kneser_zfs_edge(int n, int k, int t) {
    if (t < 0 || t > k - 2) throw HypothesisError("kneser_zfs_edge: requires 0 <= t <= k-2");
    if (n != 3 * k - 2 * t) throw HypothesisError("kneser_zfs_edge: requires n = 3k-2t");
    if (n < 2 * k + 1) throw HypothesisError("kneser_zfs_edge: requires n >= 2k+1");
    std::uint64_t T = detail::interval_mask(n - 2 * k + 2 * t + 2, n);
    std::uint64_t box = detail::interval_mask(1, 2 * k - t);
    std::uint64_t t_in = T & box;
    std::uint64_t t_out = T & ~box;
    int x = __builtin_ctzll(t_out) + 1;
    int y = __builtin_ctzll(t_in) + 1;
    std::uint64_t X = t_in & ~(std::uint64_t{1} << (y - 1));
    std::uint64_t v_swap = detail::interval_mask(1, t + 1) | t_in;
    std::uint64_t v_new = detail::interval_mask(1, t) | (std::uint64_t{1} << (t + 1)) | X |
                          (std::uint64_t{1} << (x - 1));
    if (__builtin_popcountll(v_new) != k)
        throw std::runtime_error("kneser_zfs_edge: replacement vertex has wrong size");
    std::vector<std::uint64_t> whites;
    for (std::uint64_t m : kneser_white_masks(n, k, t))
        if (m != v_swap) whites.push_back(m);
    whites.push_back(v_new);
    auto res = detail::kneser_result_from_whites(n, k, t, whites);
    res.claims = {false, false, false, false};
    return res;
}

/// q-analogue: replace each white k-set by the span of the corresponding
/// standard basis vectors. Uses the edge-case swap when n = 3k-2t.
inline ConstructionResult grassmann_zfs(int n, int k, int q, int t, const FieldTable& f) {
    if (t < 0 || t > k - 2) throw HypothesisError("grassmann_zfs: requires 0 <= t <= k-2");
    bool edge = (n == 3 * k - 2 * t);
    if (!edge && n < std::max(3 * k - 2 * t + 1, 2 * k + 1))
        throw HypothesisError("grassmann_zfs: requires n >= max(3k-2t+1, 2k+1) or n = 3k-2t");
    if (edge && n < 2 * k + 1)
        throw HypothesisError("grassmann_zfs: edge case requires n >= 2k+1");

    ConstructionResult kneser = edge ? kneser_zfs_edge(n, k, t) : kneser_zfs(n, k, t);
    auto subset_list = enumerate_k_subsets(static_cast<unsigned>(n), static_cast<unsigned>(k));

    FamilySpec spec;
    spec.family = Family::generalized_grassmann;
    spec.n = n; spec.k = k; spec.q = q;
    for (int i = 0; i <= t; ++i) spec.S.push_back(i);
    spec.validate();

    ConstructionResult res;
    res.spec = spec;
    res.predicted_size = gaussian_binomial(static_cast<unsigned>(n), static_cast<unsigned>(k),
                                           static_cast<unsigned>(q)) -
                         binomial(static_cast<unsigned>(2 * k - 2 * t), k - t);
    auto spaces = enumerate_k_subspaces(n, k, f);
    std::map<SubspaceRep, int> by_space;
    for (const auto& sp : spaces) by_space[sp] = static_cast<int>(sp.id);
    std::vector<bool> is_white(spaces.size(), false);
    for (int wid : kneser.white) {
        std::uint64_t mask = subset_list[static_cast<std::size_t>(wid)];
        std::vector<std::uint8_t> rows(k * n, 0);
        int r = 0;
        for (int j = 0; j < n; ++j)
            if (mask >> j & 1) rows[r++ * n + j] = 1;
        is_white[static_cast<std::size_t>(by_space.at(make_subspace(rows, k, n, f)))] = true;
    }
    for (std::size_t i = 0; i < is_white.size(); ++i)
        (is_white[i] ? res.white : res.leader).push_back(static_cast<int>(i));
    // The n = 3k-2t boundary variant carries no proven claims (the set-system
    // analogue is refuted there); it is still emitted because closure
    // simulation confirms it forces on the instances small enough to check.
    res.claims = edge ? ConstructionClaims{false, false, false, false}
                      : ConstructionClaims{true, true, true, true};
    if (res.leader.size() != res.predicted_size)
        throw std::runtime_error("grassmann_zfs: white-set size mismatch");
    return res;
}

/// The fixed J_{2,{1}}(4,2) instances: the 7-space white set (all six
/// coordinate planes plus <e1+e2, e3+e4>) and, for comparison, the 33-vertex
/// set carried over from the Johnson graph (zero forcing but not minimum).
inline std::pair<ConstructionResult, ConstructionResult>
grassmann_special_set_j2_4_2(const FieldTable& f) {
    FamilySpec spec;
    spec.family = Family::generalized_grassmann;
    spec.n = 4; spec.k = 2; spec.q = 2; spec.S = {1};
    auto spaces = enumerate_k_subspaces(4, 2, f);
    std::map<SubspaceRep, int> by_space;
    for (const auto& sp : spaces) by_space[sp] = static_cast<int>(sp.id);
    auto span2 = [&](std::vector<std::uint8_t> a, std::vector<std::uint8_t> b) {
        std::vector<std::uint8_t> rows = a;
        rows.insert(rows.end(), b.begin(), b.end());
        return by_space.at(make_subspace(rows, 2, 4, f));
    };
    auto e = [](int i) {
        std::vector<std::uint8_t> v(4, 0);
        v[static_cast<std::size_t>(i)] = 1;
        return v;
    };
    std::vector<int> white7;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) white7.push_back(span2(e(i), e(j)));
    white7.push_back(span2({1, 1, 0, 0}, {0, 0, 1, 1}));

    ConstructionResult small;
    small.spec = spec;
    small.predicted_size = 35 - 7;
    std::vector<bool> is_white(spaces.size(), false);
    for (int w : white7) is_white[static_cast<std::size_t>(w)] = true;
    for (std::size_t i = 0; i < is_white.size(); ++i)
        (is_white[i] ? small.white : small.leader).push_back(static_cast<int>(i));
    small.claims = {true, false, false, false};

    ConstructionResult johnson_analogue;
    johnson_analogue.spec = spec;
    johnson_analogue.predicted_size = 35 - 2;
    std::vector<int> white2 = {span2(e(0), e(2)), span2(e(0), e(3))};
    std::fill(is_white.begin(), is_white.end(), false);
    for (int w : white2) is_white[static_cast<std::size_t>(w)] = true;
    for (std::size_t i = 0; i < is_white.size(); ++i)
        (is_white[i] ? johnson_analogue.white : johnson_analogue.leader)
            .push_back(static_cast<int>(i));
    johnson_analogue.claims = {true, false, false, false};
    return {small, johnson_analogue};
}

inline unsigned long long hamming_z(int n, int q) {
    unsigned long long a = checked_pow(static_cast<unsigned long long>(q),
                                       static_cast<unsigned>(n), "hamming_z");
    unsigned long long b = checked_pow(static_cast<unsigned long long>(q - 2),
                                       static_cast<unsigned>(n), "hamming_z");
    return (a + b) / 2;
}

/// Recursive leader set for H(n,q): q-1 full copies of the (n-1)-set, one
/// copy without the core. The core of H(n,q) (all coordinates in {1..q-2})
/// stays in the leader set and must never act as a pivot.
inline ConstructionResult hamming_zfs(int n, int q, std::size_t cap = kDefaultVertexCap) {
    FamilySpec spec;
    spec.family = Family::hamming;
    spec.n = n; spec.q = q;
    spec.validate();
    unsigned long long v = checked_pow(static_cast<unsigned long long>(q),
                                       static_cast<unsigned>(n), "hamming_zfs");
    if (v > cap) throw SizingError("hamming_zfs: q^n exceeds cap");

    std::vector<bool> leader(static_cast<std::size_t>(q), false);
    std::vector<bool> core(static_cast<std::size_t>(q), false);
    for (int a = 0; a <= q - 2; ++a) leader[static_cast<std::size_t>(a)] = true;
    for (int a = 1; a <= q - 2; ++a) core[static_cast<std::size_t>(a)] = true;
    unsigned long long sz = static_cast<unsigned long long>(q);
    for (int level = 2; level <= n; ++level) {
        std::vector<bool> nl(static_cast<std::size_t>(sz * q), false);
        std::vector<bool> nc(static_cast<std::size_t>(sz * q), false);
        for (int c = 0; c < q; ++c) {
            bool last = (c == q - 1);
            bool core_copy = (c >= 1 && c <= q - 2);
            for (unsigned long long r = 0; r < sz; ++r) {
                if (leader[r] && !(last && core[r]))
                    nl[static_cast<unsigned long long>(c) * sz + r] = true;
                if (core_copy && core[r])
                    nc[static_cast<unsigned long long>(c) * sz + r] = true;
            }
        }
        leader = std::move(nl);
        core = std::move(nc);
        sz *= q;
    }

    ConstructionResult res;
    res.spec = spec;
    res.predicted_size = hamming_z(n, q);
    for (unsigned long long i = 0; i < v; ++i) {
        (leader[i] ? res.leader : res.white).push_back(static_cast<int>(i));
        if (core[i]) res.core.push_back(static_cast<int>(i));
    }
    res.claims = {true, false, false, true};
    if (res.leader.size() != res.predicted_size)
        throw std::runtime_error("hamming_zfs: leader size mismatch");
    return res;
}

struct PredictedZf {
    enum class Coverage { exact, bounds, not_covered };
    Coverage coverage = Coverage::not_covered;
    std::optional<unsigned long long> exact;
    std::optional<unsigned long long> lower;
    std::optional<unsigned long long> upper;
    std::vector<std::string> tags;  // which proven hypotheses fired
};

/// Dispatch table of the closed forms: exact value where equality is proved,
/// bounds where only one side is, "not covered" otherwise.
inline PredictedZf predicted_zf(const FamilySpec& spec) {
    spec.validate();
    PredictedZf out;
    if (spec.family == Family::hamming) {
        out.coverage = PredictedZf::Coverage::exact;
        out.exact = hamming_z(spec.n, spec.q);
        out.tags = {"hamming-closed-form"};
        return out;
    }
    int n = spec.n, k = spec.k;
    int s = spec.s_min(), t = spec.s_max();
    bool contiguous_top = static_cast<int>(spec.S.size()) == k - s;   // S = {s..k-1}
    bool contiguous_bottom = static_cast<int>(spec.S.size()) == t + 1;  // S = {0..t}
    unsigned long long count =
        spec.family == Family::generalized_johnson
            ? binomial(static_cast<unsigned>(n), k)
            : gaussian_binomial(static_cast<unsigned>(n), static_cast<unsigned>(k),
                                static_cast<unsigned>(spec.q));

    std::optional<unsigned long long> lower, upper;
    if (spec.family == Family::generalized_johnson && contiguous_top && n >= 2 * k - s) {
        unsigned long long u = count - binomial(static_cast<unsigned>(n - 2 * (k - s)), s);
        upper = upper ? std::min(*upper, u) : u;
        lower = lower ? std::max(*lower, u) : u;
        out.tags.push_back("johnson-equality");
    }
    // The n = 3k-2t boundary construction is excluded here: machine
    // verification shows it does not force (Z(K(6,2)) = 10, not 9), so no
    // upper bound is claimed on that boundary.
    if (t <= k - 2 && n >= std::max(3 * k - 2 * t + 1, 2 * k + 1)) {
        unsigned long long u = count - binomial(static_cast<unsigned>(2 * k - 2 * t), k - t);
        upper = upper ? std::min(*upper, u) : u;
        out.tags.push_back("kneser-upper");
    }
    if (contiguous_bottom && n >= 2 * k + 1) {
        unsigned long long l = count - binomial(static_cast<unsigned>(2 * k - 2 * t), k - t);
        lower = lower ? std::max(*lower, l) : l;
        out.tags.push_back("kneser-lower");
    }

    if (lower && upper && *lower == *upper) {
        out.coverage = PredictedZf::Coverage::exact;
        out.exact = *lower;
    } else if (lower || upper) {
        out.coverage = PredictedZf::Coverage::bounds;
        out.lower = lower;
        out.upper = upper;
    }
    return out;
}

struct VerificationReport {
    bool zfs_ok = false;
    bool total_ok = true;
    bool connected_ok = true;
    bool pivot_discipline_ok = true;  // hamming: no core vertex pivots
    ForcingTrace trace;
};

/// Run the construction's claims against the actual graph.
inline VerificationReport verify_construction(const Graph& g, const ConstructionResult& res) {
    VerificationReport rep;
    BitVec leader = to_bitvec(g, res.leader);
    if (!res.core.empty()) {
        BitVec core = to_bitvec(g, res.core);
        auto [black, trace] = closure(g, leader, &core);
        rep.zfs_ok = black.count() == static_cast<std::size_t>(g.v_count);
        for (const auto& st : trace.steps)
            if (core.test(static_cast<std::size_t>(st.pivot))) rep.pivot_discipline_ok = false;
        rep.trace = std::move(trace);
    } else {
        auto [black, trace] = closure(g, leader);
        rep.zfs_ok = black.count() == static_cast<std::size_t>(g.v_count);
        rep.trace = std::move(trace);
    }
    if (res.claims.total || res.claims.connected) {
        Graph sub = induced_subgraph(g, res.leader);
        if (res.claims.total) rep.total_ok = !has_isolated_vertex(sub);
        if (res.claims.connected) rep.connected_ok = is_connected(sub);
    }
    return rep;
}

}  // namespace zflab
