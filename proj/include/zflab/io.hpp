#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zflab/constructions.hpp"
#include "zflab/forcing.hpp"
#include "zflab/graph.hpp"

namespace zflab {

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>(v >> (8 * i) & 0xff);
    os.write(b, 4);
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>(v >> (8 * i) & 0xff);
    os.write(b, 8);
}

inline std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

inline std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

}  // namespace detail

/// Binary graph cache. Layout (little-endian): magic "ZFG1", version,
/// vertex count, optional family spec, optional labels, packed adjacency rows.
inline void save_graph(const Graph& g, std::ostream& os) {
    os.write("ZFG1", 4);
    detail::put_u32(os, 1);
    detail::put_u32(os, static_cast<std::uint32_t>(g.v_count));
    os.put(g.spec ? 1 : 0);
    if (g.spec) {
        os.put(static_cast<char>(g.spec->family));
        detail::put_u32(os, static_cast<std::uint32_t>(g.spec->n));
        detail::put_u32(os, static_cast<std::uint32_t>(g.spec->k));
        detail::put_u32(os, static_cast<std::uint32_t>(g.spec->q));
        detail::put_u32(os, static_cast<std::uint32_t>(g.spec->S.size()));
        for (int s : g.spec->S) detail::put_u32(os, static_cast<std::uint32_t>(s));
    }
    os.put(g.labels.empty() ? 0 : 1);
    if (!g.labels.empty()) {
        for (const auto& l : g.labels) {
            os.put(static_cast<char>(l.kind));
            detail::put_u32(os, static_cast<std::uint32_t>(l.data.size()));
            for (auto d : l.data) detail::put_u32(os, d);
        }
    }
    for (const auto& row : g.adj)
        for (std::size_t w = 0; w < row.word_count(); ++w) detail::put_u64(os, row.words()[w]);
}

inline Graph load_graph(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != "ZFG1")
        throw std::runtime_error("load_graph: bad magic");
    std::uint32_t version = detail::get_u32(is);
    if (version != 1) throw std::runtime_error("load_graph: unsupported version");
    int v = static_cast<int>(detail::get_u32(is));
    Graph g(v);
    if (is.get() == 1) {
        FamilySpec spec;
        spec.family = static_cast<Family>(is.get());
        spec.n = static_cast<int>(detail::get_u32(is));
        spec.k = static_cast<int>(detail::get_u32(is));
        spec.q = static_cast<int>(detail::get_u32(is));
        std::uint32_t sc = detail::get_u32(is);
        for (std::uint32_t i = 0; i < sc; ++i)
            spec.S.push_back(static_cast<int>(detail::get_u32(is)));
        g.spec = spec;
    }
    if (is.get() == 1) {
        for (int i = 0; i < v; ++i) {
            VertexLabel l;
            l.kind = static_cast<VertexLabel::Kind>(is.get());
            std::uint32_t len = detail::get_u32(is);
            for (std::uint32_t j = 0; j < len; ++j) l.data.push_back(detail::get_u32(is));
            g.labels.push_back(std::move(l));
        }
    }
    for (int i = 0; i < v; ++i)
        for (std::size_t w = 0; w < g.adj[i].word_count(); ++w)
            g.adj[i].words()[w] = detail::get_u64(is);
    if (!is) throw std::runtime_error("load_graph: truncated stream");
    return g;
}

inline void save_graph_file(const Graph& g, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    save_graph(g, os);
}

inline Graph load_graph_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return load_graph(is);
}

/// Plain edge-list export: "# id label" comment lines, then "u v" per edge.
inline void write_edge_list(const Graph& g, std::ostream& os) {
    if (g.spec) os << "# " << g.spec->to_string() << "\n";
    for (int v = 0; v < g.v_count; ++v)
        if (!g.labels.empty()) os << "# " << v << " " << g.labels[v].to_string() << "\n";
    for (int v = 0; v < g.v_count; ++v)
        g.adj[v].for_each([&](std::size_t w) {
            if (static_cast<int>(w) > v) os << v << " " << w << "\n";
        });
}

inline nlohmann::json to_json(const FamilySpec& spec) {
    nlohmann::json j;
    switch (spec.family) {
        case Family::generalized_johnson: j["family"] = "johnson"; break;
        case Family::generalized_grassmann: j["family"] = "grassmann"; break;
        case Family::hamming: j["family"] = "hamming"; break;
    }
    j["n"] = spec.n;
    if (spec.family != Family::hamming) {
        j["k"] = spec.k;
        j["S"] = spec.S;
    }
    if (spec.family != Family::generalized_johnson) j["q"] = spec.q;
    j["name"] = spec.to_string();
    return j;
}

inline nlohmann::json to_json(const ForcingTrace& trace) {
    nlohmann::json j;
    j["initial"] = trace.initial;
    auto& steps = j["steps"] = nlohmann::json::array();
    for (const auto& st : trace.steps) steps.push_back({{"pivot", st.pivot}, {"forced", st.forced}});
    return j;
}

inline nlohmann::json to_json(const ExactSearchResult& res) {
    nlohmann::json j;
    j["z"] = res.z;
    j["proved"] = res.proved;
    j["lower_bound"] = res.lower_bound;
    j["certificate"] = res.certificate;
    j["closures_tested"] = res.closures_tested;
    return j;
}

inline nlohmann::json to_json(const ConstructionResult& res) {
    nlohmann::json j;
    j["spec"] = to_json(res.spec);
    j["leader"] = res.leader;
    j["leader_size"] = res.leader.size();
    j["predicted_size"] = res.predicted_size;
    j["claims"] = {{"zfs", res.claims.zfs},
                   {"total", res.claims.total},
                   {"connected", res.claims.connected},
                   {"minimum_known", res.claims.minimum_known}};
    if (!res.core.empty()) j["core"] = res.core;
    return j;
}

inline nlohmann::json to_json(const PredictedZf& p) {
    nlohmann::json j;
    switch (p.coverage) {
        case PredictedZf::Coverage::exact: j["coverage"] = "exact"; break;
        case PredictedZf::Coverage::bounds: j["coverage"] = "bounds"; break;
        case PredictedZf::Coverage::not_covered: j["coverage"] = "not-covered"; break;
    }
    if (p.exact) j["value"] = *p.exact;
    if (p.lower) j["lower"] = *p.lower;
    if (p.upper) j["upper"] = *p.upper;
    j["tags"] = p.tags;
    return j;
}

}  // namespace zflab
