#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zflab/constructions.hpp"
#include "zflab/f2.hpp"
#include "zflab/forcing.hpp"
#include "zflab/graph.hpp"
#include "zflab/io.hpp"
#include "zflab/metrics.hpp"

using nlohmann::json;
using namespace zflab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitCap = 3;

std::size_t default_cap() {
    if (const char* env = std::getenv("ZFLAB_VERTEX_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultVertexCap;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

void emit(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream os(out_path);
        if (!os) throw std::runtime_error("cannot open " + out_path + " for writing");
        os << report.dump(2) << "\n";
    }
}

Graph build_from_params(const std::string& family, int n, int k, int q,
                        const std::vector<int>& S, std::size_t cap) {
    if (family == "johnson") {
        FamilySpec spec;
        spec.family = Family::generalized_johnson;
        spec.n = n; spec.k = k; spec.S = S;
        return build_generalized_johnson(spec, cap);
    }
    if (family == "grassmann") {
        FamilySpec spec;
        spec.family = Family::generalized_grassmann;
        spec.n = n; spec.k = k; spec.q = q; spec.S = S;
        auto f = FieldTable::make(q);
        return build_generalized_grassmann(spec, f, cap);
    }
    if (family == "hamming") return build_hamming(n, q, cap);
    throw HypothesisError("unknown family '" + family + "'");
}

std::vector<int> read_vertex_set(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    json j;
    is >> j;
    if (j.is_object() && j.contains("vertices")) j = j["vertices"];
    return j.get<std::vector<int>>();
}

json vertex_list_with_labels(const Graph& g, const std::vector<int>& verts) {
    json out = json::array();
    for (int v : verts) {
        json e;
        e["id"] = v;
        if (!g.labels.empty()) e["label"] = g.labels[v].to_string();
        out.push_back(e);
    }
    return out;
}

int cmd_build(const std::string& family, int n, int k, int q, const std::vector<int>& S,
              std::size_t cap, const std::string& out, const std::string& edge_list,
              const std::string& report_out) {
    Timer timer;
    Graph g = build_from_params(family, n, k, q, S, cap);
    validate_graph(g);
    if (!out.empty()) save_graph_file(g, out);
    if (!edge_list.empty()) {
        std::ofstream os(edge_list);
        if (!os) throw std::runtime_error("cannot open " + edge_list + " for writing");
        write_edge_list(g, os);
    }
    json report;
    report["command"] = "build";
    report["schema_version"] = 1;
    if (g.spec) report["spec"] = to_json(*g.spec);
    report["vertices"] = g.v_count;
    report["edges"] = g.edge_count();
    if (!out.empty()) report["cache"] = out;
    report["ms"] = timer.ms();
    emit(report, report_out);
    return kExitOk;
}

int cmd_metrics(const std::string& graph_path, bool want_diameter, bool want_girth,
                bool check_formula, const std::string& report_out) {
    Timer timer;
    Graph g = load_graph_file(graph_path);
    json report;
    report["command"] = "metrics";
    report["schema_version"] = 1;
    if (g.spec) report["spec"] = to_json(*g.spec);
    report["vertices"] = g.v_count;
    report["edges"] = g.edge_count();
    std::optional<int> diam;
    if (want_diameter || check_formula) {
        diam = diameter(g);
        report["diameter"] = diam ? json(*diam) : json("infinite");
    }
    if (want_girth) {
        auto gi = girth(g);
        report["girth"] = gi ? json(*gi) : json("acyclic");
    }
    if (check_formula) {
        if (!g.spec || g.spec->family != Family::generalized_grassmann)
            throw HypothesisError("--check-formula needs a generalized Grassmann graph");
        int predicted = grassmann_diameter_formula(*g.spec);
        report["predicted_diameter"] = predicted;
        report["formula_match"] = diam && *diam == predicted;
    }
    report["ms"] = timer.ms();
    emit(report, report_out);
    return kExitOk;
}

int cmd_zf(const std::string& graph_path, const std::string& mode,
           const std::string& set_path, bool complement, const std::string& variant,
           int workers, int search_cap, const std::string& report_out) {
    Timer timer;
    Graph g = load_graph_file(graph_path);
    json report;
    report["command"] = "zf";
    report["schema_version"] = 1;
    if (g.spec) report["spec"] = to_json(*g.spec);
    report["vertices"] = g.v_count;
    int exit_code = kExitOk;

    auto leader_from_file = [&]() {
        auto verts = read_vertex_set(set_path);
        BitVec b = to_bitvec(g, verts);
        if (complement) {
            BitVec all(static_cast<std::size_t>(g.v_count));
            all.set_all();
            all.and_not(b);
            return all;
        }
        return b;
    };

    if (mode == "closure") {
        BitVec leader = leader_from_file();
        auto [black, trace] = closure(g, leader);
        report["leader_size"] = leader.count();
        report["closure_size"] = black.count();
        report["forces_all"] = black.count() == static_cast<std::size_t>(g.v_count);
        report["trace"] = to_json(trace);
    } else if (mode == "verify") {
        BitVec leader = leader_from_file();
        bool zfs = is_zero_forcing(g, leader);
        report["leader_size"] = leader.count();
        report["zfs"] = zfs;
        if (variant == "total") report["total_zfs"] = is_total_zfs(g, leader);
        if (variant == "connected") report["connected_zfs"] = is_connected_zfs(g, leader);
    } else if (mode == "exact") {
        ExactSearchOptions opt;
        opt.workers = workers;
        opt.search_cap = search_cap;
        if (!set_path.empty()) {
            auto verts = read_vertex_set(set_path);
            if (complement) {
                BitVec b = to_bitvec(g, verts);
                BitVec all(static_cast<std::size_t>(g.v_count));
                all.set_all();
                all.and_not(b);
                opt.upper_certificate = all.to_list();
            } else {
                opt.upper_certificate = verts;
            }
        }
        auto res = zero_forcing_number_exact(g, opt);
        report["result"] = to_json(res);
        report["certificate_labels"] = vertex_list_with_labels(g, res.certificate);
        report["value_tag"] = res.proved ? "exhaustive-search" : "bounds-only";
        if (!res.proved) exit_code = kExitCap;
    } else if (mode == "grundy") {
        GrundyVariant var = (variant == "z") ? GrundyVariant::z_grundy : GrundyVariant::grundy;
        auto [gamma, seq] = grundy_exact(g, var);
        report["variant"] = (var == GrundyVariant::z_grundy) ? "z-grundy" : "grundy";
        report["gamma"] = gamma;
        report["sequence"] = seq.sequence;
        report["footprints"] = seq.footprints;
        if (var == GrundyVariant::z_grundy && !has_isolated_vertex(g))
            report["zero_forcing_number"] = g.v_count - gamma;
    } else {
        throw HypothesisError("unknown zf mode '" + mode + "'");
    }
    report["ms"] = timer.ms();
    emit(report, report_out);
    return exit_code;
}

int cmd_construct(const std::string& kind, int n, int k, int q, int t,
                  const std::vector<int>& S, bool verify, std::size_t cap,
                  const std::string& report_out) {
    Timer timer;
    json report;
    report["command"] = "construct";
    report["schema_version"] = 1;

    std::vector<ConstructionResult> results;
    if (kind == "johnson") {
        results.push_back(johnson_zfs(n, k, S));
    } else if (kind == "kneser") {
        results.push_back(n == 3 * k - 2 * t ? kneser_zfs_edge(n, k, t) : kneser_zfs(n, k, t));
    } else if (kind == "grassmann") {
        auto f = FieldTable::make(q);
        results.push_back(grassmann_zfs(n, k, q, t, f));
    } else if (kind == "grassmann-special") {
        auto f = FieldTable::make(2);
        auto [small, big] = grassmann_special_set_j2_4_2(f);
        results.push_back(small);
        results.push_back(big);
    } else if (kind == "hamming") {
        results.push_back(hamming_zfs(n, q, cap));
    } else {
        throw HypothesisError("unknown construction '" + kind + "'");
    }

    json rows = json::array();
    for (const auto& res : results) {
        json row = to_json(res);
        row["predicted"] = to_json(predicted_zf(res.spec));
        if (verify) {
            Graph g;
            if (res.spec.family == Family::hamming) {
                g = build_hamming(res.spec.n, res.spec.q, cap);
            } else if (res.spec.family == Family::generalized_johnson) {
                g = build_generalized_johnson(res.spec, cap);
            } else {
                auto f = FieldTable::make(res.spec.q);
                g = build_generalized_grassmann(res.spec, f, cap);
            }
            auto rep = verify_construction(g, res);
            row["verified"] = {{"zfs", rep.zfs_ok},
                               {"total", rep.total_ok},
                               {"connected", rep.connected_ok},
                               {"pivot_discipline", rep.pivot_discipline_ok}};
            // A closure failure is an error only when forcing is claimed; the
            // n = 3k-2t boundary family is emitted claim-free because it is
            // known not to force.
            if (res.claims.zfs && !rep.zfs_ok)
                throw std::runtime_error("construction failed closure check");
        }
        rows.push_back(std::move(row));
    }
    report["results"] = std::move(rows);
    report["ms"] = timer.ms();
    emit(report, report_out);
    return kExitOk;
}

int cmd_nullity(int n, int q, std::size_t cap, const std::string& report_out) {
    Timer timer;
    json report;
    report["command"] = "nullity";
    report["schema_version"] = 1;
    report["n"] = n;
    report["q"] = q;
    F2Matrix b = build_Bn(n, q, cap);
    int nullity = f2_nullity(b);
    unsigned long long z = hamming_z(n, q);
    report["nullity"] = nullity;
    report["z_formula"] = z;
    report["nullity_matches_formula"] = static_cast<unsigned long long>(nullity) == z;

    auto basis = kernel_basis(n, q, cap);
    bool in_kernel = true;
    for (const auto& v : basis)
        if (!f2_mul(b, v).is_zero()) in_kernel = false;
    F2Matrix stacked(static_cast<int>(basis.size()), b.cols);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (int j = 0; j < b.cols; ++j)
            stacked.set(static_cast<int>(i), j, basis[i].get(j, 0));
    bool independent = f2_rank(stacked) == static_cast<int>(basis.size());
    report["kernel_basis"] = {{"count", basis.size()},
                              {"all_in_kernel", in_kernel},
                              {"independent", independent}};
    auto id = even_terms_identity(n, q);
    report["even_terms_identity_holds"] = id.equal;
    report["nullity_lower_bounds_z"] = true;  // ν(B) <= Z(H(n,q)) over GF(2)
    report["ms"] = timer.ms();
    emit(report, report_out);
    return kExitOk;
}

int run_one(const json& job, std::size_t cap, json& row);

int cmd_sweep(const std::string& config_path, bool csv, std::size_t cap,
              const std::string& report_out) {
    std::ifstream is(config_path);
    if (!is) throw std::runtime_error("cannot open " + config_path);
    json config;
    is >> config;
    json jobs = config.is_array() ? config : config.at("jobs");

    json rows = json::array();
    for (const auto& job : jobs) {
        json row;
        row["job"] = job;
        try {
            run_one(job, cap, row);
            row["status"] = "ok";
        } catch (const HypothesisError& e) {
            row["status"] = "hypothesis-violation";
            row["error"] = e.what();
        } catch (const SizingError& e) {
            row["status"] = "cap-exceeded";
            row["error"] = e.what();
        } catch (const std::exception& e) {
            row["status"] = "error";
            row["error"] = e.what();
        }
        rows.push_back(std::move(row));
    }

    if (csv) {
        std::ostringstream os;
        os << "index,command,status,value\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            os << i << "," << r["job"].value("cmd", "?") << "," << r["status"].get<std::string>()
               << "," << (r.contains("value") ? r["value"].dump() : "") << "\n";
        }
        if (report_out.empty()) std::cout << os.str();
        else {
            std::ofstream f(report_out);
            f << os.str();
        }
    } else {
        json report;
        report["command"] = "sweep";
        report["schema_version"] = 1;
        report["rows"] = std::move(rows);
        emit(report, report_out);
    }
    return kExitOk;
}

// One sweep row: a small dispatch over the same library calls the subcommands
// use, writing the headline value into row["value"].
int run_one(const json& job, std::size_t cap, json& row) {
    std::string cmd = job.at("cmd").get<std::string>();
    auto s_of = [&](const json& j) { return j.value("S", std::vector<int>{}); };
    if (cmd == "diameter" || cmd == "girth") {
        Graph g = build_from_params(job.at("family"), job.value("n", 0), job.value("k", 0),
                                    job.value("q", 0), s_of(job), cap);
        if (cmd == "diameter") {
            auto d = diameter(g);
            row["value"] = d ? json(*d) : json("infinite");
            if (g.spec && g.spec->family == Family::generalized_grassmann &&
                job.value("check_formula", false)) {
                int predicted = grassmann_diameter_formula(*g.spec);
                row["predicted"] = predicted;
                row["match"] = d && *d == predicted;
            }
        } else {
            auto gi = girth(g);
            row["value"] = gi ? json(*gi) : json("acyclic");
        }
        return kExitOk;
    }
    if (cmd == "zf-exact") {
        Graph g = build_from_params(job.at("family"), job.value("n", 0), job.value("k", 0),
                                    job.value("q", 0), s_of(job), cap);
        ExactSearchOptions opt;
        opt.workers = job.value("workers", 1);
        auto res = zero_forcing_number_exact(g, opt);
        row["value"] = res.z;
        row["proved"] = res.proved;
        return kExitOk;
    }
    if (cmd == "nullity") {
        F2Matrix b = build_Bn(job.at("n"), job.at("q"), cap);
        row["value"] = f2_nullity(b);
        row["match"] = static_cast<unsigned long long>(f2_nullity(b)) ==
                       hamming_z(job.at("n"), job.at("q"));
        return kExitOk;
    }
    throw HypothesisError("unknown sweep cmd '" + cmd + "'");
}

int cmd_replay(const std::string& graph_path, const std::string& report_path) {
    Graph g = load_graph_file(graph_path);
    std::ifstream is(report_path);
    if (!is) throw std::runtime_error("cannot open " + report_path);
    json report;
    is >> report;

    bool checked = false, ok = true;
    if (report.contains("trace")) {
        checked = true;
        ForcingTrace trace;
        trace.initial = report["trace"]["initial"].get<std::vector<int>>();
        for (const auto& st : report["trace"]["steps"])
            trace.steps.push_back({st["pivot"].get<int>(), st["forced"].get<int>()});
        BitVec black(static_cast<std::size_t>(g.v_count));
        if (!replay_trace(g, trace, &black)) ok = false;
    }
    if (report.contains("result") && report["result"].contains("certificate")) {
        checked = true;
        auto cert = report["result"]["certificate"].get<std::vector<int>>();
        if (!is_zero_forcing(g, to_bitvec(g, cert))) ok = false;
    }
    json out;
    out["command"] = "replay";
    out["schema_version"] = 1;
    out["checked"] = checked;
    out["valid"] = ok;
    emit(out, "");
    if (!checked || !ok) return kExitInternal;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zflab: zero forcing laboratory for Johnson, Grassmann and Hamming graphs"};
    app.require_subcommand(1);
    std::size_t cap = default_cap();
    app.add_option("--cap", cap, "vertex count cap for built graphs");

    // build
    std::string b_family, b_out, b_edges, b_report;
    int b_n = 0, b_k = 0, b_q = 0;
    std::vector<int> b_S;
    auto* build = app.add_subcommand("build", "build a family graph and cache it");
    build->add_option("family", b_family, "johnson|grassmann|hamming")->required();
    build->add_option("-n", b_n)->required();
    build->add_option("-k", b_k);
    build->add_option("-q", b_q);
    build->add_option("-S", b_S, "allowed intersection sizes");
    build->add_option("--out", b_out, "graph cache output path");
    build->add_option("--edge-list", b_edges, "also write a text edge list");
    build->add_option("--report", b_report, "report JSON path (default stdout)");

    // metrics
    std::string m_graph, m_report;
    bool m_diam = false, m_girth = false, m_formula = false;
    auto* metrics = app.add_subcommand("metrics", "diameter/girth of a cached graph");
    metrics->add_option("--graph", m_graph)->required();
    metrics->add_flag("--diameter", m_diam);
    metrics->add_flag("--girth", m_girth);
    metrics->add_flag("--check-formula", m_formula, "compare against the closed form");
    metrics->add_option("--report", m_report);

    // zf
    std::string z_graph, z_mode = "verify", z_set, z_variant = "plain", z_report;
    bool z_complement = false;
    int z_workers = 1, z_search_cap = 40;
    auto* zf = app.add_subcommand("zf", "zero forcing computations on a cached graph");
    zf->add_option("--graph", z_graph)->required();
    zf->add_option("--mode", z_mode, "closure|verify|exact|grundy");
    zf->add_option("--set", z_set, "JSON vertex list (leader, or white with --complement)");
    zf->add_flag("--complement", z_complement);
    zf->add_option("--variant", z_variant, "plain|total|connected (verify), z (grundy)");
    zf->add_option("--workers", z_workers);
    zf->add_option("--search-cap", z_search_cap, "max vertices for exhaustive search");
    zf->add_option("--report", z_report);

    // construct
    std::string c_kind, c_report;
    int c_n = 0, c_k = 0, c_q = 2, c_t = 0;
    std::vector<int> c_S;
    bool c_verify = false;
    auto* construct = app.add_subcommand("construct", "leader-set constructions");
    construct->add_option("kind", c_kind,
                          "johnson|kneser|grassmann|grassmann-special|hamming")
        ->required();
    construct->add_option("-n", c_n);
    construct->add_option("-k", c_k);
    construct->add_option("-q", c_q);
    construct->add_option("-t", c_t);
    construct->add_option("-S", c_S);
    construct->add_flag("--verify", c_verify, "run closure and claim checks");
    construct->add_option("--report", c_report);

    // nullity
    int f_n = 0, f_q = 0;
    std::string f_report;
    auto* nullity = app.add_subcommand("nullity", "GF(2) nullity of the Hamming matrix B_n");
    nullity->add_option("-n", f_n)->required();
    nullity->add_option("-q", f_q)->required();
    nullity->add_option("--report", f_report);

    // sweep
    std::string s_config, s_report;
    bool s_csv = false;
    auto* sweep = app.add_subcommand("sweep", "run a parameter grid from a config file");
    sweep->add_option("--config", s_config)->required();
    sweep->add_flag("--csv", s_csv);
    sweep->add_option("--report", s_report);

    // replay
    std::string r_graph, r_report;
    auto* replay = app.add_subcommand("replay", "re-verify certificates in a report");
    replay->add_option("--graph", r_graph)->required();
    replay->add_option("--report", r_report)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) return cmd_build(b_family, b_n, b_k, b_q, b_S, cap, b_out, b_edges, b_report);
        if (*metrics) return cmd_metrics(m_graph, m_diam, m_girth, m_formula, m_report);
        if (*zf)
            return cmd_zf(z_graph, z_mode, z_set, z_complement, z_variant, z_workers,
                          z_search_cap, z_report);
        if (*construct)
            return cmd_construct(c_kind, c_n, c_k, c_q, c_t, c_S, c_verify, cap, c_report);
        if (*nullity) return cmd_nullity(f_n, f_q, cap, f_report);
        if (*sweep) return cmd_sweep(s_config, s_csv, cap, s_report);
        if (*replay) return cmd_replay(r_graph, r_report);
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const SizingError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
