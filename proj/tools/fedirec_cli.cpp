// fedirec: batch experiment front-end for whom-to-follow recommendation on
// federated follow graphs. See README.md for the command reference.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fedirec/cf.hpp"
#include "fedirec/evaluation.hpp"
#include "fedirec/federation.hpp"
#include "fedirec/graph.hpp"
#include "fedirec/ppr.hpp"
#include "fedirec/sampler.hpp"
#include "fedirec/synth.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fedirec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// temp + rename so partially written outputs are never observed
void atomic_write(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

DirectedGraph load_graph(const std::string& path) {
    try {
        return load_edge_list_file(path).graph;
    } catch (const ParseError& e) {
        throw DataError(std::string(e.what()) + " in " + path);
    } catch (const std::runtime_error& e) {
        throw DataError(e.what());
    }
}

// Per-component seed derivation (splitmix64 of master seed + tag hash) so
// partial reruns of a pipeline stay consistent.
std::uint64_t derive_seed(std::uint64_t master, const std::string& tag) {
    std::uint64_t x = master ^ std::hash<std::string>{}(tag);
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string dump_graph(const DirectedGraph& g) {
    std::ostringstream out;
    g.dump_edge_list(out);
    return out.str();
}

eval::NamedSystem make_system(const std::string& name,
                              const DirectedGraph& g_train,
                              std::size_t k, std::uint64_t seed,
                              double damping, bool filter_followees,
                              std::map<std::string, cf::ProfileIndex>& idx_cache) {
    auto index_for = [&](const std::string& strat) -> const cf::ProfileIndex& {
        auto it = idx_cache.find(strat);
        if (it == idx_cache.end()) {
            auto profiles =
                cf::build_profiles(g_train, cf::strategy_from_string(strat));
            it = idx_cache.emplace(strat, cf::ProfileIndex(profiles)).first;
        }
        return it->second;
    };
    if (name == "random") {
        return {name, [&g_train, k, seed, filter_followees](NodeId t) {
                    return cf::recommend_random(
                        g_train, t, k, derive_seed(seed, "random-" + std::to_string(t)),
                        filter_followees);
                }};
    }
    if (name.rfind("cf:", 0) == 0) {
        const std::string strat = name.substr(3);
        const cf::ProfileIndex& index = index_for(strat);  // validates name
        return {name, [&index, &g_train, k, seed, filter_followees](NodeId t) {
                    cf::CfOptions opt;
                    opt.k = k;
                    opt.rng_seed = derive_seed(seed, "cf-" + std::to_string(t));
                    opt.filter_followees = filter_followees;
                    auto list = cf::recommend_cf(index, g_train, t, opt);
                    return list;
                }};
    }
    if (name == "ppr") {
        return {name, [&g_train, k, damping, filter_followees](NodeId t) {
                    ppr::PprOptions opt;
                    opt.k = k;
                    opt.config.damping = damping;
                    opt.filter_followees = filter_followees;
                    return ppr::recommend_ppr(g_train, t, opt);
                }};
    }
    throw UsageError("unknown system \"" + name +
                     "\"; valid: random, cf:following, cf:followers, "
                     "cf:combined, ppr");
}

std::map<std::string, federation::FetchStatus> load_failure_plan(
    const std::string& path) {
    std::map<std::string, federation::FetchStatus> plan;
    if (path.empty()) return plan;
    std::ifstream in(path);
    if (!in) throw DataError("cannot open failure plan: " + path);
    json j;
    in >> j;
    for (auto it = j.begin(); it != j.end(); ++it) {
        plan[it.key()] = federation::status_from_string(it.value());
    }
    return plan;
}

struct ParsedList {
    std::string target;
    std::vector<std::string> items;
};

ParsedList load_ranked_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open ranked list: " + path);
    std::string line;
    if (!std::getline(in, line) || line.empty()) {
        throw DataError("empty ranked list file: " + path);
    }
    ParsedList p;
    if (line[0] == '{') {
        const json j = json::parse(line);
        p.target = j.value("target", "");
        for (const auto& e : j.at("entries")) {
            p.items.push_back(e.at(0).get<std::string>());
        }
        return p;
    }
    // plain text: one item per line, best first
    do {
        if (!line.empty()) p.items.push_back(line);
    } while (std::getline(in, line));
    return p;
}

// --- subcommand implementations -----------------------------------------

int cmd_synth(const synth::SynthConfig& cfg, const std::string& out_dir) {
    const auto world = synth::generate(cfg);
    atomic_write(fs::path(out_dir) / "t1.edges", dump_graph(world.t1));
    atomic_write(fs::path(out_dir) / "t2.edges", dump_graph(world.t2));
    json manifest;
    manifest["model"] = synth::to_string(cfg.model);
    manifest["n"] = cfg.n;
    manifest["rng_seed"] = cfg.rng_seed;
    manifest["communities"] = cfg.communities;
    manifest["mean_out_degree"] = cfg.mean_out_degree;
    manifest["in_community_prob"] = cfg.in_community_prob;
    manifest["changed_users"] = cfg.changed_users;
    manifest["new_follows_per_changed"] = cfg.new_follows_per_changed;
    manifest["changed_keys"] = world.changed_keys;
    manifest["t1_edges"] = world.t1.edge_count();
    manifest["t2_edges"] = world.t2.edge_count();
    atomic_write(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
    std::cout << "t1: " << world.t1.node_count() << " nodes, "
              << world.t1.edge_count() << " edges; t2: "
              << world.t2.edge_count() << " edges\n";
    return kExitOk;
}

int cmd_stats(const std::string& graph_path, const std::string& mode_name,
              const std::string& out_path) {
    static const std::map<std::string, AssortativityMode> kModes{
        {"out-in", AssortativityMode::OutIn},
        {"out-out", AssortativityMode::OutOut},
        {"in-in", AssortativityMode::InIn},
        {"in-out", AssortativityMode::InOut},
        {"undirected", AssortativityMode::Undirected}};
    auto mode = kModes.find(mode_name);
    if (mode == kModes.end()) {
        throw UsageError("unknown assortativity mode: " + mode_name);
    }
    const auto g = load_graph(graph_path);
    if (g.node_count() == 0) throw DataError("empty graph: " + graph_path);
    const auto s = g.compute_stats(mode->second);

    std::ostringstream kv;
    kv << "nodes=" << s.node_count << '\n'
       << "visited=" << s.visited_count << '\n'
       << "edges=" << s.edge_count << '\n'
       << "assortativity=" << s.assortativity << '\n'
       << "assortativity_mode=" << mode_name << '\n'
       << "avg_degree_directed=" << s.avg_degree_directed << '\n'
       << "avg_degree_undirected=" << s.avg_degree_undirected << '\n'
       << "ncc=" << s.ncc << '\n'
       << "scc_fraction=" << s.scc_fraction << '\n';
    std::cout << "Graph       " << graph_path << "\n"
              << "|V|         " << s.node_count << "\n"
              << "|V*|        " << s.visited_count << "\n"
              << "|E|         " << s.edge_count << "\n"
              << "Assort.     " << s.assortativity << " (" << mode_name << ")\n"
              << "Deg.        " << s.avg_degree_undirected
              << " (undirected; directed " << s.avg_degree_directed << ")\n"
              << "NCC         " << s.ncc << "\n"
              << "SCC         " << s.scc_fraction << "\n";
    if (!out_path.empty()) atomic_write(out_path, kv.str());
    return kExitOk;
}

int cmd_sample(const std::string& world_path, const std::string& start,
               const std::string& walk_mode, std::size_t iterations,
               std::uint64_t seed, double restart_probability, double rate,
               const std::string& failure_plan_path,
               const std::string& cache_path, const std::string& out_dir) {
    const auto world = load_graph(world_path);
    federation::SimulatedProvider provider(world,
                                           load_failure_plan(failure_plan_path));
    federation::VirtualClock clock;
    federation::CacheStore cache =
        cache_path.empty() ? federation::CacheStore()
                           : federation::CacheStore(cache_path);
    federation::PolitenessPolicy policy;
    policy.max_requests_per_second = rate;
    federation::FederationClient client(provider, cache, policy, clock);

    sampler::WalkConfig cfg;
    cfg.iterations = iterations;
    cfg.rng_seed = seed;
    cfg.restart_probability = restart_probability;

    sampler::SampleResult result;
    try {
        result = walk_mode == "ego" ? sampler::ego_walk(start, cfg, client)
                                    : sampler::mhrw_sample(start, cfg, client);
    } catch (const std::runtime_error& e) {
        throw DataError(e.what());
    }
    fs::create_directories(out_dir);
    result.write((fs::path(out_dir) / "sample.edges").string(),
                 (fs::path(out_dir) / "manifest.json").string(), cfg);
    const auto counters = client.counters();
    std::cout << "iterations=" << result.visited_order.size()
              << " unique_visited=" << result.unique_visited.size()
              << " fetches=" << counters.fetches
              << " cache_hits=" << counters.cache_hits
              << " robots_denied=" << counters.robots_denied
              << " failures=" << counters.failures << "\n";
    return kExitOk;
}

int cmd_recommend(const std::string& graph_path, const std::string& system,
                  const std::vector<std::string>& targets,
                  const std::string& targets_file, std::size_t k,
                  std::uint64_t seed, double damping, bool no_filter,
                  const std::string& out_path) {
    const auto g = load_graph(graph_path);
    std::vector<std::string> all_targets = targets;
    if (!targets_file.empty()) {
        std::ifstream in(targets_file);
        if (!in) throw DataError("cannot open targets file: " + targets_file);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) all_targets.push_back(line);
        }
    }
    if (all_targets.empty()) throw UsageError("no targets given");

    std::map<std::string, cf::ProfileIndex> idx_cache;
    auto sys = make_system(system, g, k, seed, damping, !no_filter, idx_cache);

    std::ostringstream out;
    for (const auto& key : all_targets) {
        const auto id = g.id_of(key);
        if (id < 0) throw DataError("target not in graph: " + key);
        auto list = sys.run(static_cast<NodeId>(id));
        list.algorithm = system;
        out << list.to_json_line(g) << '\n';
    }
    atomic_write(out_path, out.str());

    json echo;
    echo["command"] = "recommend";
    echo["graph"] = graph_path;
    echo["system"] = system;
    echo["k"] = k;
    echo["rng_seed"] = seed;
    echo["damping"] = damping;
    echo["filter_followees"] = !no_filter;
    echo["targets"] = all_targets;
    atomic_write(out_path + ".config.json", echo.dump(2) + "\n");
    return kExitOk;
}

int cmd_evaluate(const std::string& t1_path, const std::string& t2_path,
                 const std::vector<std::string>& systems, std::size_t k,
                 std::uint64_t seed, double damping, bool no_filter,
                 const std::string& out_dir) {
    const auto t1 = load_graph(t1_path);
    const auto t2 = load_graph(t2_path);
    const auto pair = eval::build_snapshot_pair(t1, t2);
    if (pair.eval_targets.empty()) {
        std::cerr << "warning: no evaluation targets (identical snapshots?)\n";
    }

    std::map<std::string, cf::ProfileIndex> idx_cache;
    std::vector<eval::NamedSystem> named;
    for (const auto& s : systems) {
        named.push_back(
            make_system(s, t1, k, seed, damping, !no_filter, idx_cache));
    }
    const auto report = eval::run_experiment(pair, named, {1, 5, 10}, k);
    atomic_write(fs::path(out_dir) / "report.json", report.to_json() + "\n");
    atomic_write(fs::path(out_dir) / "table.txt", report.render_table());
    atomic_write(fs::path(out_dir) / "p_curve.csv", report.p_curve_csv());

    json echo;
    echo["command"] = "evaluate";
    echo["t1"] = t1_path;
    echo["t2"] = t2_path;
    echo["systems"] = systems;
    echo["k"] = k;
    echo["rng_seed"] = seed;
    echo["damping"] = damping;
    echo["filter_followees"] = !no_filter;
    echo["n_targets"] = pair.eval_targets.size();
    atomic_write(fs::path(out_dir) / "config.json", echo.dump(2) + "\n");
    std::cout << report.render_table();
    return kExitOk;
}

int cmd_interleave(const std::string& list_a_path, const std::string& list_b_path,
                   const std::string& clicks_csv, std::uint64_t seed,
                   std::size_t display_size) {
    const ParsedList a = load_ranked_list(list_a_path);
    const ParsedList b = load_ranked_list(list_b_path);

    // dense local ids over the union of both lists
    std::map<std::string, NodeId> ids;
    auto intern = [&](const std::string& key) {
        return ids.emplace(key, static_cast<NodeId>(ids.size())).first->second;
    };
    std::vector<NodeId> va, vb;
    for (const auto& s : a.items) va.push_back(intern(s));
    for (const auto& s : b.items) vb.push_back(intern(s));

    std::set<NodeId> clicks;
    if (!clicks_csv.empty()) {
        std::stringstream ss(clicks_csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto it = ids.find(item);
            if (it == ids.end()) {
                throw DataError("clicked item not in either list: " + item);
            }
            clicks.insert(it->second);
        }
    }

    const auto il = eval::balanced_interleave(va, vb, seed, display_size);
    std::vector<std::string> rev(ids.size());
    for (const auto& [key, id] : ids) rev[id] = key;

    eval::Attribution attr;
    try {
        attr = eval::attribute_clicks(il, va, vb, clicks);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }

    std::cout << "first_picker=" << (il.first_picker_a ? "A" : "B") << "\n";
    for (std::size_t i = 0; i < il.items.size(); ++i) {
        const char* origin = il.origin[i] == eval::Origin::A   ? "A"
                             : il.origin[i] == eval::Origin::B ? "B"
                                                               : "both";
        std::cout << (i + 1) << ". " << rev[il.items[i]] << " [" << origin
                  << "]" << (clicks.count(il.items[i]) ? " *clicked*" : "")
                  << "\n";
    }
    std::cout << "lowest_click_rank=" << attr.lowest_click_rank
              << " prefix_k=" << attr.prefix_k
              << " credit_A=" << attr.credit_a
              << " credit_B=" << attr.credit_b << "\n"
              << "verdict=" << eval::to_string(attr.verdict) << "\n";
    return kExitOk;
}

int cmd_report(const std::string& csv_path, const std::string& svg_path) {
    std::ifstream in(csv_path);
    if (!in) throw DataError("cannot open csv: " + csv_path);
    std::string line;
    std::getline(in, line);  // header
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    double max_k = 1.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string k_s, name, v_s;
        if (!std::getline(ss, k_s, ',') || !std::getline(ss, name, ',') ||
            !std::getline(ss, v_s)) {
            throw DataError("malformed csv line: " + line);
        }
        const double k = std::stod(k_s);
        series[name].emplace_back(k, std::stod(v_s));
        max_k = std::max(max_k, k);
    }
    if (series.empty()) throw DataError("no data rows in " + csv_path);
    double max_v = 0.0;
    for (const auto& [name, pts] : series) {
        for (const auto& [k, v] : pts) max_v = std::max(max_v, v);
    }
    if (max_v <= 0.0) max_v = 1.0;

    const double w = 640, h = 400, ml = 50, mb = 40, mt = 20, mr = 140;
    static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                    "#d62728", "#9467bd", "#8c564b"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
        << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
        << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << (w - mr + ml) / 2 << "\" y=\"" << h - 8
        << "\" font-size=\"12\">k</text>\n"
        << "<text x=\"12\" y=\"" << (h - mb + mt) / 2
        << "\" font-size=\"12\">p@k</text>\n";
    std::size_t ci = 0;
    for (const auto& [name, pts] : series) {
        const char* color = kColors[ci % 6];
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [k, v] : pts) {
            const double x = ml + (k - 1) / std::max(1.0, max_k - 1) *
                                      (w - ml - mr);
            const double y = h - mb - v / max_v * (h - mt - mb);
            svg << x << ',' << y << ' ';
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << w - mr + 8 << "\" y=\"" << mt + 16 * (ci + 1)
            << "\" font-size=\"12\" fill=\"" << color << "\">" << name
            << "</text>\n";
        ++ci;
    }
    svg << "</svg>\n";
    atomic_write(svg_path, svg.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"whom-to-follow experiments on federated follow graphs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a config file");

    // synth
    auto* synth_cmd = app.add_subcommand(
        "synth", "generate a synthetic t1/t2 snapshot pair");
    synth::SynthConfig scfg;
    std::string synth_model = "planted-community";
    std::string synth_out;
    synth_cmd->add_option("--n", scfg.n, "node count")->check(CLI::Range(10, 10000000));
    synth_cmd->add_option("--model", synth_model,
                          "planted-community | preferential-attachment");
    synth_cmd->add_option("--seed", scfg.rng_seed, "rng seed");
    synth_cmd->add_option("--communities", scfg.communities);
    synth_cmd->add_option("--mean-out-degree", scfg.mean_out_degree);
    synth_cmd->add_option("--in-community-prob", scfg.in_community_prob);
    synth_cmd->add_option("--changed-users", scfg.changed_users);
    synth_cmd->add_option("--new-follows", scfg.new_follows_per_changed,
                          "average new follows per changed user");
    synth_cmd->add_option("--out-dir", synth_out)->required();

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "graph topology statistics");
    std::string stats_graph, stats_mode = "out-in", stats_out;
    stats_cmd->add_option("graph", stats_graph, "edge-list file")->required();
    stats_cmd->add_option("--assortativity", stats_mode,
                          "out-in | out-out | in-in | in-out | undirected");
    stats_cmd->add_option("--out", stats_out, "key=value output file");

    // sample
    auto* sample_cmd =
        app.add_subcommand("sample", "MHRW / ego walk over a simulated world");
    std::string sample_world, sample_start, sample_mode = "mhrw";
    std::string sample_plan, sample_cache, sample_out;
    std::size_t sample_iters = 5500;
    std::uint64_t sample_seed = 0;
    double sample_restart = 0.2, sample_rate = 10.0;
    sample_cmd->add_option("--world", sample_world, "world edge list")->required();
    sample_cmd->add_option("--start", sample_start, "start key")->required();
    sample_cmd->add_option("--mode", sample_mode, "mhrw | ego");
    sample_cmd->add_option("--iterations", sample_iters);
    sample_cmd->add_option("--seed", sample_seed);
    sample_cmd->add_option("--restart-probability", sample_restart,
                           "ego walk restart probability (1 - gamma)");
    sample_cmd->add_option("--rate", sample_rate, "max requests per second");
    sample_cmd->add_option("--failure-plan", sample_plan,
                           "JSON map instance -> status");
    sample_cmd->add_option("--cache", sample_cache, "persistent cache file");
    sample_cmd->add_option("--out-dir", sample_out)->required();

    // recommend
    auto* rec_cmd = app.add_subcommand("recommend", "rank candidates for targets");
    std::string rec_graph, rec_system, rec_targets_file, rec_out;
    std::vector<std::string> rec_targets;
    std::size_t rec_k = 100;
    std::uint64_t rec_seed = 0;
    double rec_damping = 0.85;
    bool rec_no_filter = false;
    rec_cmd->add_option("--graph", rec_graph)->required();
    rec_cmd->add_option("--system", rec_system,
                        "random | cf:following | cf:followers | cf:combined | ppr")
        ->required();
    rec_cmd->add_option("--target", rec_targets, "target key (repeatable)");
    rec_cmd->add_option("--targets-file", rec_targets_file,
                        "file with one target key per line");
    rec_cmd->add_option("--k", rec_k);
    rec_cmd->add_option("--seed", rec_seed);
    rec_cmd->add_option("--damping", rec_damping);
    rec_cmd->add_flag("--no-filter-followees", rec_no_filter);
    rec_cmd->add_option("--out", rec_out)->required();

    // evaluate
    auto* eval_cmd =
        app.add_subcommand("evaluate", "offline t1/t2 evaluation report");
    std::string eval_t1, eval_t2, eval_out;
    std::vector<std::string> eval_systems = {"random", "cf:following",
                                             "cf:followers", "cf:combined",
                                             "ppr"};
    std::size_t eval_k = 100;
    std::uint64_t eval_seed = 0;
    double eval_damping = 0.85;
    bool eval_no_filter = false;
    eval_cmd->add_option("--t1", eval_t1)->required();
    eval_cmd->add_option("--t2", eval_t2)->required();
    eval_cmd->add_option("--system", eval_systems, "systems, in table order");
    eval_cmd->add_option("--k", eval_k);
    eval_cmd->add_option("--seed", eval_seed);
    eval_cmd->add_option("--damping", eval_damping);
    eval_cmd->add_flag("--no-filter-followees", eval_no_filter);
    eval_cmd->add_option("--out-dir", eval_out)->required();

    // interleave
    auto* il_cmd = app.add_subcommand(
        "interleave", "balanced interleaving verdict for two ranked lists");
    std::string il_a, il_b, il_clicks;
    std::uint64_t il_seed = 0;
    std::size_t il_display = 10;
    il_cmd->add_option("--list-a", il_a, "ranked-list JSON-lines file")->required();
    il_cmd->add_option("--list-b", il_b)->required();
    il_cmd->add_option("--clicks", il_clicks, "comma-separated clicked keys");
    il_cmd->add_option("--seed", il_seed);
    il_cmd->add_option("--display-size", il_display);

    // report
    auto* rep_cmd =
        app.add_subcommand("report", "render a p@k curve CSV as an SVG chart");
    std::string rep_csv, rep_svg;
    rep_cmd->add_option("--csv", rep_csv)->required();
    rep_cmd->add_option("--out", rep_svg)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*synth_cmd) {
            scfg.model = synth::model_from_string(synth_model);
            return cmd_synth(scfg, synth_out);
        }
        if (*stats_cmd) return cmd_stats(stats_graph, stats_mode, stats_out);
        if (*sample_cmd) {
            if (sample_mode != "mhrw" && sample_mode != "ego") {
                throw UsageError("unknown sample mode: " + sample_mode);
            }
            return cmd_sample(sample_world, sample_start, sample_mode,
                              sample_iters, sample_seed, sample_restart,
                              sample_rate, sample_plan, sample_cache,
                              sample_out);
        }
        if (*rec_cmd) {
            return cmd_recommend(rec_graph, rec_system, rec_targets,
                                 rec_targets_file, rec_k, rec_seed,
                                 rec_damping, rec_no_filter, rec_out);
        }
        if (*eval_cmd) {
            return cmd_evaluate(eval_t1, eval_t2, eval_systems, eval_k,
                                eval_seed, eval_damping, eval_no_filter,
                                eval_out);
        }
        if (*il_cmd) {
            return cmd_interleave(il_a, il_b, il_clicks, il_seed, il_display);
        }
        if (*rep_cmd) return cmd_report(rep_csv, rep_svg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
