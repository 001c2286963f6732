#include "fedirec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace fedirec {

std::size_t DirectedGraph::visited_count() const {
    return static_cast<std::size_t>(
        std::count(visited_.begin(), visited_.end(), true));
}

std::int64_t DirectedGraph::id_of(const std::string& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

bool DirectedGraph::has_edge(NodeId u, NodeId v) const {
    const auto& adj = out_adj_.at(u);
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::size_t DirectedGraph::degree(NodeId u, DegreeMode mode) const {
    switch (mode) {
        case DegreeMode::In:
            return in_adj_.at(u).size();
        case DegreeMode::Out:
            return out_adj_.at(u).size();
        case DegreeMode::Total:
            return undirected_neighbors(u).size();
    }
    return 0;
}

std::vector<NodeId> DirectedGraph::undirected_neighbors(NodeId u) const {
    const auto& out = out_adj_.at(u);
    const auto& in = in_adj_.at(u);
    std::vector<NodeId> merged;
    merged.reserve(out.size() + in.size());
    std::set_union(out.begin(), out.end(), in.begin(), in.end(),
                   std::back_inserter(merged));
    return merged;
}

namespace {

double pearson(const std::vector<double>& x, const std::vector<double>& y,
               bool& degenerate) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        degenerate = true;
        return 0.0;
    }
    degenerate = false;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

GraphStats DirectedGraph::compute_stats(AssortativityMode mode) const {
    if (node_count() == 0) throw std::domain_error("compute_stats: empty graph");
    GraphStats s;
    s.node_count = node_count();
    s.visited_count = visited_count();
    s.edge_count = edge_count_;
    s.avg_degree_directed = static_cast<double>(edge_count_) / node_count();
    s.avg_degree_undirected = 2.0 * s.avg_degree_directed;

    if (edge_count_ > 0) {
        std::vector<double> src_deg, dst_deg;
        src_deg.reserve(edge_count_);
        dst_deg.reserve(edge_count_);
        auto deg_for = [&](NodeId u, bool source) -> double {
            switch (mode) {
                case AssortativityMode::OutIn:
                    return static_cast<double>(
                        source ? out_adj_[u].size() : in_adj_[u].size());
                case AssortativityMode::OutOut:
                    return static_cast<double>(out_adj_[u].size());
                case AssortativityMode::InIn:
                    return static_cast<double>(in_adj_[u].size());
                case AssortativityMode::InOut:
                    return static_cast<double>(
                        source ? in_adj_[u].size() : out_adj_[u].size());
                case AssortativityMode::Undirected:
                    return static_cast<double>(degree(u, DegreeMode::Total));
            }
            return 0.0;
        };
        for (NodeId u = 0; u < node_count(); ++u) {
            for (NodeId v : out_adj_[u]) {
                src_deg.push_back(deg_for(u, true));
                dst_deg.push_back(deg_for(v, false));
            }
        }
        s.assortativity = pearson(src_deg, dst_deg, s.assortativity_degenerate);
    } else {
        s.assortativity_degenerate = true;
    }

    // Mean local clustering coefficient on the undirected view; nodes of
    // undirected degree < 2 contribute 0.
    double ncc_sum = 0.0;
    std::vector<char> mark(node_count(), 0);
    for (NodeId u = 0; u < node_count(); ++u) {
        auto nbrs = undirected_neighbors(u);
        if (nbrs.size() < 2) continue;
        for (NodeId w : nbrs) mark[w] = 1;
        std::size_t links = 0;
        for (NodeId v : nbrs) {
            for (NodeId w : undirected_neighbors(v)) {
                if (w != u && w != v && mark[w]) ++links;
            }
        }
        for (NodeId w : nbrs) mark[w] = 0;
        // each neighbor pair seen twice (v,w) and (w,v)
        const double possible =
            static_cast<double>(nbrs.size()) * (nbrs.size() - 1);
        ncc_sum += static_cast<double>(links) / possible;
    }
    s.ncc = ncc_sum / static_cast<double>(node_count());

    s.scc_fraction = static_cast<double>(largest_scc_size(*this)) /
                     static_cast<double>(node_count());
    return s;
}

std::map<std::string, std::set<std::string>> DirectedGraph::diff_edges(
    const DirectedGraph& older, const DirectedGraph& newer) {
    std::map<std::string, std::set<std::string>> result;
    for (NodeId u = 0; u < newer.node_count(); ++u) {
        const std::string& key = newer.key_of(u);
        const std::int64_t old_id = older.id_of(key);
        if (old_id < 0) continue;
        std::set<std::string> old_targets;
        for (NodeId v : older.out_neighbors(static_cast<NodeId>(old_id))) {
            old_targets.insert(older.key_of(v));
        }
        std::set<std::string> added;
        for (NodeId v : newer.out_neighbors(u)) {
            const std::string& t = newer.key_of(v);
            if (!old_targets.count(t)) added.insert(t);
        }
        if (!added.empty()) result.emplace(key, std::move(added));
    }
    return result;
}

void DirectedGraph::dump_edge_list(std::ostream& out) const {
    // canonical order so the output is independent of intern order
    std::vector<std::pair<std::string_view, std::string_view>> edges;
    edges.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : out_adj_[u]) {
            edges.emplace_back(keys_[u], keys_[v]);
        }
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& [from, to] : edges) {
        out << from << '\t' << to << '\n';
    }
}

NodeId DirectedGraph::Builder::intern(const std::string& key) {
    auto [it, inserted] = index_.emplace(key, static_cast<NodeId>(keys_.size()));
    if (inserted) {
        keys_.push_back(key);
        visited_.push_back(default_visited_);
    }
    return it->second;
}

void DirectedGraph::Builder::add_edge(const std::string& src,
                                      const std::string& dst) {
    add_edge(intern(src), intern(dst));
}

void DirectedGraph::Builder::add_edge(NodeId src, NodeId dst) {
    if (src == dst) {
        ++self_loops_;
        return;
    }
    edges_.emplace_back(src, dst);
}

void DirectedGraph::Builder::mark_visited(NodeId u, bool v) {
    visited_.at(u) = v;
}

void DirectedGraph::Builder::mark_all_visited() {
    std::fill(visited_.begin(), visited_.end(), true);
}

DirectedGraph DirectedGraph::Builder::build() {
    DirectedGraph g;
    g.keys_ = std::move(keys_);
    g.index_ = std::move(index_);
    g.visited_ = std::move(visited_);
    g.out_adj_.assign(g.keys_.size(), {});
    g.in_adj_.assign(g.keys_.size(), {});
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (auto [u, v] : edges_) {
        g.out_adj_[u].push_back(v);
        g.in_adj_[v].push_back(u);
    }
    for (auto& adj : g.in_adj_) std::sort(adj.begin(), adj.end());
    g.edge_count_ = edges_.size();
    return g;
}

EdgeListLoad load_edge_list(std::istream& in) {
    DirectedGraph::Builder b;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
            line.find('\t', tab + 1) != std::string::npos) {
            throw ParseError("malformed edge list line " +
                             std::to_string(line_no) + ": \"" + line + "\"");
        }
        b.add_edge(line.substr(0, tab), line.substr(tab + 1));
    }
    EdgeListLoad result;
    result.self_loops_dropped = b.self_loops_dropped();
    result.graph = b.build();
    return result;
}

EdgeListLoad load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return load_edge_list(in);
}

std::size_t largest_scc_size(const DirectedGraph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) return 0;
    constexpr NodeId kUnset = static_cast<NodeId>(-1);
    std::vector<NodeId> index(n, kUnset), lowlink(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<NodeId> stack;
    std::size_t best = 0;
    NodeId counter = 0;

    struct Frame {
        NodeId node;
        std::size_t next_child;
    };
    std::vector<Frame> call;
    for (NodeId root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        call.push_back({root, 0});
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& out = g.out_neighbors(f.node);
            if (f.next_child < out.size()) {
                const NodeId w = out[f.next_child++];
                if (index[w] == kUnset) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[f.node] = std::min(lowlink[f.node], index[w]);
                }
            } else {
                const NodeId v = f.node;
                call.pop_back();
                if (!call.empty()) {
                    lowlink[call.back().node] =
                        std::min(lowlink[call.back().node], lowlink[v]);
                }
                if (lowlink[v] == index[v]) {
                    std::size_t size = 0;
                    NodeId w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        ++size;
                    } while (w != v);
                    best = std::max(best, size);
                }
            }
        }
    }
    return best;
}

}  // namespace fedirec
