#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fedirec {

using NodeId = std::uint32_t;

enum class DegreeMode { In, Out, Total };

// Assortativity is degree-correlation over directed edges; the four directed
// variants pair a source-degree choice with a target-degree choice. OutIn is
// the default reported variant. Undirected correlates total degrees.
enum class AssortativityMode { OutIn, OutOut, InIn, InOut, Undirected };

struct GraphStats {
    std::size_t node_count = 0;
    std::size_t visited_count = 0;
    std::size_t edge_count = 0;
    double assortativity = 0.0;
    bool assortativity_degenerate = false;  // denominator 0, value forced to 0
    double avg_degree_directed = 0.0;       // |E| / |V|
    double avg_degree_undirected = 0.0;     // 2|E| / |V|
    double ncc = 0.0;
    double scc_fraction = 0.0;
};

// Directed follow graph with dense node ids, immutable after construction.
// Edge (u,v) means u follows v. Both adjacency directions are kept, sorted
// and duplicate-free. `visited` marks nodes whose full adjacency is known.
class DirectedGraph {
public:
    DirectedGraph() = default;

    std::size_t node_count() const { return keys_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::size_t visited_count() const;

    const std::string& key_of(NodeId u) const { return keys_.at(u); }
    // -1 if the key is unknown.
    std::int64_t id_of(const std::string& key) const;

    const std::vector<NodeId>& out_neighbors(NodeId u) const { return out_adj_.at(u); }
    const std::vector<NodeId>& in_neighbors(NodeId u) const { return in_adj_.at(u); }
    bool is_visited(NodeId u) const { return visited_.at(u); }
    bool has_edge(NodeId u, NodeId v) const;

    std::size_t degree(NodeId u, DegreeMode mode) const;
    // Sorted union of out- and in-neighbors (the undirected view).
    std::vector<NodeId> undirected_neighbors(NodeId u) const;

    GraphStats compute_stats(AssortativityMode mode = AssortativityMode::OutIn) const;

    // New out-edges per node, keyed by external key: out_newer \ out_older for
    // every key present in both graphs. Removed edges are ignored.
    static std::map<std::string, std::set<std::string>> diff_edges(
        const DirectedGraph& older, const DirectedGraph& newer);

    void dump_edge_list(std::ostream& out) const;

    class Builder {
    public:
        // Visited default for nodes interned after this call.
        void set_default_visited(bool v) { default_visited_ = v; }
        NodeId intern(const std::string& key);
        void add_edge(const std::string& src, const std::string& dst);
        void add_edge(NodeId src, NodeId dst);
        void mark_visited(NodeId u, bool v = true);
        void mark_all_visited();
        std::size_t self_loops_dropped() const { return self_loops_; }
        DirectedGraph build();

    private:
        std::vector<std::string> keys_;
        std::unordered_map<std::string, NodeId> index_;
        std::vector<std::pair<NodeId, NodeId>> edges_;
        std::vector<bool> visited_;
        std::size_t self_loops_ = 0;
        bool default_visited_ = true;
    };

private:
    std::vector<std::string> keys_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<std::vector<NodeId>> out_adj_;
    std::vector<std::vector<NodeId>> in_adj_;
    std::vector<bool> visited_;
    std::size_t edge_count_ = 0;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EdgeListLoad {
    DirectedGraph graph;
    std::size_t self_loops_dropped = 0;
};

// Lines are "src<TAB>dst"; '#' starts a comment line; blank lines skipped.
// All loaded nodes are marked visited. Throws ParseError with the line number
// on a malformed line.
EdgeListLoad load_edge_list(std::istream& in);
EdgeListLoad load_edge_list_file(const std::string& path);

// Largest strongly connected component size (iterative Tarjan).
std::size_t largest_scc_size(const DirectedGraph& g);

}  // namespace fedirec
