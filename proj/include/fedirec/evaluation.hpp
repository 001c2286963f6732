#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fedirec/graph.hpp"
#include "fedirec/ranked_list.hpp"

namespace fedirec::eval {

// Two temporally ordered snapshots over the same key universe. Relevance for
// a target is the set of followees it gained between train and truth.
struct SnapshotPair {
    const DirectedGraph* train = nullptr;
    const DirectedGraph* truth = nullptr;
    std::vector<NodeId> eval_targets;  // train ids, sorted
    std::map<NodeId, std::set<NodeId>> relevance;  // train ids
};

// Targets must be visited in train, still present in truth, and have at
// least one new out-edge.
SnapshotPair build_snapshot_pair(const DirectedGraph& train,
                                 const DirectedGraph& truth);

double average_precision(const std::vector<NodeId>& recs,
                         const std::set<NodeId>& relevant);
// Divisor stays k even when the list is shorter.
double precision_at(const std::vector<NodeId>& recs,
                    const std::set<NodeId>& relevant, std::size_t k);
bool success_at(const std::vector<NodeId>& recs,
                const std::set<NodeId>& relevant, std::size_t k);

enum class Mark { Improvement, Deterioration, None };

struct TTestResult {
    double t_statistic = 0.0;
    double p_value = 1.0;
    std::size_t df = 0;
    bool degenerate = false;  // nonzero constant differences (sd = 0)
    Mark mark = Mark::None;
};

// Two-tailed paired t-test with the p < 0.01 marking rule. The sign of t
// (a minus b) decides improvement vs deterioration.
TTestResult paired_t_test(const std::vector<double>& a,
                          const std::vector<double>& b,
                          double alpha = 0.01);

enum class Origin : std::uint8_t { A, B, Both };

struct InterleavedList {
    std::vector<NodeId> items;
    std::vector<Origin> origin;
    bool first_picker_a = true;
};

// Balanced interleaving: the list whose pointer is behind contributes its
// next unseen item; the seeded coin decides who wins pointer ties.
InterleavedList balanced_interleave(const std::vector<NodeId>& a,
                                    const std::vector<NodeId>& b,
                                    std::uint64_t rng_seed,
                                    std::size_t display_size = 10);

enum class Verdict { AWins, BWins, Tie };
std::string to_string(Verdict v);

struct Attribution {
    Verdict verdict = Verdict::Tie;
    std::size_t credit_a = 0;
    std::size_t credit_b = 0;
    std::size_t lowest_click_rank = 0;  // 1-based; 0 when no clicks
    std::size_t prefix_k = 0;
};

// Joachims credit rule: k is the smallest joint prefix length of a and b
// covering the interleaved list down to the lowest clicked rank; each side
// is credited its clicked items within its own top-k.
Attribution attribute_clicks(const InterleavedList& il,
                             const std::vector<NodeId>& a,
                             const std::vector<NodeId>& b,
                             const std::set<NodeId>& clicks);

struct SystemResult {
    std::string name;
    std::vector<double> ap;            // per target, target order fixed
    std::map<std::size_t, std::vector<double>> p_at;
    std::map<std::size_t, std::vector<double>> s_at;
    double map = 0.0;
    std::map<std::size_t, double> mean_p_at;
    std::map<std::size_t, double> mean_s_at;
    // p@k curve over k = 1..curve_max
    std::vector<double> p_curve;
};

struct SignificanceRow {
    std::string metric;  // "MAP", "s@1", ...
    TTestResult test;    // row i vs row i-1
};

struct EvalReport {
    std::vector<NodeId> targets;
    std::vector<SystemResult> systems;
    // significance[i] compares systems[i] vs systems[i-1], per metric column
    std::vector<std::vector<SignificanceRow>> significance;

    std::string to_json() const;
    // Text table with MAP / s@k columns and adjacent-row significance marks.
    std::string render_table() const;
    // CSV rows (k, system, p@k) for the precision curve.
    std::string p_curve_csv() const;
};

using Recommender = std::function<rec::RankedList(NodeId target)>;

struct NamedSystem {
    std::string name;
    Recommender run;
};

// Runs every system over every eval target, computes per-target metrics and
// adjacent-row significance. A system failure on a target (empty list)
// scores 0 there so pairing stays intact.
EvalReport run_experiment(const SnapshotPair& pair,
                          const std::vector<NamedSystem>& systems,
                          const std::vector<std::size_t>& ks_report = {1, 5, 10},
                          std::size_t curve_max = 100);

}  // namespace fedirec::eval
