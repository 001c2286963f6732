#pragma once

#include <cstdint>
#include <vector>

#include "fedirec/graph.hpp"
#include "fedirec/ranked_list.hpp"

namespace fedirec::ppr {

struct PprConfig {
    double damping = 0.85;
    double tolerance = 1e-10;  // L1 residual
    std::size_t max_iterations = 1000;
    // Follow the undirected view instead of out-edges.
    bool undirected = false;
};

struct PprVector {
    std::vector<double> scores;  // indexed by dense node id, sums to 1
    NodeId seed = 0;
    std::size_t iterations_used = 0;
    bool converged = false;
};

// Power iteration for r = damping * W^T r + (1 - damping) * e_seed, where W
// row-normalizes the transition edges and a dangling node sends its whole
// mass back to the seed. With that convention nodes unreachable from the
// seed score exactly 0 and every iterate sums to 1.
PprVector power_iteration(const DirectedGraph& g, NodeId seed,
                          const PprConfig& config = {});

// Direct linear solve of the same fixed point by Gaussian elimination;
// intended as a test oracle for graphs of a few dozen nodes.
PprVector dense_solve(const DirectedGraph& g, NodeId seed,
                      double damping = 0.85, bool undirected = false);

struct PprOptions {
    std::size_t k = 100;
    PprConfig config;
    bool filter_followees = true;
};

rec::RankedList recommend_ppr(const DirectedGraph& g_train, NodeId target,
                              const PprOptions& options);

}  // namespace fedirec::ppr
