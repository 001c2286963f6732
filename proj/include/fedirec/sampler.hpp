#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "fedirec/federation.hpp"
#include "fedirec/graph.hpp"

namespace fedirec::sampler {

struct WalkConfig {
    std::size_t iterations = 5500;
    std::uint64_t rng_seed = 0;
    // Ego walk only: probability of jumping back to the seed (1 - gamma).
    double restart_probability = 0.2;
};

struct SampleResult {
    std::string start_key;
    std::vector<std::string> visited_order;  // one entry per iteration
    std::set<std::string> unique_visited;
    // Adjacency known only for fetched-ok nodes; their neighbors appear as
    // unvisited nodes.
    DirectedGraph subgraph;
    std::vector<std::string> fetch_failures;  // keys whose fetch did not return ok
    std::size_t proposals = 0;
    std::size_t accepted = 0;

    void write(const std::string& edge_path, const std::string& manifest_path,
               const WalkConfig& config) const;
};

// min(1, deg_current/deg_candidate); the MHRW acceptance rule on the
// undirected degree view.
double mhrw_acceptance(std::size_t deg_current, std::size_t deg_candidate);

bool mhrw_accept(std::size_t deg_current, std::size_t deg_candidate,
                 std::mt19937_64& rng);

// MHRW over the undirected view of the follow graph, fetching adjacency
// lazily through the federation client. Throws if the start key cannot be
// fetched; failures mid-walk are recorded and the walk continues (the failed
// candidate is treated as degree 0 and never accepted).
SampleResult mhrw_sample(const std::string& start_key, const WalkConfig& config,
                         federation::FederationClient& client);

// Egocentric restart walk: move to a uniform undirected neighbor with
// probability 1 - restart_probability, else jump back to the seed. A node
// with no usable neighbors forces a teleport.
SampleResult ego_walk(const std::string& seed_key, const WalkConfig& config,
                      federation::FederationClient& client);

// Post-burn-in visit counts over unique visited nodes, with optional
// thinning stride (>1 decorrelates consecutive walk positions for
// distribution tests).
std::unordered_map<std::string, std::size_t> visit_counts(
    const SampleResult& result, double burn_in_fraction, std::size_t stride = 1);

}  // namespace fedirec::sampler
