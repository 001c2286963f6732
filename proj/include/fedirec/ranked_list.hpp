#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fedirec/graph.hpp"

namespace fedirec::rec {

// Ordered recommendation list. Scores are non-increasing; ties are broken by
// ascending candidate id so output is deterministic. The target and its
// existing followees are excluded by construction.
struct RankedList {
    NodeId target = 0;
    std::vector<std::pair<NodeId, double>> entries;
    std::size_t k = 0;
    std::string algorithm;
    bool unprofiled = false;   // target had no profile (cold start)
    bool converged = true;     // PPR only

    std::string to_json_line(const DirectedGraph& g) const;
};

// Sorts candidates by (score desc, id asc) and truncates to k.
std::vector<std::pair<NodeId, double>> top_k(
    std::vector<std::pair<NodeId, double>> scored, std::size_t k);

}  // namespace fedirec::rec
