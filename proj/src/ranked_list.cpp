#include "fedirec/ranked_list.hpp"

#include <algorithm>

#include "json.hpp"

namespace fedirec::rec {

std::vector<std::pair<NodeId, double>> top_k(
    std::vector<std::pair<NodeId, double>> scored, std::size_t k) {
    auto cmp = [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    };
    if (scored.size() > k) {
        std::partial_sort(scored.begin(), scored.begin() + k, scored.end(), cmp);
        scored.resize(k);
    } else {
        std::sort(scored.begin(), scored.end(), cmp);
    }
    return scored;
}

std::string RankedList::to_json_line(const DirectedGraph& g) const {
    nlohmann::json j;
    j["target"] = g.key_of(target);
    j["algorithm"] = algorithm;
    j["k"] = k;
    if (unprofiled) j["unprofiled"] = true;
    if (!converged) j["converged"] = false;
    auto arr = nlohmann::json::array();
    for (const auto& [cand, score] : entries) {
        arr.push_back({g.key_of(cand), score});
    }
    j["entries"] = std::move(arr);
    return j.dump();
}

}  // namespace fedirec::rec
