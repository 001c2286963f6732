#include "fedirec/cf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fedirec::cf {

ProfileStrategy strategy_from_string(const std::string& name) {
    if (name == "following") return ProfileStrategy::Following;
    if (name == "followers") return ProfileStrategy::Followers;
    if (name == "combined") return ProfileStrategy::Combined;
    throw std::invalid_argument("unknown profile strategy: " + name);
}

std::string to_string(ProfileStrategy s) {
    switch (s) {
        case ProfileStrategy::Following: return "following";
        case ProfileStrategy::Followers: return "followers";
        case ProfileStrategy::Combined: return "combined";
    }
    return "?";
}

std::vector<UserProfile> build_profiles(const DirectedGraph& g,
                                        ProfileStrategy strategy) {
    std::vector<UserProfile> profiles;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (!g.is_visited(u)) continue;
        std::vector<NodeId> tokens;
        switch (strategy) {
            case ProfileStrategy::Following:
                tokens = g.out_neighbors(u);
                break;
            case ProfileStrategy::Followers:
                tokens = g.in_neighbors(u);
                break;
            case ProfileStrategy::Combined:
                tokens = g.undirected_neighbors(u);
                break;
        }
        std::erase(tokens, u);
        if (tokens.empty()) continue;
        profiles.push_back({u, std::move(tokens)});
    }
    return profiles;
}

ProfileIndex::ProfileIndex(const std::vector<UserProfile>& profiles, double k1,
                           double b)
    : k1_(k1), b_(b) {
    std::size_t total_len = 0;
    for (const auto& p : profiles) {
        const auto slot = static_cast<std::uint32_t>(owners_.size());
        owners_.push_back(p.owner);
        doc_slot_.emplace(p.owner, slot);
        doc_lengths_.push_back(static_cast<std::uint32_t>(p.tokens.size()));
        tokens_by_owner_.emplace(p.owner, p.tokens);
        total_len += p.tokens.size();
        for (NodeId t : p.tokens) {
            // profile tokens are sets, so tf is always 1
            postings_[t].push_back({slot, 1});
        }
    }
    avg_doc_length_ = doc_lengths_.empty()
                          ? 0.0
                          : static_cast<double>(total_len) / doc_lengths_.size();
}

const std::vector<NodeId>& ProfileIndex::doc_tokens(NodeId owner) const {
    auto it = tokens_by_owner_.find(owner);
    if (it == tokens_by_owner_.end()) {
        throw std::out_of_range("document not indexed");
    }
    return it->second;
}

double ProfileIndex::idf(std::size_t df) const {
    const double n = static_cast<double>(doc_count());
    const double d = static_cast<double>(df);
    return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

double ProfileIndex::bm25_score(const std::vector<NodeId>& query,
                                NodeId doc) const {
    auto slot_it = doc_slot_.find(doc);
    if (slot_it == doc_slot_.end()) {
        throw std::out_of_range("bm25_score: document not indexed");
    }
    const std::uint32_t slot = slot_it->second;
    const double len_norm =
        k1_ * (1.0 - b_ + b_ * doc_lengths_[slot] / avg_doc_length_);
    double score = 0.0;
    for (NodeId term : query) {
        auto p = postings_.find(term);
        if (p == postings_.end()) continue;
        const auto& list = p->second;
        auto hit = std::lower_bound(
            list.begin(), list.end(), slot,
            [](const Posting& a, std::uint32_t s) { return a.slot < s; });
        if (hit == list.end() || hit->slot != slot) continue;
        const double tf = hit->tf;
        score += idf(list.size()) * tf * (k1_ + 1.0) / (tf + len_norm);
    }
    return score;
}

std::vector<std::pair<NodeId, double>> ProfileIndex::score_all(
    const std::vector<NodeId>& query) const {
    std::vector<double> acc(doc_count(), 0.0);
    for (NodeId term : query) {
        auto p = postings_.find(term);
        if (p == postings_.end()) continue;
        const auto& list = p->second;
        const double w = idf(list.size()) * (k1_ + 1.0);
        for (const Posting& post : list) {
            const double tf = post.tf;
            const double len_norm =
                k1_ * (1.0 - b_ + b_ * doc_lengths_[post.slot] / avg_doc_length_);
            acc[post.slot] += w * tf / (tf + len_norm);
        }
    }
    std::vector<std::pair<NodeId, double>> out;
    for (std::uint32_t slot = 0; slot < acc.size(); ++slot) {
        if (acc[slot] > 0.0) out.emplace_back(owners_[slot], acc[slot]);
    }
    return out;
}

rec::RankedList recommend_cf(const ProfileIndex& index,
                             const DirectedGraph& g_train, NodeId target,
                             const CfOptions& options) {
    rec::RankedList list;
    list.target = target;
    list.k = options.k;
    if (!index.has_doc(target)) {
        list.unprofiled = true;
        return list;
    }
    std::vector<NodeId> query = index.doc_tokens(target);
    if (query.size() > ProfileIndex::kMaxQueryTokens) {
        std::mt19937_64 rng(options.rng_seed);
        std::vector<NodeId> subset;
        subset.reserve(ProfileIndex::kMaxQueryTokens);
        std::sample(query.begin(), query.end(), std::back_inserter(subset),
                    ProfileIndex::kMaxQueryTokens, rng);
        query = std::move(subset);
    }

    auto scored = index.score_all(query);
    std::erase_if(scored, [&](const auto& e) {
        if (e.first == target) return true;
        return options.filter_followees && g_train.has_edge(target, e.first);
    });
    list.entries = rec::top_k(std::move(scored), options.k);
    return list;
}

rec::RankedList recommend_random(const DirectedGraph& g_train, NodeId target,
                                 std::size_t k, std::uint64_t rng_seed,
                                 bool filter_followees) {
    if (g_train.node_count() == 0) {
        throw std::domain_error("recommend_random: empty graph");
    }
    std::vector<NodeId> eligible;
    eligible.reserve(g_train.node_count());
    for (NodeId u = 0; u < g_train.node_count(); ++u) {
        if (u == target) continue;
        if (filter_followees && g_train.has_edge(target, u)) continue;
        eligible.push_back(u);
    }
    std::mt19937_64 rng(rng_seed);
    std::vector<NodeId> picked;
    picked.reserve(std::min(k, eligible.size()));
    std::sample(eligible.begin(), eligible.end(), std::back_inserter(picked),
                k, rng);
    std::shuffle(picked.begin(), picked.end(), rng);

    rec::RankedList list;
    list.target = target;
    list.k = k;
    list.algorithm = "random";
    list.entries.reserve(picked.size());
    // descending pseudo-scores keep the non-increasing invariant
    double score = static_cast<double>(picked.size());
    for (NodeId u : picked) list.entries.emplace_back(u, score--);
    return list;
}

}  // namespace fedirec::cf
