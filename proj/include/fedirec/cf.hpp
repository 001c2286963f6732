#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "fedirec/graph.hpp"
#include "fedirec/ranked_list.hpp"

namespace fedirec::cf {

enum class ProfileStrategy { Following, Followers, Combined };

ProfileStrategy strategy_from_string(const std::string& name);
std::string to_string(ProfileStrategy s);

// A user as a set of neighbor ids treated as opaque terms. The owner never
// appears in its own token set.
struct UserProfile {
    NodeId owner;
    std::vector<NodeId> tokens;  // sorted, unique
};

// Profiles for every visited node with at least one token.
std::vector<UserProfile> build_profiles(const DirectedGraph& g,
                                        ProfileStrategy strategy);

// Inverted index over profiles-as-documents with BM25 scoring.
class ProfileIndex {
public:
    static constexpr double kDefaultK1 = 1.2;
    static constexpr double kDefaultB = 0.75;
    static constexpr std::size_t kMaxQueryTokens = 10000;

    ProfileIndex(const std::vector<UserProfile>& profiles,
                 double k1 = kDefaultK1, double b = kDefaultB);

    std::size_t doc_count() const { return doc_lengths_.size(); }
    double avg_doc_length() const { return avg_doc_length_; }
    bool has_doc(NodeId owner) const { return doc_slot_.count(owner) > 0; }
    const std::vector<NodeId>& doc_tokens(NodeId owner) const;

    // ln(1 + (N - df + 0.5) / (df + 0.5)); positive for every df in [1, N].
    double idf(std::size_t df) const;

    // BM25 score of one document against a query token multiset. Terms
    // absent from the index contribute 0. Throws if the doc is not indexed.
    double bm25_score(const std::vector<NodeId>& query, NodeId doc) const;

    // Scores every indexed document against the query, term-at-a-time.
    std::vector<std::pair<NodeId, double>> score_all(
        const std::vector<NodeId>& query) const;

    double k1() const { return k1_; }
    double b() const { return b_; }

private:
    struct Posting {
        std::uint32_t slot;  // dense document slot
        std::uint32_t tf;
    };
    double k1_, b_;
    double avg_doc_length_ = 0.0;
    std::vector<NodeId> owners_;           // slot -> owner
    std::vector<std::uint32_t> doc_lengths_;
    std::unordered_map<NodeId, std::uint32_t> doc_slot_;
    std::unordered_map<NodeId, std::vector<Posting>> postings_;
    std::unordered_map<NodeId, std::vector<NodeId>> tokens_by_owner_;
};

struct CfOptions {
    std::size_t k = 100;
    std::uint64_t rng_seed = 0;
    bool filter_followees = true;
};

// BM25 ranking of indexed profiles against the target's profile-as-query.
// Queries over 10,000 tokens are subsampled with the seeded rng. An
// unprofiled target yields an empty list flagged `unprofiled`.
rec::RankedList recommend_cf(const ProfileIndex& index,
                             const DirectedGraph& g_train, NodeId target,
                             const CfOptions& options);

// Uniform sample of k eligible nodes (everything except the target and its
// existing followees), without replacement.
rec::RankedList recommend_random(const DirectedGraph& g_train, NodeId target,
                                 std::size_t k, std::uint64_t rng_seed,
                                 bool filter_followees = true);

}  // namespace fedirec::cf
