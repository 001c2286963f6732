#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fedirec/cf.hpp"
#include "fedirec/graph.hpp"

using namespace fedirec;
using namespace fedirec::cf;

namespace {

DirectedGraph from_string(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in).graph;
}

// brute-force BM25 over raw profiles, independent of the index structures
double naive_bm25(const std::vector<UserProfile>& profiles,
                  const std::vector<NodeId>& query, NodeId doc, double k1,
                  double b) {
    const double n_docs = static_cast<double>(profiles.size());
    double avg_len = 0.0;
    for (const auto& p : profiles) avg_len += static_cast<double>(p.tokens.size());
    avg_len /= n_docs;
    const UserProfile* target = nullptr;
    for (const auto& p : profiles) {
        if (p.owner == doc) target = &p;
    }
    REQUIRE(target != nullptr);
    double score = 0.0;
    for (NodeId term : query) {
        std::size_t df = 0;
        for (const auto& p : profiles) {
            df += std::count(p.tokens.begin(), p.tokens.end(), term) > 0;
        }
        if (df == 0) continue;
        const double tf = static_cast<double>(
            std::count(target->tokens.begin(), target->tokens.end(), term));
        if (tf == 0.0) continue;
        const double idf = std::log(1.0 + (n_docs - df + 0.5) / (df + 0.5));
        const double len = static_cast<double>(target->tokens.size());
        score += idf * tf * (k1 + 1.0) /
                 (tf + k1 * (1.0 - b + b * len / avg_len));
    }
    return score;
}

std::vector<UserProfile> random_profiles(std::mt19937_64& rng,
                                         std::size_t max_docs) {
    std::uniform_int_distribution<std::size_t> n_docs(2, max_docs);
    std::uniform_int_distribution<int> n_tokens(1, 8);
    std::uniform_int_distribution<NodeId> term(100, 115);
    std::vector<UserProfile> profiles;
    const std::size_t docs = n_docs(rng);
    for (std::size_t d = 0; d < docs; ++d) {
        std::vector<NodeId> tokens;
        const int cnt = n_tokens(rng);
        for (int t = 0; t < cnt; ++t) tokens.push_back(term(rng));
        std::sort(tokens.begin(), tokens.end());
        tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
        profiles.push_back({static_cast<NodeId>(d), std::move(tokens)});
    }
    return profiles;
}

}  // namespace

TEST_CASE("build_profiles per strategy") {
    // a follows {b, c}; d follows a
    const auto g = from_string("a\tb\na\tc\nd\ta\n");
    const auto a = static_cast<NodeId>(g.id_of("a"));

    auto find = [](const std::vector<UserProfile>& ps, NodeId owner)
        -> const UserProfile* {
        for (const auto& p : ps) {
            if (p.owner == owner) return &p;
        }
        return nullptr;
    };

    const auto combined = build_profiles(g, ProfileStrategy::Combined);
    const auto* pa = find(combined, a);
    REQUIRE(pa != nullptr);
    CHECK(pa->tokens.size() == 3);  // b, c, d

    // following-strategy: out-degree-0 nodes get no profile
    const auto following = build_profiles(g, ProfileStrategy::Following);
    const auto b = static_cast<NodeId>(g.id_of("b"));
    CHECK(find(following, b) == nullptr);

    // reciprocated pair, followers strategy
    const auto g2 = from_string("a\tb\nb\ta\n");
    const auto followers = build_profiles(g2, ProfileStrategy::Followers);
    const auto a2 = static_cast<NodeId>(g2.id_of("a"));
    const auto* pa2 = find(followers, a2);
    REQUIRE(pa2 != nullptr);
    CHECK(pa2->tokens == std::vector<NodeId>{
                             static_cast<NodeId>(g2.id_of("b"))});
}

TEST_CASE("bm25 zero overlap scores zero") {
    std::vector<UserProfile> profiles{{0, {1, 2}}, {1, {3, 4}}};
    ProfileIndex index(profiles);
    CHECK(index.bm25_score({5, 6}, 0) == 0.0);
}

TEST_CASE("bm25 single-doc hand case: score = ln(4/3)") {
    std::vector<UserProfile> profiles{{0, {7}}};
    ProfileIndex index(profiles);
    // N=1, df=1 -> idf = ln(1 + 0.5/1.5); tf term = 2.2 / (1 + 1.2) = 1
    const double expected = std::log(4.0 / 3.0);
    CHECK(std::fabs(index.bm25_score({7}, 0) - expected) < 1e-12);
}

TEST_CASE("bm25 unindexed doc is a lookup error") {
    std::vector<UserProfile> profiles{{0, {1}}};
    ProfileIndex index(profiles);
    CHECK_THROWS_AS(index.bm25_score({1}, 99), std::out_of_range);
}

TEST_CASE("idf is positive for every df in [1, N]") {
    std::vector<UserProfile> profiles;
    for (NodeId d = 0; d < 10; ++d) profiles.push_back({d, {1}});
    ProfileIndex index(profiles);
    for (std::size_t df = 1; df <= 10; ++df) CHECK(index.idf(df) > 0.0);
}

TEST_CASE("parameter changes never break the zero-overlap invariant") {
    std::vector<UserProfile> profiles{{0, {1, 2}}, {1, {3}}};
    ProfileIndex a(profiles, 1.2, 0.75);
    ProfileIndex b(profiles, 2.4, 1.0);
    CHECK(a.bm25_score({9}, 0) == 0.0);
    CHECK(b.bm25_score({9}, 0) == 0.0);
}

TEST_CASE("term-at-a-time scoring equals the naive double loop") {
    std::mt19937_64 rng(2025);
    for (int trial = 0; trial < 50; ++trial) {
        const auto profiles = random_profiles(rng, 20);
        ProfileIndex index(profiles);
        std::uniform_int_distribution<NodeId> term(100, 115);
        std::vector<NodeId> query;
        for (int t = 0; t < 5; ++t) query.push_back(term(rng));
        std::sort(query.begin(), query.end());
        query.erase(std::unique(query.begin(), query.end()), query.end());

        auto scored = index.score_all(query);
        for (const auto& [doc, score] : scored) {
            const double expected =
                naive_bm25(profiles, query, doc, index.k1(), index.b());
            CHECK(score == doctest::Approx(expected).epsilon(1e-12));
        }
        // docs omitted from score_all must genuinely score 0
        for (const auto& p : profiles) {
            const bool listed =
                std::any_of(scored.begin(), scored.end(),
                            [&](const auto& e) { return e.first == p.owner; });
            if (!listed) {
                CHECK(naive_bm25(profiles, query, p.owner, index.k1(),
                                 index.b()) == 0.0);
            }
        }
    }
}

TEST_CASE("monotonicity: adding a query-term occurrence never lowers a score") {
    // same index statistics, doc B = doc A plus the query term
    std::vector<UserProfile> profiles{{0, {1, 2, 3}}, {1, {2, 3, 9}}};
    ProfileIndex index(profiles);
    const std::vector<NodeId> query{9};
    CHECK(index.bm25_score(query, 1) > index.bm25_score(query, 0));
}

TEST_CASE("recommend_cf: identical user ranks first") {
    // t and twin follow the same pair; other overlaps on one
    const auto g = from_string(
        "t\tx\nt\ty\ntwin\tx\ntwin\ty\nother\tx\nother\tz\n");
    const auto profiles = build_profiles(g, ProfileStrategy::Following);
    ProfileIndex index(profiles);
    CfOptions opt;
    opt.k = 10;
    const auto t = static_cast<NodeId>(g.id_of("t"));
    const auto list = recommend_cf(index, g, t, opt);
    REQUIRE(!list.entries.empty());
    CHECK(list.entries.front().first == static_cast<NodeId>(g.id_of("twin")));
}

TEST_CASE("recommend_cf filters target and existing followees") {
    // t already follows its only possible candidate
    const auto g = from_string("t\tc\nc\tx\nt\tx\n");
    const auto profiles = build_profiles(g, ProfileStrategy::Following);
    ProfileIndex index(profiles);
    CfOptions opt;
    opt.k = 10;
    const auto t = static_cast<NodeId>(g.id_of("t"));
    const auto list = recommend_cf(index, g, t, opt);
    for (const auto& [cand, score] : list.entries) {
        CHECK(cand != t);
        CHECK_FALSE(g.has_edge(t, cand));
    }
}

TEST_CASE("recommend_cf k=1 returns at most one entry") {
    const auto g = from_string("t\tx\na\tx\nb\tx\n");
    const auto profiles = build_profiles(g, ProfileStrategy::Following);
    ProfileIndex index(profiles);
    CfOptions opt;
    opt.k = 1;
    const auto list =
        recommend_cf(index, g, static_cast<NodeId>(g.id_of("t")), opt);
    CHECK(list.entries.size() <= 1);
}

TEST_CASE("recommend_cf unprofiled target is flagged, not thrown") {
    const auto g = from_string("a\tb\n");
    const auto profiles = build_profiles(g, ProfileStrategy::Following);
    ProfileIndex index(profiles);
    // b has no out-edges -> no following profile
    const auto b = static_cast<NodeId>(g.id_of("b"));
    const auto list = recommend_cf(index, g, b, {});
    CHECK(list.unprofiled);
    CHECK(list.entries.empty());
}

TEST_CASE("ordering matches naive scorer on random small indexes") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        const auto profiles = random_profiles(rng, 20);
        ProfileIndex index(profiles);
        DirectedGraph::Builder gb;
        for (std::size_t i = 0; i < profiles.size(); ++i) {
            gb.intern("u" + std::to_string(i));
        }
        const auto g = gb.build();

        const NodeId target = profiles.front().owner;
        CfOptions opt;
        opt.k = profiles.size();
        const auto list = recommend_cf(index, g, target, opt);

        std::vector<std::pair<NodeId, double>> expected;
        for (const auto& p : profiles) {
            if (p.owner == target) continue;
            const double s = naive_bm25(profiles, profiles.front().tokens,
                                        p.owner, index.k1(), index.b());
            if (s > 0.0) expected.emplace_back(p.owner, s);
        }
        std::sort(expected.begin(), expected.end(), [](auto& a, auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        REQUIRE(list.entries.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(list.entries[i].first == expected[i].first);
        }
    }
}

TEST_CASE("query subsampling is deterministic in the seed") {
    // profile bigger than the 10k cap
    std::vector<UserProfile> profiles;
    std::vector<NodeId> big;
    for (NodeId t = 1; t <= 12000; ++t) big.push_back(t);
    profiles.push_back({0, big});
    for (NodeId d = 1; d <= 5; ++d) {
        profiles.push_back({d, {d * 7, d * 7 + 1, d * 7 + 2}});
    }
    ProfileIndex index(profiles);
    DirectedGraph::Builder gb;
    for (int i = 0; i < 12001; ++i) gb.intern("u" + std::to_string(i));
    const auto g = gb.build();

    CfOptions opt;
    opt.k = 10;
    opt.rng_seed = 5;
    const auto l1 = recommend_cf(index, g, 0, opt);
    const auto l2 = recommend_cf(index, g, 0, opt);
    CHECK(l1.entries == l2.entries);
}

TEST_CASE("recommend_random") {
    SUBCASE("target following everyone leaves an empty list") {
        const auto g = from_string("t\ta\nt\tb\n");
        const auto list =
            recommend_random(g, static_cast<NodeId>(g.id_of("t")), 10, 1);
        CHECK(list.entries.empty());
    }
    SUBCASE("deterministic in the seed") {
        const auto g = from_string("a\tb\nb\tc\nc\td\nd\te\ne\ta\n");
        const auto l1 = recommend_random(g, 0, 3, 99);
        const auto l2 = recommend_random(g, 0, 3, 99);
        CHECK(l1.entries == l2.entries);
    }
    SUBCASE("no candidate is the target or an existing followee") {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<int> node(0, 40);
        DirectedGraph::Builder b;
        for (int e = 0; e < 150; ++e) {
            b.add_edge("n" + std::to_string(node(rng)),
                       "n" + std::to_string(node(rng)));
        }
        const auto g = b.build();
        for (NodeId t = 0; t < 10; ++t) {
            const auto list = recommend_random(g, t, 15, t);
            for (const auto& [cand, score] : list.entries) {
                CHECK(cand != t);
                CHECK_FALSE(g.has_edge(t, cand));
            }
        }
    }
    SUBCASE("scores are non-increasing") {
        const auto g = from_string("a\tb\nb\tc\nc\td\nd\te\ne\ta\n");
        const auto list = recommend_random(g, 0, 4, 7);
        for (std::size_t i = 1; i < list.entries.size(); ++i) {
            CHECK(list.entries[i - 1].second >= list.entries[i].second);
        }
    }
}
