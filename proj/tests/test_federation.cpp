#include <algorithm>
#include <cstdio>
#include <sstream>
#include <thread>

#include "doctest.h"
#include "fedirec/federation.hpp"
#include "fedirec/graph.hpp"

using namespace fedirec;
using namespace fedirec::federation;

namespace {

DirectedGraph world_from(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in).graph;
}

// no sliding 1-second window may hold more than `rate` grants
void check_window_property(std::vector<double> grants, std::size_t rate) {
    std::sort(grants.begin(), grants.end());
    for (std::size_t i = 0; i + rate < grants.size(); ++i) {
        CHECK(grants[i + rate] - grants[i] >= 1.0 - 1e-12);
    }
}

}  // namespace

TEST_CASE("external key validation") {
    CHECK(valid_external_key("a@x"));
    CHECK_FALSE(valid_external_key("ax"));
    CHECK_FALSE(valid_external_key("@x"));
    CHECK_FALSE(valid_external_key("a@"));
    CHECK_FALSE(valid_external_key("a@x@y"));
    CHECK(instance_of("alice@mastodon.example") == "mastodon.example");
}

TEST_CASE("rate limiter: burst at the limit stays in one second") {
    VirtualClock clock;
    RateLimiter limiter(10.0, clock);
    for (int i = 0; i < 10; ++i) CHECK(limiter.acquire() == 0.0);
}

TEST_CASE("rate limiter: 11th acquisition waits") {
    VirtualClock clock;
    RateLimiter limiter(10.0, clock);
    for (int i = 0; i < 10; ++i) limiter.acquire();
    const double t11 = limiter.acquire();
    CHECK(t11 >= 0.1);  // token-refill lower bound
    check_window_property(limiter.grant_log(), 10);
}

TEST_CASE("rate limiter: limit 1 spaces grants by a second") {
    VirtualClock clock;
    RateLimiter limiter(1.0, clock);
    const double t1 = limiter.acquire();
    const double t2 = limiter.acquire();
    CHECK(t2 - t1 >= 1.0);
}

TEST_CASE("rate limiter: window property under concurrency") {
    VirtualClock clock;
    RateLimiter limiter(7.0, clock);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&] {
            for (int i = 0; i < 50; ++i) limiter.acquire();
        });
    }
    for (auto& t : threads) t.join();
    const auto grants = limiter.grant_log();
    CHECK(grants.size() == 200);
    check_window_property(grants, 7);
}

TEST_CASE("simulated provider echoes world adjacency") {
    const auto world = world_from("a@x\tb@y\n");
    SimulatedProvider provider(world);
    auto fwd = provider.fetch_following("a@x");
    REQUIRE(fwd.status == FetchStatus::Ok);
    CHECK(fwd.keys == std::vector<std::string>{"b@y"});
    auto back = provider.fetch_followers("b@y");
    REQUIRE(back.status == FetchStatus::Ok);
    CHECK(back.keys == std::vector<std::string>{"a@x"});
    CHECK(provider.fetch_following("nobody@x").status == FetchStatus::Gone);
}

TEST_CASE("failure plan marks instances down") {
    const auto world = world_from("a@x\tb@y\n");
    SimulatedProvider provider(world, {{"y", FetchStatus::InstanceDown}});
    CHECK(provider.fetch_following("b@y").status == FetchStatus::InstanceDown);
}

TEST_CASE("fetch_user: cache hit makes no provider call") {
    const auto world = world_from("a@x\tb@y\n");
    SimulatedProvider provider(world);
    VirtualClock clock;
    CacheStore cache;
    FederationClient client(provider, cache, {}, clock);

    const auto r1 = client.fetch_user("a@x");
    REQUIRE(r1.status == FetchStatus::Ok);
    CHECK(r1.following == std::vector<std::string>{"b@y"});
    const std::size_t calls = provider.content_request_count();
    CHECK(calls == 2);  // one endpoint pair

    const auto r2 = client.fetch_user("a@x");
    CHECK(provider.content_request_count() == calls);
    CHECK(r2.following == r1.following);
    CHECK(r2.fetched_at == r1.fetched_at);
    CHECK(client.counters().cache_hits == 1);
}

TEST_CASE("robots-blocked instance receives zero content requests") {
    const auto world = world_from("a@x\tb@y\n");
    SimulatedProvider provider(world, {{"y", FetchStatus::InstanceBlocked}});
    VirtualClock clock;
    CacheStore cache;
    FederationClient client(provider, cache, {}, clock);

    const auto r = client.fetch_user("b@y");
    CHECK(r.status == FetchStatus::InstanceBlocked);
    CHECK(r.following.empty());
    CHECK(provider.content_requests_for_instance("y") == 0);
    CHECK(client.counters().robots_denied == 1);
}

TEST_CASE("malformed key is a validation error") {
    const auto world = world_from("a@x\tb@y\n");
    SimulatedProvider provider(world);
    VirtualClock clock;
    CacheStore cache;
    FederationClient client(provider, cache, {}, clock);
    CHECK_THROWS_AS(client.fetch_user("no-at-sign"), std::invalid_argument);
}

TEST_CASE("transport failure exhausting retries yields instance_down") {
    const auto world = world_from("a@x\tb@y\n");
    SimulatedProvider provider(world);
    provider.fail_first_requests("y", 100);
    VirtualClock clock;
    CacheStore cache;
    FederationClient client(provider, cache, {}, clock);

    const auto r = client.fetch_user("b@y");
    CHECK(r.status == FetchStatus::InstanceDown);
    // backoff advanced the virtual clock by 1s + 2s
    CHECK(clock.now() >= 3.0);
}

TEST_CASE("retry succeeds after transient failures") {
    const auto world = world_from("a@x\tb@y\n");
    SimulatedProvider provider(world);
    provider.fail_first_requests("y", 1);
    VirtualClock clock;
    CacheStore cache;
    FederationClient client(provider, cache, {}, clock);

    const auto r = client.fetch_user("b@y");
    CHECK(r.status == FetchStatus::Ok);
    CHECK(r.followers == std::vector<std::string>{"a@x"});
}

TEST_CASE("cache transparency: records identical with and without cache") {
    const auto world =
        world_from("a@x\tb@y\nb@y\tc@z\nc@z\ta@x\na@x\tc@z\n");
    const std::vector<std::string> sequence{"a@x", "b@y", "a@x", "c@z", "b@y"};

    auto run = [&](bool with_cache) {
        SimulatedProvider provider(world);
        VirtualClock clock;
        std::vector<std::string> jsons;
        PolitenessPolicy policy;
        if (!with_cache) policy.max_cache_age = -1.0;  // every entry stale
        CacheStore cache;
        FederationClient client(provider, cache, policy, clock);
        for (const auto& key : sequence) {
            auto r = client.fetch_user(key);
            r.fetched_at = 0;  // timing may differ, content must not
            jsons.push_back(r.to_json());
        }
        return std::pair(jsons, provider.content_request_count());
    };
    const auto [with, calls_with] = run(true);
    const auto [without, calls_without] = run(false);
    CHECK(with == without);
    CHECK(calls_with == 6);      // 3 unique users
    CHECK(calls_without == 10);  // every fetch hits the provider
}

TEST_CASE("cache store persists across reopen") {
    const std::string path = "test_cache_store.jsonl";
    std::remove(path.c_str());
    {
        CacheStore cache(path);
        UserRecord r;
        r.external_key = "a@x";
        r.instance = "x";
        r.status = FetchStatus::Ok;
        r.following = {"b@y"};
        r.fetched_at = 42.0;
        cache.put(r);
    }
    {
        CacheStore cache(path);
        const auto r = cache.get("a@x");
        REQUIRE(r.has_value());
        CHECK(r->following == std::vector<std::string>{"b@y"});
        CHECK(r->fetched_at == 42.0);
    }
    std::remove(path.c_str());
}

TEST_CASE("user record JSON round-trip") {
    UserRecord r;
    r.external_key = "a@x";
    r.instance = "x";
    r.status = FetchStatus::InstanceBlocked;
    r.fetched_at = 1.5;
    const auto parsed = UserRecord::from_json(r.to_json());
    CHECK(parsed.external_key == r.external_key);
    CHECK(parsed.status == r.status);
    CHECK(parsed.following.empty());
}
