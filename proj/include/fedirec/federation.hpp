#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace fedirec {
class DirectedGraph;
}

namespace fedirec::federation {

enum class FetchStatus { Ok, Gone, InstanceBlocked, InstanceDown };

std::string to_string(FetchStatus s);
FetchStatus status_from_string(const std::string& s);

struct UserRecord {
    std::string external_key;  // "user@instance"
    std::string instance;
    FetchStatus status = FetchStatus::Ok;
    std::vector<std::string> following;  // present iff status == Ok
    std::vector<std::string> followers;
    double fetched_at = 0.0;  // seconds on the injected clock

    std::string to_json() const;
    static UserRecord from_json(const std::string& line);
};

struct PolitenessPolicy {
    double max_requests_per_second = 10.0;
    bool respect_robots = true;
    // Cached records older than this are refetched; infinity = never stale.
    double max_cache_age = std::numeric_limits<double>::infinity();
};

// Injected time source. The virtual clock makes politeness tests
// deterministic; waiting simply advances it.
class Clock {
public:
    virtual ~Clock() = default;
    virtual double now() = 0;
    virtual void wait_until(double t) = 0;
};

class VirtualClock final : public Clock {
public:
    double now() override;
    void wait_until(double t) override;
    void advance(double dt);

private:
    std::mutex mu_;
    double now_ = 0.0;
};

// Sliding-log limiter: any request and the one `rate` grants before it are
// at least one second apart, so no one-second window ever holds more than
// `rate` grants. A burst of up to `rate` immediate grants is allowed.
class RateLimiter {
public:
    RateLimiter(double max_per_second, Clock& clock);
    // Blocks (advances the clock) until a permit is available; returns the
    // grant timestamp.
    double acquire();
    std::vector<double> grant_log() const;

private:
    const std::size_t rate_;
    Clock& clock_;
    mutable std::mutex mu_;
    std::deque<double> recent_;        // last `rate_` grant times
    std::vector<double> all_grants_;
};

struct EndpointResult {
    FetchStatus status = FetchStatus::Ok;
    std::vector<std::string> keys;  // valid iff status == Ok
};

// One federated instance's API surface. fetch_* corresponds to the
// /following and /followers endpoints; robots_allowed models the instance's
// crawling policy as a boolean oracle.
class Provider {
public:
    virtual ~Provider() = default;
    virtual bool robots_allowed(const std::string& instance) = 0;
    virtual EndpointResult fetch_following(const std::string& key) = 0;
    virtual EndpointResult fetch_followers(const std::string& key) = 0;
};

// Provider backed by an in-memory world graph; instances listed in the
// failure plan answer with the planned status instead of content. Call
// counts are observable for tests.
class SimulatedProvider final : public Provider {
public:
    SimulatedProvider(const DirectedGraph& world,
                      std::map<std::string, FetchStatus> failure_plan = {});

    bool robots_allowed(const std::string& instance) override;
    EndpointResult fetch_following(const std::string& key) override;
    EndpointResult fetch_followers(const std::string& key) override;

    std::size_t content_request_count() const { return content_requests_.load(); }
    std::size_t content_requests_for_instance(const std::string& instance) const;
    // Transient failures: the first `n` content requests to `instance` fail,
    // later ones succeed (exercises the retry path).
    void fail_first_requests(const std::string& instance, std::size_t n);

private:
    EndpointResult fetch(const std::string& key, bool following);

    const DirectedGraph& world_;
    std::map<std::string, FetchStatus> failure_plan_;
    std::atomic<std::size_t> content_requests_{0};
    mutable std::mutex mu_;
    std::map<std::string, std::size_t> per_instance_requests_;
    std::map<std::string, std::size_t> transient_failures_left_;
};

// Persistent user-record cache: one JSON document per record, append-only
// file; later lines for the same key win on reload.
class CacheStore {
public:
    CacheStore() = default;                       // in-memory only
    explicit CacheStore(const std::string& path); // persisted, loaded if present

    std::optional<UserRecord> get(const std::string& key) const;
    void put(const UserRecord& record);
    std::size_t size() const;

private:
    mutable std::mutex mu_;
    std::unordered_map<std::string, UserRecord> map_;
    std::string path_;
};

struct ClientCounters {
    std::size_t cache_hits = 0;
    std::size_t fetches = 0;
    std::size_t robots_denied = 0;
    std::size_t failures = 0;
};

// "name@host" with non-empty name and host, exactly one '@'.
bool valid_external_key(const std::string& key);
std::string instance_of(const std::string& key);

class FederationClient {
public:
    FederationClient(Provider& provider, CacheStore& cache,
                     PolitenessPolicy policy, Clock& clock);

    // Never throws for remote failures; those come back as record status.
    // Throws std::invalid_argument for a malformed key.
    UserRecord fetch_user(const std::string& key);

    ClientCounters counters() const;
    RateLimiter& limiter() { return limiter_; }

private:
    Provider& provider_;
    CacheStore& cache_;
    PolitenessPolicy policy_;
    Clock& clock_;
    RateLimiter limiter_;
    mutable std::mutex mu_;
    ClientCounters counters_;
};

}  // namespace fedirec::federation
