#include "fedirec/federation.hpp"

#include <fstream>
#include <stdexcept>

#include "fedirec/graph.hpp"
#include "json.hpp"

namespace fedirec::federation {

std::string to_string(FetchStatus s) {
    switch (s) {
        case FetchStatus::Ok: return "ok";
        case FetchStatus::Gone: return "gone";
        case FetchStatus::InstanceBlocked: return "instance_blocked";
        case FetchStatus::InstanceDown: return "instance_down";
    }
    return "unknown";
}

FetchStatus status_from_string(const std::string& s) {
    if (s == "ok") return FetchStatus::Ok;
    if (s == "gone") return FetchStatus::Gone;
    if (s == "instance_blocked") return FetchStatus::InstanceBlocked;
    if (s == "instance_down") return FetchStatus::InstanceDown;
    throw std::invalid_argument("unknown fetch status: " + s);
}

std::string UserRecord::to_json() const {
    nlohmann::json j;
    j["external_key"] = external_key;
    j["instance"] = instance;
    j["status"] = to_string(status);
    j["fetched_at"] = fetched_at;
    if (status == FetchStatus::Ok) {
        j["following"] = following;
        j["followers"] = followers;
    }
    return j.dump();
}

UserRecord UserRecord::from_json(const std::string& line) {
    const auto j = nlohmann::json::parse(line);
    UserRecord r;
    r.external_key = j.at("external_key").get<std::string>();
    r.instance = j.at("instance").get<std::string>();
    r.status = status_from_string(j.at("status").get<std::string>());
    r.fetched_at = j.at("fetched_at").get<double>();
    if (r.status == FetchStatus::Ok) {
        r.following = j.at("following").get<std::vector<std::string>>();
        r.followers = j.at("followers").get<std::vector<std::string>>();
    }
    return r;
}

double VirtualClock::now() {
    std::lock_guard lock(mu_);
    return now_;
}

void VirtualClock::wait_until(double t) {
    std::lock_guard lock(mu_);
    if (t > now_) now_ = t;
}

void VirtualClock::advance(double dt) {
    std::lock_guard lock(mu_);
    now_ += dt;
}

RateLimiter::RateLimiter(double max_per_second, Clock& clock)
    : rate_(static_cast<std::size_t>(max_per_second)), clock_(clock) {
    if (!(max_per_second > 0.0)) {
        throw std::invalid_argument("rate limiter: rate must be positive");
    }
}

double RateLimiter::acquire() {
    std::lock_guard lock(mu_);
    double grant = clock_.now();
    if (recent_.size() >= rate_) {
        const double earliest = recent_.front() + 1.0;
        if (earliest > grant) {
            clock_.wait_until(earliest);
            grant = earliest;
        }
        recent_.pop_front();
    }
    recent_.push_back(grant);
    all_grants_.push_back(grant);
    return grant;
}

std::vector<double> RateLimiter::grant_log() const {
    std::lock_guard lock(mu_);
    return all_grants_;
}

SimulatedProvider::SimulatedProvider(const DirectedGraph& world,
                                     std::map<std::string, FetchStatus> plan)
    : world_(world), failure_plan_(std::move(plan)) {}

bool SimulatedProvider::robots_allowed(const std::string& instance) {
    auto it = failure_plan_.find(instance);
    return !(it != failure_plan_.end() &&
             it->second == FetchStatus::InstanceBlocked);
}

EndpointResult SimulatedProvider::fetch(const std::string& key, bool following) {
    const std::string instance = instance_of(key);
    {
        std::lock_guard lock(mu_);
        ++per_instance_requests_[instance];
        auto t = transient_failures_left_.find(instance);
        if (t != transient_failures_left_.end() && t->second > 0) {
            --t->second;
            content_requests_.fetch_add(1);
            return {FetchStatus::InstanceDown, {}};
        }
    }
    content_requests_.fetch_add(1);
    auto planned = failure_plan_.find(instance);
    if (planned != failure_plan_.end()) return {planned->second, {}};
    const auto id = world_.id_of(key);
    if (id < 0) return {FetchStatus::Gone, {}};
    EndpointResult r;
    const auto& adj = following ? world_.out_neighbors(static_cast<NodeId>(id))
                                : world_.in_neighbors(static_cast<NodeId>(id));
    r.keys.reserve(adj.size());
    for (NodeId v : adj) r.keys.push_back(world_.key_of(v));
    return r;
}

EndpointResult SimulatedProvider::fetch_following(const std::string& key) {
    return fetch(key, true);
}

EndpointResult SimulatedProvider::fetch_followers(const std::string& key) {
    return fetch(key, false);
}

std::size_t SimulatedProvider::content_requests_for_instance(
    const std::string& instance) const {
    std::lock_guard lock(mu_);
    auto it = per_instance_requests_.find(instance);
    return it == per_instance_requests_.end() ? 0 : it->second;
}

void SimulatedProvider::fail_first_requests(const std::string& instance,
                                            std::size_t n) {
    std::lock_guard lock(mu_);
    transient_failures_left_[instance] = n;
}

CacheStore::CacheStore(const std::string& path) : path_(path) {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        UserRecord r = UserRecord::from_json(line);
        map_[r.external_key] = std::move(r);
    }
}

std::optional<UserRecord> CacheStore::get(const std::string& key) const {
    std::lock_guard lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void CacheStore::put(const UserRecord& record) {
    std::lock_guard lock(mu_);
    map_[record.external_key] = record;
    if (!path_.empty()) {
        std::ofstream out(path_, std::ios::app);
        out << record.to_json() << '\n';
    }
}

std::size_t CacheStore::size() const {
    std::lock_guard lock(mu_);
    return map_.size();
}

bool valid_external_key(const std::string& key) {
    const auto at = key.find('@');
    return at != std::string::npos && at > 0 && at + 1 < key.size() &&
           key.find('@', at + 1) == std::string::npos;
}

std::string instance_of(const std::string& key) {
    return key.substr(key.find('@') + 1);
}

FederationClient::FederationClient(Provider& provider, CacheStore& cache,
                                   PolitenessPolicy policy, Clock& clock)
    : provider_(provider),
      cache_(cache),
      policy_(policy),
      clock_(clock),
      limiter_(policy.max_requests_per_second, clock) {}

UserRecord FederationClient::fetch_user(const std::string& key) {
    if (!valid_external_key(key)) {
        throw std::invalid_argument("malformed external key: " + key);
    }
    if (auto cached = cache_.get(key)) {
        if (clock_.now() - cached->fetched_at <= policy_.max_cache_age) {
            std::lock_guard lock(mu_);
            ++counters_.cache_hits;
            return *cached;
        }
    }

    const std::string instance = instance_of(key);
    UserRecord rec;
    rec.external_key = key;
    rec.instance = instance;

    // robots check precedes any rate-limited content request
    if (policy_.respect_robots && !provider_.robots_allowed(instance)) {
        rec.status = FetchStatus::InstanceBlocked;
        rec.fetched_at = clock_.now();
        {
            std::lock_guard lock(mu_);
            ++counters_.robots_denied;
        }
        cache_.put(rec);
        return rec;
    }

    // 2 retries with doubling virtual backoff (1s, 2s) on transport failure
    constexpr int kAttempts = 3;
    rec.status = FetchStatus::InstanceDown;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        if (attempt > 0) {
            clock_.wait_until(clock_.now() + (attempt == 1 ? 1.0 : 2.0));
        }
        limiter_.acquire();
        EndpointResult following = provider_.fetch_following(key);
        if (following.status == FetchStatus::InstanceDown) continue;
        if (following.status != FetchStatus::Ok) {
            rec.status = following.status;
            break;
        }
        limiter_.acquire();
        EndpointResult followers = provider_.fetch_followers(key);
        if (followers.status == FetchStatus::InstanceDown) continue;
        if (followers.status != FetchStatus::Ok) {
            rec.status = followers.status;
            break;
        }
        rec.status = FetchStatus::Ok;
        rec.following = std::move(following.keys);
        rec.followers = std::move(followers.keys);
        break;
    }
    rec.fetched_at = clock_.now();
    {
        std::lock_guard lock(mu_);
        ++counters_.fetches;
        if (rec.status != FetchStatus::Ok) ++counters_.failures;
    }
    cache_.put(rec);
    return rec;
}

ClientCounters FederationClient::counters() const {
    std::lock_guard lock(mu_);
    return counters_;
}

}  // namespace fedirec::federation
