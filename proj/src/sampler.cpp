#include "fedirec/sampler.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace fedirec::sampler {

namespace {

// Lazily fetched undirected adjacency over the federation client.
class WalkWorld {
public:
    explicit WalkWorld(federation::FederationClient& client) : client_(client) {}

    // nullptr if the node could not be fetched ok.
    const std::vector<std::string>* neighbors(const std::string& key) {
        auto it = nbrs_.find(key);
        if (it != nbrs_.end()) return it->second.ok ? &it->second.list : nullptr;
        federation::UserRecord rec = client_.fetch_user(key);
        Entry e;
        e.ok = rec.status == federation::FetchStatus::Ok;
        if (e.ok) {
            std::vector<std::string> merged = rec.following;
            merged.insert(merged.end(), rec.followers.begin(),
                          rec.followers.end());
            std::sort(merged.begin(), merged.end());
            merged.erase(std::unique(merged.begin(), merged.end()),
                         merged.end());
            std::erase(merged, key);  // no self-loop
            e.list = std::move(merged);
            records_.push_back(std::move(rec));
        } else {
            failures_.push_back(key);
        }
        auto ins = nbrs_.emplace(key, std::move(e)).first;
        return ins->second.ok ? &ins->second.list : nullptr;
    }

    const std::vector<federation::UserRecord>& records() const { return records_; }
    const std::vector<std::string>& failures() const { return failures_; }

private:
    struct Entry {
        bool ok = false;
        std::vector<std::string> list;
    };
    federation::FederationClient& client_;
    std::unordered_map<std::string, Entry> nbrs_;
    std::vector<federation::UserRecord> records_;
    std::vector<std::string> failures_;
};

SampleResult finalize(const std::string& start, WalkWorld& world,
                      std::vector<std::string> order) {
    SampleResult r;
    r.start_key = start;
    r.visited_order = std::move(order);
    r.unique_visited.insert(r.visited_order.begin(), r.visited_order.end());
    r.fetch_failures = world.failures();

    DirectedGraph::Builder b;
    b.set_default_visited(false);
    for (const auto& rec : world.records()) {
        const NodeId u = b.intern(rec.external_key);
        b.mark_visited(u, true);
        for (const auto& f : rec.following) b.add_edge(rec.external_key, f);
        for (const auto& f : rec.followers) b.add_edge(f, rec.external_key);
    }
    r.subgraph = b.build();
    return r;
}

}  // namespace

double mhrw_acceptance(std::size_t deg_current, std::size_t deg_candidate) {
    if (deg_candidate == 0) return 0.0;
    return std::min(1.0, static_cast<double>(deg_current) /
                             static_cast<double>(deg_candidate));
}

bool mhrw_accept(std::size_t deg_current, std::size_t deg_candidate,
                 std::mt19937_64& rng) {
    const double a = mhrw_acceptance(deg_current, deg_candidate);
    if (a >= 1.0) return true;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    return u01(rng) < a;
}

SampleResult mhrw_sample(const std::string& start_key, const WalkConfig& config,
                         federation::FederationClient& client) {
    if (config.iterations < 1) {
        throw std::invalid_argument("mhrw_sample: iterations must be >= 1");
    }
    WalkWorld world(client);
    const auto* start_nbrs = world.neighbors(start_key);
    if (!start_nbrs) {
        throw std::runtime_error("mhrw_sample: start node unfetchable: " +
                                 start_key);
    }

    std::mt19937_64 rng(config.rng_seed);
    std::string current = start_key;
    const std::vector<std::string>* current_nbrs = start_nbrs;
    std::vector<std::string> order;
    order.reserve(config.iterations);
    std::size_t proposals = 0, accepted = 0;

    for (std::size_t it = 0; it < config.iterations; ++it) {
        if (!current_nbrs->empty()) {
            std::uniform_int_distribution<std::size_t> pick(
                0, current_nbrs->size() - 1);
            const std::string& candidate = (*current_nbrs)[pick(rng)];
            ++proposals;
            const auto* cand_nbrs = world.neighbors(candidate);
            // unfetchable candidates count as degree 0 and are never accepted
            const std::size_t cand_deg = cand_nbrs ? cand_nbrs->size() : 0;
            if (cand_deg > 0 &&
                mhrw_accept(current_nbrs->size(), cand_deg, rng)) {
                current = candidate;
                current_nbrs = cand_nbrs;
                ++accepted;
            }
        }
        order.push_back(current);
    }

    SampleResult r = finalize(start_key, world, std::move(order));
    r.proposals = proposals;
    r.accepted = accepted;
    return r;
}

SampleResult ego_walk(const std::string& seed_key, const WalkConfig& config,
                      federation::FederationClient& client) {
    if (config.iterations < 1) {
        throw std::invalid_argument("ego_walk: iterations must be >= 1");
    }
    if (!(config.restart_probability > 0.0) ||
        config.restart_probability > 1.0) {
        throw std::invalid_argument(
            "ego_walk: restart_probability must be in (0, 1]");
    }
    WalkWorld world(client);
    const auto* seed_nbrs = world.neighbors(seed_key);
    if (!seed_nbrs) {
        throw std::runtime_error("ego_walk: seed unfetchable: " + seed_key);
    }

    std::mt19937_64 rng(config.rng_seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::string current = seed_key;
    const std::vector<std::string>* current_nbrs = seed_nbrs;
    std::vector<std::string> order;
    order.reserve(config.iterations);

    for (std::size_t it = 0; it < config.iterations; ++it) {
        const bool teleport =
            u01(rng) < config.restart_probability || current_nbrs->empty();
        if (teleport) {
            current = seed_key;
            current_nbrs = seed_nbrs;
        } else {
            std::uniform_int_distribution<std::size_t> pick(
                0, current_nbrs->size() - 1);
            const std::string& candidate = (*current_nbrs)[pick(rng)];
            const auto* cand_nbrs = world.neighbors(candidate);
            if (cand_nbrs) {  // failed fetch: stay in place
                current = candidate;
                current_nbrs = cand_nbrs;
            }
        }
        order.push_back(current);
    }

    return finalize(seed_key, world, std::move(order));
}

std::unordered_map<std::string, std::size_t> visit_counts(
    const SampleResult& result, double burn_in_fraction, std::size_t stride) {
    if (stride == 0) stride = 1;
    const std::size_t n = result.visited_order.size();
    const auto skip = static_cast<std::size_t>(
        static_cast<double>(n) * burn_in_fraction);
    std::unordered_map<std::string, std::size_t> counts;
    for (std::size_t i = skip; i < n; i += stride) {
        ++counts[result.visited_order[i]];
    }
    return counts;
}

void SampleResult::write(const std::string& edge_path,
                         const std::string& manifest_path,
                         const WalkConfig& config) const {
    {
        std::ofstream out(edge_path);
        subgraph.dump_edge_list(out);
    }
    nlohmann::json j;
    j["start"] = start_key;
    j["iterations"] = config.iterations;
    j["rng_seed"] = config.rng_seed;
    j["restart_probability"] = config.restart_probability;
    j["unique_visited"] =
        std::vector<std::string>(unique_visited.begin(), unique_visited.end());
    j["proposals"] = proposals;
    j["accepted"] = accepted;
    j["fetch_failures"] = fetch_failures;
    std::ofstream out(manifest_path);
    out << j.dump(2) << '\n';
}

}  // namespace fedirec::sampler
