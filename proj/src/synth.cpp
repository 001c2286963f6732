#include "fedirec/synth.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace fedirec::synth {

Model model_from_string(const std::string& name) {
    if (name == "planted-community" || name == "planted") {
        return Model::PlantedCommunity;
    }
    if (name == "preferential-attachment" || name == "preferential") {
        return Model::PreferentialAttachment;
    }
    throw std::invalid_argument("unknown synthetic model: " + name);
}

std::string to_string(Model m) {
    return m == Model::PlantedCommunity ? "planted-community"
                                        : "preferential-attachment";
}

namespace {

std::string key_for(std::size_t i, std::size_t community) {
    return "u" + std::to_string(i) + "@inst" + std::to_string(community);
}

}  // namespace

SynthWorld generate(const SynthConfig& config) {
    if (config.n < 10) throw std::invalid_argument("synth: n >= 10 required");
    const std::size_t n = config.n;
    const bool planted = config.model == Model::PlantedCommunity;
    const std::size_t c =
        planted ? std::max<std::size_t>(1, std::min(config.communities, n)) : 1;
    std::mt19937_64 rng(config.rng_seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> any_node(0, n - 1);

    std::vector<std::size_t> community(n);
    std::vector<std::string> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
        community[i] = i % c;
        keys[i] = key_for(i, community[i]);
    }
    std::vector<std::vector<std::size_t>> members(c);
    for (std::size_t i = 0; i < n; ++i) members[community[i]].push_back(i);

    std::set<std::pair<std::size_t, std::size_t>> edges;
    // preferential-attachment target pool, nodes repeated by in-degree + 1
    std::vector<std::size_t> pa_pool;

    // picks a followee for u under the model's bias
    auto pick_target = [&](std::size_t u) -> std::size_t {
        if (planted) {
            const auto& pool = members[community[u]];
            if (pool.size() > 1 && u01(rng) < config.in_community_prob) {
                return pool[std::uniform_int_distribution<std::size_t>(
                    0, pool.size() - 1)(rng)];
            }
            return any_node(rng);
        }
        return pa_pool[std::uniform_int_distribution<std::size_t>(
            0, pa_pool.size() - 1)(rng)];
    };
    auto add_edge = [&](std::size_t u, std::size_t v) {
        if (u == v) return false;
        if (!edges.emplace(u, v).second) return false;
        if (!planted) pa_pool.push_back(v);
        return true;
    };

    if (!planted) {
        pa_pool.reserve(n * (config.mean_out_degree + 1));
        for (std::size_t i = 0; i < n; ++i) pa_pool.push_back(i);
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t e = 0; e < config.mean_out_degree; ++e) {
            add_edge(u, pick_target(u));
        }
    }

    auto build = [&]() {
        DirectedGraph::Builder b;
        for (std::size_t i = 0; i < n; ++i) b.intern(keys[i]);
        for (const auto& [u, v] : edges) b.add_edge(keys[u], keys[v]);
        return b.build();
    };

    SynthWorld world;
    world.t1 = build();

    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::vector<std::size_t> changed;
    std::sample(all.begin(), all.end(), std::back_inserter(changed),
                std::min(config.changed_users, n), rng);
    for (std::size_t u : changed) {
        std::size_t added = 0, attempts = 0;
        while (added < config.new_follows_per_changed && attempts < 200) {
            ++attempts;
            if (add_edge(u, pick_target(u))) ++added;
        }
        world.changed_keys.push_back(keys[u]);
    }
    std::sort(world.changed_keys.begin(), world.changed_keys.end());
    world.t2 = build();
    return world;
}

}  // namespace fedirec::synth
