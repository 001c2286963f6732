#pragma once

#include <cstdint>
#include <string>

#include "fedirec/graph.hpp"

namespace fedirec::synth {

enum class Model { PlantedCommunity, PreferentialAttachment };

Model model_from_string(const std::string& name);
std::string to_string(Model m);

struct SynthConfig {
    std::size_t n = 1000;
    Model model = Model::PlantedCommunity;
    std::uint64_t rng_seed = 0;
    std::size_t communities = 10;         // planted model
    std::size_t mean_out_degree = 10;     // t1 density
    double in_community_prob = 0.9;       // planted follows stay local
    std::size_t changed_users = 100;      // users gaining follows at t2
    std::size_t new_follows_per_changed = 6;
};

struct SynthWorld {
    DirectedGraph t1;
    DirectedGraph t2;
    std::vector<std::string> changed_keys;
};

// Two temporally ordered snapshots of a synthetic follow graph. t2 is t1
// plus new follows: biased toward each user's community (planted) or toward
// high in-degree nodes (preferential attachment). Deterministic in the seed.
SynthWorld generate(const SynthConfig& config);

}  // namespace fedirec::synth
