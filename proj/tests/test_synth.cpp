#include <set>
#include <sstream>

#include "doctest.h"
#include "fedirec/synth.hpp"

using namespace fedirec;
using namespace fedirec::synth;

namespace {

std::set<std::pair<std::string, std::string>> edge_set(
    const DirectedGraph& g) {
    std::set<std::pair<std::string, std::string>> edges;
    std::ostringstream out;
    g.dump_edge_list(out);
    std::istringstream in(out.str());
    std::string from, to;
    while (in >> from >> to) edges.emplace(from, to);
    return edges;
}

}  // namespace

TEST_CASE("model name parsing") {
    CHECK(model_from_string("planted") == Model::PlantedCommunity);
    CHECK(model_from_string("preferential") == Model::PreferentialAttachment);
    CHECK_THROWS_AS(model_from_string("nope"), std::invalid_argument);
    CHECK(model_from_string(to_string(Model::PlantedCommunity)) ==
          Model::PlantedCommunity);
    CHECK(model_from_string(to_string(Model::PreferentialAttachment)) ==
          Model::PreferentialAttachment);
}

TEST_CASE("generation is deterministic in the seed") {
    SynthConfig cfg;
    cfg.n = 200;
    cfg.changed_users = 20;
    cfg.rng_seed = 7;
    for (Model m : {Model::PlantedCommunity, Model::PreferentialAttachment}) {
        cfg.model = m;
        const auto w1 = generate(cfg);
        const auto w2 = generate(cfg);
        CHECK(edge_set(w1.t1) == edge_set(w2.t1));
        CHECK(edge_set(w1.t2) == edge_set(w2.t2));
        CHECK(w1.changed_keys == w2.changed_keys);
        cfg.rng_seed = 8;
        const auto w3 = generate(cfg);
        CHECK(edge_set(w1.t1) != edge_set(w3.t1));
        cfg.rng_seed = 7;
    }
}

TEST_CASE("t2 extends t1") {
    SynthConfig cfg;
    cfg.n = 300;
    cfg.changed_users = 30;
    cfg.rng_seed = 11;
    for (Model m : {Model::PlantedCommunity, Model::PreferentialAttachment}) {
        cfg.model = m;
        const auto w = generate(cfg);
        const auto e1 = edge_set(w.t1);
        const auto e2 = edge_set(w.t2);
        CHECK(e2.size() > e1.size());
        for (const auto& e : e1) CHECK(e2.count(e));
    }
}

TEST_CASE("changed users gain roughly the configured follow count") {
    SynthConfig cfg;
    cfg.n = 400;
    cfg.changed_users = 40;
    cfg.new_follows_per_changed = 6;
    cfg.rng_seed = 3;
    const auto w = generate(cfg);
    CHECK(w.changed_keys.size() == 40);

    const auto e1 = edge_set(w.t1);
    const auto e2 = edge_set(w.t2);
    const std::set<std::string> changed(w.changed_keys.begin(),
                                        w.changed_keys.end());
    std::size_t total_new = 0;
    for (const auto& e : e2) {
        if (e1.count(e)) continue;
        CHECK(changed.count(e.first));  // only changed users gain follows
        ++total_new;
    }
    // duplicates with t1 may shave a few off the nominal 40 * 6
    const double per_user = static_cast<double>(total_new) / 40.0;
    CHECK(per_user > 4.0);
    CHECK(per_user <= 6.0);
}

TEST_CASE("planted model keeps most follows inside the community") {
    SynthConfig cfg;
    cfg.n = 500;
    cfg.communities = 5;
    cfg.in_community_prob = 0.9;
    cfg.rng_seed = 19;
    const auto w = generate(cfg);

    // keys look like u<i>@inst<community>
    auto inst = [](const std::string& key) {
        return key.substr(key.find('@') + 1);
    };
    std::size_t local = 0, total = 0;
    for (const auto& [from, to] : edge_set(w.t1)) {
        ++total;
        if (inst(from) == inst(to)) ++local;
    }
    REQUIRE(total > 0);
    const double frac = static_cast<double>(local) / total;
    CHECK(frac > 0.8);
    CHECK(frac < 0.97);
}

TEST_CASE("world sizes follow the config") {
    SynthConfig cfg;
    cfg.n = 250;
    cfg.mean_out_degree = 8;
    cfg.changed_users = 10;
    cfg.rng_seed = 2;
    const auto w = generate(cfg);
    CHECK(w.t1.node_count() == 250);
    CHECK(w.t2.node_count() == 250);
    const double avg =
        static_cast<double>(w.t1.edge_count()) / w.t1.node_count();
    CHECK(avg > 5.0);
    CHECK(avg < 11.0);
}

TEST_CASE("changed user count is capped by n") {
    SynthConfig cfg;
    cfg.n = 20;
    cfg.changed_users = 50;
    cfg.rng_seed = 1;
    const auto w = generate(cfg);
    CHECK(w.changed_keys.size() <= 20);
}
