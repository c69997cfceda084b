#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "popsim/engine.hpp"
#include "popsim/rng.hpp"

using namespace popsim;

TEST_CASE("identical config and seed give byte-identical reports") {
    SimConfig cfg;
    cfg.n = 64;
    cfg.variant = Variant::las_vegas;
    cfg.seed = 31337;

    const RunReport a = run_simulation(cfg);
    const RunReport b = run_simulation(cfg);
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_csv_row() == b.to_csv_row());
    CHECK(a.interactions_total == b.interactions_total);
    CHECK(a.leader_trajectory == b.leader_trajectory);
    CHECK(a.distinct_states_observed == b.distinct_states_observed);
}

TEST_CASE("two-agent runs replay exactly against a hand-rolled oracle") {
    for (std::uint64_t s = 1; s <= 100; ++s) {
        const std::uint64_t seed = trial_seed(777, s);

        {
            // epidemic: agent 0 starts infected; with two agents the spread
            // completes on the first draw where agent 0 initiates
            SimConfig cfg;
            cfg.n = 2;
            cfg.variant = Variant::epidemic_only;
            cfg.seed = seed;
            const RunReport report = run_simulation(cfg);

            SplitMix64 rng(seed);
            std::uint64_t t = 0;
            while (draw_interaction(rng, 2).initiator != 0) ++t;
            ++t;
            CHECK(report.stabilized);
            CHECK(report.interactions_total == t);
            REQUIRE(report.epidemic_completion.has_value());
            CHECK(*report.epidemic_completion == t);
        }
        {
            // junta: first fresh-fresh meeting promotes the initiator, the
            // promoted agent freezes on its next response
            SimConfig cfg;
            cfg.n = 2;
            cfg.variant = Variant::junta_only;
            cfg.seed = seed;
            const RunReport report = run_simulation(cfg);

            SplitMix64 rng(seed);
            JuntaState pop[2];
            std::uint64_t t = 0;
            while (pop[0].active == 1 || pop[1].active == 1) {
                ++t;
                const Interaction it = draw_interaction(rng, 2);
                const auto [r, i] = junta_step(pop[it.responder],
                                               pop[it.initiator]);
                pop[it.responder] = r;
                pop[it.initiator] = i;
            }
            CHECK(report.stabilized);
            CHECK(report.interactions_total == t);
            CHECK(report.max_level == 1);
            CHECK(report.junta_size == 1);
        }
    }
}

TEST_CASE("interaction cap stops the run and is recorded as a violation") {
    SimConfig cfg;
    cfg.n = 64;
    cfg.variant = Variant::epidemic_only;
    cfg.seed = 5;
    cfg.max_interactions = 10; // far too few for n = 64

    const RunReport report = run_simulation(cfg);
    CHECK_FALSE(report.stabilized);
    CHECK(report.interactions_total == 10);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0] == "cap reached before stabilization");
}

TEST_CASE("clock-only runs exhaust the cap without complaint") {
    SimConfig cfg;
    cfg.n = 16;
    cfg.variant = Variant::clock_only;
    cfg.seed = 6;
    cfg.max_interactions = 5000;

    const RunReport report = run_simulation(cfg);
    CHECK_FALSE(report.stabilized);
    CHECK(report.interactions_total == 5000);
    CHECK(report.violations.empty());
}

TEST_CASE("monitors observe without steering the run") {
    SimConfig base;
    base.n = 64;
    base.variant = Variant::las_vegas;
    base.seed = 90210;

    SimConfig audited = base;
    audited.audit_states = true;
    audited.snapshot_every = 1; // densest possible monitoring

    SimConfig bare = base;
    bare.audit_states = false;
    bare.snapshot_every = 1000003; // prime, well off the default cadence

    std::uint64_t snapshots_seen = 0;
    const RunReport a = run_simulation(
        audited, [&](const PhaseSnapshot&) { ++snapshots_seen; });
    const RunReport b = run_simulation(bare);

    CHECK(snapshots_seen > 0);
    CHECK(a.interactions_total == b.interactions_total);
    CHECK(a.stabilized == b.stabilized);
    CHECK(a.leader_count_final == b.leader_count_final);
    CHECK(a.junta_size == b.junta_size);
    CHECK(a.max_level == b.max_level);
    CHECK(a.leader_trajectory == b.leader_trajectory);
    CHECK(a.parallel_time == doctest::Approx(b.parallel_time));
    CHECK(a.distinct_states_observed > 0);
    CHECK(b.distinct_states_observed == 0); // audit was off
}

TEST_CASE("snapshot cadence follows snapshot_every, defaulting to n") {
    SimConfig cfg;
    cfg.n = 10;
    cfg.variant = Variant::las_vegas;
    cfg.seed = 11;

    std::uint64_t count = 0;
    std::uint64_t last_index = 0;
    const RunReport report = run_simulation(cfg, [&](const PhaseSnapshot& s) {
        ++count;
        CHECK(s.interaction_index % 10 == 0);
        CHECK(s.ordinary.size() == 10);
        CHECK(s.external.size() == 10);
        last_index = s.interaction_index;
    });
    CHECK(count == report.interactions_total / 10);
    CHECK(last_index <= report.interactions_total);
}

TEST_CASE("stabilization predicates match the population state") {
    SUBCASE("fast: everyone finished its external clock") {
        SimConfig cfg;
        cfg.n = 32;
        cfg.variant = Variant::fast;
        cfg.seed = 21;
        ElectionModel model;
        model.init(cfg);
        const RunReport report = run_model(model, cfg);
        REQUIRE(report.stabilized);
        for (const AgentState& agent : model.agents()) {
            CHECK(agent.external_terminal == 1);
            CHECK(agent.external_phase == cfg.m - 1);
            CHECK(agent.active == 0);
        }
        CHECK(count_leaders(model.agents()) == report.leader_count_final);
        CHECK(report.leader_count_final >= 1);
    }
    SUBCASE("las vegas: additionally a unique leader") {
        SimConfig cfg;
        cfg.n = 32;
        cfg.variant = Variant::las_vegas;
        cfg.seed = 22;
        ElectionModel model;
        model.init(cfg);
        const RunReport report = run_model(model, cfg);
        REQUIRE(report.stabilized);
        CHECK(report.leader_count_final == 1);
        CHECK(count_leaders(model.agents()) == 1);
        for (const AgentState& agent : model.agents())
            CHECK(agent.external_terminal == 1);
    }
    SUBCASE("slow-only: a single candidate survives") {
        SimConfig cfg;
        cfg.n = 16;
        cfg.variant = Variant::slow_only;
        cfg.seed = 23;
        const RunReport report = run_simulation(cfg);
        REQUIRE(report.stabilized);
        CHECK(report.leader_count_final == 1);
    }
}

TEST_CASE("leader trajectory starts at n and shrinks to the final count") {
    SimConfig cfg;
    cfg.n = 64;
    cfg.variant = Variant::las_vegas;
    cfg.seed = 24;
    const RunReport report = run_simulation(cfg);
    REQUIRE(report.stabilized);
    REQUIRE(!report.leader_trajectory.empty());
    CHECK(report.leader_trajectory.front().first == 0);
    CHECK(report.leader_trajectory.front().second == cfg.n);
    CHECK(report.leader_trajectory.back().second ==
          report.leader_count_final);
    for (std::size_t j = 1; j < report.leader_trajectory.size(); ++j) {
        CHECK(report.leader_trajectory[j].first >
              report.leader_trajectory[j - 1].first);
        CHECK(report.leader_trajectory[j].second <
              report.leader_trajectory[j - 1].second);
    }
}

TEST_CASE("report serialization carries the run verbatim") {
    SimConfig cfg;
    cfg.n = 32;
    cfg.m = 16;
    cfg.k = 2;
    cfg.variant = Variant::las_vegas;
    cfg.seed = 3141;
    const RunReport report = run_simulation(cfg);

    const std::string header = RunReport::csv_header();
    CHECK(header ==
          "seed,n,m,k,variant,interactions_total,parallel_time,stabilized,"
          "leader_count_final,junta_size,max_level,distinct_states_observed");
    const std::string row = report.to_csv_row();
    CHECK(std::count(row.begin(), row.end(), ',') ==
          std::count(header.begin(), header.end(), ','));

    const auto parsed = nlohmann::json::parse(report.to_json());
    CHECK(parsed.at("seed").get<std::uint64_t>() == cfg.seed);
    CHECK(parsed.at("n").get<std::uint32_t>() == cfg.n);
    CHECK(parsed.at("m").get<std::uint32_t>() == cfg.m);
    CHECK(parsed.at("k").get<std::uint32_t>() == cfg.k);
    CHECK(parsed.at("variant").get<std::string>() == "las_vegas");
    CHECK(parsed.at("interactions_total").get<std::uint64_t>() ==
          report.interactions_total);
    CHECK(parsed.at("stabilized").get<bool>() == report.stabilized);
    CHECK(parsed.at("leader_count_final").get<std::uint32_t>() ==
          report.leader_count_final);
    CHECK(parsed.at("epidemic_completion").is_null());
    CHECK(parsed.at("leader_trajectory").is_array());
    CHECK(parsed.at("violations").is_array());
}
