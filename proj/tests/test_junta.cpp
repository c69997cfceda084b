#include <doctest.h>

#include <cstdint>
#include <span>

#include "popsim/engine.hpp"
#include "popsim/junta.hpp"
#include "popsim/rng.hpp"

using namespace popsim;

TEST_CASE("junta_step pinned transitions") {
    SUBCASE("two fresh agents: responder freezes, initiator promotes") {
        const auto [r, i] = junta_step(JuntaState{0, 1}, JuntaState{0, 1});
        CHECK(r == JuntaState{0, 0});
        CHECK(i == JuntaState{1, 1});
    }
    SUBCASE("fresh responder against anything else freezes at 0") {
        const auto [r1, i1] = junta_step(JuntaState{0, 1}, JuntaState{3, 1});
        CHECK(r1 == JuntaState{0, 0});
        CHECK(i1 == JuntaState{3, 1});
        const auto [r2, i2] = junta_step(JuntaState{0, 1}, JuntaState{0, 0});
        CHECK(r2 == JuntaState{0, 0});
        CHECK(i2 == JuntaState{0, 0});
    }
    SUBCASE("climbing: equal or lower level than the initiator") {
        const auto [r1, i1] = junta_step(JuntaState{2, 1}, JuntaState{2, 1});
        CHECK(r1 == JuntaState{3, 1});
        CHECK(i1 == JuntaState{2, 1});
        // a frozen initiator still testifies to its level
        const auto [r2, i2] = junta_step(JuntaState{2, 1}, JuntaState{5, 0});
        CHECK(r2 == JuntaState{3, 1});
        CHECK(i2 == JuntaState{5, 0});
    }
    SUBCASE("meeting a strictly lower level freezes the responder") {
        const auto [r, i] = junta_step(JuntaState{4, 1}, JuntaState{2, 1});
        CHECK(r == JuntaState{4, 0});
        CHECK(i == JuntaState{2, 1});
    }
    SUBCASE("frozen responder never changes") {
        const auto [r, i] = junta_step(JuntaState{3, 0}, JuntaState{7, 1});
        CHECK(r == JuntaState{3, 0});
        CHECK(i == JuntaState{7, 1});
    }
}

TEST_CASE("junta_step level cap clamps promotions but keeps agents racing") {
    // at the cap the climb rule no longer raises the level
    const auto [r1, i1] =
        junta_step(JuntaState{2, 1}, JuntaState{2, 1}, /*level_cap=*/2);
    CHECK(r1 == JuntaState{2, 1});
    CHECK(i1 == JuntaState{2, 1});
    // the seed rule is clamped the same way
    const auto [r2, i2] =
        junta_step(JuntaState{0, 1}, JuntaState{0, 1}, /*level_cap=*/1);
    CHECK(r2 == JuntaState{0, 0});
    CHECK(i2 == JuntaState{1, 1});
    // a capped agent still freezes against a lower level
    const auto [r3, i3] =
        junta_step(JuntaState{2, 1}, JuntaState{1, 0}, /*level_cap=*/2);
    CHECK(r3 == JuntaState{2, 0});
    CHECK(i3 == JuntaState{1, 0});
}

TEST_CASE("spoil resets below the maximum and refuses the top level") {
    CHECK(spoil(JuntaState{2, 1}, 5) == JuntaState{0, 0});
    CHECK(spoil(JuntaState{0, 0}, 3) == JuntaState{0, 0});
    CHECK_THROWS_AS(spoil(JuntaState{5, 0}, 5), SpoilAtMaxLevel);
    CHECK_THROWS_AS(spoil(JuntaState{5, 1}, 5), SpoilAtMaxLevel);
}

TEST_CASE("junta_members requires a finished race") {
    const JuntaState frozen[] = {{0, 0}, {2, 0}, {2, 0}, {1, 0}};
    const auto [level, count] =
        junta_members(std::span<const JuntaState>(frozen));
    CHECK(level == 2);
    CHECK(count == 2);

    const JuntaState racing[] = {{0, 0}, {2, 1}};
    CHECK_THROWS_AS(junta_members(std::span<const JuntaState>(racing)),
                    NotStabilized);
}

TEST_CASE("n = 2 race always ends with a single level-1 winner") {
    for (std::uint64_t s = 1; s <= 100; ++s) {
        SimConfig cfg;
        cfg.n = 2;
        cfg.variant = Variant::junta_only;
        cfg.seed = trial_seed(9000, s);
        const RunReport report = run_simulation(cfg);
        CHECK(report.stabilized);
        CHECK(report.max_level == 1);
        CHECK(report.junta_size == 1);
    }
}

TEST_CASE("finished race: winner bounds and monotone level occupancy") {
    SimConfig cfg;
    cfg.n = 256;
    cfg.variant = Variant::junta_only;
    cfg.seed = 4242;

    JuntaModel model;
    model.init(cfg);
    SplitMix64 rng(cfg.seed);
    const std::uint64_t cap = cfg.resolved_max_interactions();
    std::uint64_t t = 0;
    while (!model.stabilized() && t < cap) {
        model.apply(draw_interaction(rng, cfg.n));
        ++t;
    }
    REQUIRE(model.stabilized());

    const auto [max_level, count] =
        junta_members(std::span<const JuntaState>(model.states()));
    CHECK(max_level >= 1);
    CHECK(count >= 1);

    // without spoiling, final levels and watermarks agree
    const LevelWatermarks& marks = model.watermarks();
    CHECK(marks.max_level() == max_level);
    CHECK(marks.count_at(max_level) == count);

    // each seed promotion freezes its partner, so at most half ever climb
    CHECK(marks.count_at_least(1) >= 1);
    CHECK(marks.count_at_least(1) <= cfg.n / 2);
    for (std::uint32_t l = 1; l < max_level; ++l)
        CHECK(marks.count_at_least(l + 1) <= marks.count_at_least(l));
}
