#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "popsim/engine.hpp"
#include "popsim/epidemic.hpp"
#include "popsim/rng.hpp"

using namespace popsim;

TEST_CASE("epidemic_step transition table") {
    CHECK(epidemic_step(0, 0) == 0);
    CHECK(epidemic_step(0, 1) == 1);
    CHECK(epidemic_step(1, 0) == 1);
    CHECK(epidemic_step(1, 1) == 1);
}

TEST_CASE("expected completion, pinned small cases") {
    // n = 2: single term 2*1/(1*1) = 2
    CHECK(epidemic_expected_completion(2) == doctest::Approx(2.0));
    // n = 3: 6/(1*2) + 6/(2*1) = 6
    CHECK(epidemic_expected_completion(3) == doctest::Approx(6.0));
    // n = 4: 12/3 + 12/4 + 12/3 = 11
    CHECK(epidemic_expected_completion(4) == doctest::Approx(11.0));
}

TEST_CASE("expected completion equals 2(n-1) H_{n-1}") {
    // n/(i(n-i)) = 1/i + 1/(n-i), so the sum telescopes into harmonic
    // numbers; this is an independent route to the same quantity.
    for (const std::uint32_t n : {2u, 3u, 5u, 17u, 100u, 10000u}) {
        long double harmonic = 0.0L;
        for (std::uint32_t i = 1; i < n; ++i)
            harmonic += 1.0L / static_cast<long double>(i);
        const double expected =
            static_cast<double>(2.0L * (n - 1) * harmonic);
        CHECK(epidemic_expected_completion(n) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("infection count is monotone and reaches everyone") {
    SimConfig cfg;
    cfg.n = 64;
    cfg.variant = Variant::epidemic_only;
    cfg.seed = 77;

    EpidemicModel model;
    model.init(cfg);
    SplitMix64 rng(cfg.seed);
    std::uint64_t last = model.infected();
    CHECK(last == 1);
    std::uint64_t steps = 0;
    while (!model.stabilized()) {
        model.apply(draw_interaction(rng, cfg.n));
        CHECK(model.infected() >= last);
        last = model.infected();
        ++steps;
        REQUIRE(steps < 1'000'000); // far beyond any plausible completion
    }
    CHECK(model.infected() == cfg.n);
    for (const std::uint8_t v : model.values()) CHECK(v == 1);
}

TEST_CASE("n = 2 empirical mean completion is 2 interactions") {
    // With two agents the infection spreads exactly when the infected agent
    // is drawn as initiator, probability 1/2, so completion is geometric
    // with mean 2.
    const int trials = 20000;
    double total = 0.0;
    for (int i = 0; i < trials; ++i) {
        SimConfig cfg;
        cfg.n = 2;
        cfg.variant = Variant::epidemic_only;
        cfg.seed = trial_seed(42, static_cast<std::uint64_t>(i));
        const RunReport report = run_simulation(cfg);
        REQUIRE(report.stabilized);
        REQUIRE(report.epidemic_completion.has_value());
        total += static_cast<double>(*report.epidemic_completion);
    }
    const double mean = total / trials;
    CHECK(std::abs(mean - 2.0) < 0.05); // sd = sqrt(2), ~5 sigma at 20k
}
