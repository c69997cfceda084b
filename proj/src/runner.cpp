#include "popsim/runner.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#include "popsim/engine.hpp"
#include "popsim/rng.hpp"

namespace popsim {

unsigned max_threads() {
    if (const char* env = std::getenv("POPSIM_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::vector<RunReport> run_trials(const SimConfig& cfg, std::uint64_t trials) {
    std::vector<RunReport> reports(trials);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(max_threads(), trials));

    auto work = [&cfg, &reports, trials](std::atomic<std::uint64_t>& next) {
        for (std::uint64_t i = next.fetch_add(1); i < trials;
             i = next.fetch_add(1)) {
            SimConfig trial_cfg = cfg;
            trial_cfg.seed = trial_seed(cfg.seed, i);
            reports[i] = run_simulation(trial_cfg);
        }
    };

    std::atomic<std::uint64_t> next{0};
    if (workers <= 1) {
        work(next);
        return reports;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] { work(next); });
    for (auto& worker : pool) worker.join();
    return reports;
}

} // namespace popsim
