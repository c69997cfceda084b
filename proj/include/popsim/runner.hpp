#pragma once

#include <cstdint>
#include <vector>

#include "popsim/config.hpp"
#include "popsim/report.hpp"

namespace popsim {

/// Worker cap for trial sweeps: POPSIM_THREADS if set, otherwise the
/// hardware concurrency (at least 1).
unsigned max_threads();

/// Runs `trials` independent simulations of one config.  Trial i uses
/// trial_seed(cfg.seed, i); results come back ordered by trial index no
/// matter how the work was scheduled.
std::vector<RunReport> run_trials(const SimConfig& cfg, std::uint64_t trials);

} // namespace popsim
