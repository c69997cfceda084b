#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "popsim/config.hpp"

namespace popsim {

/// Everything a finished run reports.  For one config and seed the report is
/// deterministic down to the serialized bytes.
struct RunReport {
    // config echo, so a row is self-describing
    std::uint64_t seed = 0;
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    std::uint32_t k = 0;
    Variant variant = Variant::las_vegas;

    std::uint64_t interactions_total = 0;
    double parallel_time = 0.0; // interactions_total / n, exact quotient
    bool stabilized = false;
    std::uint32_t leader_count_final = 0;
    std::uint32_t junta_size = 0; // agents whose earned level equals max_level
    std::uint32_t max_level = 0;  // highest level earned through the junta race
    std::optional<std::uint64_t> epidemic_completion;

    // (interaction index, leader count), appended whenever the count changes
    std::vector<std::pair<std::uint64_t, std::uint32_t>> leader_trajectory;

    std::uint64_t distinct_states_observed = 0;

    // population-level external clock ticks until a unique leader; 0 when the
    // run never reached one or the variant has no external clock
    std::uint64_t external_ticks_to_unique = 0;

    std::vector<std::string> violations;

    std::string to_json() const;       // flat record, stable field order
    std::string to_csv_row() const;    // column order matches csv_header()
    static std::string csv_header();
};

} // namespace popsim
