#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace popsim {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Variant {
    fast,          // junta + clocks + coin-toss elimination, circular external clock
    las_vegas,     // fast protocol + capped external clock, alarm and slow backup
    epidemic_only, // one-way epidemic from a single infected agent
    junta_only,    // standalone junta formation
    clock_only,    // phase clocks with a pre-seeded leader set
    slow_only      // two-state elimination backup protocol on its own
};

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name); // throws ConfigError

struct SimConfig {
    std::uint32_t n = 256;  // population size, >= 2
    std::uint32_t m = 16;   // phases per clock revolution, >= 2
    std::uint32_t k = 2;    // clock sensitivity; epsilon = 3/(3k+1)
    std::uint32_t level_cap = 0; // junta level cap; 0 = derived default
    Variant variant = Variant::las_vegas;
    std::uint64_t seed = 1;
    std::uint64_t max_interactions = 0; // 0 = derived default
    std::uint64_t snapshot_every = 0;   // monitor cadence; 0 = n
    std::uint32_t clock_leaders = 0;    // clock_only: seeded leaders; 0 = ceil(n^(1-eps))
    bool audit_states = true;           // record distinct state tuples

    double epsilon() const { return 3.0 / (3.0 * k + 1.0); }

    std::uint32_t ceil_log2_n() const {
        std::uint32_t b = 0;
        while ((std::uint64_t{1} << b) < n) ++b;
        return b;
    }

    // ceil(log2 log2 n) + 6 unless overridden; the constant keeps the cap
    // comfortably above the levels the junta actually reaches.
    std::uint32_t resolved_level_cap() const {
        if (level_cap != 0) return level_cap;
        const double ll = std::log2(std::log2(static_cast<double>(n)));
        const auto base = static_cast<std::uint32_t>(std::ceil(ll));
        return base + 6;
    }

    std::uint64_t resolved_max_interactions() const {
        if (max_interactions != 0) return max_interactions;
        const std::uint64_t lg = ceil_log2_n() == 0 ? 1 : ceil_log2_n();
        switch (variant) {
        case Variant::fast:
        case Variant::las_vegas: {
            // a clean run costs on the order of m revolutions of n log n
            // interactions each; the quadratic floor covers the slow-path
            // cleanup the Las Vegas variant falls back to
            const std::uint64_t clean = 256 * m * std::uint64_t{n} * lg;
            const std::uint64_t slow = 8 * std::uint64_t{n} * n;
            return clean > slow ? clean : slow;
        }
        case Variant::slow_only:
            // elimination needs Theta(n^2) interactions; the margin keeps
            // the last-pair geometric tail from ever touching the cap
            return std::uint64_t{n} * (n - 1) * (lg + 16);
        default:
            return 50 * std::uint64_t{n} * lg;
        }
    }

    std::uint64_t resolved_snapshot_every() const {
        return snapshot_every != 0 ? snapshot_every : n;
    }

    std::uint32_t resolved_clock_leaders() const {
        if (clock_leaders != 0) return clock_leaders;
        const double count = std::pow(static_cast<double>(n), 1.0 - epsilon());
        auto c = static_cast<std::uint32_t>(std::ceil(count));
        if (c < 1) c = 1;
        if (c > n) c = n;
        return c;
    }

    void validate() const {
        if (n < 2) throw ConfigError("n must be at least 2");
        if (m < 2) throw ConfigError("m must be at least 2");
        if (k < 1) throw ConfigError("k must be at least 1");
        if (m > 64) throw ConfigError("m must be at most 64");
        if (level_cap > 60) throw ConfigError("level_cap must be at most 60");
        if (max_interactions == 0 && resolved_max_interactions() == 0)
            throw ConfigError("max_interactions must be positive");
        if (clock_leaders > n)
            throw ConfigError("clock_leaders cannot exceed n");
    }
};

} // namespace popsim
