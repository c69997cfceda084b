#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "popsim/config.hpp"
#include "popsim/report.hpp"

namespace popsim {

/// Phases of every agent at one instant, for clock studies.
struct PhaseSnapshot {
    std::uint64_t interaction_index = 0;
    std::vector<std::uint8_t> ordinary;
    std::vector<std::uint8_t> external;
    std::uint32_t leader_count = 0;
};

/// Tightness of a set of phases on the circle: the smallest window width w
/// such that some anchor phase p has every observed phase q within cyclic
/// distance (q - p) mod m <= w.  All m anchors are scanned.
std::uint32_t clock_window(std::span<const std::uint8_t> phases,
                           std::uint32_t m);

/// Nearest-rank quantile of an unsorted sample (q in [0, 1]).
double quantile(std::vector<double> values, double q);

/// Per-agent record of the highest level earned through the junta race
/// itself (not through level adoption).  B_l is the number of agents whose
/// watermark ever reached l, which keeps the statistic meaningful even when
/// states are later rewritten or spoiled.
class LevelWatermarks {
public:
    void reset(std::uint32_t n) { marks_.assign(n, 0); }

    void observe(std::uint32_t agent, std::uint32_t level) {
        if (level > marks_[agent]) marks_[agent] = level;
    }

    std::uint32_t max_level() const {
        std::uint32_t top = 0;
        for (auto l : marks_) top = std::max(top, l);
        return top;
    }

    std::uint32_t count_at(std::uint32_t level) const {
        std::uint32_t c = 0;
        for (auto l : marks_) c += (l == level);
        return c;
    }

    std::uint32_t count_at_least(std::uint32_t level) const {
        std::uint32_t c = 0;
        for (auto l : marks_) c += (l >= level);
        return c;
    }

private:
    std::vector<std::uint32_t> marks_;
};

/// Set of distinct per-agent state tuples occupied over a run.  Keys are
/// packed by the engine per variant; the monitor never touches the agents.
class StateAudit {
public:
    void clear() { seen_.clear(); }
    void insert(std::uint64_t key) { seen_.insert(key); }
    std::uint64_t count() const { return seen_.size(); }

private:
    std::unordered_set<std::uint64_t> seen_;
};

/// Cross-trial summary for one (n, variant) cell of a sweep.
class TrialAggregate {
public:
    TrialAggregate(std::uint32_t n, Variant variant) : n_(n), variant_(variant) {}

    void add(const RunReport& report);

    struct Row {
        std::uint32_t n;
        Variant variant;
        std::string statistic;
        std::string quantile;
        double value;
    };

    std::vector<Row> rows() const;
    std::string to_json() const;
    static std::string csv_header();
    static std::string csv_row(const Row& row);

    std::uint32_t n() const { return n_; }
    Variant variant() const { return variant_; }

private:
    std::uint32_t n_;
    Variant variant_;
    std::vector<double> interactions_;
    std::vector<double> junta_sizes_;
    std::vector<double> max_levels_;
    std::vector<double> epidemic_completions_;
    std::vector<double> external_ticks_;
    std::uint64_t trials_ = 0;
    std::uint64_t stabilized_ = 0;
    std::uint64_t violations_ = 0;
};

} // namespace popsim
