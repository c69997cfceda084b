#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "popsim/analysis.hpp"
#include "popsim/config.hpp"
#include "popsim/epidemic.hpp"
#include "popsim/interaction.hpp"
#include "popsim/junta.hpp"
#include "popsim/leader_election.hpp"
#include "popsim/phase_clock.hpp"
#include "popsim/report.hpp"
#include "popsim/rng.hpp"

namespace popsim {

// ---------------------------------------------------------------------------
// Population models.  Each one owns the agent storage for a variant, applies
// one interaction at a time and keeps O(1) counters so the stabilization
// predicate costs nothing per step.  The generic runner below drives them;
// test harnesses drive them directly when they need mid-run control.
// ---------------------------------------------------------------------------

class EpidemicModel {
public:
    void init(const SimConfig& cfg) {
        n_ = cfg.n;
        value_.assign(cfg.n, 0);
        value_[0] = 1; // one infected agent
        infected_ = 1;
    }

    void apply(const Interaction& it) {
        const std::uint8_t before = value_[it.responder];
        value_[it.responder] =
            epidemic_step(value_[it.responder], value_[it.initiator]);
        infected_ += value_[it.responder] - before;
    }

    bool stabilized() const { return epidemic_complete(infected_, n_); }
    std::uint64_t infected() const { return infected_; }
    const std::vector<std::uint8_t>& values() const { return value_; }

    std::uint64_t audit_key(std::uint32_t agent) const {
        return value_[agent];
    }

    void finalize(RunReport& report) const {
        report.leader_count_final = 0;
        if (report.stabilized)
            report.epidemic_completion = report.interactions_total;
    }

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint8_t> value_;
    std::uint64_t infected_ = 0;
};

class SlowModel {
public:
    void init(const SimConfig& cfg) {
        candidate_.assign(cfg.n, 1);
        candidates_ = cfg.n;
    }

    void apply(const Interaction& it) {
        if (candidate_[it.responder] == 1 && candidate_[it.initiator] == 1) {
            candidate_[it.responder] = 0;
            --candidates_;
        }
    }

    bool stabilized() const { return candidates_ == 1; }
    std::uint32_t leader_count() const { return candidates_; }
    const std::vector<std::uint8_t>& candidates() const { return candidate_; }

    std::uint64_t audit_key(std::uint32_t agent) const {
        return candidate_[agent];
    }

    void finalize(RunReport& report) const {
        report.leader_count_final = candidates_;
    }

private:
    std::vector<std::uint8_t> candidate_;
    std::uint32_t candidates_ = 0;
};

class JuntaModel {
public:
    void init(const SimConfig& cfg) {
        states_.assign(cfg.n, JuntaState{});
        active_ = cfg.n;
        marks_.reset(cfg.n);
        max_present_ = 0;
    }

    void apply(const Interaction& it) {
        const JuntaState pre_r = states_[it.responder];
        const JuntaState pre_i = states_[it.initiator];
        auto [next_r, next_i] = junta_step(pre_r, pre_i);
        if (next_r.active == 0 && pre_r.active == 1) --active_;
        if (next_r.level > pre_r.level) earn(it.responder, next_r.level);
        if (next_i.level > pre_i.level) earn(it.initiator, next_i.level);
        states_[it.responder] = next_r;
        states_[it.initiator] = next_i;
    }

    bool stabilized() const { return active_ == 0; }

    /// Adversarial reset used by the spoiled-variant studies.  Succeeds only
    /// for racing agents below the current maximum level, which is the
    /// pattern the protocol tolerates.
    bool try_spoil(std::uint32_t agent) {
        const JuntaState& s = states_[agent];
        if (s.active == 0 || s.level >= max_present_) return false;
        states_[agent] = spoil(s, max_present_);
        --active_;
        return true;
    }

    const std::vector<JuntaState>& states() const { return states_; }
    const LevelWatermarks& watermarks() const { return marks_; }
    std::uint32_t active() const { return active_; }
    std::uint32_t max_present_level() const { return max_present_; }

    std::uint64_t audit_key(std::uint32_t agent) const {
        return (std::uint64_t{states_[agent].level} << 1) |
               states_[agent].active;
    }

    void finalize(RunReport& report) const {
        report.leader_count_final = 0;
        report.max_level = marks_.max_level();
        report.junta_size = marks_.count_at(report.max_level);
    }

private:
    void earn(std::uint32_t agent, std::uint32_t level) {
        marks_.observe(agent, level);
        if (level > max_present_) max_present_ = level;
    }

    std::vector<JuntaState> states_;
    LevelWatermarks marks_;
    std::uint32_t active_ = 0;
    std::uint32_t max_present_ = 0;
};

/// Phase clocks alone: a fixed leader set drives ordinary clocks, and each
/// agent's external clock ticks once per meaningful interaction.  Used for
/// spread, spacing and fault-tolerance studies; there is no stabilization
/// predicate.
class ClockModel {
public:
    struct Agent {
        ClockRole role = ClockRole::follower;
        std::uint32_t x = 0;
        std::uint32_t y = 0;
        std::uint8_t pending = 0;
    };

    void init(const SimConfig& cfg) {
        m_ = cfg.m;
        agents_.assign(cfg.n, Agent{});
        const std::uint32_t leaders = cfg.resolved_clock_leaders();
        for (std::uint32_t i = 0; i < leaders; ++i)
            agents_[i].role = ClockRole::leader;
        leaders_ = leaders;
        ordinary_passes_.assign(cfg.n, 0);
        external_passes_.assign(cfg.n, 0);
        last_pass_at_.assign(cfg.n, 0);
        with_target_passes_ = 0;
        pass_target_ = 0;
    }

    /// When set, agents reaching this many ordinary passes are counted so a
    /// harness can stop after "the first P passes" population-wide.
    void set_pass_target(std::uint32_t target) { pass_target_ = target; }

    void apply(const Interaction& it, std::uint64_t index) {
        Agent& a = agents_[it.responder];
        const Agent& b = agents_[it.initiator];
        const bool fire_external = a.pending == 1;
        const std::uint32_t x_old = a.x;
        a.x = clock_update(ClockState{x_old, a.role}, b.x, m_,
                           MaxMode::circular);
        const bool passed = passed_zero(x_old, a.x);
        if (fire_external) {
            const std::uint32_t y_old = a.y;
            a.y = clock_update(ClockState{y_old, a.role}, b.y, m_,
                               MaxMode::circular);
            if (passed_zero(y_old, a.y)) ++external_passes_[it.responder];
            a.pending = 0;
        }
        if (passed) {
            const std::uint32_t count = ++ordinary_passes_[it.responder];
            if (gaps_ != nullptr && last_pass_at_[it.responder] != 0)
                gaps_->push_back(index - last_pass_at_[it.responder]);
            last_pass_at_[it.responder] = index;
            if (pass_target_ != 0 && count == pass_target_)
                ++with_target_passes_;
            a.pending = 1;
        }
    }

    void apply(const Interaction& it) { apply(it, 0); }

    bool stabilized() const { return false; }
    std::uint32_t leader_count() const { return leaders_; }

    bool all_reached_pass_target() const {
        return pass_target_ != 0 && with_target_passes_ == agents_.size();
    }

    /// Phase progression that does not wrap: completed revolutions times m
    /// plus the current phase.  This is the quantity faults can only slow.
    std::uint64_t unwrapped_ordinary(std::uint32_t agent) const {
        return std::uint64_t{ordinary_passes_[agent]} * m_ +
               agents_[agent].x;
    }

    std::uint64_t unwrapped_external(std::uint32_t agent) const {
        return std::uint64_t{external_passes_[agent]} * m_ +
               agents_[agent].y;
    }

    void demote(std::uint32_t agent) {
        if (agents_[agent].role == ClockRole::leader) {
            agents_[agent].role = ClockRole::follower;
            --leaders_;
        }
    }

    void record_gaps_into(std::vector<std::uint64_t>* sink) { gaps_ = sink; }

    const std::vector<Agent>& agents() const { return agents_; }
    std::uint32_t ordinary_passes(std::uint32_t agent) const {
        return ordinary_passes_[agent];
    }

    PhaseSnapshot make_snapshot(std::uint64_t index) const {
        PhaseSnapshot snap;
        snap.interaction_index = index;
        snap.leader_count = leaders_;
        snap.ordinary.reserve(agents_.size());
        snap.external.reserve(agents_.size());
        for (const auto& a : agents_) {
            snap.ordinary.push_back(static_cast<std::uint8_t>(a.x));
            snap.external.push_back(static_cast<std::uint8_t>(a.y));
        }
        return snap;
    }

    std::uint64_t audit_key(std::uint32_t agent) const {
        const Agent& a = agents_[agent];
        return static_cast<std::uint64_t>(a.role == ClockRole::leader) |
               (std::uint64_t{a.x} << 1) | (std::uint64_t{a.y} << 7) |
               (std::uint64_t{a.pending} << 13);
    }

    void finalize(RunReport& report) const {
        report.leader_count_final = leaders_;
    }

private:
    std::uint32_t m_ = 16;
    std::vector<Agent> agents_;
    std::vector<std::uint32_t> ordinary_passes_;
    std::vector<std::uint32_t> external_passes_;
    std::vector<std::uint64_t> last_pass_at_;
    std::vector<std::uint64_t>* gaps_ = nullptr;
    std::uint32_t leaders_ = 0;
    std::uint32_t pass_target_ = 0;
    std::uint32_t with_target_passes_ = 0;
};

/// The composed election, fast or Las Vegas.
class ElectionModel {
public:
    void init(const SimConfig& cfg) {
        n_ = cfg.n;
        params_.m = cfg.m;
        params_.level_cap = cfg.resolved_level_cap();
        params_.variant = VariantParams::for_variant(cfg.variant);
        las_vegas_ = cfg.variant == Variant::las_vegas;
        pop_.assign(cfg.n, AgentState{});
        marks_.reset(cfg.n);
        leaders_ = cfg.n;
        terminal_ = 0;
        ext_hist_.assign(cfg.m, 0);
        ext_hist_[0] = cfg.n;
        ext_min_ = 0;
        ext_ticks_ = 0;
        ticks_to_unique_ = 0;
        reached_unique_ = false;
    }

    void apply(const Interaction& it) {
        const AgentState pre_r = pop_[it.responder];
        const AgentState pre_i = pop_[it.initiator];
        auto [next_r, next_i] = le_step(pre_r, pre_i, params_);
        account(it.responder, pre_r, next_r);
        account(it.initiator, pre_i, next_i);
        pop_[it.responder] = next_r;
        pop_[it.initiator] = next_i;
        if (leaders_ == 1 && !reached_unique_) {
            reached_unique_ = true;
            ticks_to_unique_ = ext_ticks_;
        }
    }

    bool stabilized() const {
        if (terminal_ != n_) return false;
        return las_vegas_ ? leaders_ == 1 : true;
    }

    std::uint32_t leader_count() const { return leaders_; }
    std::uint32_t terminal_count() const { return terminal_; }
    std::uint64_t external_ticks() const { return ext_ticks_; }
    std::uint64_t ticks_to_unique() const { return ticks_to_unique_; }
    const std::vector<AgentState>& agents() const { return pop_; }
    const LevelWatermarks& watermarks() const { return marks_; }
    const ElectionParams& params() const { return params_; }

    PhaseSnapshot make_snapshot(std::uint64_t index) const {
        PhaseSnapshot snap;
        snap.interaction_index = index;
        snap.leader_count = leaders_;
        snap.ordinary.reserve(pop_.size());
        snap.external.reserve(pop_.size());
        for (const auto& a : pop_) {
            snap.ordinary.push_back(
                static_cast<std::uint8_t>(a.ordinary_phase));
            snap.external.push_back(
                static_cast<std::uint8_t>(a.external_phase));
        }
        return snap;
    }

    /// Audit key over the protocol's own state vector (level, a, b, x, y,
    /// z0, z1, z2), plus the alarm/candidate/terminal bits in the Las Vegas
    /// variant.  The pending-tick bookkeeping bit is not part of the
    /// protocol's counted state and is excluded.
    std::uint64_t audit_key(std::uint32_t agent) const {
        const AgentState& a = pop_[agent];
        std::uint64_t key = a.level;
        key = (key << 1) | a.active;
        key = (key << 1) | (a.leadership == ClockRole::leader ? 1u : 0u);
        key = (key << 6) | a.ordinary_phase;
        key = (key << 6) | a.external_phase;
        key = (key << 1) | static_cast<std::uint64_t>(a.z0);
        key = (key << 2) | a.z1;
        key = (key << 1) | a.z2;
        if (las_vegas_) {
            key = (key << 1) | a.alarm;
            key = (key << 1) | a.slow_candidate;
            key = (key << 1) | a.external_terminal;
        }
        return key;
    }

    void finalize(RunReport& report) const {
        report.leader_count_final = leaders_;
        report.max_level = marks_.max_level();
        report.junta_size = marks_.count_at(report.max_level);
        report.external_ticks_to_unique = ticks_to_unique_;
    }

private:
    void account(std::uint32_t agent, const AgentState& pre,
                 const AgentState& next) {
        if (pre.leadership != next.leadership)
            leaders_ += next.leadership == ClockRole::leader ? 1 : -1;
        if (pre.active == 1 && next.level > pre.level)
            marks_.observe(agent, next.level);
        terminal_ += static_cast<std::int32_t>(next.external_terminal) -
                     static_cast<std::int32_t>(pre.external_terminal);
        if (next.external_phase != pre.external_phase) {
            --ext_hist_[pre.external_phase];
            ++ext_hist_[next.external_phase];
            if (next.external_phase < ext_min_) {
                ext_min_ = next.external_phase; // adoption reset or wrap
            } else {
                while (ext_hist_[ext_min_] == 0 && ext_min_ + 1 < params_.m) {
                    ++ext_min_;
                    ++ext_ticks_;
                }
            }
        }
    }

    std::uint32_t n_ = 0;
    bool las_vegas_ = true;
    ElectionParams params_;
    std::vector<AgentState> pop_;
    LevelWatermarks marks_;
    std::uint32_t leaders_ = 0;
    std::uint32_t terminal_ = 0;
    std::vector<std::uint32_t> ext_hist_;
    std::uint32_t ext_min_ = 0;
    std::uint64_t ext_ticks_ = 0;
    std::uint64_t ticks_to_unique_ = 0;
    bool reached_unique_ = false;
};

// ---------------------------------------------------------------------------
// Generic runner
// ---------------------------------------------------------------------------

template <class M>
concept HasLeaderCount = requires(const M& m) {
    { m.leader_count() } -> std::convertible_to<std::uint32_t>;
};

template <class M>
concept HasSnapshots = requires(const M& m) {
    { m.make_snapshot(std::uint64_t{0}) } -> std::same_as<PhaseSnapshot>;
};

using SnapshotFn = std::function<void(const PhaseSnapshot&)>;

/// Drives an initialized model from a config: scheduler draws, stabilization
/// and cap, plus the passive monitors (state audit, leader trajectory,
/// snapshot cadence).  Monitors observe only; the draw sequence and the
/// protocol trajectory depend on nothing but the seed and the config.
template <class Model>
RunReport run_model(Model& model, const SimConfig& cfg,
                    const SnapshotFn& on_snapshot = {}) {
    SplitMix64 rng(cfg.seed);
    const std::uint64_t cap = cfg.resolved_max_interactions();
    const std::uint64_t cadence = cfg.resolved_snapshot_every();

    RunReport report;
    report.seed = cfg.seed;
    report.n = cfg.n;
    report.m = cfg.m;
    report.k = cfg.k;
    report.variant = cfg.variant;

    StateAudit audit;
    if (cfg.audit_states) {
        for (std::uint32_t i = 0; i < cfg.n; ++i)
            audit.insert(model.audit_key(i));
    }

    [[maybe_unused]] std::uint32_t last_leaders = 0;
    if constexpr (HasLeaderCount<Model>) {
        last_leaders = model.leader_count();
        report.leader_trajectory.emplace_back(0, last_leaders);
    }

    std::uint64_t t = 0;
    std::uint64_t until_snapshot = cadence;
    bool done = false;
    while (t < cap && !done) {
        ++t;
        const Interaction it = draw_interaction(rng, cfg.n);
        if constexpr (requires { model.apply(it, t); }) {
            model.apply(it, t);
        } else {
            model.apply(it);
        }
        if (cfg.audit_states) {
            audit.insert(model.audit_key(it.responder));
            audit.insert(model.audit_key(it.initiator));
        }
        if constexpr (HasLeaderCount<Model>) {
            const std::uint32_t leaders = model.leader_count();
            if (leaders != last_leaders) {
                report.leader_trajectory.emplace_back(t, leaders);
                last_leaders = leaders;
            }
        }
        if (--until_snapshot == 0) {
            until_snapshot = cadence;
            if constexpr (HasSnapshots<Model>) {
                if (on_snapshot) on_snapshot(model.make_snapshot(t));
            }
            if constexpr (HasLeaderCount<Model>) {
                if (cfg.variant == Variant::las_vegas &&
                    model.leader_count() == 0)
                    report.violations.push_back(
                        "no agent can still become leader (snapshot at " +
                        std::to_string(t) + ")");
            }
        }
        done = model.stabilized();
    }

    report.interactions_total = t;
    report.parallel_time = parallel_time(t, cfg.n);
    report.stabilized = done;
    if (!done && cfg.variant != Variant::clock_only)
        report.violations.push_back("cap reached before stabilization");
    if (cfg.audit_states) report.distinct_states_observed = audit.count();
    model.finalize(report);
    return report;
}

/// Runs one trial for the configured variant.
RunReport run_simulation(const SimConfig& cfg,
                         const SnapshotFn& on_snapshot = {});

} // namespace popsim
