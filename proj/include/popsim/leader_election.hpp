#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "popsim/config.hpp"
#include "popsim/junta.hpp"
#include "popsim/phase_clock.hpp"

namespace popsim {

inline constexpr std::uint8_t z1_unset = 2; // z1 is {0, 1, unset}

enum class Gossip : std::uint8_t { draw = 0, spread = 1 };

/// Full per-agent election state.  Fields beyond (level, active) stay at
/// their initial values until the agent finishes the junta race; clocks and
/// gossip are gated on active == 0.  Byte fields keep the population cache
/// resident at the largest sweep sizes; the config bounds m at 64 and the
/// junta cannot climb past log2(n) levels, so nothing can overflow them.
struct AgentState {
    std::uint8_t level = 0;
    std::uint8_t active = 1;
    ClockRole leadership = ClockRole::leader;
    std::uint8_t ordinary_phase = 0;
    std::uint8_t external_phase = 0;
    Gossip z0 = Gossip::draw;
    std::uint8_t z1 = z1_unset; // this round's coin
    std::uint8_t z2 = 0;        // collected maximum of the round's coins
    std::uint8_t meaningful_pending = 0; // ordinary clock passed 0, external tick owed
    std::uint8_t alarm = 0;              // this level's clock looks broken
    std::uint8_t slow_candidate = 1;
    std::uint8_t external_terminal = 0;  // external clock reached m-1 and halted

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

/// Knobs that distinguish the fast variant from the Las Vegas one.
struct VariantParams {
    MaxMode mode_max = MaxMode::circular;
    bool level_cap_enabled = false;
    bool distant_enabled = false; // desync alarm with thresholds (m/5, 4m/5)
    bool slow_enabled = false;    // two-state backup elimination

    static VariantParams for_variant(Variant v) {
        if (v == Variant::las_vegas)
            return VariantParams{MaxMode::capped, true, true, true};
        return VariantParams{MaxMode::circular, false, false, false};
    }
};

struct ElectionParams {
    std::uint32_t m = 16;
    std::uint32_t level_cap = UINT32_MAX;
    VariantParams variant;
};

/// Coin convention: a leader meeting a follower draws 0 as responder and 1
/// as initiator.
inline std::uint8_t coin_from_roles(bool leader_is_responder) {
    return leader_is_responder ? 0 : 1;
}

/// Two ordinary phases are distant when the cyclic gap a in x_peer = x +_m a
/// satisfies m/5 < a < 4m/5.  The set is symmetric in the two phases.
inline bool distant_phases(std::uint32_t x, std::uint32_t x_peer,
                           std::uint32_t m) {
    const std::uint32_t a = (x_peer + m - x) % m;
    return 5 * a > m && 5 * a < 4 * m;
}

/// External ticks an agent must log on its level before its ordinary phase
/// takes part in distant-phase comparisons.
inline constexpr std::uint32_t distant_arm_ticks = 2;

inline std::uint32_t count_leaders(std::span<const AgentState> population) {
    std::uint32_t count = 0;
    for (const auto& agent : population)
        if (agent.leadership == ClockRole::leader) ++count;
    return count;
}

namespace detail {

inline std::uint32_t external_update(std::uint32_t y, ClockRole role,
                                     std::uint32_t peer_y, std::uint32_t m,
                                     MaxMode mode) {
    // The external clock halts at m-1, so a leader's advance saturates there
    // in both modes; wrapping it would hand phase 0 to agents that are about
    // to finish and strand them.
    std::uint32_t incoming = peer_y;
    if (role == ClockRole::leader)
        incoming = peer_y + 1 < m ? peer_y + 1 : m - 1;
    if (mode == MaxMode::capped) return y > incoming ? y : incoming;
    return max_mod(y, incoming, m);
}

inline void conclude_external(AgentState& s, const ElectionParams& p) {
    s.external_terminal = 1;
    // gossip is finished for this agent; parking the round state keeps stale
    // coins from leaking into rounds still running elsewhere
    s.z0 = Gossip::draw;
    s.z1 = z1_unset;
    s.z2 = 0;
    if (p.variant.slow_enabled && s.leadership != ClockRole::leader)
        s.slow_candidate = 0;
}

/// Script one participant runs against the frozen pre-state of its peer.
inline AgentState evolve(const AgentState& self, const AgentState& peer,
                         bool is_responder, const ElectionParams& p) {
    AgentState s = self;

    if (p.variant.slow_enabled && is_responder) {
        // backup elimination runs from the very first interaction
        if (s.slow_candidate == 1 && peer.slow_candidate == 1)
            s.slow_candidate = 0;
        // agents done with their external clocks settle surviving
        // leaderships pairwise by the same initiator-wins rule
        if (s.external_terminal == 1 && peer.external_terminal == 1 &&
            s.leadership == ClockRole::leader &&
            peer.leadership == ClockRole::leader)
            s.leadership = ClockRole::follower;
    }

    if (p.variant.distant_enabled && s.level == peer.level) {
        // the alarm indicts one level's clock, so it only travels between
        // agents sharing that clock; early levels desync routinely while the
        // race is still feeding them fresh phase-0 joiners, and letting those
        // alarms escape upward would put every run on the quadratic path
        if (peer.alarm == 1) s.alarm = 1;
        // a clock joins its level at phase 0, which circular max can read as
        // ahead of the whole pack, so while joiners are still trickling in a
        // healthy level shows wide gaps; the comparison stays disarmed until
        // this agent's own clock has two externally acknowledged revolutions
        // on the level, by which point every joiner's jolt has been absorbed
        if (s.active == 0 && peer.active == 0 &&
            s.external_phase >= distant_arm_ticks &&
            distant_phases(s.ordinary_phase, peer.ordinary_phase, p.m))
            s.alarm = 1;
    }

    if (s.active == 1) {
        // still racing; clocks and gossip have not started
        const std::uint32_t cap =
            p.variant.level_cap_enabled ? p.level_cap : UINT32_MAX;
        const JuntaState mine{s.level, s.active};
        const JuntaState theirs{peer.level, peer.active};
        const JuntaState next = is_responder
                                    ? junta_step(mine, theirs, cap).first
                                    : junta_step(theirs, mine, cap).second;
        s.level = next.level;
        s.active = next.active;
        return s;
    }

    if (peer.active == 1) return s; // peer's clock level does not exist yet

    if (s.level < peer.level) {
        // join the higher clock level as a follower, clocks aligned at 0;
        // the alarm leaves with the clock state it described
        s.level = peer.level;
        s.leadership = ClockRole::follower;
        s.ordinary_phase = 0;
        s.external_phase = 0;
        s.z0 = Gossip::draw;
        s.z1 = z1_unset;
        s.z2 = 0;
        s.meaningful_pending = 0;
        s.alarm = 0;
        s.external_terminal = 0;
    }

    bool passed = false;
    if (is_responder && s.level == peer.level) {
        const bool fire_external =
            (s.meaningful_pending == 1 || s.alarm == 1) &&
            s.external_terminal == 0;
        const std::uint32_t x_old = s.ordinary_phase;
        s.ordinary_phase =
            clock_update(ClockState{x_old, s.leadership}, peer.ordinary_phase,
                         p.m, MaxMode::circular);
        passed = passed_zero(x_old, s.ordinary_phase);
        if (fire_external) {
            s.external_phase =
                external_update(s.external_phase, s.leadership,
                                peer.external_phase, p.m, p.variant.mode_max);
            s.meaningful_pending = 0;
            if (s.external_phase == p.m - 1) conclude_external(s, p);
        }
        if (passed && s.external_terminal == 0) s.meaningful_pending = 1;
    }

    if (s.external_terminal == 0) {
        bool entered_draw = false;
        if (passed) {
            // round boundary: entering spread clears the collector, entering
            // draw clears both the coin and the collector, so a round never
            // sees the previous round's 1s echoed back by late clocks
            if (s.z0 == Gossip::draw) {
                s.z0 = Gossip::spread;
                s.z2 = 0;
            } else {
                s.z0 = Gossip::draw;
                s.z1 = z1_unset;
                s.z2 = 0;
                entered_draw = true;
            }
        }
        // the coin comes from the first follower met strictly after the pass
        // through 0; drawing in the pass interaction itself would always
        // catch the leader as responder and weld every coin to 0
        if (!entered_draw && s.z0 == Gossip::draw && s.z1 == z1_unset &&
            s.leadership == ClockRole::leader &&
            peer.leadership == ClockRole::follower)
            s.z1 = coin_from_roles(is_responder);
        if (s.z0 == Gossip::spread && is_responder) {
            const std::uint8_t peer_coin = peer.z1 == 1 ? 1 : 0; // unset is 0
            const std::uint8_t incoming =
                peer_coin > peer.z2 ? peer_coin : peer.z2;
            if (incoming > s.z2) s.z2 = incoming;
        }
        if (s.z0 == Gossip::spread && s.leadership == ClockRole::leader &&
            s.z1 == 0 && s.z2 == 1)
            s.leadership = ClockRole::follower;
    }

    return s;
}

} // namespace detail

/// One interaction of the composed election.  Both participants run the same
/// script with their own role; both results are computed from the two
/// pre-interaction states and applied together.
inline std::pair<AgentState, AgentState>
le_step(const AgentState& responder, const AgentState& initiator,
        const ElectionParams& params) {
    return {detail::evolve(responder, initiator, true, params),
            detail::evolve(initiator, responder, false, params)};
}

} // namespace popsim
