#pragma once

#include <cstdint>

namespace popsim {

enum class ClockRole : std::uint8_t { follower = 0, leader = 1 };

/// How the clock combines its own phase with the incoming one.
enum class MaxMode : std::uint8_t {
    circular, // max over the cyclic order on Z_m
    capped    // plain numeric max; phases saturate at m-1
};

struct ClockState {
    std::uint32_t phase;
    ClockRole role;
};

inline std::uint32_t add_mod(std::uint32_t x, std::uint32_t d,
                             std::uint32_t m) {
    const std::uint32_t s = x + d;
    return s >= m ? s - m : s;
}

/// Cyclic maximum on Z_m: the plain max when the two phases are at most m/2
/// apart, otherwise the plain min (the smaller value is a lap ahead).  The
/// tie |x - y| == m/2 takes the max branch.
inline std::uint32_t max_mod(std::uint32_t x, std::uint32_t y,
                             std::uint32_t m) {
    const std::uint32_t lo = x < y ? x : y;
    const std::uint32_t hi = x < y ? y : x;
    return 2 * (hi - lo) <= m ? hi : lo;
}

/// x precedes y in the cyclic order iff y wins the cyclic maximum.
inline bool leq_mod(std::uint32_t x, std::uint32_t y, std::uint32_t m) {
    return max_mod(x, y, m) == y;
}

/// Responder-side phase update.  Followers absorb the initiator's phase;
/// leaders absorb the initiator's phase advanced by one, which is what makes
/// a clock tick forward at all.  In circular mode the advance wraps; in
/// capped mode it saturates at m-1 and the combine is the numeric max.
inline std::uint32_t clock_update(const ClockState& responder,
                                  std::uint32_t initiator_phase,
                                  std::uint32_t m, MaxMode mode) {
    if (mode == MaxMode::capped) {
        std::uint32_t incoming = initiator_phase;
        if (responder.role == ClockRole::leader)
            incoming = initiator_phase + 1 < m ? initiator_phase + 1 : m - 1;
        return responder.phase > incoming ? responder.phase : incoming;
    }
    const std::uint32_t incoming = responder.role == ClockRole::leader
                                       ? add_mod(initiator_phase, 1, m)
                                       : initiator_phase;
    return max_mod(responder.phase, incoming, m);
}

/// A clock passes through 0 when its phase is reduced in absolute terms,
/// e.g. 5 -> 3 or 7 -> 0.  Staying put is not a pass.
inline bool passed_zero(std::uint32_t old_phase, std::uint32_t new_phase) {
    return new_phase < old_phase;
}

} // namespace popsim
