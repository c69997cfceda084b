#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>

namespace popsim {

class SpoilAtMaxLevel : public std::runtime_error {
public:
    SpoilAtMaxLevel()
        : std::runtime_error(
              "cannot spoil an agent holding the current maximum level") {}
};

class NotStabilized : public std::runtime_error {
public:
    NotStabilized()
        : std::runtime_error("junta membership is defined only once every "
                             "agent has frozen (a = 0)") {}
};

/// Junta race state (l, a): the level climbed so far and whether the agent is
/// still racing.  Once a = 0 the pair is frozen in the standalone protocol.
struct JuntaState {
    std::uint32_t level = 0;
    std::uint8_t active = 1;

    friend bool operator==(const JuntaState&, const JuntaState&) = default;
};

/// One interaction of the junta race.  Only the responder mutates, except
/// for the seed rule where two fresh agents meet and the initiator is
/// promoted to level 1.  level_cap clamps promotions; a capped agent keeps
/// racing at the cap and stands in for the top level.
inline std::pair<JuntaState, JuntaState>
junta_step(JuntaState responder, JuntaState initiator,
           std::uint32_t level_cap = UINT32_MAX) {
    if (responder.active == 0) return {responder, initiator};

    if (responder.level == 0) {
        if (initiator.level == 0 && initiator.active == 1) {
            responder = JuntaState{0, 0};
            if (initiator.level < level_cap)
                initiator = JuntaState{1, 1};
            return {responder, initiator};
        }
        return {JuntaState{0, 0}, initiator};
    }

    if (responder.level <= initiator.level) {
        if (responder.level < level_cap) ++responder.level;
        return {responder, initiator};
    }
    responder.active = 0;
    return {responder, initiator};
}

/// Adversarial reset to (0, 0).  Callers may spoil any agent that is not at
/// the population's current maximum level; spoiling the top level is the one
/// pattern the protocol's guarantees do not cover.
inline JuntaState spoil(const JuntaState& agent,
                        std::uint32_t current_max_level) {
    if (agent.level == current_max_level) throw SpoilAtMaxLevel();
    return JuntaState{0, 0};
}

/// Maximum level present and how many agents hold it.  Only meaningful once
/// the race is over.
inline std::pair<std::uint32_t, std::uint32_t>
junta_members(std::span<const JuntaState> population) {
    std::uint32_t max_level = 0;
    std::uint32_t count = 0;
    for (const auto& agent : population) {
        if (agent.active != 0) throw NotStabilized();
        if (agent.level > max_level) {
            max_level = agent.level;
            count = 1;
        } else if (agent.level == max_level) {
            ++count;
        }
    }
    return {max_level, count};
}

} // namespace popsim
