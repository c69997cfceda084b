#pragma once

#include <cstdint>

#include "popsim/rng.hpp"

namespace popsim {

/// One scheduler event.  The pair is ordered: most transition rules mutate
/// the responder using what the initiator carries.
struct Interaction {
    std::uint32_t responder;
    std::uint32_t initiator;
};

/// Uniform draw over the n(n-1) ordered pairs of distinct agents.
///
/// Exactly two generator calls per draw, in a fixed order: the initiator is
/// drawn from [0, n), then the responder from [0, n-1) skipping the
/// initiator.  Harnesses that replay a run re-derive the same sequence from
/// the same seed, so this call order is part of the determinism contract.
inline Interaction draw_interaction(SplitMix64& rng, std::uint32_t n) {
    const auto initiator = static_cast<std::uint32_t>(rng.bounded(n));
    auto responder = static_cast<std::uint32_t>(rng.bounded(n - 1));
    if (responder >= initiator) ++responder;
    return Interaction{responder, initiator};
}

/// Parallel time is the exact quotient interactions / n.
inline double parallel_time(std::uint64_t interactions, std::uint32_t n) {
    return static_cast<double>(interactions) / static_cast<double>(n);
}

} // namespace popsim
