#pragma once

#include <cstdint>

namespace popsim {

/// One-way epidemic transition x, y -> max{x, y}, y over {0, 1}: the
/// responder catches whatever the initiator carries, the initiator is
/// untouched.  Infection therefore travels only when the initiator is
/// infected.
inline std::uint8_t epidemic_step(std::uint8_t responder,
                                  std::uint8_t initiator) {
    return responder > initiator ? responder : initiator;
}

inline bool epidemic_complete(std::uint64_t infected_count, std::uint32_t n) {
    return infected_count == n;
}

/// Expected interactions until everyone is infected, starting from one
/// infected agent: sum over i = 1..n-1 of n(n-1) / (i(n-i)).  Used as the
/// oracle for the empirical completion mean.
inline double epidemic_expected_completion(std::uint32_t n) {
    long double total = 0.0L;
    const long double pairs =
        static_cast<long double>(n) * static_cast<long double>(n - 1);
    for (std::uint32_t i = 1; i < n; ++i) {
        total += pairs / (static_cast<long double>(i) *
                          static_cast<long double>(n - i));
    }
    return static_cast<double>(total);
}

} // namespace popsim
