#include "popsim/config.hpp"

namespace popsim {

const char* variant_name(Variant v) {
    switch (v) {
    case Variant::fast: return "fast";
    case Variant::las_vegas: return "las_vegas";
    case Variant::epidemic_only: return "epidemic_only";
    case Variant::junta_only: return "junta_only";
    case Variant::clock_only: return "clock_only";
    case Variant::slow_only: return "slow_only";
    }
    return "unknown";
}

Variant variant_from_name(const std::string& name) {
    if (name == "fast") return Variant::fast;
    if (name == "las_vegas") return Variant::las_vegas;
    if (name == "epidemic_only") return Variant::epidemic_only;
    if (name == "junta_only") return Variant::junta_only;
    if (name == "clock_only") return Variant::clock_only;
    if (name == "slow_only") return Variant::slow_only;
    throw ConfigError("unknown variant: " + name);
}

} // namespace popsim
