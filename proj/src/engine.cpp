#include "popsim/engine.hpp"

namespace popsim {

RunReport run_simulation(const SimConfig& cfg, const SnapshotFn& on_snapshot) {
    cfg.validate();
    switch (cfg.variant) {
    case Variant::epidemic_only: {
        EpidemicModel model;
        model.init(cfg);
        return run_model(model, cfg, on_snapshot);
    }
    case Variant::slow_only: {
        SlowModel model;
        model.init(cfg);
        return run_model(model, cfg, on_snapshot);
    }
    case Variant::junta_only: {
        JuntaModel model;
        model.init(cfg);
        return run_model(model, cfg, on_snapshot);
    }
    case Variant::clock_only: {
        ClockModel model;
        model.init(cfg);
        return run_model(model, cfg, on_snapshot);
    }
    case Variant::fast:
    case Variant::las_vegas: {
        ElectionModel model;
        model.init(cfg);
        return run_model(model, cfg, on_snapshot);
    }
    }
    throw ConfigError("unhandled variant");
}

} // namespace popsim
