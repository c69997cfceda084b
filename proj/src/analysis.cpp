#include "popsim/analysis.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace popsim {

std::uint32_t clock_window(std::span<const std::uint8_t> phases,
                           std::uint32_t m) {
    if (phases.empty()) return 0;
    std::vector<std::uint32_t> hist(m, 0);
    for (const auto p : phases) ++hist[p];

    std::uint32_t best = m;
    for (std::uint32_t anchor = 0; anchor < m; ++anchor) {
        std::uint32_t width = 0;
        for (std::uint32_t d = m; d-- > 0;) {
            if (hist[(anchor + d) % m] != 0) {
                width = d;
                break;
            }
        }
        best = std::min(best, width);
    }
    return best;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    if (q <= 0.0) return values.front();
    if (q >= 1.0) return values.back();
    const auto rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(values.size())));
    return values[rank == 0 ? 0 : rank - 1];
}

void TrialAggregate::add(const RunReport& report) {
    ++trials_;
    if (report.stabilized) ++stabilized_;
    violations_ += report.violations.size();
    interactions_.push_back(static_cast<double>(report.interactions_total));
    junta_sizes_.push_back(static_cast<double>(report.junta_size));
    max_levels_.push_back(static_cast<double>(report.max_level));
    if (report.epidemic_completion.has_value())
        epidemic_completions_.push_back(
            static_cast<double>(*report.epidemic_completion));
    if (report.external_ticks_to_unique != 0)
        external_ticks_.push_back(
            static_cast<double>(report.external_ticks_to_unique));
}

namespace {

double mean_of(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double total = 0.0;
    for (const auto v : values) total += v;
    return total / static_cast<double>(values.size());
}

void emit_distribution(std::vector<TrialAggregate::Row>& rows,
                       std::uint32_t n, Variant variant,
                       const std::string& statistic,
                       const std::vector<double>& values) {
    if (values.empty()) return;
    const std::pair<const char*, double> quantiles[] = {
        {"p50", 0.50}, {"p90", 0.90}, {"p99", 0.99}};
    for (const auto& [label, q] : quantiles)
        rows.push_back({n, variant, statistic, label, quantile(values, q)});
    rows.push_back({n, variant, statistic, "mean", mean_of(values)});
}

} // namespace

std::vector<TrialAggregate::Row> TrialAggregate::rows() const {
    std::vector<Row> out;
    out.push_back({n_, variant_, "trials", "count",
                   static_cast<double>(trials_)});
    out.push_back({n_, variant_, "stabilized", "count",
                   static_cast<double>(stabilized_)});
    out.push_back({n_, variant_, "violations", "count",
                   static_cast<double>(violations_)});
    emit_distribution(out, n_, variant_, "interactions", interactions_);
    emit_distribution(out, n_, variant_, "junta_size", junta_sizes_);
    emit_distribution(out, n_, variant_, "max_level", max_levels_);
    emit_distribution(out, n_, variant_, "epidemic_completion",
                      epidemic_completions_);
    emit_distribution(out, n_, variant_, "external_ticks_to_unique",
                      external_ticks_);
    return out;
}

std::string TrialAggregate::csv_header() {
    return "n,variant,statistic,quantile,value";
}

std::string TrialAggregate::csv_row(const Row& row) {
    char value[64];
    std::snprintf(value, sizeof(value), "%.17g", row.value);
    std::string out;
    out += std::to_string(row.n);
    out += ',';
    out += variant_name(row.variant);
    out += ',';
    out += row.statistic;
    out += ',';
    out += row.quantile;
    out += ',';
    out += value;
    return out;
}

std::string TrialAggregate::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    j["variant"] = variant_name(variant_);
    j["trials"] = trials_;
    j["stabilized"] = stabilized_;
    j["violations"] = violations_;
    nlohmann::ordered_json stats = nlohmann::ordered_json::object();
    for (const auto& row : rows()) {
        if (row.quantile == "count") continue;
        stats[row.statistic][row.quantile] = row.value;
    }
    j["statistics"] = std::move(stats);
    return j.dump();
}

} // namespace popsim
