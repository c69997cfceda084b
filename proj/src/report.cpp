#include "popsim/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace popsim {

namespace {

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

} // namespace

std::string RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["n"] = n;
    j["m"] = m;
    j["k"] = k;
    j["variant"] = variant_name(variant);
    j["interactions_total"] = interactions_total;
    j["parallel_time"] = parallel_time;
    j["stabilized"] = stabilized;
    j["leader_count_final"] = leader_count_final;
    j["junta_size"] = junta_size;
    j["max_level"] = max_level;
    if (epidemic_completion.has_value())
        j["epidemic_completion"] = *epidemic_completion;
    else
        j["epidemic_completion"] = nullptr;
    nlohmann::ordered_json trajectory = nlohmann::ordered_json::array();
    for (const auto& [index, count] : leader_trajectory)
        trajectory.push_back({index, count});
    j["leader_trajectory"] = std::move(trajectory);
    j["distinct_states_observed"] = distinct_states_observed;
    j["external_ticks_to_unique"] = external_ticks_to_unique;
    j["violations"] = violations;
    return j.dump();
}

std::string RunReport::csv_header() {
    return "seed,n,m,k,variant,interactions_total,parallel_time,stabilized,"
           "leader_count_final,junta_size,max_level,distinct_states_observed";
}

std::string RunReport::to_csv_row() const {
    std::string row;
    row += std::to_string(seed);
    row += ',';
    row += std::to_string(n);
    row += ',';
    row += std::to_string(m);
    row += ',';
    row += std::to_string(k);
    row += ',';
    row += variant_name(variant);
    row += ',';
    row += std::to_string(interactions_total);
    row += ',';
    row += format_double(parallel_time);
    row += ',';
    row += stabilized ? "true" : "false";
    row += ',';
    row += std::to_string(leader_count_final);
    row += ',';
    row += std::to_string(junta_size);
    row += ',';
    row += std::to_string(max_level);
    row += ',';
    row += std::to_string(distinct_states_observed);
    return row;
}

} // namespace popsim
