#include "popsim/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "popsim/analysis.hpp"
#include "popsim/report.hpp"
#include "popsim/runner.hpp"
#include "popsim/verify.hpp"

namespace popsim::cli {
namespace {

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

std::uint64_t parse_config_number(const std::string& key,
                                  const std::string& value) {
    std::size_t used = 0;
    unsigned long long parsed = 0;
    try {
        parsed = std::stoull(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != value.size())
        throw UsageError("--config: " + key + ": '" + value +
                         "' is not a number");
    return parsed;
}

/// One assignable key in a config file, bound to the staging variable the
/// matching flag writes.
struct KeyBinding {
    std::string key;
    std::function<void(const std::string&)> set;
};

/// Plain key=value lines, '#' comments.  Values apply only to keys whose
/// flag was absent from the command line: defaults < file < flags.
void apply_config_file(const std::string& path, const CLI::App& sub,
                       const std::vector<KeyBinding>& bindings) {
    std::ifstream in(path);
    if (!in) throw UsageError("--config: cannot read '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string entry = trim(line);
        if (entry.empty() || entry[0] == '#') continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw UsageError("--config: line " + std::to_string(lineno) +
                             " is not key=value");
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        const KeyBinding* hit = nullptr;
        for (const KeyBinding& binding : bindings)
            if (key == binding.key) hit = &binding;
        if (hit == nullptr)
            throw UsageError("--config: unknown key '" + key + "'");
        if (sub.count("--" + key) > 0) continue;
        hit->set(value);
    }
}

std::vector<std::uint32_t> parse_sizes(const std::string& list) {
    std::vector<std::uint32_t> sizes;
    std::stringstream stream(list);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::size_t used = 0;
        unsigned long value = 0;
        try {
            value = std::stoul(item, &used);
        } catch (const std::exception&) {
            throw UsageError("--n: '" + item + "' is not a population size");
        }
        if (used != item.size() || value > 0xFFFFFFFFull)
            throw UsageError("--n: '" + item + "' is not a population size");
        if (value < 2)
            throw UsageError("--n: population sizes start at 2");
        sizes.push_back(static_cast<std::uint32_t>(value));
    }
    if (sizes.empty()) throw UsageError("--n: empty size list");
    return sizes;
}

/// Data sink: the output path when given, stdout otherwise.  Progress and
/// diagnostics never pass through here.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file_.open(path, std::ios::binary | std::ios::trunc);
        if (!file_) throw IoError("cannot write output path '" + path + "'");
        use_file_ = true;
    }

    void line(const std::string& text) {
        if (use_file_)
            file_ << text << '\n';
        else
            std::printf("%s\n", text.c_str());
    }

    void close() {
        if (!use_file_) return;
        file_.close();
        if (!file_) throw IoError("error while writing output");
    }

private:
    std::ofstream file_;
    bool use_file_ = false;
};

void progress_to_stderr(const std::string& text) {
    std::fprintf(stderr, "  .. %s\n", text.c_str());
    std::fflush(stderr);
}

std::string json_array(const std::vector<std::string>& records) {
    std::string out = "[";
    for (std::size_t i = 0; i < records.size(); ++i) {
        out += i == 0 ? "\n  " : ",\n  ";
        out += records[i];
    }
    out += "\n]";
    return out;
}

int execute_runs(const CliCommand& cmd) {
    std::vector<RunReport> reports;
    for (const std::uint32_t n : cmd.sizes) {
        SimConfig cfg = cmd.base;
        cfg.n = n;
        std::fprintf(stderr, "running %s n=%u x%d trials\n",
                     variant_name(cfg.variant), n, cmd.trials);
        std::vector<RunReport> batch = run_trials(cfg, cmd.trials);
        reports.insert(reports.end(), batch.begin(), batch.end());
    }

    Sink sink(cmd.output);
    if (cmd.format == "csv") {
        sink.line(RunReport::csv_header());
        for (const RunReport& r : reports) sink.line(r.to_csv_row());
    } else {
        std::vector<std::string> records;
        records.reserve(reports.size());
        for (const RunReport& r : reports) records.push_back(r.to_json());
        sink.line(json_array(records));
    }
    sink.close();
    return 0;
}

int execute_bench(const CliCommand& cmd) {
    std::vector<TrialAggregate> cells;
    for (const std::uint32_t n : cmd.sizes) {
        SimConfig cfg = cmd.base;
        cfg.n = n;
        const auto start = std::chrono::steady_clock::now();
        std::vector<RunReport> batch = run_trials(cfg, cmd.trials);
        const std::chrono::duration<double> wall =
            std::chrono::steady_clock::now() - start;

        TrialAggregate agg(n, cfg.variant);
        std::uint64_t interactions = 0;
        for (const RunReport& r : batch) {
            agg.add(r);
            interactions += r.interactions_total;
        }
        std::fprintf(stderr,
                     "bench %s n=%u: %d trials, %.2fs wall, %.0f "
                     "interactions/s\n",
                     variant_name(cfg.variant), n, cmd.trials, wall.count(),
                     wall.count() > 0 ? double(interactions) / wall.count()
                                      : 0.0);
        cells.push_back(std::move(agg));
    }

    Sink sink(cmd.output);
    if (cmd.format == "csv") {
        sink.line(TrialAggregate::csv_header());
        for (const TrialAggregate& agg : cells)
            for (const TrialAggregate::Row& row : agg.rows())
                sink.line(TrialAggregate::csv_row(row));
    } else {
        std::vector<std::string> records;
        records.reserve(cells.size());
        for (const TrialAggregate& agg : cells)
            records.push_back(agg.to_json());
        sink.line(json_array(records));
    }
    sink.close();
    return 0;
}

int execute_verify(const CliCommand& cmd) {
    std::vector<verify::CriterionResult> results =
        verify::run_suites(cmd.suite, progress_to_stderr);

    Sink sink(cmd.output);
    bool all_pass = true;
    for (const verify::CriterionResult& r : results) {
        sink.line(verify::format_result(r));
        all_pass = all_pass && r.pass;
    }
    sink.close();
    return all_pass ? 0 : 1;
}

} // namespace

CliCommand parse_args(int argc, const char* const* argv) {
    CLI::App app{"population-protocol leader election testbed"};
    app.require_subcommand(1);
    app.footer("POPSIM_THREADS caps trial concurrency; output order is by "
               "trial index regardless.\nTrial i of a batch runs with seed "
               "trial_seed(seed, i) = mix64(seed + (i+1)*golden_gamma).");

    CliCommand cmd;
    std::string n_list = std::to_string(cmd.base.n);
    std::string variant = variant_name(cmd.base.variant);
    std::string config_path;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--variant", variant,
                        "fast, las_vegas, epidemic_only, junta_only, "
                        "clock_only or slow_only")
            ->capture_default_str();
        sub->add_option("--n", n_list, "population size, or comma list")
            ->capture_default_str();
        sub->add_option("--m", cmd.base.m, "phases per clock revolution")
            ->capture_default_str();
        sub->add_option("--k", cmd.base.k,
                        "clock sensitivity; epsilon = 3/(3k+1)")
            ->capture_default_str();
        sub->add_option("--level-cap", cmd.base.level_cap,
                        "junta level cap; 0 derives ceil(log2 log2 n)+6")
            ->capture_default_str();
        sub->add_option("--seed", cmd.base.seed, "base seed for the batch")
            ->capture_default_str();
        sub->add_option("--trials", cmd.trials, "independent trials per size")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-interactions", cmd.base.max_interactions,
                        "scheduler cap; 0 derives the variant default")
            ->capture_default_str();
        sub->add_option("--snapshot-every", cmd.base.snapshot_every,
                        "monitor cadence in interactions; 0 means n")
            ->capture_default_str();
        sub->add_option("--output", cmd.output,
                        "write data here instead of stdout");
        sub->add_option("--format", cmd.format, "csv or json")
            ->capture_default_str()
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--config", config_path,
                        "key=value file; explicit flags override it");
        return sub;
    };

    add_common(app.add_subcommand("run", "execute trials of one size"));
    add_common(app.add_subcommand("sweep", "execute trials across sizes"));
    add_common(app.add_subcommand(
        "bench", "aggregate statistics and throughput across sizes"));

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "acceptance and property suites");
    verify_cmd->add_option("--suite", cmd.suite, "suite name, or all")
        ->capture_default_str();
    verify_cmd->add_option("--output", cmd.output,
                           "write verdict lines here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        throw HelpShown{};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    const CLI::App* sub = app.get_subcommands().front();
    cmd.subcommand = sub->get_name();

    if (cmd.subcommand == "verify") {
        bool known = cmd.suite == "all";
        for (const verify::SuiteSpec& suite : verify::all_suites())
            known = known || cmd.suite == suite.name;
        if (!known) throw UsageError("--suite: no suite named " + cmd.suite);
        return cmd;
    }

    if (!config_path.empty()) {
        const auto as_u32 = [](const std::string& key, const std::string& v) {
            const std::uint64_t parsed = parse_config_number(key, v);
            if (parsed > 0xFFFFFFFFull)
                throw UsageError("--config: " + key + " out of range");
            return static_cast<std::uint32_t>(parsed);
        };
        const std::vector<KeyBinding> bindings = {
            {"variant", [&](const std::string& v) { variant = v; }},
            {"n", [&](const std::string& v) { n_list = v; }},
            {"m", [&](const std::string& v) { cmd.base.m = as_u32("m", v); }},
            {"k", [&](const std::string& v) { cmd.base.k = as_u32("k", v); }},
            {"level-cap",
             [&](const std::string& v) {
                 cmd.base.level_cap = as_u32("level-cap", v);
             }},
            {"seed",
             [&](const std::string& v) {
                 cmd.base.seed = parse_config_number("seed", v);
             }},
            {"trials",
             [&](const std::string& v) {
                 const std::uint64_t t = parse_config_number("trials", v);
                 if (t == 0 || t > 1000000000)
                     throw UsageError("--config: trials out of range");
                 cmd.trials = static_cast<int>(t);
             }},
            {"max-interactions",
             [&](const std::string& v) {
                 cmd.base.max_interactions =
                     parse_config_number("max-interactions", v);
             }},
            {"snapshot-every",
             [&](const std::string& v) {
                 cmd.base.snapshot_every =
                     parse_config_number("snapshot-every", v);
             }},
            {"output", [&](const std::string& v) { cmd.output = v; }},
            {"format",
             [&](const std::string& v) {
                 if (v != "csv" && v != "json")
                     throw UsageError("--config: format must be csv or json");
                 cmd.format = v;
             }},
        };
        apply_config_file(config_path, *sub, bindings);
    }

    try {
        cmd.base.variant = variant_from_name(variant);
    } catch (const ConfigError& e) {
        throw UsageError(std::string("--variant: ") + e.what());
    }
    cmd.sizes = parse_sizes(n_list);
    if (cmd.subcommand == "run" && cmd.sizes.size() != 1)
        throw UsageError("--n: run takes a single size; use sweep for lists");
    for (const std::uint32_t n : cmd.sizes) {
        SimConfig probe = cmd.base;
        probe.n = n;
        try {
            probe.validate();
        } catch (const ConfigError& e) {
            throw UsageError(e.what());
        }
    }
    return cmd;
}

int execute(const CliCommand& cmd) {
    if (cmd.subcommand == "verify") return execute_verify(cmd);
    if (cmd.subcommand == "bench") return execute_bench(cmd);
    return execute_runs(cmd);
}

int run_cli(int argc, const char* const* argv) {
    try {
        return execute(parse_args(argc, argv));
    } catch (const HelpShown&) {
        return 0;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 1;
    }
}

} // namespace popsim::cli
