// Command-line front end: experiment presets, config-driven sweeps, the
// resilience study and the self-check battery.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "risnoma/csvout.hpp"
#include "risnoma/errors.hpp"
#include "risnoma/presets.hpp"
#include "risnoma/validate_suite.hpp"

namespace fs = std::filesystem;
using namespace risnoma;

namespace {

struct CommonFlags {
    std::string config;
    std::string out_dir = "out";
    std::string schemes;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int trials = 0;
    int threads = 0;
    bool threads_set = false;
    bool timing = false;
    bool timing_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "config file (manifest format)");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--schemes", f.schemes, "comma-separated scheme list");
    cmd->add_option("--seed", f.seed, "master seed")->each([&](const std::string&) {
        f.seed_set = true;
    });
    cmd->add_option("--trials", f.trials, "Monte Carlo trials per point");
    cmd->add_option("--threads", f.threads, "worker threads (0 = all, 1 = serial)")
        ->each([&](const std::string&) { f.threads_set = true; });
    cmd->add_flag("--timing", f.timing, "record wall-clock columns")->each([&](const std::string&) {
        f.timing_set = true;
    });
}

void apply_overrides(RunSpec& spec, const CommonFlags& f) {
    if (f.seed_set) spec.sim.seed = f.seed;
    if (f.trials > 0) spec.sim.trials = f.trials;
    if (f.threads_set) spec.threads = f.threads;
    if (f.timing_set) spec.timing = f.timing;
    if (!f.schemes.empty()) {
        spec.schemes.clear();
        std::string cur;
        for (char c : f.schemes + ",") {
            if (c == ',') {
                if (!cur.empty()) {
                    if (!scheme_from_name(cur)) throw ConfigError("schemes", "unknown scheme '" + cur + "'");
                    spec.schemes.push_back(cur);
                    cur.clear();
                }
            } else {
                cur += c;
            }
        }
    }
}

std::vector<SchemeRun> scheme_runs(const RunSpec& spec) {
    std::vector<SchemeRun> runs;
    for (const auto& name : spec.schemes) runs.push_back({*scheme_from_name(name), name});
    return runs;
}

int execute(RunSpec spec, const CommonFlags& f) {
    apply_overrides(spec, f);
    validate(spec.sim);

    std::vector<PointRow> rows;
    if (spec.is_resilience()) {
        const ResilienceResult rr = resilience_experiment(spec.sim, spec.threads);
        rows = rr.rows;
        std::printf("mean kill count: proposed %.3f, traditional %.3f\n", rr.mean_kill_proposed,
                    rr.mean_kill_traditional);
    } else {
        rows = monte_carlo(spec.sim, spec.sweep, scheme_runs(spec), spec.threads, spec.timing);
    }

    fs::create_directories(f.out_dir);
    const std::string csv_path = (fs::path(f.out_dir) / "results.csv").string();
    const std::string manifest_path = (fs::path(f.out_dir) / "manifest.txt").string();
    write_csv(rows, csv_path);
    write_manifest(spec, manifest_path);
    std::printf("wrote %s (%zu rows) and %s\n", csv_path.c_str(), rows.size(),
                manifest_path.c_str());
    return 0;
}

RunSpec spec_from_config_or_default(const CommonFlags& f) {
    if (!f.config.empty()) return parse_config_file(f.config);
    return RunSpec{};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted NOMA UAV network connectivity simulator"};
    app.require_subcommand(1);

    CommonFlags sim_flags, cmp_flags, res_flags, preset_flags;
    std::string preset_name;

    CLI::App* simulate = app.add_subcommand("simulate", "run the configured sweep");
    add_common(simulate, sim_flags);

    CLI::App* compare = app.add_subcommand("compare", "all schemes on one configuration, timed");
    add_common(compare, cmp_flags);

    CLI::App* resilience = app.add_subcommand("resilience", "UAV failure study");
    add_common(resilience, res_flags);

    CLI::App* preset = app.add_subcommand("preset", "run a canned experiment");
    preset->add_option("name", preset_name, "one of: fig3 fig4 fig5 fig6 fig7 fig8 fig9 fig10 table2")
        ->required();
    add_common(preset, preset_flags);

    CLI::App* validate_cmd = app.add_subcommand("validate", "run the invariant/oracle battery");
    int validate_threads = 0;
    validate_cmd->add_option("--threads", validate_threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) {
            return execute(spec_from_config_or_default(sim_flags), sim_flags);
        }
        if (compare->parsed()) {
            RunSpec spec = spec_from_config_or_default(cmp_flags);
            spec.sweep = {"none", {}};
            spec.schemes = {"proposed", "single_ris", "traditional"};
            spec.timing = true; // timing is the point of compare
            return execute(spec, cmp_flags);
        }
        if (resilience->parsed()) {
            RunSpec spec = spec_from_config_or_default(res_flags);
            spec.sweep = {"failed_uavs", {}};
            return execute(spec, res_flags);
        }
        if (preset->parsed()) {
            if (!is_preset(preset_name)) {
                std::fprintf(stderr, "unknown preset '%s'\n", preset_name.c_str());
                return 1;
            }
            if (!preset_flags.config.empty()) {
                std::fprintf(stderr, "preset takes no --config; rerun manifests via `simulate`\n");
                return 1;
            }
            return execute(make_preset(preset_name), preset_flags);
        }
        if (validate_cmd->parsed()) {
            return run_validate_suite(validate_threads) ? 0 : 2;
        }
    } catch (const ParseError& e) {
        std::fprintf(stderr, "config parse error: %s\n", e.what());
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
