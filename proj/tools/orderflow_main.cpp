#include "orderflow/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using orderflow::RunConfig;

struct CliFlags {
    RunConfig cfg;
    std::string config_path;
    std::vector<int> fit_range;
};

void add_common_options(CLI::App* cmd, CliFlags& flags) {
    RunConfig& cfg = flags.cfg;
    cmd->add_option("--config", flags.config_path,
                    "run configuration file (key = value sections)");
    cmd->add_option("--out", cfg.output_dir, "output directory");
    cmd->add_option("--ticks", cfg.ticks_path, "tick-level input file");
    cmd->add_option("--splits", cfg.splits_path, "split table file");
    cmd->add_option("--scenario", cfg.scenario_path, "synthetic scenario file (JSON)");
    cmd->add_option("--mode", cfg.mode, "input mode: ticks | synth_bars | synth_orderflow");
    cmd->add_option("--threshold-abs", cfg.filter.threshold_abs, "absolute filter threshold");
    cmd->add_option("--window-max", cfg.filter.window_max, "maximum window length (minutes)");
    cmd->add_option("--volatility-multiple", cfg.filter.volatility_multiple,
                    "relative filter multiple");
    cmd->add_option("--opening-exclusion", cfg.filter.opening_exclusion,
                    "excluded minutes after the open");
    cmd->add_option("--closing-exclusion", cfg.filter.closing_exclusion,
                    "excluded minutes before the close");
    cmd->add_flag("--clock-time-average", cfg.filter.clock_time_average,
                  "average volatility per clock minute instead of per window length");
    cmd->add_flag("--pattern-exclude-event-days", cfg.pattern_exclude_event_days,
                  "exclude event days from intraday pattern estimation");
    cmd->add_option("--fit-range", flags.fit_range,
                    "default power-law fit range in minutes, e.g. --fit-range 1 300")
        ->expected(2);
}

// Flags override values taken from --config.
RunConfig resolve_config(const CLI::App* cmd, const CliFlags& flags) {
    RunConfig cfg = flags.cfg;
    if (!flags.config_path.empty()) {
        cfg = RunConfig::load(flags.config_path);
        if (cmd->count("--out")) cfg.output_dir = flags.cfg.output_dir;
        if (cmd->count("--ticks")) cfg.ticks_path = flags.cfg.ticks_path;
        if (cmd->count("--splits")) cfg.splits_path = flags.cfg.splits_path;
        if (cmd->count("--scenario")) cfg.scenario_path = flags.cfg.scenario_path;
        if (cmd->count("--mode")) cfg.mode = flags.cfg.mode;
        if (cmd->count("--threshold-abs"))
            cfg.filter.threshold_abs = flags.cfg.filter.threshold_abs;
        if (cmd->count("--window-max")) cfg.filter.window_max = flags.cfg.filter.window_max;
        if (cmd->count("--volatility-multiple"))
            cfg.filter.volatility_multiple = flags.cfg.filter.volatility_multiple;
        if (cmd->count("--opening-exclusion"))
            cfg.filter.opening_exclusion = flags.cfg.filter.opening_exclusion;
        if (cmd->count("--closing-exclusion"))
            cfg.filter.closing_exclusion = flags.cfg.filter.closing_exclusion;
        if (cmd->count("--clock-time-average"))
            cfg.filter.clock_time_average = flags.cfg.filter.clock_time_average;
        if (cmd->count("--pattern-exclude-event-days"))
            cfg.pattern_exclude_event_days = flags.cfg.pattern_exclude_event_days;
    }
    if (cmd->count("--fit-range")) {
        cfg.fit_default = {flags.fit_range[0], flags.fit_range[1]};
    }
    return cfg;
}

int run_stage(void (*stage)(const RunConfig&, std::ostream&), const RunConfig& cfg,
              int failure_code) {
    try {
        stage(cfg, std::cout);
        return orderflow::kOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure_code;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"order-flow dynamics around extreme intraday price changes"};
    app.require_subcommand(1);

    CliFlags flags;

    struct StageCmd {
        const char* name;
        const char* desc;
        void (*fn)(const RunConfig&, std::ostream&);
        int code;
        CLI::App* cmd = nullptr;
    };
    StageCmd stages[] = {
        {"synth", "generate a synthetic scenario (bars or order flow)", orderflow::stage_synth,
         orderflow::kSynthError},
        {"ingest", "parse tick data and build minute bars", orderflow::stage_ingest,
         orderflow::kIngestError},
        {"classify", "emit per-minute classified order-flow tables", orderflow::stage_classify,
         orderflow::kClassifyError},
        {"detect", "detect extreme price changes", orderflow::stage_detect,
         orderflow::kDetectError},
        {"study", "event-aligned averages, peaks and cumulative returns", orderflow::stage_study,
         orderflow::kStudyError},
        {"fit", "power-law relaxation fits of excess variables", orderflow::stage_fit,
         orderflow::kFitError},
    };
    for (auto& stage : stages) {
        stage.cmd = app.add_subcommand(stage.name, stage.desc);
        add_common_options(stage.cmd, flags);
    }

    CLI::App* run_cmd = app.add_subcommand("run", "full pipeline with artifact manifest");
    add_common_options(run_cmd, flags);

    CLI::App* report_cmd = app.add_subcommand("report", "summarize a completed run");
    std::string report_dir = "out";
    report_cmd->add_option("--out", report_dir, "output directory of the run");

    CLI11_PARSE(app, argc, argv);

    for (const auto& stage : stages) {
        if (stage.cmd->parsed()) {
            return run_stage(stage.fn, resolve_config(stage.cmd, flags), stage.code);
        }
    }
    if (run_cmd->parsed()) {
        return orderflow::run_pipeline(resolve_config(run_cmd, flags), std::cout);
    }
    if (report_cmd->parsed()) {
        try {
            orderflow::report(report_dir, std::cout);
            return orderflow::kOk;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return orderflow::kReportError;
        }
    }
    return orderflow::kConfigError;
}
