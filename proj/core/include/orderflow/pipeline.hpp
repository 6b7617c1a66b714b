#pragma once

#include "orderflow/detect.hpp"
#include "orderflow/relax.hpp"

#include <iosfwd>
#include <map>
#include <string>

namespace orderflow {

// One non-zero exit code per failing stage.
enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kIngestError = 3,
    kClassifyError = 4,
    kDetectError = 5,
    kStudyError = 6,
    kFitError = 7,
    kSynthError = 8,
    kReportError = 9,
};

struct RunConfig {
    std::string mode = "ticks";  // ticks | synth_bars | synth_orderflow
    std::string ticks_path;
    std::string splits_path;
    std::string scenario_path;
    std::string output_dir = "out";

    FilterConfig filter;  // defaults: 4%, 60 min, 6x, 5/60-minute exclusions

    bool pattern_exclude_event_days = false;
    FitRange fit_default{1, 300};
    std::map<std::string, FitRange> fit_overrides;  // quantity -> range

    RunConfig();

    std::string serialize() const;  // flat key-value text, sections per stage
    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);
    void save(const std::string& path) const;
};

// Individual stages; each reads only the previous stage's files so any
// stage can be rerun independently. All throw on fatal errors.
void stage_synth(const RunConfig& cfg, std::ostream& log);
void stage_ingest(const RunConfig& cfg, std::ostream& log);
void stage_classify(const RunConfig& cfg, std::ostream& log);
void stage_detect(const RunConfig& cfg, std::ostream& log);
void stage_study(const RunConfig& cfg, std::ostream& log);
void stage_fit(const RunConfig& cfg, std::ostream& log);

// Full pipeline; writes a manifest of every artifact with a content hash.
// Returns kOk or the failing stage's exit code (the stage is named in log).
int run_pipeline(const RunConfig& cfg, std::ostream& log);

// Human-readable summary of a completed run: event counts by sign, group
// peaks, and fitted exponents. Throws on a corrupt manifest.
void report(const std::string& output_dir, std::ostream& out);

} // namespace orderflow
