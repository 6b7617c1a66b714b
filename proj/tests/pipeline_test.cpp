#include "orderflow/pipeline.hpp"

#include "orderflow/io.hpp"
#include "orderflow/synth.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace orderflow;

namespace {

// A small bar-mode scenario with a handful of clean events.
std::string write_small_scenario(const test::TempDir& dir, int positives, int negatives,
                                 std::uint64_t seed = 11) {
    ScenarioSpec spec;
    spec.num_stocks = 2;
    spec.num_days = 120;
    spec.return_sigma = 0.0005;
    spec.seed = seed;

    int day = 5;
    for (int k = 0; k < positives + negatives; ++k) {
        EventInjection ev;
        ev.stock = k % 2;
        ev.day = day;
        day += 3;
        ev.minute = 30 + (k * 17) % 140;
        ev.sign = k < positives ? 1 : -1;
        ev.jump_total = 0.05;
        PeakSpec peak;
        peak.peak_value = 10.0;
        peak.t_max = 0;
        peak.alpha = 0.5;
        peak.decay_amplitude = 9.0;
        ev.peaks["vol_buy_market"] = peak;
        spec.events.push_back(ev);
    }
    const std::string path = dir.file("scenario.json");
    spec.save(path);
    return path;
}

} // namespace

TEST(RunConfig, SerializeParseRoundTripIsLossless) {
    RunConfig cfg;
    cfg.mode = "synth_bars";
    cfg.scenario_path = "/tmp/scenario.json";
    cfg.output_dir = "/tmp/out";
    cfg.filter.threshold_abs = 0.035;
    cfg.filter.window_max = 45;
    cfg.filter.volatility_multiple = 5.5;
    cfg.filter.opening_exclusion = 7;
    cfg.filter.closing_exclusion = 55;
    cfg.filter.clock_time_average = true;
    cfg.pattern_exclude_event_days = true;
    cfg.fit_default = {2, 250};
    cfg.fit_overrides.clear();
    cfg.fit_overrides["volume"] = {3, 111};

    RunConfig back = RunConfig::parse(cfg.serialize());
    EXPECT_EQ(back.serialize(), cfg.serialize());
    EXPECT_EQ(back.mode, "synth_bars");
    EXPECT_DOUBLE_EQ(back.filter.threshold_abs, 0.035);
    EXPECT_DOUBLE_EQ(back.filter.volatility_multiple, 5.5);
    EXPECT_EQ(back.filter.window_max, 45);
    EXPECT_TRUE(back.filter.clock_time_average);
    EXPECT_TRUE(back.pattern_exclude_event_days);
    EXPECT_EQ(back.fit_default.t_lo, 2);
    ASSERT_TRUE(back.fit_overrides.count("volume"));
    EXPECT_EQ(back.fit_overrides.at("volume").t_hi, 111);
}

TEST(RunConfig, StockDefaultFilterAndFitValues) {
    RunConfig cfg;
    EXPECT_DOUBLE_EQ(cfg.filter.threshold_abs, 0.04);
    EXPECT_EQ(cfg.filter.window_max, 60);
    EXPECT_DOUBLE_EQ(cfg.filter.volatility_multiple, 6.0);
    EXPECT_EQ(cfg.filter.opening_exclusion, 5);
    EXPECT_EQ(cfg.filter.closing_exclusion, 60);
    EXPECT_EQ(cfg.fit_default.t_lo, 1);
    EXPECT_EQ(cfg.fit_default.t_hi, 300);
    EXPECT_EQ(cfg.fit_overrides.at("vol_sell_lo").t_lo, 2);
    EXPECT_EQ(cfg.fit_overrides.at("vol_sell_co").t_lo, 4);
}

TEST(RunConfig, UnknownKeyIsRejected) {
    EXPECT_THROW(RunConfig::parse("[input]\nbogus = 1\n"), std::invalid_argument);
}

TEST(Pipeline, DetectStageLogsFilterValuesVerbatim) {
    test::TempDir dir("pipeline_log");
    write_small_scenario(dir, 2, 1);

    RunConfig cfg;
    cfg.mode = "synth_bars";
    cfg.scenario_path = dir.file("scenario.json");
    cfg.output_dir = dir.file("out");

    std::ostringstream log;
    ASSERT_EQ(run_pipeline(cfg, log), kOk) << log.str();
    const std::string text = log.str();
    EXPECT_NE(text.find("threshold_abs=0.04"), std::string::npos) << text;
    EXPECT_NE(text.find("window_max=60"), std::string::npos);
    EXPECT_NE(text.find("volatility_multiple=6"), std::string::npos);
    EXPECT_NE(text.find("opening_exclusion=5"), std::string::npos);
    EXPECT_NE(text.find("closing_exclusion=60"), std::string::npos);
}

TEST(Pipeline, ProducesFullArtifactSetWithStableManifest) {
    test::TempDir dir("pipeline_artifacts");
    write_small_scenario(dir, 3, 1);

    RunConfig cfg;
    cfg.mode = "synth_bars";
    cfg.scenario_path = dir.file("scenario.json");

    std::ostringstream log;
    cfg.output_dir = dir.file("out1");
    ASSERT_EQ(run_pipeline(cfg, log), kOk) << log.str();

    namespace fs = std::filesystem;
    for (const char* artifact :
         {"events.csv", "events_all.csv", "peaks.csv", "peaks_by_class.csv", "fits.csv",
          "manifest.txt", "truth.json", "rates_normal.csv", "cumret_pos.csv"}) {
        EXPECT_TRUE(fs::exists(dir.file("out1") + "/" + std::string(artifact))) << artifact;
    }
    EXPECT_TRUE(fs::exists(dir.file("out1") + "/curves/pos_volume.csv"));
    EXPECT_TRUE(fs::exists(dir.file("out1") + "/patterns/000001_volume.csv"));
    EXPECT_TRUE(fs::exists(dir.file("out1") + "/flow/000001.csv"));

    // Same config, fresh directory: byte-identical manifest (hashes and all).
    cfg.output_dir = dir.file("out2");
    ASSERT_EQ(run_pipeline(cfg, log), kOk);
    EXPECT_EQ(test::read_text(dir.file("out1") + "/manifest.txt"),
              test::read_text(dir.file("out2") + "/manifest.txt"));
    EXPECT_FALSE(test::read_text(dir.file("out1") + "/manifest.txt").empty());
}

TEST(Pipeline, MissingInputYieldsIngestExitCode) {
    RunConfig cfg;
    cfg.mode = "ticks";
    cfg.ticks_path = "/nonexistent/ticks.csv";
    std::ostringstream log;
    EXPECT_EQ(run_pipeline(cfg, log), kIngestError);
    EXPECT_NE(log.str().find("ingest: error"), std::string::npos);

    // Same for an unreadable file at stage time.
    test::TempDir dir("pipeline_ingest_fail");
    test::write_text(dir.file("ticks.csv"), "not,a,header\n");
    cfg.ticks_path = dir.file("ticks.csv");
    cfg.output_dir = dir.file("out");
    EXPECT_EQ(run_pipeline(cfg, log), kIngestError);

    RunConfig synth_cfg;
    synth_cfg.mode = "synth_bars";
    synth_cfg.scenario_path = "/nonexistent/scenario.json";
    EXPECT_EQ(run_pipeline(synth_cfg, log), kSynthError);
}

TEST(Pipeline, UnknownModeIsConfigError) {
    RunConfig cfg;
    cfg.mode = "nonsense";
    std::ostringstream log;
    EXPECT_EQ(run_pipeline(cfg, log), kConfigError);
}

TEST(Pipeline, OrderflowModeRunsEndToEnd) {
    test::TempDir dir("pipeline_flow");
    ScenarioSpec spec;
    spec.num_stocks = 1;
    spec.num_days = 10;
    spec.orders_per_day = 300;
    spec.partial_fill_prob = 0.05;
    spec.save(dir.file("scenario.json"));

    RunConfig cfg;
    cfg.mode = "synth_orderflow";
    cfg.scenario_path = dir.file("scenario.json");
    cfg.output_dir = dir.file("out");

    std::ostringstream log;
    ASSERT_EQ(run_pipeline(cfg, log), kOk) << log.str();
    EXPECT_TRUE(std::filesystem::exists(dir.file("out") + "/ticks.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir.file("out") + "/bars/000001.csv"));
    // A quiet synthetic market has no extreme events; that is a valid run.
    EXPECT_NE(log.str().find("0 events"), std::string::npos);
}

TEST(Report, SummarizesEventCountsAndFits) {
    test::TempDir dir("report");
    write_small_scenario(dir, 3, 2, 77);

    RunConfig cfg;
    cfg.mode = "synth_bars";
    cfg.scenario_path = dir.file("scenario.json");
    cfg.output_dir = dir.file("out");
    std::ostringstream log;
    ASSERT_EQ(run_pipeline(cfg, log), kOk) << log.str();

    std::ostringstream out;
    report(cfg.output_dir, out);
    const std::string text = out.str();
    EXPECT_NE(text.find("positive: 3, negative: 2"), std::string::npos) << text;
    EXPECT_NE(text.find("\xce\xb1 = "), std::string::npos);  // alpha rows present
    EXPECT_NE(text.find("group peaks"), std::string::npos);
}

TEST(Report, LargeEventSampleCounts) {
    // A large event sample: 131 positive and 32 negative events
    // events after first-per-day deduplication.
    test::TempDir dir("report_131_32");
    ScenarioSpec spec;
    spec.num_stocks = 2;
    spec.num_days = 300;
    spec.return_sigma = 0.0004;
    spec.seed = 163;
    int day[2] = {2, 3};
    for (int k = 0; k < 163; ++k) {
        EventInjection ev;
        ev.stock = k % 2;
        ev.day = day[k % 2];
        day[k % 2] += 3;
        ev.minute = 15 + (k * 29) % 160;
        ev.sign = k < 131 ? 1 : -1;
        ev.jump_total = 0.05;
        spec.events.push_back(ev);
    }
    spec.save(dir.file("scenario.json"));

    RunConfig cfg;
    cfg.mode = "synth_bars";
    cfg.scenario_path = dir.file("scenario.json");
    cfg.output_dir = dir.file("out");
    std::ostringstream log;
    ASSERT_EQ(run_pipeline(cfg, log), kOk) << log.str();

    std::ostringstream out;
    report(cfg.output_dir, out);
    EXPECT_NE(out.str().find("events: positive: 131, negative: 32"), std::string::npos)
        << out.str().substr(0, 200);
}

TEST(Pipeline, FitStageRerunsIndependently) {
    test::TempDir dir("stage_isolation");
    write_small_scenario(dir, 2, 1);
    RunConfig cfg;
    cfg.mode = "synth_bars";
    cfg.scenario_path = dir.file("scenario.json");
    cfg.output_dir = dir.file("out");
    std::ostringstream log;
    ASSERT_EQ(run_pipeline(cfg, log), kOk) << log.str();

    const std::string before = test::read_text(cfg.output_dir + "/fits.csv");
    std::filesystem::remove(cfg.output_dir + "/fits.csv");
    stage_fit(cfg, log);  // reads only the study stage's curve files
    EXPECT_EQ(test::read_text(cfg.output_dir + "/fits.csv"), before);
}

TEST(Report, CorruptManifestIsRefused) {
    test::TempDir dir("report_corrupt");
    ensure_dir(dir.file("out"));
    test::write_text(dir.file("out/manifest.txt"), "zzz not-a-hash\n");
    std::ostringstream out;
    EXPECT_THROW(report(dir.file("out"), out), std::runtime_error);
}

TEST(Report, TamperedArtifactIsDetected) {
    test::TempDir dir("report_tamper");
    write_small_scenario(dir, 1, 0);
    RunConfig cfg;
    cfg.mode = "synth_bars";
    cfg.scenario_path = dir.file("scenario.json");
    cfg.output_dir = dir.file("out");
    std::ostringstream log;
    ASSERT_EQ(run_pipeline(cfg, log), kOk);

    test::write_text(cfg.output_dir + "/events.csv", "tampered\n");
    std::ostringstream out;
    EXPECT_THROW(report(cfg.output_dir, out), std::runtime_error);
}

TEST(Manifest, ReadWriteRoundTrip) {
    test::TempDir dir("manifest_rt");
    test::write_text(dir.file("a.txt"), "hello\n");
    Manifest m;
    m.add(dir.str(), "a.txt");
    write_manifest(dir.file("manifest.txt"), m);
    Manifest back = read_manifest(dir.file("manifest.txt"));
    EXPECT_EQ(back.entries, m.entries);
}
