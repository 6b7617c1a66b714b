#include "orderflow/pipeline.hpp"

#include "orderflow/bars.hpp"
#include "orderflow/classify.hpp"
#include "orderflow/deseason.hpp"
#include "orderflow/grid.hpp"
#include "orderflow/io.hpp"
#include "orderflow/parse.hpp"
#include "orderflow/study.hpp"
#include "orderflow/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace fs = std::filesystem;

namespace orderflow {

namespace {

std::string shortest_double(double v) {
    char buf[64];
    for (int prec = 6; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::stod(buf) == v) break;
    }
    return buf;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

} // namespace

RunConfig::RunConfig() {
    // Scaling-range overrides reported for sell limit and sell canceled
    // orders; everything else uses [1, 300].
    fit_overrides["vol_sell_lo"] = {2, 300};
    fit_overrides["num_sell_lo"] = {2, 300};
    fit_overrides["vol_sell_co"] = {4, 300};
    fit_overrides["num_sell_co"] = {4, 300};
}

std::string RunConfig::serialize() const {
    std::ostringstream out;
    out << "[input]\n";
    out << "mode = " << mode << '\n';
    out << "ticks = " << ticks_path << '\n';
    out << "splits = " << splits_path << '\n';
    out << "scenario = " << scenario_path << '\n';
    out << "\n[detect]\n";
    out << "threshold_abs = " << shortest_double(filter.threshold_abs) << '\n';
    out << "window_max = " << filter.window_max << '\n';
    out << "volatility_multiple = " << shortest_double(filter.volatility_multiple) << '\n';
    out << "opening_exclusion = " << filter.opening_exclusion << '\n';
    out << "closing_exclusion = " << filter.closing_exclusion << '\n';
    out << "clock_time_average = " << (filter.clock_time_average ? 1 : 0) << '\n';
    out << "\n[study]\n";
    out << "pattern_exclude_event_days = " << (pattern_exclude_event_days ? 1 : 0) << '\n';
    out << "\n[fit]\n";
    out << "range = " << fit_default.t_lo << ' ' << fit_default.t_hi << '\n';
    for (const auto& [q, r] : fit_overrides) {
        out << "range." << q << " = " << r.t_lo << ' ' << r.t_hi << '\n';
    }
    out << "\n[output]\n";
    out << "dir = " << output_dir << '\n';
    return out.str();
}

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig cfg;
    cfg.fit_overrides.clear();  // the file states every override explicitly

    std::istringstream in(text);
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (qual == "input.mode") cfg.mode = value;
        else if (qual == "input.ticks") cfg.ticks_path = value;
        else if (qual == "input.splits") cfg.splits_path = value;
        else if (qual == "input.scenario") cfg.scenario_path = value;
        else if (qual == "detect.threshold_abs") cfg.filter.threshold_abs = std::stod(value);
        else if (qual == "detect.window_max") cfg.filter.window_max = std::stoi(value);
        else if (qual == "detect.volatility_multiple")
            cfg.filter.volatility_multiple = std::stod(value);
        else if (qual == "detect.opening_exclusion")
            cfg.filter.opening_exclusion = std::stoi(value);
        else if (qual == "detect.closing_exclusion")
            cfg.filter.closing_exclusion = std::stoi(value);
        else if (qual == "detect.clock_time_average")
            cfg.filter.clock_time_average = value == "1" || value == "true";
        else if (qual == "study.pattern_exclude_event_days")
            cfg.pattern_exclude_event_days = value == "1" || value == "true";
        else if (qual == "output.dir") cfg.output_dir = value;
        else if (section == "fit" && (key == "range" || key.rfind("range.", 0) == 0)) {
            std::istringstream vs(value);
            FitRange r;
            if (!(vs >> r.t_lo >> r.t_hi)) {
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": range needs two integers");
            }
            if (key == "range") cfg.fit_default = r;
            else cfg.fit_overrides[key.substr(6)] = r;
        } else {
            throw std::invalid_argument("unknown config key: " + qual);
        }
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void RunConfig::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config: " + path);
    out << serialize();
}

// ---------------------------------------------------------------------------
// Stage helpers
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> list_files(const std::string& dir, const std::string& ext) {
    std::vector<std::string> out;
    if (!fs::exists(dir)) return out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ext) {
            out.push_back(entry.path().string());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<StockBars> read_all_bars(const std::string& outdir) {
    std::vector<StockBars> stocks;
    for (const auto& path : list_files(outdir + "/bars", ".csv")) {
        stocks.push_back(read_bars_csv(path));
    }
    if (stocks.empty()) throw std::runtime_error("no bar files under " + outdir + "/bars");
    return stocks;
}

std::string ticks_input_path(const RunConfig& cfg) {
    return cfg.mode == "synth_orderflow" ? cfg.output_dir + "/ticks.csv" : cfg.ticks_path;
}

GroupAverage read_curve_csv(const std::string& path, const std::string& group) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open curve file: " + path);
    GroupAverage avg;
    avg.group = group;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty curve file: " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        const int t = std::stoi(cell);
        std::getline(ss, cell, ',');
        const double mean = cell == "nan" ? std::nan("") : std::stod(cell);
        std::getline(ss, cell, ',');
        const int count = std::stoi(cell);
        avg.mean[slot_of(t)] = mean;
        avg.count[slot_of(t)] = count;
    }
    return avg;
}

} // namespace

void stage_synth(const RunConfig& cfg, std::ostream& log) {
    ensure_dir(cfg.output_dir);
    ScenarioSpec spec = ScenarioSpec::load(cfg.scenario_path);
    spec.save(cfg.output_dir + "/scenario.json");

    if (cfg.mode == "synth_bars") {
        SynthBars synth = generate_bars(spec);
        ensure_dir(cfg.output_dir + "/bars");
        for (const auto& stock : synth.stocks) {
            write_bars_csv(cfg.output_dir + "/bars/" + stock.stock_id + ".csv", stock);
        }
        synth.truth.save(cfg.output_dir + "/truth.json");
        log << "synth: " << synth.stocks.size() << " stocks x " << spec.num_days
            << " days of bars, " << synth.truth.events.size() << " injected events\n";
    } else if (cfg.mode == "synth_orderflow") {
        SynthOrderFlow synth = generate_orderflow(spec);
        std::ofstream ticks(cfg.output_dir + "/ticks.csv");
        if (!ticks) throw std::runtime_error("cannot write ticks file");
        write_events(ticks, synth.events);
        synth.truth.save(cfg.output_dir + "/truth.json");
        log << "synth: " << synth.events.size() << " tick records ("
            << synth.truth.market_orders << " market / " << synth.truth.limit_orders
            << " limit / " << synth.truth.cancel_orders << " cancel logical orders)\n";
    } else {
        throw std::runtime_error("unknown synth mode: " + cfg.mode);
    }
}

void stage_ingest(const RunConfig& cfg, std::ostream& log) {
    ensure_dir(cfg.output_dir);
    if (cfg.mode == "synth_bars") {
        log << "ingest: bars provided by synth stage\n";
        return;
    }
    const std::string path = ticks_input_path(cfg);
    ParseResult parsed = parse_file(path);
    log << "ingest: " << parsed.accepted << " records accepted, " << parsed.rejected
        << " rejected\n";
    for (const auto& rej : parsed.rejects) {
        log << "ingest: line " << rej.line_no << " rejected: " << rej.reason << '\n';
    }

    BarBuildStats stats;
    std::vector<StockBars> stocks = build_all_minute_bars(parsed.events, stats);

    if (!cfg.splits_path.empty()) {
        SplitTable table = parse_split_file(cfg.splits_path);
        for (auto& stock : stocks) apply_split_adjustment(stock, table);
        log << "ingest: split adjustment applied\n";
    }

    ensure_dir(cfg.output_dir + "/bars");
    for (const auto& stock : stocks) {
        write_bars_csv(cfg.output_dir + "/bars/" + stock.stock_id + ".csv", stock);
    }
    for (const auto& w : stats.warnings) log << "ingest: warning: " << w << '\n';
    log << "ingest: " << stocks.size() << " stocks, " << stats.events_processed
        << " events in session, " << stats.events_outside_session << " outside session, "
        << stats.flagged_submissions << " flagged submissions\n";
}

void stage_classify(const RunConfig& cfg, std::ostream& log) {
    const std::vector<StockBars> stocks = read_all_bars(cfg.output_dir);
    ensure_dir(cfg.output_dir + "/flow");

    long totals[kNumInvestors][3] = {};
    for (const auto& stock : stocks) {
        std::ofstream out(cfg.output_dir + "/flow/" + stock.stock_id + ".csv");
        if (!out) throw std::runtime_error("cannot write flow table");
        out << "stock_id,date,minute,vol_buy_market,vol_sell_market,imbalance_buy,"
               "imbalance_sell,rate_market_ind,rate_limit_ind,rate_cancel_ind,"
               "rate_market_inst,rate_limit_inst,rate_cancel_inst\n";
        for (const auto& day : stock.days) {
            for (const auto& bar : day.bars) {
                const double vb = bar.classes.market_volume(Side::buy);
                const double vs = bar.classes.market_volume(Side::sell);
                const auto imb_b = imbalance(vb, vs);
                const auto imb_s = imbalance(vs, vb);
                out << stock.stock_id << ',' << day.date << ',' << bar.minute << ','
                    << fixed2(vb) << ',' << fixed2(vs) << ','
                    << fixed6(imb_b ? *imb_b : std::nan("")) << ','
                    << fixed6(imb_s ? *imb_s : std::nan(""));
                for (int v = 0; v < kNumInvestors; ++v) {
                    const auto inv = static_cast<InvestorClass>(v);
                    const long m = bar.classes.market_count(inv);
                    const long l = bar.classes.limit_count(inv);
                    const long c = bar.classes.cancel_count(inv);
                    totals[v][0] += m;
                    totals[v][1] += l;
                    totals[v][2] += c;
                    const RelativeRates rates = relative_rates(m, l, c);
                    if (rates.defined) {
                        out << ',' << fixed6(rates.rate_market) << ',' << fixed6(rates.rate_limit)
                            << ',' << fixed6(rates.rate_cancel);
                    } else {
                        out << ",nan,nan,nan";
                    }
                }
                out << '\n';
            }
        }
    }

    // Normal-period rates: pooled logical-order proportions per investor class.
    std::ofstream out(cfg.output_dir + "/rates_normal.csv");
    if (!out) throw std::runtime_error("cannot write rates_normal.csv");
    out << "investor,rate_market,rate_limit,rate_cancel\n";
    const char* inv_names[kNumInvestors] = {"individual", "institution"};
    for (int v = 0; v < kNumInvestors; ++v) {
        const RelativeRates rates = relative_rates(totals[v][0], totals[v][1], totals[v][2]);
        out << inv_names[v] << ',' << fixed6(rates.defined ? rates.rate_market : std::nan(""))
            << ',' << fixed6(rates.defined ? rates.rate_limit : std::nan("")) << ','
            << fixed6(rates.defined ? rates.rate_cancel : std::nan("")) << '\n';
    }
    log << "classify: flow tables for " << stocks.size() << " stocks\n";
}

void stage_detect(const RunConfig& cfg, std::ostream& log) {
    cfg.filter.validate();
    log << "detect: threshold_abs=" << shortest_double(cfg.filter.threshold_abs)
        << " window_max=" << cfg.filter.window_max
        << " volatility_multiple=" << shortest_double(cfg.filter.volatility_multiple)
        << " opening_exclusion=" << cfg.filter.opening_exclusion
        << " closing_exclusion=" << cfg.filter.closing_exclusion << '\n';

    const std::vector<StockBars> stocks = read_all_bars(cfg.output_dir);
    std::vector<ExtremeEvent> all;
    for (const auto& stock : stocks) {
        const DayMinuteGrid returns = return_series(stock);
        if (!cfg.filter.clock_time_average) {
            const auto avg = average_window_volatility(returns, cfg.filter.window_max);
            for (int dt = 1; dt <= cfg.filter.window_max; ++dt) {
                if (avg[dt].count == 0) {
                    log << "detect: warning: " << stock.stock_id << ": no admissible windows of "
                        << dt << " minutes, relative filter disabled at that length\n";
                }
            }
        }
        auto events = detect_events(stock.stock_id, returns, cfg.filter);
        all.insert(all.end(), events.begin(), events.end());
    }
    write_events_csv(cfg.output_dir + "/events_all.csv", all);
    const std::vector<ExtremeEvent> deduped = deduplicate_first_per_day(std::move(all));
    write_events_csv(cfg.output_dir + "/events.csv", deduped);

    long pos = 0, neg = 0;
    for (const auto& ev : deduped) (ev.sign > 0 ? pos : neg)++;
    log << "detect: " << deduped.size() << " events after first-per-day deduplication ("
        << pos << " positive, " << neg << " negative)\n";
}

void stage_study(const RunConfig& cfg, std::ostream& log) {
    const std::vector<StockBars> stocks = read_all_bars(cfg.output_dir);
    const std::vector<ExtremeEvent> events = read_events_csv(cfg.output_dir + "/events.csv");

    ensure_dir(cfg.output_dir + "/patterns");
    ensure_dir(cfg.output_dir + "/curves");

    std::map<std::string, std::vector<ExtremeEvent>> events_by_stock;
    for (const auto& ev : events) events_by_stock[ev.stock_id].push_back(ev);

    struct PeakRow {
        std::string sign, quantity;
        int t_max;
        double peak;
    };
    std::vector<PeakRow> peak_rows;

    for (const auto& def : quantity_registry()) {
        std::vector<EventTrajectory> pos, neg;
        for (const auto& stock : stocks) {
            const auto it = events_by_stock.find(stock.stock_id);
            DayMinuteGrid grid = extract_quantity(stock, def);
            if (def.deseasonalize) {
                PatternOptions opts;
                if (cfg.pattern_exclude_event_days && it != events_by_stock.end()) {
                    opts.exclude_days.assign(stock.days.size(), false);
                    for (const auto& ev : it->second) {
                        const int d = stock.day_index(ev.date);
                        if (d >= 0) opts.exclude_days[d] = true;
                    }
                }
                IntradayPattern pattern = estimate_pattern(grid, def.name, opts);
                if (pattern.fully_masked()) {
                    log << "study: warning: pattern fully masked for " << stock.stock_id << ' '
                        << def.name << '\n';
                }
                write_pattern_csv(cfg.output_dir + "/patterns/" + stock.stock_id + "_" +
                                      def.name + ".csv",
                                  pattern);
                grid = deseasonalize(grid, pattern);
            }
            if (it == events_by_stock.end()) continue;
            for (const auto& ev : it->second) {
                (ev.sign > 0 ? pos : neg).push_back(extract_trajectory(ev, grid));
            }
        }
        const struct {
            const char* tag;
            std::vector<EventTrajectory>* group;
        } groups[2] = {{"pos", &pos}, {"neg", &neg}};
        for (const auto& g : groups) {
            if (g.group->empty()) continue;
            GroupAverage avg = group_average(*g.group, std::string(g.tag) + "_" + def.name);
            write_curve_csv(cfg.output_dir + "/curves/" + avg.group + ".csv", avg);
            peak_rows.push_back({g.tag, def.name, avg.t_max, avg.peak});
        }
    }

    {
        std::ofstream out(cfg.output_dir + "/peaks.csv");
        if (!out) throw std::runtime_error("cannot write peaks.csv");
        out << "sign,quantity,t_max,peak\n";
        for (const auto& row : peak_rows) {
            out << row.sign << ',' << row.quantity << ',' << row.t_max << ','
                << fixed4(row.peak) << '\n';
        }
    }
    {
        // Per-class peak table: volume and number peaks per side and
        // aggressiveness class, for each event sign.
        std::ofstream out(cfg.output_dir + "/peaks_by_class.csv");
        if (!out) throw std::runtime_error("cannot write peaks_by_class.csv");
        out << "sign,side,class,t_max,v_max,t_max_num,n_max\n";
        const char* sides[2] = {"buy", "sell"};
        const char* aggs[4] = {"pf", "fo", "lo", "co"};
        for (const char* sign : {"pos", "neg"}) {
            for (const char* side : sides) {
                for (const char* agg : aggs) {
                    const std::string vol_q = std::string("vol_") + side + '_' + agg;
                    const std::string num_q = std::string("num_") + side + '_' + agg;
                    const PeakRow* vol_row = nullptr;
                    const PeakRow* num_row = nullptr;
                    for (const auto& row : peak_rows) {
                        if (row.sign != sign) continue;
                        if (row.quantity == vol_q) vol_row = &row;
                        if (row.quantity == num_q) num_row = &row;
                    }
                    if (!vol_row || !num_row) continue;
                    out << sign << ',' << side << ',' << agg << ',' << vol_row->t_max << ','
                        << fixed4(vol_row->peak) << ',' << num_row->t_max << ','
                        << fixed4(num_row->peak) << '\n';
                }
            }
        }
    }

    // Aligned cumulative returns per sign, pooled over stocks.
    for (const int sign : {+1, -1}) {
        std::array<double, kTrajectoryLen> sum{};
        std::array<int, kTrajectoryLen> count{};
        bool any = false;
        for (const auto& stock : stocks) {
            const auto it = events_by_stock.find(stock.stock_id);
            if (it == events_by_stock.end()) continue;
            std::vector<ExtremeEvent> group;
            for (const auto& ev : it->second) {
                if (ev.sign == sign) group.push_back(ev);
            }
            if (group.empty()) continue;
            const DayMinuteGrid returns = return_series(stock);
            AlignedCumulativeReturn part = aligned_cumulative_return(group, returns);
            // Re-pool: undo the per-stock shift by accumulating raw sums.
            for (int slot = 0; slot < kTrajectoryLen; ++slot) {
                if (part.count[slot] == 0) continue;
                sum[slot] += (part.mean[slot]) * part.count[slot];
                count[slot] += part.count[slot];
            }
            any = true;
        }
        if (!any) continue;
        AlignedCumulativeReturn pooled;
        for (int slot = 0; slot < kTrajectoryLen; ++slot) {
            pooled.count[slot] = count[slot];
            pooled.mean[slot] = count[slot] > 0 ? sum[slot] / count[slot] : std::nan("");
        }
        const double at_zero = pooled.mean[slot_of(0)];
        for (int slot = 0; slot < kTrajectoryLen; ++slot) pooled.mean[slot] -= at_zero;
        pooled.mean[slot_of(0)] = 0.0;
        write_cumret_csv(cfg.output_dir + (sign > 0 ? "/cumret_pos.csv" : "/cumret_neg.csv"),
                         pooled);
    }

    log << "study: " << peak_rows.size() << " group curves over " << events.size()
        << " events\n";
}

void stage_fit(const RunConfig& cfg, std::ostream& log) {
    std::vector<RelaxationFit> fits;
    for (const auto& path : list_files(cfg.output_dir + "/curves", ".csv")) {
        const std::string name = fs::path(path).stem().string();
        const auto sep = name.find('_');
        if (sep == std::string::npos) continue;
        const std::string quantity = name.substr(sep + 1);
        const QuantityDef* def = find_quantity(quantity);
        if (!def || !def->deseasonalize) continue;  // rates have no excess form

        GroupAverage avg = read_curve_csv(path, name);
        ExcessSeries series = excess(avg);
        const auto it = cfg.fit_overrides.find(quantity);
        const FitRange range = it != cfg.fit_overrides.end() ? it->second : cfg.fit_default;
        try {
            RelaxationFit fit = fit_power_law(series, range);
            if (fit.capped) {
                log << "fit: " << name << ": range capped at horizon " << fit.t_hi << '\n';
            }
            fits.push_back(std::move(fit));
        } catch (const std::exception& e) {
            log << "fit: skipped " << name << ": " << e.what() << '\n';
        }
    }
    write_fits_csv(cfg.output_dir + "/fits.csv", fits);
    log << "fit: " << fits.size() << " relaxation fits\n";
}

namespace {

void build_manifest(const RunConfig& cfg) {
    Manifest m;
    std::vector<std::string> rels;
    for (const auto& entry : fs::recursive_directory_iterator(cfg.output_dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string rel = fs::relative(entry.path(), cfg.output_dir).string();
        if (rel == "manifest.txt") continue;
        rels.push_back(rel);
    }
    std::sort(rels.begin(), rels.end());
    for (const auto& rel : rels) m.add(cfg.output_dir, rel);
    write_manifest(cfg.output_dir + "/manifest.txt", m);
}

} // namespace

int run_pipeline(const RunConfig& cfg, std::ostream& log) {
    if (cfg.mode != "ticks" && cfg.mode != "synth_bars" && cfg.mode != "synth_orderflow") {
        log << "config: unknown mode " << cfg.mode << '\n';
        return kConfigError;
    }
    try {
        cfg.filter.validate();
    } catch (const std::exception& e) {
        log << "config: " << e.what() << '\n';
        return kConfigError;
    }
    // Referenced paths must exist at run start; a missing path is charged
    // to the stage that would consume it.
    if (cfg.mode == "ticks" && !fs::exists(cfg.ticks_path)) {
        log << "ingest: error: ticks input does not exist: " << cfg.ticks_path << '\n';
        return kIngestError;
    }
    if (cfg.mode != "ticks" && !fs::exists(cfg.scenario_path)) {
        log << "synth: error: scenario does not exist: " << cfg.scenario_path << '\n';
        return kSynthError;
    }
    if (!cfg.splits_path.empty() && !fs::exists(cfg.splits_path)) {
        log << "ingest: error: split table does not exist: " << cfg.splits_path << '\n';
        return kIngestError;
    }

    struct Stage {
        const char* name;
        void (*fn)(const RunConfig&, std::ostream&);
        int code;
        bool enabled;
    };
    const Stage stages[] = {
        {"synth", stage_synth, kSynthError, cfg.mode != "ticks"},
        {"ingest", stage_ingest, kIngestError, true},
        {"classify", stage_classify, kClassifyError, true},
        {"detect", stage_detect, kDetectError, true},
        {"study", stage_study, kStudyError, true},
        {"fit", stage_fit, kFitError, true},
    };
    for (const auto& stage : stages) {
        if (!stage.enabled) continue;
        try {
            stage.fn(cfg, log);
        } catch (const std::exception& e) {
            log << stage.name << ": error: " << e.what() << '\n';
            return stage.code;
        }
    }
    try {
        build_manifest(cfg);
    } catch (const std::exception& e) {
        log << "manifest: error: " << e.what() << '\n';
        return kReportError;
    }
    return kOk;
}

void report(const std::string& output_dir, std::ostream& out) {
    const Manifest manifest = read_manifest(output_dir + "/manifest.txt");
    for (const auto& [rel, hash] : manifest.entries) {
        const std::string actual = hash_file(output_dir + "/" + rel);
        if (actual != hash) {
            throw std::runtime_error("manifest hash mismatch for " + rel);
        }
    }

    if (!manifest.entries.count("events.csv")) {
        throw std::runtime_error("manifest lists no events.csv");
    }
    const auto events = read_events_csv(output_dir + "/events.csv");
    long pos = 0, neg = 0;
    for (const auto& ev : events) (ev.sign > 0 ? pos : neg)++;
    out << "events: positive: " << pos << ", negative: " << neg << "\n";
    if (events.empty()) {
        out << "zero events detected; no peak or fit sections\n";
        return;
    }

    if (manifest.entries.count("peaks.csv")) {
        out << "\ngroup peaks:\n";
        std::ifstream in(output_dir + "/peaks.csv");
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ss(line);
            std::string sign, quantity, t_max, peak;
            std::getline(ss, sign, ',');
            std::getline(ss, quantity, ',');
            std::getline(ss, t_max, ',');
            std::getline(ss, peak, ',');
            char buf[128];
            std::snprintf(buf, sizeof buf, "  %-4s %-24s t_max=%-5s peak=%s\n", sign.c_str(),
                          quantity.c_str(), t_max.c_str(), peak.c_str());
            out << buf;
        }
    }

    if (manifest.entries.count("fits.csv")) {
        out << "\nrelaxation fits:\n";
        std::ifstream in(output_dir + "/fits.csv");
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ss(line);
            std::string group, alpha, se, icept, lo, hi, capped, used, dropped;
            std::getline(ss, group, ',');
            std::getline(ss, alpha, ',');
            std::getline(ss, se, ',');
            std::getline(ss, icept, ',');
            std::getline(ss, lo, ',');
            std::getline(ss, hi, ',');
            std::getline(ss, capped, ',');
            std::getline(ss, used, ',');
            std::getline(ss, dropped, ',');
            char buf[160];
            std::snprintf(buf, sizeof buf, "  %-28s \xce\xb1 = %.2f \xc2\xb1 %.2f   range [%s,%s] points %s\n",
                          group.c_str(), std::stod(alpha), std::stod(se), lo.c_str(), hi.c_str(),
                          used.c_str());
            out << buf;
        }
    }
}

} // namespace orderflow
