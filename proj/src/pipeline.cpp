#include "prefixsel/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "prefixsel/error.hpp"
#include "prefixsel/evaluation.hpp"
#include "prefixsel/io.hpp"

namespace prefixsel::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path require(const fs::path& dir, const char* file, const char* stage) {
    const auto p = dir / file;
    if (!fs::exists(p)) {
        throw DataError("missing upstream artifact " + p.string() + "; run `" + stage + "` first");
    }
    return p;
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw DataError("cannot read " + p.string());
    return in;
}

std::ofstream open_out(const fs::path& p) {
    fs::create_directories(p.parent_path().empty() ? fs::path(".") : p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + p.string());
    return out;
}

json read_json(const fs::path& p) {
    auto in = open_in(p);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DataError("malformed JSON in " + p.string() + ": " + e.what());
    }
}

void write_json(const fs::path& p, const json& j) {
    auto out = open_out(p);
    out << j.dump(2) << '\n';
}

json box_json(const BoxSummary& b) {
    return {{"min", b.min}, {"p25", b.p25}, {"median", b.median}, {"mean", b.mean}, {"p75", b.p75}, {"max", b.max}};
}

std::string run_key(Method m, std::uint32_t window, std::uint32_t size) {
    return std::string(method_name(m)) + "/L=" + std::to_string(window) + "/K=" + std::to_string(size);
}

std::string selection_file(Method m, std::uint32_t window) {
    return "selection_" + std::string(method_name(m)) + "_L" + std::to_string(window) + ".csv";
}

std::string evaluation_file(Method m, std::uint32_t window) {
    return "evaluation_" + std::string(method_name(m)) + "_L" + std::to_string(window) + ".csv";
}

void save_matrix(const fs::path& dir, const HourlyTraceMatrix& m, json meta) {
    {
        auto out = open_out(dir / files::matrix);
        io::write_matrix_csv(out, m);
    }
    meta["grid"] = {{"start", m.grid().start}, {"bin_seconds", m.grid().bin_length}, {"bins", m.grid().bin_count}};
    meta["total_volume"] = m.total_volume();
    meta["active_prefixes"] = m.prefix_count();
    meta["volume_unit"] = "bytes";
    write_json(dir / files::matrix_meta, meta);
}

std::uint64_t matrix_seed(const fs::path& dir) {
    return read_json(dir / files::matrix_meta).value("seed", std::uint64_t{0});
}

struct LoadedRun {
    SelectionRun run;
    std::string file;
};

std::vector<LoadedRun> load_runs(const fs::path& dir, const HourlyTraceMatrix& m) {
    const auto index = read_json(require(dir, files::selections, "select"));
    const double threshold = index.at("threshold").get<double>();
    const auto total = index.at("total_volume").get<std::uint64_t>();
    if (total != m.total_volume()) {
        throw DataError("selections were produced from a trace with total volume " + std::to_string(total) +
                        ", but matrix.csv totals " + std::to_string(m.total_volume()));
    }
    std::vector<LoadedRun> runs;
    for (const auto& r : index.at("runs")) {
        const auto method = parse_method(r.at("method").get<std::string>());
        if (!method) throw DataError("selections index names an unknown method");
        SelectorConfig config{*method, r.at("L").get<std::uint32_t>(), r.at("K").get<std::uint32_t>()};
        const auto file = r.at("file").get<std::string>();
        auto in = open_in(require(dir, file.c_str(), "select"));
        runs.push_back({io::read_selection_csv(in, m, config, threshold, total), file});
    }
    return runs;
}

std::string fmt_pct(double v) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << v;
    return s.str();
}

}  // namespace

HourlyTraceMatrix load_matrix(const fs::path& dir) {
    const auto csv = require(dir, files::matrix, "ingest` or `synth");
    const auto meta = read_json(require(dir, files::matrix_meta, "ingest` or `synth"));
    TimeGrid grid;
    grid.start = meta.at("grid").at("start").get<std::int64_t>();
    grid.bin_length = meta.at("grid").at("bin_seconds").get<std::int64_t>();
    grid.bin_count = meta.at("grid").at("bins").get<std::uint32_t>();
    auto in = open_in(csv);
    auto m = io::read_matrix_csv(in, grid);
    if (m.empty()) throw DataError("matrix has no active prefixes");
    return m;
}

std::string cmd_ingest(const IngestOptions& o) {
    if (o.bins == 0 || o.bin_seconds <= 0) throw UsageError("--bins and --bin-seconds must be positive");
    auto in = open_in(o.input);
    const auto rows = io::read_trace_csv(in);
    TimeGrid grid;
    grid.bin_length = o.bin_seconds;
    grid.bin_count = o.bins;
    if (o.start) {
        grid.start = *o.start;
    } else {
        std::int64_t earliest = std::numeric_limits<std::int64_t>::max();
        for (const auto& r : rows) {
            if (!r.malformed) earliest = std::min(earliest, r.timestamp);
        }
        if (earliest == std::numeric_limits<std::int64_t>::max()) throw DataError("no active prefixes: trace has no records");
        // Align down to a bin boundary.
        grid.start = earliest - ((earliest % o.bin_seconds) + o.bin_seconds) % o.bin_seconds;
    }
    IngestSummary summary;
    const auto m = io::bin_rows(rows, grid, o.policy, summary);
    if (m.empty()) throw DataError("no active prefixes in " + o.input.string());

    json meta;
    meta["seed"] = o.seed;
    meta["source"] = "ingest";
    meta["ingest"] = {{"records_read", summary.records_read},
                      {"records_binned", summary.records_binned},
                      {"rejected_out_of_range", summary.rejected_out_of_range},
                      {"rejected_malformed", summary.rejected_malformed},
                      {"bytes_in", summary.bytes_in},
                      {"bytes_binned", summary.bytes_binned},
                      {"bytes_rejected", summary.bytes_rejected},
                      {"reject_policy", o.policy == RejectPolicy::skip ? "skip" : "abort"}};
    save_matrix(o.out, m, meta);

    std::ostringstream s;
    s << "ingested " << summary.records_read << " records: " << summary.records_binned << " binned, "
      << summary.records_rejected() << " rejected (" << summary.rejected_out_of_range << " out of range, "
      << summary.rejected_malformed << " malformed); " << m.prefix_count() << " active prefixes over " << m.bin_count()
      << " bins\n";
    return s.str();
}

std::string cmd_synth(const SynthOptions& o) {
    TimeGrid grid{o.start, o.bin_seconds, o.bins};
    const auto m = synthesize_trace(o.spec, grid);
    json meta;
    meta["seed"] = o.spec.seed;
    meta["source"] = "synth";
    json bursts = json::array();
    for (const auto& b : o.spec.bursts) bursts.push_back({{"rank", b.rank}, {"hour", b.bin + 1}, {"multiplier", b.multiplier}});
    meta["synth"] = {{"prefix_count", o.spec.prefix_count}, {"zipf_s", o.spec.zipf_s},
                     {"bin_total", o.spec.bin_total},       {"diurnal_amplitude", o.spec.diurnal_amplitude},
                     {"noise_sigma", o.spec.noise_sigma},   {"bursts", bursts}};
    save_matrix(o.out, m, meta);
    std::ostringstream s;
    s << "synthesized " << m.prefix_count() << " active prefixes over " << m.bin_count() << " bins, total "
      << m.total_volume() << " bytes\n";
    return s.str();
}

std::string cmd_analyze(const AnalyzeOptions& o) {
    const auto m = load_matrix(o.out);
    if (m.total_volume() == 0) throw DataError("degenerate trace: total volume is zero");
    const auto profile = compute_core_profile(m, o.threshold, BurstinessOptions{o.log_base});
    const auto core = core_statistics(profile, m);
    const auto burst = burst_statistics(profile);

    {
        auto out = open_out(o.out / "core_hours.csv");
        out << "hour,total_bytes,active_prefixes,core_size,core_pct_active,bi\n";
        for (std::uint32_t h = 0; h < m.bin_count(); ++h) {
            const auto active = active_prefixes_in_bin(m, h);
            const double pct = active == 0 ? 0.0 : 100.0 * static_cast<double>(profile.cores[h].size()) / static_cast<double>(active);
            out << h + 1 << ',' << m.total(h) << ',' << active << ',' << profile.cores[h].size() << ','
                << io::format_double(pct) << ',' << io::format_double(profile.bi[h]) << '\n';
        }
    }
    {
        std::vector<double> max_beta(m.prefix_count(), 0.0);
        for (const auto& b : profile.betas) max_beta[b.prefix] = std::max(max_beta[b.prefix], b.value);
        auto out = open_out(o.out / "prefixes.csv");
        out << "prefix,weekly_fraction,cv,icp,core_hours,max_beta\n";
        for (std::size_t i = 0; i < m.prefix_count(); ++i) {
            std::size_t hours = 0;
            for (auto c : profile.cp_series(i)) hours += c;
            out << m.prefix(i).text() << ',' << io::format_double(weekly_volume_fraction(m, i)) << ','
                << io::format_double(coefficient_of_variation(m.series(i))) << ',' << io::format_double(profile.icp[i])
                << ',' << hours << ',' << io::format_double(max_beta[i]) << '\n';
        }
    }
    auto write_curve = [&](const std::string& name, const CurveSpan& span) {
        const auto curve = concentration_curve(m, span);
        auto out = open_out(o.out / name);
        out << "rank,share,cdf,zipf_ref\n";
        for (std::size_t r = 0; r < curve.shares.size(); ++r) {
            out << r + 1 << ',' << io::format_double(curve.shares[r]) << ',' << io::format_double(curve.cdf[r]) << ','
                << io::format_double(curve.reference[r]) << '\n';
        }
    };
    write_curve("concentration_week.csv", WeekSpan{});
    if (m.bin_count() >= 24) write_curve("concentration_day1.csv", DaySpan{0});
    if (m.total(0) > 0) write_curve("concentration_hour1.csv", HourSpan{0});

    auto write_bins = [&](const std::string& name, const std::vector<VolumeBin>& bins) {
        auto out = open_out(o.out / name);
        out << "bin,lower_pct,upper_pct,count,mean,median,p25,p75\n";
        for (const auto& b : bins) {
            out << (b.underflow ? std::string("underflow") : "[" + io::format_double(b.lower_pct) + "," +
                                                                 io::format_double(b.upper_pct) + ")")
                << ',' << io::format_double(b.lower_pct) << ',' << io::format_double(b.upper_pct) << ',' << b.count;
            if (b.stats) {
                out << ',' << io::format_double(b.stats->mean) << ',' << io::format_double(b.stats->median) << ','
                    << io::format_double(b.stats->p25) << ',' << io::format_double(b.stats->p75);
            } else {
                out << ",,,,";
            }
            out << '\n';
        }
    };
    write_bins("cv_bins.csv", cv_vs_volume_bins(m));
    write_bins("icp_bins.csv", icp_vs_volume_bins(m, profile));

    json j;
    j["seed"] = matrix_seed(o.out);
    j["threshold"] = o.threshold;
    j["log_base"] = o.log_base;
    j["vp_unit"] = "percent";
    j["total_volume"] = m.total_volume();
    j["active_prefixes"] = m.prefix_count();
    j["core"] = {{"avg_prefix_count", core.avg_core_size},
                 {"avg_prefix_pct_of_active", core.avg_core_pct_of_active},
                 {"max_prefix_count", core.max_core_size}};
    j["burstiness"] = {{"mean_bi", burst.mean_bi}, {"max_bi", burst.max_bi}, {"max_beta", burst.max_beta}};
    write_json(o.out / files::analysis, j);

    std::ostringstream s;
    s << "core: avg " << fmt_pct(core.avg_core_size) << " prefixes (" << fmt_pct(core.avg_core_pct_of_active)
      << "% of active), max " << core.max_core_size << "; BI mean " << fmt_pct(burst.mean_bi) << ", max "
      << fmt_pct(burst.max_bi) << "; max beta " << fmt_pct(burst.max_beta) << '\n';
    return s.str();
}

std::string cmd_select(const SelectOptions& o) {
    if (o.methods.empty() || o.windows.empty()) throw UsageError("at least one method and one window are required");
    for (auto w : o.windows) {
        if (w == 0) throw UsageError("--window must be at least 1");
    }
    if (o.size && *o.size == 0) throw UsageError("--size must be at least 1");
    if (!(o.threshold > 0.0 && o.threshold <= 1.0)) throw UsageError("--threshold must be in (0, 1]");
    const auto m = load_matrix(o.out);
    if (m.bin_count() < 2) throw DataError("selection needs at least two bins");
    const auto profile = compute_core_profile(m, o.threshold);
    const auto k = o.size ? *o.size : static_cast<std::uint32_t>(max_core_size(profile));

    json index;
    index["seed"] = matrix_seed(o.out);
    index["threshold"] = o.threshold;
    index["total_volume"] = m.total_volume();
    index["K"] = k;
    index["K_source"] = o.size ? "flag" : "max_core_size";
    index["runs"] = json::array();
    std::ostringstream s;
    for (auto method : o.methods) {
        for (auto window : o.windows) {
            const auto run = run_selection(m, profile, SelectorConfig{method, window, k});
            const auto file = selection_file(method, window);
            {
                auto out = open_out(o.out / file);
                io::write_selection_csv(out, run, m);
            }
            std::size_t warmup = 0, short_hours = 0, fallbacks = 0;
            for (const auto& h : run.hours) {
                warmup += h.warmup;
                short_hours += h.short_set;
                fallbacks += h.gm11_fallbacks;
            }
            index["runs"].push_back({{"method", method_name(method)},
                                     {"L", window},
                                     {"K", k},
                                     {"file", file},
                                     {"warmup_hours", warmup},
                                     {"short_hours", short_hours},
                                     {"gm11_fallbacks", fallbacks}});
            s << "selected " << run_key(method, window, k) << " -> " << file;
            if (short_hours) s << " (" << short_hours << " hours with fewer than K candidates)";
            s << '\n';
        }
    }
    write_json(o.out / files::selections, index);
    return s.str();
}

std::string cmd_evaluate(const EvaluateOptions& o) {
    const auto m = load_matrix(o.out);
    const auto runs = load_runs(o.out, m);

    json j;
    j["seed"] = matrix_seed(o.out);
    j["percentile_convention"] = "linear interpolation between order statistics";
    j["coverage_of_zero_volume_hour"] = 1.0;
    j["runs"] = json::object();
    auto summary = open_out(o.out / files::evaluation_summary);
    summary << "method,L,K,coverage_min,coverage_p25,coverage_median,coverage_mean,coverage_p75,coverage_max,"
               "churn_min,churn_p25,churn_median,churn_mean,churn_p75,churn_max,warmup_hours\n";
    std::ostringstream s;
    std::map<std::uint32_t, json> oracle;
    for (const auto& [run, file] : runs) {
        const auto report = evaluate_run(run, m);
        const auto& c = run.config;
        {
            auto out = open_out(o.out / evaluation_file(c.method, c.window));
            io::write_evaluation_csv(out, report);
        }
        json r;
        r["method"] = method_name(c.method);
        r["L"] = c.window;
        r["K"] = c.size;
        r["threshold"] = report.threshold;
        r["coverage"] = box_json(report.coverage);
        r["churn"] = box_json(report.churn);
        r["warmup_hours"] = report.warmup_hours;
        r["evaluated_hours"] = report.hours.size();
        j["runs"][run_key(c.method, c.window, c.size)] = r;

        summary << method_name(c.method) << ',' << c.window << ',' << c.size;
        for (double v : {report.coverage.min, report.coverage.p25, report.coverage.median, report.coverage.mean,
                         report.coverage.p75, report.coverage.max, report.churn.min, report.churn.p25,
                         report.churn.median, report.churn.mean, report.churn.p75, report.churn.max}) {
            summary << ',' << io::format_double(v);
        }
        summary << ',' << report.warmup_hours << '\n';

        if (!oracle.contains(c.size)) {
            std::vector<double> cov;
            for (std::uint32_t t = 1; t < m.bin_count(); ++t) cov.push_back(hourly_coverage(oracle_top_k(m, t, c.size), m, t));
            oracle[c.size] = box_json(boxplot_summary(cov));
        }
        s << run_key(c.method, c.window, c.size) << ": coverage mean " << fmt_pct(100.0 * report.coverage.mean)
          << "% min " << fmt_pct(100.0 * report.coverage.min) << "%, churn mean " << fmt_pct(report.churn.mean) << '\n';
    }
    for (auto& [k, box] : oracle) j["oracle_coverage"]["K=" + std::to_string(k)] = box;
    write_json(o.out / files::evaluation, j);
    return s.str();
}

std::string cmd_probe_synth(const ProbeSynthOptions& o) {
    if (o.transits.empty()) throw UsageError("at least one transit is required");
    if (o.base_rtt_ms.size() != o.transits.size()) throw UsageError("--base-rtt needs one value per transit");
    RttModel model;
    for (const auto& t : o.transits) model.transits.push_back(TransitId{t});
    model.base_rtt_ms = o.base_rtt_ms;
    model.path_spread = o.path_spread;
    model.noise_sigma = o.noise_sigma;
    model.loss_probability = o.loss_probability;
    model.regimes = o.regimes;

    std::string prefix_source = "synthetic";
    if (o.from_selection) {
        const auto colon = o.from_selection->find(':');
        const auto method = parse_method(o.from_selection->substr(0, colon));
        if (colon == std::string::npos || !method) throw UsageError("--from-selection expects METHOD:L");
        const auto window = static_cast<std::uint32_t>(std::stoul(o.from_selection->substr(colon + 1)));
        const auto m = load_matrix(o.out);
        const auto runs = load_runs(o.out, m);
        const auto it = std::find_if(runs.begin(), runs.end(), [&](const LoadedRun& r) {
            return r.run.config.method == *method && r.run.config.window == window;
        });
        if (it == runs.end()) throw DataError("no selection run " + *o.from_selection + "; run `select` first");
        const auto& last = it->run.hours.back().prefixes;
        const std::size_t take = o.prefix_count == 0 ? last.size() : std::min<std::size_t>(o.prefix_count, last.size());
        for (std::size_t r = 0; r < take; ++r) model.prefixes.push_back(m.prefix(last[r]));
        prefix_source = "selection " + *o.from_selection;
    } else {
        if (o.prefix_count == 0) throw UsageError("--probe-prefixes must be positive");
        for (std::uint32_t k = 1; k <= o.prefix_count; ++k) model.prefixes.push_back(PrefixId::synthetic(k));
    }
    for (const auto& r : model.regimes) {
        if (r.prefix && *r.prefix >= model.prefixes.size()) throw UsageError("regime prefix index out of range");
    }

    const auto log = generate_probe_log(o.schedule, model);
    {
        auto out = open_out(o.out / files::probes);
        io::write_probe_csv(out, log);
    }
    json regimes = json::array();
    for (const auto& r : o.regimes) {
        regimes.push_back({{"transit", r.transit}, {"first_tick", r.first_tick}, {"last_tick", r.last_tick},
                           {"multiplier", r.multiplier}});
    }
    json j;
    j["seed"] = o.schedule.seed;
    j["schedule"] = {{"mean_interval_s", o.schedule.mean_interval},
                     {"jitter", o.schedule.jitter},
                     {"duration_s", o.schedule.duration}};
    j["transits"] = o.transits;
    j["base_rtt_ms"] = o.base_rtt_ms;
    j["path_spread"] = o.path_spread;
    j["noise_sigma"] = o.noise_sigma;
    j["loss_probability"] = o.loss_probability;
    j["regimes"] = regimes;
    j["prefix_source"] = prefix_source;
    j["prefix_count"] = model.prefixes.size();
    j["tick_times_s"] = log.tick_times();
    write_json(o.out / files::probes_meta, j);

    std::ostringstream s;
    s << "generated " << log.tick_count() << " probing rounds for " << model.prefixes.size() << " prefixes over "
      << model.transits.size() << " transits\n";
    return s.str();
}

std::string cmd_simulate(const SimulateOptions& o) {
    auto in = open_in(require(o.out, files::probes, "probe-synth"));
    const auto log = io::read_probe_csv(in);
    if (log.tick_count() < 2) throw DataError("simulation needs at least two probing rounds");
    auto series = physical_np(log);
    series.push_back(simulate_l1r(log, o.seed));
    {
        auto out = open_out(o.out / files::np);
        io::write_np_csv(out, series);
    }
    const auto ordered = np_summaries(series);

    json j;
    j["seed"] = o.seed;
    j["whiskers"] = "p5/p95";
    j["order"] = json::array();
    std::ostringstream s;
    s << "transits by mean NP:";
    for (const auto& n : ordered) {
        j["order"].push_back({{"transit", n.transit}, {"virtual", n.virtual_transit}, {"p5", n.p5},
                              {"p25", n.p25},         {"median", n.median},          {"mean", n.mean},
                              {"p75", n.p75},         {"p95", n.p95},                {"min", n.min},
                              {"max", n.max},         {"samples", n.samples}});
        s << ' ' << n.transit << '=' << io::format_double(n.mean);
    }
    s << '\n';
    for (const auto& ns : series) {
        j["completeness"][ns.transit] = ns.completeness();
        j["gaps"][ns.transit] = ns.gaps();
    }
    double best_physical = std::numeric_limits<double>::infinity();
    double virtual_mean = std::numeric_limits<double>::infinity();
    for (const auto& n : ordered) {
        if (n.virtual_transit) virtual_mean = n.mean;
        else best_physical = std::min(best_physical, n.mean);
    }
    j["l1r_outperforms_all_physical"] = virtual_mean < best_physical;
    write_json(o.out / files::np_summary, j);
    return s.str();
}

std::string cmd_report(const ReportOptions& o) {
    json j;
    std::ostringstream s;
    bool any = false;
    for (const auto* name : {files::matrix_meta, files::analysis, files::selections, files::evaluation, files::np_summary}) {
        const auto p = o.out / name;
        if (!fs::exists(p)) continue;
        auto doc = read_json(p);
        j[fs::path(name).stem().string()] = std::move(doc);
        any = true;
    }
    if (!any) throw DataError("nothing to report in " + o.out.string() + "; run a pipeline stage first");

    if (!o.compare.empty()) {
        std::vector<fs::path> dirs{o.out};
        dirs.insert(dirs.end(), o.compare.begin(), o.compare.end());
        std::vector<EvaluationReport> reports;
        std::vector<CoreProfile> profiles;
        for (const auto& dir : dirs) {
            const auto m = load_matrix(dir);
            auto runs = load_runs(dir, m);
            const LoadedRun* pick = nullptr;
            for (const auto& r : runs) {
                if (r.run.config.method == Method::cv && (!pick || r.run.config.window > pick->run.config.window)) pick = &r;
            }
            if (!pick) throw DataError("no CV selection run in " + dir.string() + "; run `select --method CV` first");
            reports.push_back(evaluate_run(pick->run, m));
            profiles.push_back(compute_core_profile(m, pick->run.threshold));
        }
        const auto points = bi_vs_coverage(reports, profiles);
        auto out = open_out(o.out / files::bi_coverage);
        out << "trace,L,mean_bi,mean_coverage,max_bi,min_coverage\n";
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            out << dirs[i].filename().string() << ',' << reports[i].config.window << ','
                << io::format_double(points.mean_bi_vs_mean_coverage[i].bi) << ','
                << io::format_double(points.mean_bi_vs_mean_coverage[i].coverage) << ','
                << io::format_double(points.max_bi_vs_min_coverage[i].bi) << ','
                << io::format_double(points.max_bi_vs_min_coverage[i].coverage) << '\n';
        }
        s << "wrote " << files::bi_coverage << " for " << dirs.size() << " traces\n";
    }
    write_json(o.out / files::report, j);

    if (j.contains("analysis")) {
        const auto& a = j["analysis"];
        s << "core: avg " << fmt_pct(a["core"]["avg_prefix_count"].get<double>()) << " prefixes ("
          << fmt_pct(a["core"]["avg_prefix_pct_of_active"].get<double>()) << "% of active), max "
          << a["core"]["max_prefix_count"].get<std::size_t>() << '\n';
        s << "burstiness: mean BI " << fmt_pct(a["burstiness"]["mean_bi"].get<double>()) << ", max BI "
          << fmt_pct(a["burstiness"]["max_bi"].get<double>()) << ", max beta "
          << fmt_pct(a["burstiness"]["max_beta"].get<double>()) << '\n';
    }
    if (j.contains("evaluation")) {
        for (const auto& [key, r] : j["evaluation"]["runs"].items()) {
            s << key << ": coverage mean " << fmt_pct(100.0 * r["coverage"]["mean"].get<double>()) << "% min "
              << fmt_pct(100.0 * r["coverage"]["min"].get<double>()) << "%, churn mean "
              << fmt_pct(r["churn"]["mean"].get<double>()) << '\n';
        }
    }
    if (j.contains("np_summary")) {
        s << "NP order:";
        for (const auto& n : j["np_summary"]["order"]) {
            s << ' ' << n["transit"].get<std::string>() << '=' << fmt_pct(n["mean"].get<double>());
        }
        s << '\n';
    }
    return s.str();
}

}  // namespace prefixsel::pipeline
