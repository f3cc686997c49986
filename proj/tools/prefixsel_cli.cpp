// prefixsel: ingest/synthesize -> analyze -> select -> evaluate -> simulate.
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prefixsel/error.hpp"
#include "prefixsel/io.hpp"
#include "prefixsel/pipeline.hpp"

using namespace prefixsel;
using namespace prefixsel::pipeline;

namespace {

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
    std::vector<Method> out;
    for (const auto& n : names) {
        if (n == "all" || n == "ALL") return {std::begin(kAllMethods), std::end(kAllMethods)};
        const auto m = parse_method(n);
        if (!m) throw UsageError("unknown method '" + n + "' (expected MV, ICP, CV, GM11 or all)");
        out.push_back(*m);
    }
    return out;
}

std::vector<std::uint32_t> parse_windows(const std::vector<std::string>& values) {
    std::vector<std::uint32_t> out;
    for (const auto& v : values) {
        if (v == "all") return {std::begin(kStandardWindows), std::end(kStandardWindows)};
        try {
            out.push_back(static_cast<std::uint32_t>(std::stoul(v)));
        } catch (const std::exception&) {
            throw UsageError("bad --window value '" + v + "'");
        }
    }
    return out;
}

std::vector<double> parse_number_list(const std::string& flag, const std::vector<std::string>& parts) {
    std::vector<double> out;
    for (const auto& p : parts) {
        try {
            out.push_back(std::stod(p));
        } catch (const std::exception&) {
            throw UsageError("bad number '" + p + "' in " + flag);
        }
    }
    return out;
}

// rank:hour:multiplier, hour 1-based
BurstSpec parse_burst(const std::string& text) {
    const auto parts = io::split(text, ':');
    if (parts.size() != 3) throw UsageError("--burst expects RANK:HOUR:MULTIPLIER");
    const auto v = parse_number_list("--burst", parts);
    if (v[1] < 1) throw UsageError("--burst hour is 1-based");
    return {static_cast<std::uint32_t>(v[0]), static_cast<std::uint32_t>(v[1]) - 1, v[2]};
}

// transit:first_tick:last_tick:multiplier[:prefix_index]
RegimeSwitch parse_regime(const std::string& text) {
    const auto parts = io::split(text, ':');
    if (parts.size() != 4 && parts.size() != 5) throw UsageError("--regime expects TRANSIT:FIRST:LAST:MULT[:PREFIX]");
    const auto v = parse_number_list("--regime", {parts.begin() + 1, parts.end()});
    RegimeSwitch r{parts[0], static_cast<std::uint32_t>(v[0]), static_cast<std::uint32_t>(v[1]), v[2], std::nullopt};
    if (v.size() == 4) r.prefix = static_cast<std::size_t>(v[3]);
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Per-prefix traffic dynamism, predictive prefix selection and transit RTT simulation"};
    app.require_subcommand(1);

    std::string out = ".";
    std::uint64_t seed = 1;
    std::uint32_t bins = 168;
    std::int64_t bin_seconds = 3600;
    double threshold = kDefaultCoreThreshold;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out, "Work directory for stage inputs and outputs")->capture_default_str();
    };

    // ingest
    IngestOptions ingest;
    std::string reject_policy = "skip";
    std::int64_t start = 0;
    auto* c_ingest = app.add_subcommand("ingest", "Bin a timestamp,prefix,bytes CSV into hourly series");
    add_common(c_ingest);
    c_ingest->add_option("input", ingest.input, "Trace CSV")->required();
    c_ingest->add_option("--bins", bins, "Number of bins")->capture_default_str();
    c_ingest->add_option("--bin-seconds", bin_seconds, "Bin length in seconds")->capture_default_str();
    auto* start_opt = c_ingest->add_option("--start", start, "Grid start (epoch seconds); default: earliest record, aligned");
    c_ingest->add_option("--on-reject", reject_policy, "skip or abort")->check(CLI::IsMember({"skip", "abort"}))->capture_default_str();
    c_ingest->add_option("--seed", seed, "Seed recorded in output metadata")->capture_default_str();

    // synth
    SynthOptions synth;
    std::vector<std::string> bursts;
    std::int64_t synth_start = 0;
    auto* c_synth = app.add_subcommand("synth", "Generate a seeded Zipf trace");
    add_common(c_synth);
    c_synth->add_option("--prefixes", synth.spec.prefix_count, "Number of prefixes N")->capture_default_str();
    c_synth->add_option("--zipf-s", synth.spec.zipf_s, "Zipf exponent s")->capture_default_str();
    c_synth->add_option("--bin-total", synth.spec.bin_total, "Bytes per bin before modulation")->capture_default_str();
    c_synth->add_option("--diurnal", synth.spec.diurnal_amplitude, "Diurnal amplitude in [0,1)")->capture_default_str();
    c_synth->add_option("--noise", synth.spec.noise_sigma, "Log-normal noise sigma")->capture_default_str();
    c_synth->add_option("--burst", bursts, "RANK:HOUR:MULTIPLIER (repeatable)");
    c_synth->add_option("--bins", bins, "Number of bins")->capture_default_str();
    c_synth->add_option("--bin-seconds", bin_seconds, "Bin length in seconds")->capture_default_str();
    c_synth->add_option("--start", synth_start, "Grid start (epoch seconds)")->capture_default_str();
    c_synth->add_option("--seed", seed, "Random seed")->capture_default_str();

    // analyze
    AnalyzeOptions analyze;
    auto* c_analyze = app.add_subcommand("analyze", "Core, c_v, I_cp, burstiness and concentration reports");
    add_common(c_analyze);
    c_analyze->add_option("--threshold", threshold, "Core volume threshold")->capture_default_str();
    c_analyze->add_option("--log-base", analyze.log_base, "Logarithm base for beta")->capture_default_str();

    // select
    SelectOptions select;
    std::vector<std::string> methods{"MV"};
    std::vector<std::string> windows{"24"};
    std::uint32_t size = 0;
    auto* c_select = app.add_subcommand("select", "Predictive prefix selection");
    add_common(c_select);
    c_select->add_option("--method", methods, "MV, ICP, CV, GM11 or all")->delimiter(',')->capture_default_str();
    c_select->add_option("--window", windows, "History length L in hours, or all (1,12,24,168)")->delimiter(',')->capture_default_str();
    auto* size_opt = c_select->add_option("--size", size, "Selection size K (default: max core size)");
    c_select->add_option("--threshold", threshold, "Core volume threshold")->capture_default_str();

    // evaluate
    auto* c_evaluate = app.add_subcommand("evaluate", "Coverage and churn of every selection run");
    add_common(c_evaluate);

    // probe-synth
    ProbeSynthOptions probe;
    std::vector<std::string> transits{"T1", "T2"};
    std::vector<std::string> base_rtt{"50", "50"};
    std::vector<std::string> regimes;
    std::string from_selection;
    auto* c_probe = app.add_subcommand("probe-synth", "Generate a seeded probe log");
    add_common(c_probe);
    c_probe->add_option("--transits", transits, "Transit labels")->delimiter(',')->capture_default_str();
    c_probe->add_option("--base-rtt", base_rtt, "Base RTT per transit (ms)")->delimiter(',')->capture_default_str();
    c_probe->add_option("--spread", probe.path_spread, "Per-path baseline spread in [0,1)")->capture_default_str();
    c_probe->add_option("--noise", probe.noise_sigma, "Per-sample log-normal noise sigma")->capture_default_str();
    c_probe->add_option("--loss", probe.loss_probability, "Loss probability")->capture_default_str();
    c_probe->add_option("--regime", regimes, "TRANSIT:FIRST_TICK:LAST_TICK:MULT[:PREFIX] (repeatable)");
    c_probe->add_option("--probe-prefixes", probe.prefix_count, "Number of probed prefixes")->capture_default_str();
    c_probe->add_option("--from-selection", from_selection, "Probe the final-hour set of run METHOD:L");
    c_probe->add_option("--interval", probe.schedule.mean_interval, "Mean probe interval (s)")->capture_default_str();
    c_probe->add_option("--jitter", probe.schedule.jitter, "Interval jitter fraction")->capture_default_str();
    c_probe->add_option("--duration", probe.schedule.duration, "Probing duration (s)")->capture_default_str();
    c_probe->add_option("--seed", seed, "Random seed")->capture_default_str();

    // simulate
    auto* c_simulate = app.add_subcommand("simulate", "Normalized RTT performance and l1/r simulation");
    add_common(c_simulate);
    c_simulate->add_option("--seed", seed, "Seed for l1/r random fallback")->capture_default_str();

    // report
    ReportOptions report;
    auto* c_report = app.add_subcommand("report", "Collect stage summaries");
    add_common(c_report);
    c_report->add_option("--compare", report.compare, "Other work directories for BI versus coverage");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::string message;
        if (c_ingest->parsed()) {
            ingest.out = out;
            ingest.bins = bins;
            ingest.bin_seconds = bin_seconds;
            if (start_opt->count()) ingest.start = start;
            ingest.policy = reject_policy == "abort" ? RejectPolicy::abort : RejectPolicy::skip;
            ingest.seed = seed;
            message = cmd_ingest(ingest);
        } else if (c_synth->parsed()) {
            synth.out = out;
            synth.bins = bins;
            synth.bin_seconds = bin_seconds;
            synth.start = synth_start;
            synth.spec.seed = seed;
            for (const auto& b : bursts) synth.spec.bursts.push_back(parse_burst(b));
            message = cmd_synth(synth);
        } else if (c_analyze->parsed()) {
            analyze.out = out;
            analyze.threshold = threshold;
            message = cmd_analyze(analyze);
        } else if (c_select->parsed()) {
            select.out = out;
            select.methods = parse_methods(methods);
            select.windows = parse_windows(windows);
            if (size_opt->count()) select.size = size;
            select.threshold = threshold;
            message = cmd_select(select);
        } else if (c_evaluate->parsed()) {
            message = cmd_evaluate(EvaluateOptions{out});
        } else if (c_probe->parsed()) {
            probe.out = out;
            probe.schedule.seed = seed;
            probe.transits = transits;
            probe.base_rtt_ms = parse_number_list("--base-rtt", base_rtt);
            for (const auto& r : regimes) probe.regimes.push_back(parse_regime(r));
            if (!from_selection.empty()) probe.from_selection = from_selection;
            message = cmd_probe_synth(probe);
        } else if (c_simulate->parsed()) {
            message = cmd_simulate(SimulateOptions{seed, out});
        } else if (c_report->parsed()) {
            report.out = out;
            message = cmd_report(report);
        }
        std::cout << message;
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
