#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prefixsel/dynamism.hpp"
#include "prefixsel/rtt_sim.hpp"
#include "prefixsel/selectors.hpp"
#include "prefixsel/trace.hpp"

// File-based pipeline stages behind the CLI. Every stage reads its upstream
// artifacts from, and writes its outputs to, one work directory.
namespace prefixsel::pipeline {

// Bad flag values (CLI exit code 1).
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

namespace files {
inline constexpr const char* matrix = "matrix.csv";
inline constexpr const char* matrix_meta = "matrix.json";
inline constexpr const char* analysis = "analysis.json";
inline constexpr const char* selections = "selections.json";
inline constexpr const char* evaluation = "evaluation.json";
inline constexpr const char* evaluation_summary = "evaluation_summary.csv";
inline constexpr const char* probes = "probes.csv";
inline constexpr const char* probes_meta = "probes.json";
inline constexpr const char* np = "np.csv";
inline constexpr const char* np_summary = "np_summary.json";
inline constexpr const char* report = "report.json";
inline constexpr const char* bi_coverage = "bi_vs_coverage.csv";
}  // namespace files

struct IngestOptions {
    std::filesystem::path input;
    std::optional<std::int64_t> start;  // inferred from the earliest record when absent
    std::int64_t bin_seconds = 3600;
    std::uint32_t bins = 168;
    RejectPolicy policy = RejectPolicy::skip;
    std::uint64_t seed = 1;
    std::filesystem::path out;
};

struct SynthOptions {
    SyntheticTraceSpec spec;
    std::int64_t start = 0;
    std::int64_t bin_seconds = 3600;
    std::uint32_t bins = 168;
    std::filesystem::path out;
};

struct AnalyzeOptions {
    double threshold = kDefaultCoreThreshold;
    double log_base = std::numbers::e;
    std::filesystem::path out;
};

struct SelectOptions {
    std::vector<Method> methods{Method::mv};
    std::vector<std::uint32_t> windows{24};
    std::optional<std::uint32_t> size;  // max core size when absent
    double threshold = kDefaultCoreThreshold;
    std::filesystem::path out;
};

struct EvaluateOptions {
    std::filesystem::path out;
};

struct ProbeSynthOptions {
    ProbeScheduleSpec schedule;
    std::vector<std::string> transits{"T1", "T2"};
    std::vector<double> base_rtt_ms{50.0, 50.0};
    double path_spread = 0.3;
    double noise_sigma = 0.05;
    double loss_probability = 0.0;
    std::vector<RegimeSwitch> regimes;
    std::uint32_t prefix_count = 20;
    // "METHOD:L": probe the final-hour selection of that run instead of
    // synthetic prefixes.
    std::optional<std::string> from_selection;
    std::filesystem::path out;
};

struct SimulateOptions {
    std::uint64_t seed = 1;
    std::filesystem::path out;
};

struct ReportOptions {
    std::filesystem::path out;
    std::vector<std::filesystem::path> compare;  // other work directories for BI vs coverage
};

// Each returns a short human-readable summary line set.
std::string cmd_ingest(const IngestOptions& o);
std::string cmd_synth(const SynthOptions& o);
std::string cmd_analyze(const AnalyzeOptions& o);
std::string cmd_select(const SelectOptions& o);
std::string cmd_evaluate(const EvaluateOptions& o);
std::string cmd_probe_synth(const ProbeSynthOptions& o);
std::string cmd_simulate(const SimulateOptions& o);
std::string cmd_report(const ReportOptions& o);

/// Loads matrix.csv + matrix.json from a work directory.
HourlyTraceMatrix load_matrix(const std::filesystem::path& dir);

}  // namespace prefixsel::pipeline
