#pragma once

#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "prefixsel/exec.hpp"
#include "prefixsel/trace.hpp"

namespace prefixsel {

inline constexpr double kDefaultCoreThreshold = 0.95;

struct BurstinessOptions {
    // Base of the logarithm in beta; e by default.
    double log_base = std::numbers::e;
};

struct BetaEntry {
    std::uint32_t prefix = 0;
    std::uint32_t bin = 0;
    double value = 0.0;
};

/// Core sets and everything derived from them over one matrix.
struct CoreProfile {
    double threshold = kDefaultCoreThreshold;
    double log_base = std::numbers::e;
    std::uint32_t bin_count = 0;
    std::size_t prefix_count = 0;

    // cores[bin]: prefix indices in ranking order (volume desc, text asc).
    std::vector<std::vector<std::uint32_t>> cores;
    // presence[prefix * bin_count + bin] in {0, 1}
    std::vector<std::uint8_t> presence;
    // Full-window core presence intensity per prefix.
    std::vector<double> icp;
    std::vector<double> bi;
    // Nonzero beta values, ordered by (bin, prefix).
    std::vector<BetaEntry> betas;

    bool in_core(std::size_t prefix, std::uint32_t bin) const { return presence[prefix * bin_count + bin] != 0; }
    std::span<const std::uint8_t> cp_series(std::size_t prefix) const {
        return {presence.data() + prefix * bin_count, bin_count};
    }
    double max_beta() const noexcept;
    double max_bi() const noexcept;
};

/// Population standard deviation over mean. Throws DataError for fewer than
/// two entries or a zero mean.
double coefficient_of_variation(std::span<const double> series);
double coefficient_of_variation(std::span<const std::uint64_t> series);

/// Ranked core of one bin's volumes: the shortest prefix of the ordering
/// (volume desc, index asc) whose cumulative volume reaches threshold * total.
/// Zero volumes never enter the core.
std::vector<std::uint32_t> core_indices(std::span<const std::uint64_t> volumes, double threshold);

/// Same rule keyed by prefix; the result is in ranking order.
std::vector<PrefixId> core_set(const std::map<PrefixId, std::uint64_t>& hour_volumes,
                               double threshold = kDefaultCoreThreshold);

double core_presence_intensity(std::span<const std::uint8_t> cp);

/// beta = -log(icp) * vp, 0 when icp == 0. vp is a percentage in [0, 100].
double burstiness_beta(double icp, double vp, double log_base = std::numbers::e);

CoreProfile compute_core_profile(const HourlyTraceMatrix& m, double threshold = kDefaultCoreThreshold,
                                 BurstinessOptions options = {}, Exec exec = Exec::parallel);

/// BI for one bin, summed directly from the profile's core and full-window I_cp.
double burstiness_index(const CoreProfile& profile, const HourlyTraceMatrix& m, std::uint32_t bin);

struct HourSpan {
    std::uint32_t bin = 0;
};
struct DaySpan {
    std::uint32_t first_bin = 0;
};
struct WeekSpan {};
using CurveSpan = std::variant<HourSpan, DaySpan, WeekSpan>;

struct ConcentrationCurve {
    std::vector<double> shares;     // shares[r] is the share of rank r + 1
    std::vector<double> cdf;
    std::vector<double> reference;  // Zipf f(k, s, N) at the same ranks
    double reference_s = 1.0;
    std::uint64_t reference_n = 100'000;
};

ConcentrationCurve concentration_curve(const HourlyTraceMatrix& m, const CurveSpan& span,
                                       double reference_s = 1.0, std::uint64_t reference_n = 100'000);

struct QuartileStats {
    double mean = 0.0;
    double median = 0.0;
    double p25 = 0.0;
    double p75 = 0.0;
};

/// One decade of weekly volume share, in percent. Bin 0 is the underflow
/// bin (< 1e-4 %); bins 1..6 are [1e-4, 1e-3) ... [10, 100].
struct VolumeBin {
    double lower_pct = 0.0;
    double upper_pct = 0.0;
    bool underflow = false;
    std::size_t count = 0;
    std::optional<QuartileStats> stats;
};

inline constexpr std::size_t kVolumeBinCount = 7;

std::size_t volume_bin_index(double weekly_fraction);
std::vector<VolumeBin> cv_vs_volume_bins(const HourlyTraceMatrix& m);
std::vector<VolumeBin> icp_vs_volume_bins(const HourlyTraceMatrix& m, const CoreProfile& profile);

struct CoreStatistics {
    double avg_core_size = 0.0;
    double avg_core_pct_of_active = 0.0;
    std::size_t max_core_size = 0;
};

struct BurstStatistics {
    double mean_bi = 0.0;
    double max_bi = 0.0;
    double max_beta = 0.0;
};

std::size_t active_prefixes_in_bin(const HourlyTraceMatrix& m, std::uint32_t bin);
CoreStatistics core_statistics(const CoreProfile& profile, const HourlyTraceMatrix& m);
BurstStatistics burst_statistics(const CoreProfile& profile);

}  // namespace prefixsel
