#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prefixsel/dynamism.hpp"
#include "prefixsel/exec.hpp"
#include "prefixsel/trace.hpp"

namespace prefixsel {

enum class Method { mv, icp, cv, gm11 };

std::string_view method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

inline constexpr Method kAllMethods[] = {Method::mv, Method::icp, Method::cv, Method::gm11};
inline constexpr std::uint32_t kStandardWindows[] = {1, 12, 24, 168};

struct SelectorConfig {
    Method method = Method::mv;
    std::uint32_t window = 24;  // L, hours
    std::uint32_t size = 1;     // K

    void validate() const;
};

// Scores over a history window (oldest first).
double score_mv(std::span<const std::uint64_t> volumes);
double score_icp(std::span<const std::uint8_t> cp);
/// nullopt when the prefix never appears in the core within the window.
std::optional<double> score_cv(std::span<const std::uint8_t> cp, std::span<const std::uint64_t> volumes);

struct HourSelection {
    std::uint32_t bin = 0;             // the predicted bin
    std::uint32_t effective_window = 0;
    bool warmup = false;               // effective_window < config.window
    bool short_set = false;            // fewer than K candidates with positive score
    std::vector<std::uint32_t> prefixes;  // ranked, prefix indices into the matrix
    std::vector<double> scores;
    std::uint32_t gm11_fallbacks = 0;
};

/// Selections for bins 1..bin_count-1; each uses only the bins before it.
struct SelectionRun {
    SelectorConfig config;
    double threshold = kDefaultCoreThreshold;
    std::uint64_t total_volume = 0;
    std::vector<HourSelection> hours;
};

std::size_t max_core_size(const CoreProfile& profile);

SelectionRun run_selection(const HourlyTraceMatrix& m, const CoreProfile& profile, const SelectorConfig& config,
                           Exec exec = Exec::parallel);

/// Same-bin top-K by true volume: the upper bound any selector can reach.
std::vector<std::uint32_t> oracle_top_k(const HourlyTraceMatrix& m, std::uint32_t bin, std::uint32_t k);

}  // namespace prefixsel
