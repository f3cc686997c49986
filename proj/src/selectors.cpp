#include "prefixsel/selectors.hpp"

#include <algorithm>
#include <numeric>

#include "kernels.hpp"
#include "prefixsel/error.hpp"

namespace prefixsel {

std::string_view method_name(Method m) noexcept {
    switch (m) {
        case Method::mv: return "MV";
        case Method::icp: return "ICP";
        case Method::cv: return "CV";
        case Method::gm11: return "GM11";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    for (auto m : kAllMethods) {
        if (method_name(m) == upper) return m;
    }
    if (upper == "GM(1,1)") return Method::gm11;
    return std::nullopt;
}

void SelectorConfig::validate() const {
    if (window == 0) throw DataError("selector window must be at least one hour");
    if (size == 0) throw DataError("selection size must be at least one");
}

double score_mv(std::span<const std::uint64_t> volumes) {
    if (volumes.empty()) return 0.0;
    const auto sum = std::accumulate(volumes.begin(), volumes.end(), std::uint64_t{0});
    return static_cast<double>(sum) / static_cast<double>(volumes.size());
}

double score_icp(std::span<const std::uint8_t> cp) { return core_presence_intensity(cp); }

std::optional<double> score_cv(std::span<const std::uint8_t> cp, std::span<const std::uint64_t> volumes) {
    if (cp.size() != volumes.size()) throw DataError("core presence and volume windows are not aligned");
    std::uint64_t sum = 0;
    bool appeared = false;
    for (std::size_t i = 0; i < cp.size(); ++i) {
        if (cp[i] == 0) continue;
        appeared = true;
        sum += volumes[i];
    }
    if (!appeared) return std::nullopt;
    return static_cast<double>(sum) / static_cast<double>(cp.size());
}

std::size_t max_core_size(const CoreProfile& profile) {
    if (profile.cores.empty()) throw DataError("empty core profile");
    std::size_t best = 0;
    for (const auto& c : profile.cores) best = std::max(best, c.size());
    if (best == 0) throw DataError("degenerate trace: every core is empty");
    return best;
}

SelectionRun run_selection(const HourlyTraceMatrix& m, const CoreProfile& profile, const SelectorConfig& config,
                           Exec exec) {
    config.validate();
    detail::validate_profile_for(m, profile);
    return exec == Exec::serial ? serial::selection_run(m, profile, config) : omp::selection_run(m, profile, config);
}

std::vector<std::uint32_t> oracle_top_k(const HourlyTraceMatrix& m, std::uint32_t bin, std::uint32_t k) {
    std::vector<std::pair<double, std::uint32_t>> scored;
    for (std::uint32_t i = 0; i < m.prefix_count(); ++i) {
        if (const auto v = m.volume(i, bin); v > 0) scored.emplace_back(static_cast<double>(v), i);
    }
    HourSelection h;
    detail::rank_top_k(scored, k, h);
    return h.prefixes;
}

namespace detail {

void rank_top_k(std::vector<std::pair<double, std::uint32_t>>& scored, std::uint32_t k, HourSelection& out) {
    const auto take = std::min<std::size_t>(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(),
                      [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
    out.prefixes.clear();
    out.scores.clear();
    for (std::size_t r = 0; r < take; ++r) {
        out.prefixes.push_back(scored[r].second);
        out.scores.push_back(scored[r].first);
    }
    out.short_set = take < k;
}

}  // namespace detail

}  // namespace prefixsel
