#pragma once

// Hot loops in two flavours. `serial` is the plain reference kept for
// testing; `omp` is what the public API runs by default. Both must produce
// identical results.

#include <cstdint>

#include "prefixsel/dynamism.hpp"
#include "prefixsel/rtt_sim.hpp"
#include "prefixsel/selectors.hpp"
#include "prefixsel/trace.hpp"

namespace prefixsel::serial {

CoreProfile core_profile(const HourlyTraceMatrix& m, double threshold, double log_base);
SelectionRun selection_run(const HourlyTraceMatrix& m, const CoreProfile& profile, const SelectorConfig& config);
std::vector<NpSeries> physical_np(const ProbeLog& log);
NpSeries simulate_l1r(const ProbeLog& log, std::uint64_t seed);

}  // namespace prefixsel::serial

namespace prefixsel::omp {

CoreProfile core_profile(const HourlyTraceMatrix& m, double threshold, double log_base);
SelectionRun selection_run(const HourlyTraceMatrix& m, const CoreProfile& profile, const SelectorConfig& config);
std::vector<NpSeries> physical_np(const ProbeLog& log);
NpSeries simulate_l1r(const ProbeLog& log, std::uint64_t seed);

}  // namespace prefixsel::omp

namespace prefixsel::detail {

// Shared pieces used by both kernel flavours.
void rank_top_k(std::vector<std::pair<double, std::uint32_t>>& scored, std::uint32_t k, HourSelection& out);
double beta_for(double icp, double vp, double log_base);
void validate_profile_for(const HourlyTraceMatrix& m, const CoreProfile& profile);

}  // namespace prefixsel::detail
