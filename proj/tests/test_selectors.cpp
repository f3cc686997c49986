#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "prefixsel/error.hpp"
#include "prefixsel/evaluation.hpp"
#include "prefixsel/gm11.hpp"
#include "prefixsel/selectors.hpp"

using namespace prefixsel;

namespace {

std::set<std::string> selected_texts(const HourlyTraceMatrix& m, const HourSelection& h) {
    std::set<std::string> out;
    for (auto i : h.prefixes) out.insert(m.prefix(i).text());
    return out;
}

}  // namespace

TEST_CASE("score examples") {
    CHECK(score_mv(std::vector<std::uint64_t>{3, 6, 9}) == 6.0);
    CHECK(score_mv(std::vector<std::uint64_t>{0, 0}) == 0.0);
    CHECK(score_mv(std::vector<std::uint64_t>{42}) == 42.0);

    CHECK(score_icp(std::vector<std::uint8_t>{1, 1, 1, 1}) == 1.0);
    CHECK(score_icp(std::vector<std::uint8_t>{0, 0}) == 0.0);
    CHECK(score_icp(std::vector<std::uint8_t>{1, 0, 1}) == doctest::Approx(2.0 / 3.0));

    CHECK(*score_cv(std::vector<std::uint8_t>{1, 0, 1}, std::vector<std::uint64_t>{10, 20, 30}) ==
          doctest::Approx(40.0 / 3.0));
    const std::vector<std::uint64_t> v{4, 8, 1};
    CHECK(*score_cv(std::vector<std::uint8_t>{1, 1, 1}, v) == score_mv(v));
    CHECK_FALSE(score_cv(std::vector<std::uint8_t>{0, 0, 0}, v));
    CHECK_THROWS_AS(score_cv(std::vector<std::uint8_t>{1}, v), DataError);
}

TEST_CASE("method names round-trip") {
    for (auto m : kAllMethods) CHECK(parse_method(method_name(m)) == m);
    CHECK(parse_method("cv") == Method::cv);
    CHECK_FALSE(parse_method("ARIMA"));
}

TEST_CASE("max core size") {
    CoreProfile p;
    p.cores = {{1, 2, 3}, {1, 2, 3}};
    CHECK(max_core_size(p) == 3);
    p.cores = {{1, 2}, {1, 2, 3, 4, 5}, {0, 1, 2, 3}};
    CHECK(max_core_size(p) == 5);
    p.cores.clear();
    CHECK_THROWS_AS(max_core_size(p), DataError);
}

TEST_CASE("run_selection basics") {
    TimeGrid g{0, 3600, 2};
    SUBCASE("argmax") {
        const auto m = HourlyTraceMatrix::from_series(g, {{PrefixId::synthetic(1), {10, 1}}, {PrefixId::synthetic(2), {5, 1}}});
        const auto run = run_selection(m, compute_core_profile(m), {Method::mv, 1, 1});
        REQUIRE(run.hours.size() == 1);
        CHECK(run.hours[0].prefixes == std::vector<std::uint32_t>{*m.find(PrefixId::synthetic(1))});
    }
    SUBCASE("ties go to the smaller canonical text") {
        const auto a = PrefixId::parse("192.0.2.0/24");
        const auto b = PrefixId::parse("10.0.0.0/8");
        const auto m = HourlyTraceMatrix::from_series(g, {{a, {7, 1}}, {b, {7, 1}}});
        const auto run = run_selection(m, compute_core_profile(m), {Method::mv, 1, 1});
        CHECK(m.prefix(run.hours[0].prefixes[0]) == b);
    }
    SUBCASE("short sets are flagged") {
        const auto m = HourlyTraceMatrix::from_series(g, {{PrefixId::synthetic(1), {10, 1}}});
        const auto run = run_selection(m, compute_core_profile(m), {Method::cv, 1, 5});
        CHECK(run.hours[0].short_set);
        CHECK(run.hours[0].prefixes.size() == 1);
    }
    SUBCASE("config validation") {
        const auto m = HourlyTraceMatrix::from_series(g, {{PrefixId::synthetic(1), {10, 1}}});
        CHECK_THROWS_AS(run_selection(m, compute_core_profile(m), {Method::mv, 0, 1}), DataError);
        CHECK_THROWS_AS(run_selection(m, compute_core_profile(m), {Method::mv, 1, 0}), DataError);
    }
}

TEST_CASE("warm-up windows shrink and are flagged") {
    std::mt19937_64 rng(1);
    const auto m = oracle::random_matrix(rng, 20, 30);
    const auto run = run_selection(m, compute_core_profile(m), {Method::mv, 24, 5});
    REQUIRE(run.hours.size() == 29);
    CHECK(run.hours[0].effective_window == 1);
    CHECK(run.hours[0].warmup);
    CHECK(run.hours[22].effective_window == 23);
    CHECK(run.hours[23].effective_window == 24);
    CHECK_FALSE(run.hours[23].warmup);
}

TEST_CASE("MV with L = 1 on a stationary Zipf trace picks last hour's top K") {
    SyntheticTraceSpec spec;
    spec.prefix_count = 500;
    spec.noise_sigma = 0.3;
    spec.seed = 12;
    const auto m = synthesize_trace(spec, TimeGrid{0, 3600, 24});
    const auto run = run_selection(m, compute_core_profile(m), {Method::mv, 1, 40});
    for (const auto& h : run.hours) CHECK(h.prefixes == oracle_top_k(m, h.bin - 1, 40));
}

TEST_CASE("GM11 selection scores each candidate by its forecast") {
    const auto m = HourlyTraceMatrix::from_series(
        TimeGrid{0, 3600, 6}, {{PrefixId::synthetic(1), {1, 2, 3, 4, 5, 6}}, {PrefixId::synthetic(2), {9, 8, 7, 6, 5, 4}}});
    const auto run = run_selection(m, compute_core_profile(m), {Method::gm11, 4, 2});
    const auto& last = run.hours.back();
    REQUIRE(last.prefixes.size() == 2);
    const auto up = *m.find(PrefixId::synthetic(1));
    const std::vector<double> window{2, 3, 4, 5};
    CHECK(last.prefixes[0] == up);
    CHECK(last.scores[0] == gm11_forecast(window).value);
    // Bins 1..3 have windows shorter than four points.
    CHECK(run.hours[0].gm11_fallbacks == 2);
}

TEST_CASE("selector properties on random traces") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> n_dist(5, 40);
    std::uniform_int_distribution<int> bins_dist(3, 30);
    std::uniform_int_distribution<int> l_dist(1, 30);
    std::uniform_int_distribution<int> m_dist(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = oracle::random_matrix(rng, n_dist(rng), static_cast<std::uint32_t>(bins_dist(rng)), 0.5);
        if (m.empty()) continue;
        const auto profile = compute_core_profile(m);
        const auto L = static_cast<std::uint32_t>(l_dist(rng));
        const auto K = static_cast<std::uint32_t>(1 + trial % 10);

        // CV <= MV for every prefix and window.
        for (std::uint32_t t = 1; t < m.bin_count(); ++t) {
            const auto len = std::min(L, t);
            for (std::size_t i = 0; i < m.prefix_count(); ++i) {
                const auto v = m.series(i).subspan(t - len, len);
                const auto cp = profile.cp_series(i).subspan(t - len, len);
                if (const auto cv = score_cv(cp, v)) CHECK(*cv <= score_mv(v));
            }
        }

        // L = 1: CV candidates are exactly the previous core.
        const auto cv1 = run_selection(m, profile, {Method::cv, 1, static_cast<std::uint32_t>(m.prefix_count())});
        for (const auto& h : cv1.hours) {
            std::vector<std::uint32_t> a = h.prefixes, b = profile.cores[h.bin - 1];
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            CHECK(a == b);
        }

        // Uniform scaling leaves MV/ICP/CV rankings unchanged.
        const auto method = static_cast<Method>(m_dist(rng) % 3);
        std::map<PrefixId, std::vector<std::uint64_t>> scaled;
        for (std::size_t i = 0; i < m.prefix_count(); ++i) {
            std::vector<std::uint64_t> v(m.series(i).begin(), m.series(i).end());
            for (auto& x : v) x *= 7;
            scaled.emplace(m.prefix(i), std::move(v));
        }
        const auto ms = HourlyTraceMatrix::from_series(m.grid(), std::move(scaled));
        const auto r1 = run_selection(m, profile, {method, L, K});
        const auto r2 = run_selection(ms, compute_core_profile(ms), {method, L, K});
        for (std::size_t h = 0; h < r1.hours.size(); ++h) CHECK(r1.hours[h].prefixes == r2.hours[h].prefixes);

        // Each hourly set holds at most K members.
        for (const auto& h : r1.hours) CHECK(h.prefixes.size() <= K);
    }
}

TEST_CASE("no lookahead: truncating the future never changes a selection") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 120; ++trial) {
        const auto m = oracle::random_matrix(rng, 25, 20, 0.4);
        const auto method = kAllMethods[trial % 4];
        const SelectorConfig config{method, kStandardWindows[trial % 3], 6};
        const auto full = run_selection(m, compute_core_profile(m), config);
        const std::uint32_t cut = 1 + static_cast<std::uint32_t>(trial % 19);
        const auto tm = m.truncated_after(cut);
        if (tm.empty()) continue;
        const auto part = run_selection(tm, compute_core_profile(tm), config);
        // Selection for bin `cut` uses bins < cut only.
        CHECK(selected_texts(m, full.hours[cut - 1]) == selected_texts(tm, part.hours[cut - 1]));
    }
}

TEST_CASE("serial and parallel selection runs agree") {
    std::mt19937_64 rng(31);
    for (auto method : kAllMethods) {
        for (std::uint32_t L : kStandardWindows) {
            const auto m = oracle::random_matrix(rng, 120, 60, 0.3);
            const auto p = compute_core_profile(m);
            const auto a = run_selection(m, p, {method, L, 30}, Exec::serial);
            const auto b = run_selection(m, p, {method, L, 30}, Exec::parallel);
            REQUIRE(a.hours.size() == b.hours.size());
            for (std::size_t h = 0; h < a.hours.size(); ++h) {
                CHECK(a.hours[h].prefixes == b.hours[h].prefixes);
                CHECK(a.hours[h].scores == b.hours[h].scores);
                CHECK(a.hours[h].gm11_fallbacks == b.hours[h].gm11_fallbacks);
                CHECK(a.hours[h].warmup == b.hours[h].warmup);
            }
        }
    }
}
