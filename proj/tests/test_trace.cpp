#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "prefixsel/error.hpp"
#include "prefixsel/trace.hpp"

using namespace prefixsel;

namespace {

TimeGrid week() { return TimeGrid{0, 3600, 168}; }

std::int64_t in_bin(std::uint32_t hour_1based) { return static_cast<std::int64_t>(hour_1based - 1) * 3600 + 17; }

}  // namespace

TEST_CASE("prefix parsing canonicalizes and rejects host bits") {
    CHECK(PrefixId::parse("203.0.113.0/24").text() == "203.0.113.0/24");
    CHECK(PrefixId::parse("2001:DB8:0:0::/32").text() == "2001:db8::/32");
    CHECK(PrefixId::parse("2001:db8::/32").family() == AddressFamily::v6);
    CHECK(PrefixId::parse("10.0.0.0/8") == PrefixId::parse("10.0.0.0/8"));
    CHECK_FALSE(PrefixId::try_parse("10.0.0.1/8"));
    CHECK_FALSE(PrefixId::try_parse("10.0.0.0/33"));
    CHECK_FALSE(PrefixId::try_parse("10.0.0.0"));
    CHECK_FALSE(PrefixId::try_parse("not-a-prefix/8"));
    CHECK_THROWS_AS(PrefixId::parse("10.0.0.0/x"), DataError);
    CHECK(PrefixId::synthetic(1).text() == "10.0.0.0/24");
    CHECK(PrefixId::synthetic(257).text() == "10.1.0.0/24");
}

TEST_CASE("bin_records accumulates volumes per bin") {
    const auto p = PrefixId::parse("10.0.0.0/8");
    SUBCASE("additivity") {
        const std::vector<TraceRecord> r{{in_bin(3), p, 5}, {in_bin(3) + 100, p, 7}};
        const auto m = bin_records(r, week());
        CHECK(m.volume(*m.find(p), 2) == 12);
    }
    SUBCASE("padding") {
        const std::vector<TraceRecord> r{{in_bin(1), p, 9}};
        const auto m = bin_records(r, week());
        REQUIRE(m.prefix_count() == 1);
        const auto s = m.series(0);
        CHECK(s.size() == 168);
        CHECK(std::count_if(s.begin(), s.end(), [](auto v) { return v != 0; }) == 1);
    }
    SUBCASE("hour totals") {
        const std::vector<TraceRecord> r{{in_bin(1), PrefixId::parse("10.0.0.0/8"), 50},
                                         {in_bin(1), PrefixId::parse("11.0.0.0/8"), 30},
                                         {in_bin(1), PrefixId::parse("12.0.0.0/8"), 20}};
        CHECK(bin_records(r, week()).total(0) == 100);
    }
}

TEST_CASE("rejected records are counted or abort") {
    TraceBinner skip(week());
    skip.add(in_bin(1), "10.0.0.0/8", 40);
    skip.add(-5, "10.0.0.0/8", 11);
    skip.add(in_bin(2), "10.0.0.1/8", 13);
    skip.add(in_bin(2), "11.0.0.0/8", -1);
    const auto m = skip.finish();
    const auto& s = skip.summary();
    CHECK(s.records_read == 4);
    CHECK(s.records_binned == 1);
    CHECK(s.rejected_out_of_range == 1);
    CHECK(s.rejected_malformed == 2);
    CHECK(s.bytes_in == s.bytes_binned + s.bytes_rejected);
    CHECK(m.total_volume() == 40);

    TraceBinner abort(week(), RejectPolicy::abort);
    CHECK_THROWS_AS(abort.add(week().end(), "10.0.0.0/8", 1), DataError);
    CHECK_THROWS_AS(abort.add(0, "bogus", 1), DataError);
}

TEST_CASE("binning conserves volume on random streams") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        TraceBinner b(week());
        std::uniform_int_distribution<std::int64_t> ts(-3600, week().end() + 3600);
        std::uniform_int_distribution<std::uint32_t> pk(1, 40);
        std::uniform_int_distribution<std::uint64_t> vol(0, 1'000'000);
        std::uint64_t in = 0;
        for (int i = 0; i < 500; ++i) {
            const auto v = vol(rng);
            in += v;
            b.add(TraceRecord{ts(rng), PrefixId::synthetic(pk(rng)), v});
        }
        const auto m = b.finish();
        CHECK(b.summary().bytes_in == in);
        CHECK(in == m.total_volume() + b.summary().bytes_rejected);
        std::uint64_t sum = 0;
        for (std::uint32_t h = 0; h < m.bin_count(); ++h) {
            std::uint64_t col = 0;
            for (std::size_t i = 0; i < m.prefix_count(); ++i) col += m.volume(i, h);
            CHECK(col == m.total(h));
            sum += col;
        }
        CHECK(sum == m.total_volume());
        for (std::size_t i = 0; i < m.prefix_count(); ++i) CHECK(m.prefix_volume(i) > 0);
    }
}

TEST_CASE("all-zero prefixes are dropped") {
    std::map<PrefixId, std::vector<std::uint64_t>> s;
    s[PrefixId::parse("10.0.0.0/8")] = std::vector<std::uint64_t>(4, 0);
    s[PrefixId::parse("11.0.0.0/8")] = {0, 1, 0, 0};
    const auto m = HourlyTraceMatrix::from_series(TimeGrid{0, 3600, 4}, s);
    CHECK(m.prefix_count() == 1);
    CHECK_THROWS_AS(HourlyTraceMatrix::from_series(TimeGrid{0, 3600, 5}, s), DataError);
}

TEST_CASE("weekly volume fraction") {
    TimeGrid g{0, 3600, 4};
    SUBCASE("single prefix carries everything") {
        const auto m = HourlyTraceMatrix::from_series(g, {{PrefixId::parse("10.0.0.0/8"), {1, 2, 3, 4}}});
        CHECK(weekly_volume_fraction(m, PrefixId::parse("10.0.0.0/8")) == 1.0);
    }
    SUBCASE("10 of 1000") {
        const auto m = HourlyTraceMatrix::from_series(
            g, {{PrefixId::parse("10.0.0.0/8"), {10, 0, 0, 0}}, {PrefixId::parse("11.0.0.0/8"), {490, 500, 0, 0}}});
        CHECK(weekly_volume_fraction(m, PrefixId::parse("10.0.0.0/8")) == doctest::Approx(0.01).epsilon(1e-15));
    }
    SUBCASE("symmetry") {
        const auto m = HourlyTraceMatrix::from_series(
            g, {{PrefixId::parse("10.0.0.0/8"), {5, 5, 0, 0}}, {PrefixId::parse("11.0.0.0/8"), {0, 0, 10, 0}}});
        CHECK(weekly_volume_fraction(m, 0) == 0.5);
        CHECK(weekly_volume_fraction(m, 1) == 0.5);
    }
    SUBCASE("errors") {
        const auto m = HourlyTraceMatrix::from_series(g, {{PrefixId::parse("10.0.0.0/8"), {1, 0, 0, 0}}});
        CHECK_THROWS_AS(weekly_volume_fraction(m, PrefixId::parse("12.0.0.0/8")), DataError);
        CHECK_THROWS_AS(weekly_volume_fraction(HourlyTraceMatrix::from_series(g, {}), 0), DataError);
    }
}

TEST_CASE("fractions sum to one on random matrices") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto m = oracle::random_matrix(rng, 60, 24);
        double sum = 0.0;
        for (std::size_t i = 0; i < m.prefix_count(); ++i) sum += weekly_volume_fraction(m, i);
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("zipf share") {
    CHECK(zipf_share(1, 1.0, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(zipf_share(2, 1.0, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // H(10^5) = 12.090146129863428 (harmonic number, summed in long double below)
    long double h = 0;
    for (int k = 100000; k >= 1; --k) h += 1.0L / k;
    CHECK(zipf_share(1, 1.0, 100000) == doctest::Approx(static_cast<double>(1.0L / h)).epsilon(1e-13));
    CHECK(zipf_share(1, 1.0, 100000) == doctest::Approx(0.0827).epsilon(1e-3));
}

TEST_CASE("synthesize_trace") {
    SUBCASE("single prefix carries every bin") {
        SyntheticTraceSpec spec;
        spec.prefix_count = 1;
        spec.zipf_s = 1.7;
        spec.diurnal_amplitude = 0.5;
        spec.noise_sigma = 0.3;
        const auto m = synthesize_trace(spec, week());
        REQUIRE(m.prefix_count() == 1);
        for (std::uint32_t h = 0; h < 168; ++h) CHECK(m.volume(0, h) == m.total(h));
    }
    SUBCASE("two prefixes, s = 1") {
        SyntheticTraceSpec spec;
        spec.prefix_count = 2;
        spec.bin_total = 3000'000'000'000'000ULL;
        const auto m = synthesize_trace(spec, week());
        const auto r1 = *m.find(PrefixId::synthetic(1));
        for (std::uint32_t h = 0; h < 168; ++h) {
            CHECK(static_cast<double>(m.volume(r1, h)) / static_cast<double>(m.total(h)) ==
                  doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        }
    }
    SUBCASE("shares match f(k, s, N) without modulation") {
        SyntheticTraceSpec spec;
        spec.prefix_count = 200;
        spec.zipf_s = 1.3;
        spec.bin_total = 1'000'000'000'000'000ULL;
        const auto m = synthesize_trace(spec, TimeGrid{0, 3600, 12});
        for (std::uint32_t k = 1; k <= 200; ++k) {
            const auto i = *m.find(PrefixId::synthetic(k));
            const double f = zipf_share(k, 1.3, 200);
            for (std::uint32_t h = 0; h < 12; ++h) {
                const double share = static_cast<double>(m.volume(i, h)) / static_cast<double>(m.total(h));
                CHECK(std::abs(share - f) <= 1e-12);
            }
        }
    }
    SUBCASE("determinism and seed sensitivity") {
        SyntheticTraceSpec spec;
        spec.prefix_count = 300;
        spec.diurnal_amplitude = 0.4;
        spec.noise_sigma = 0.2;
        spec.seed = 9;
        const auto a = synthesize_trace(spec, week());
        const auto b = synthesize_trace(spec, week());
        REQUIRE(a.prefix_count() == b.prefix_count());
        bool same = true;
        for (std::size_t i = 0; i < a.prefix_count(); ++i) {
            same = same && std::equal(a.series(i).begin(), a.series(i).end(), b.series(i).begin());
        }
        CHECK(same);
        spec.seed = 10;
        const auto c = synthesize_trace(spec, week());
        CHECK(c.total(0) != a.total(0));
    }
    SUBCASE("bursts multiply one bin") {
        SyntheticTraceSpec spec;
        spec.prefix_count = 10;
        spec.bin_total = 1'000'000'000'000ULL;
        spec.bursts = {{10, 5, 50.0}};
        const auto m = synthesize_trace(spec, TimeGrid{0, 3600, 8});
        const auto i = *m.find(PrefixId::synthetic(10));
        CHECK(static_cast<double>(m.volume(i, 5)) == doctest::Approx(50.0 * static_cast<double>(m.volume(i, 4))).epsilon(1e-9));
    }
    SUBCASE("generator validation") {
        SyntheticTraceSpec spec;
        spec.prefix_count = 0;
        CHECK_THROWS_AS(synthesize_trace(spec, week()), DataError);
        spec.prefix_count = 3;
        spec.zipf_s = 0;
        CHECK_THROWS_AS(synthesize_trace(spec, week()), DataError);
        spec.zipf_s = 1;
        spec.bursts = {{1, 0, 0.5}};
        CHECK_THROWS_AS(synthesize_trace(spec, week()), DataError);
    }
}

TEST_CASE("inject_burst gives the prefix the requested share of its bin") {
    SyntheticTraceSpec spec;
    spec.prefix_count = 50;
    const auto m = synthesize_trace(spec, TimeGrid{0, 3600, 24});
    const auto idle = PrefixId::parse("192.0.2.0/24");
    const auto b = inject_burst(m, idle, 7, 0.5);
    const auto i = *b.find(idle);
    CHECK(static_cast<double>(b.volume(i, 7)) / static_cast<double>(b.total(7)) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(b.total(6) == m.total(6));
    CHECK(b.prefix_count() == m.prefix_count() + 1);
}

TEST_CASE("truncation zeroes later bins and drops emptied prefixes") {
    const auto m = HourlyTraceMatrix::from_series(
        TimeGrid{0, 3600, 4}, {{PrefixId::synthetic(1), {1, 2, 3, 4}}, {PrefixId::synthetic(2), {0, 0, 5, 0}}});
    const auto t = m.truncated_after(2);
    CHECK(t.prefix_count() == 1);
    CHECK(t.total(1) == 2);
    CHECK(t.total(2) == 0);
}
