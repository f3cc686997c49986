#include "prefixsel/io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>

#include "prefixsel/error.hpp"

namespace prefixsel::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
    text = trim(text);
    if (text.empty()) return false;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && end == text.data() + text.size();
}

bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!trim(line).empty()) return true;
    }
    return false;
}

void expect_header(std::istream& in, std::string_view expected, std::string_view what) {
    std::string line;
    if (!next_line(in, line) || trim(line) != expected) {
        throw DataError(std::string(what) + ": expected header '" + std::string(expected) + "'");
    }
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<RawTraceRow> read_trace_csv(std::istream& in) {
    expect_header(in, "timestamp,prefix,bytes", "trace CSV");
    std::vector<RawTraceRow> rows;
    std::string line;
    while (next_line(in, line)) {
        const auto cells = split(line, ',');
        RawTraceRow row;
        if (cells.size() != 3 || !parse_number(cells[0], row.timestamp) || !parse_number(cells[2], row.bytes)) {
            row.malformed = true;
        }
        if (cells.size() >= 2) row.prefix = cells[1];
        rows.push_back(std::move(row));
    }
    return rows;
}

HourlyTraceMatrix bin_rows(const std::vector<RawTraceRow>& rows, const TimeGrid& grid, RejectPolicy policy,
                           IngestSummary& summary) {
    TraceBinner binner(grid, policy);
    for (const auto& r : rows) {
        // A malformed row is routed through the same reject path as a bad prefix.
        if (r.malformed) binner.add(r.timestamp, "", 0);
        else binner.add(r.timestamp, r.prefix, r.bytes);
    }
    auto m = binner.finish();
    summary = binner.summary();
    return m;
}

void write_matrix_csv(std::ostream& out, const HourlyTraceMatrix& m) {
    out << "prefix";
    for (std::uint32_t h = 1; h <= m.bin_count(); ++h) out << ",h" << h;
    out << '\n';
    for (std::size_t i = 0; i < m.prefix_count(); ++i) {
        out << m.prefix(i).text();
        for (auto v : m.series(i)) out << ',' << v;
        out << '\n';
    }
}

HourlyTraceMatrix read_matrix_csv(std::istream& in, const TimeGrid& grid) {
    std::string line;
    if (!next_line(in, line)) throw DataError("matrix CSV is empty");
    const auto header = split(line, ',');
    if (header.empty() || header[0] != "prefix" || header.size() != grid.bin_count + 1) {
        throw DataError("matrix CSV header does not match the grid (" + std::to_string(grid.bin_count) + " bins)");
    }
    std::map<PrefixId, std::vector<std::uint64_t>> series;
    while (next_line(in, line)) {
        const auto cells = split(line, ',');
        if (cells.size() != grid.bin_count + 1) throw DataError("matrix CSV row has the wrong number of columns");
        auto prefix = PrefixId::parse(cells[0]);
        std::vector<std::uint64_t> values(grid.bin_count);
        for (std::uint32_t h = 0; h < grid.bin_count; ++h) {
            if (!parse_number(cells[h + 1], values[h])) throw DataError("matrix CSV has a non-integer volume");
        }
        if (!series.emplace(std::move(prefix), std::move(values)).second) {
            throw DataError("matrix CSV repeats prefix " + cells[0]);
        }
    }
    return HourlyTraceMatrix::from_series(grid, std::move(series));
}

void write_selection_csv(std::ostream& out, const SelectionRun& run, const HourlyTraceMatrix& m) {
    out << "hour,rank,prefix,score,method,L,K\n";
    const auto method = method_name(run.config.method);
    for (const auto& h : run.hours) {
        for (std::size_t r = 0; r < h.prefixes.size(); ++r) {
            out << h.bin + 1 << ',' << r + 1 << ',' << m.prefix(h.prefixes[r]).text() << ','
                << format_double(h.scores[r]) << ',' << method << ',' << run.config.window << ',' << run.config.size
                << '\n';
        }
    }
}

SelectionRun read_selection_csv(std::istream& in, const HourlyTraceMatrix& m, const SelectorConfig& config,
                                double threshold, std::uint64_t total_volume) {
    expect_header(in, "hour,rank,prefix,score,method,L,K", "selection CSV");
    SelectionRun run;
    run.config = config;
    run.threshold = threshold;
    run.total_volume = total_volume;
    for (std::uint32_t t = 1; t < m.bin_count(); ++t) {
        HourSelection h;
        h.bin = t;
        h.effective_window = std::min(config.window, t);
        h.warmup = h.effective_window < config.window;
        run.hours.push_back(std::move(h));
    }
    std::string line;
    while (next_line(in, line)) {
        const auto cells = split(line, ',');
        std::uint32_t hour = 0;
        std::uint32_t rank = 0;
        double score = 0.0;
        if (cells.size() != 7 || !parse_number(cells[0], hour) || !parse_number(cells[1], rank) ||
            !parse_number(cells[3], score)) {
            throw DataError("malformed selection CSV row: " + line);
        }
        if (hour < 2 || hour > m.bin_count()) throw DataError("selection CSV hour outside the evaluable range");
        const auto idx = m.find(PrefixId::parse(cells[2]));
        if (!idx) throw DataError("selection CSV names prefix " + cells[2] + " absent from the trace");
        auto& h = run.hours[hour - 2];
        if (rank != h.prefixes.size() + 1) throw DataError("selection CSV ranks are not consecutive");
        h.prefixes.push_back(static_cast<std::uint32_t>(*idx));
        h.scores.push_back(score);
    }
    for (auto& h : run.hours) h.short_set = h.prefixes.size() < config.size;
    return run;
}

void write_evaluation_csv(std::ostream& out, const EvaluationReport& report) {
    out << "hour,coverage,churn\n";
    for (const auto& h : report.hours) {
        out << h.bin + 1 << ',' << format_double(h.coverage) << ',';
        if (h.churn) out << *h.churn;
        out << '\n';
    }
}

void write_probe_csv(std::ostream& out, const ProbeLog& log) {
    out << "tick,prefix,transit,rtt_ms\n";
    for (std::uint32_t t = 0; t < log.tick_count(); ++t) {
        for (std::size_t p = 0; p < log.prefixes().size(); ++p) {
            for (std::size_t x = 0; x < log.transits().size(); ++x) {
                out << t << ',' << log.prefixes()[p].text() << ',' << log.transits()[x].label << ',';
                if (const auto r = log.rtt(t, p, x)) out << format_double(*r);
                out << '\n';
            }
        }
    }
}

ProbeLog read_probe_csv(std::istream& in) {
    expect_header(in, "tick,prefix,transit,rtt_ms", "probe CSV");
    std::vector<ProbeSample> samples;
    std::string line;
    while (next_line(in, line)) {
        const auto cells = split(line, ',');
        ProbeSample s;
        if (cells.size() != 4 || !parse_number(cells[0], s.tick) || cells[2].empty()) {
            throw DataError("malformed probe CSV row: " + line);
        }
        s.prefix = PrefixId::parse(cells[1]);
        s.transit = TransitId{cells[2]};
        if (!cells[3].empty()) {
            double rtt = 0.0;
            if (!parse_number(cells[3], rtt)) throw DataError("malformed RTT in probe CSV row: " + line);
            s.rtt_ms = rtt;
        }
        samples.push_back(std::move(s));
    }
    if (samples.empty()) throw DataError("probe CSV has no samples");
    return ProbeLog::from_samples(samples);
}

void write_np_csv(std::ostream& out, std::span<const NpSeries> series) {
    out << "tick,transit,np,included_prefixes\n";
    std::uint32_t max_tick = 0;
    for (const auto& s : series) {
        for (const auto& p : s.points) max_tick = std::max(max_tick, p.tick + 1);
    }
    // Tick-major; series order within a tick.
    std::vector<std::size_t> cursor(series.size(), 0);
    for (std::uint32_t t = 0; t < max_tick; ++t) {
        for (std::size_t i = 0; i < series.size(); ++i) {
            const auto& pts = series[i].points;
            if (cursor[i] >= pts.size() || pts[cursor[i]].tick != t) continue;
            const auto& p = pts[cursor[i]++];
            out << t << ',' << series[i].transit << ',';
            if (p.np) out << format_double(*p.np);
            out << ',' << p.included << '\n';
        }
    }
}

}  // namespace prefixsel::io
