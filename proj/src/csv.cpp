#include "momenta/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "momenta/errors.hpp"

namespace momenta {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

double parse_number(const std::string& cell, std::size_t line, const char* column) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || cell.empty()) {
        throw RowError(line, std::string("column '") + column + "' is not a number: '" + cell + "'");
    }
    if (!std::isfinite(v)) {
        throw RowError(line, std::string("column '") + column + "' is not finite");
    }
    return v;
}

std::int64_t parse_timestamp(const std::string& cell, std::size_t line) {
    double v = parse_number(cell, line, "t_ms");
    if (v < 0.0) throw RowError(line, "t_ms must be non-negative");
    if (v != std::floor(v)) throw RowError(line, "t_ms must be integral milliseconds");
    return static_cast<std::int64_t>(v);
}

// Strips one trailing \r so CRLF input still parses; the writer emits LF only.
bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

void expect_header(std::istream& in, const char* expected) {
    std::string line;
    if (!next_line(in, line)) throw FormatError("empty input, expected header");
    if (line != expected) {
        throw FormatError("bad header: expected '" + std::string(expected) + "', got '" + line + "'");
    }
}

std::vector<std::string> expect_fields(const std::string& line, std::size_t n, std::size_t lineno) {
    auto fields = split_fields(line);
    if (fields.size() != n) {
        throw RowError(lineno, "expected " + std::to_string(n) + " fields, got " +
                                   std::to_string(fields.size()));
    }
    return fields;
}

void check_monotonic(std::int64_t t, std::int64_t prev, bool have_prev, std::size_t line) {
    if (have_prev && t <= prev) {
        throw SequenceError("line " + std::to_string(line) + ": t_ms " + std::to_string(t) +
                            " not after previous " + std::to_string(prev));
    }
}

}  // namespace

Parsed<TriaxSample> parse_triax_csv(std::istream& in) {
    expect_header(in, "t_ms,ax,ay,az");
    Parsed<TriaxSample> out;
    std::string line;
    std::size_t lineno = 1;
    std::int64_t prev_t = 0;
    while (next_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = expect_fields(line, 4, lineno);
        TriaxSample s;
        s.t_ms = parse_timestamp(f[0], lineno);
        s.ax = parse_number(f[1], lineno, "ax");
        s.ay = parse_number(f[2], lineno, "ay");
        s.az = parse_number(f[3], lineno, "az");
        check_monotonic(s.t_ms, prev_t, !out.samples.empty(), lineno);
        prev_t = s.t_ms;
        out.samples.push_back(s);
    }
    return out;
}

Parsed<RRInterval> parse_rr_csv(std::istream& in) {
    expect_header(in, "t_ms,rr_ms");
    Parsed<RRInterval> out;
    std::string line;
    std::size_t lineno = 1;
    std::int64_t prev_t = 0;
    while (next_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = expect_fields(line, 2, lineno);
        RRInterval s;
        s.t_ms = parse_timestamp(f[0], lineno);
        s.rr_ms = parse_number(f[1], lineno, "rr_ms");
        if (s.rr_ms <= 0.0) throw RowError(lineno, "rr_ms must be positive");
        if (s.rr_ms < kRRPlausibleLowMs || s.rr_ms > kRRPlausibleHighMs) {
            out.warnings.push_back({lineno, "rr_ms " + std::to_string(s.rr_ms) +
                                                " outside plausible range [200, 3000]"});
        }
        check_monotonic(s.t_ms, prev_t, !out.samples.empty(), lineno);
        prev_t = s.t_ms;
        out.samples.push_back(s);
    }
    return out;
}

Parsed<EEGSample> parse_eeg_csv(std::istream& in) {
    expect_header(in, "t_ms,att,rel,eye");
    Parsed<EEGSample> out;
    std::string line;
    std::size_t lineno = 1;
    std::int64_t prev_t = 0;
    while (next_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = expect_fields(line, 4, lineno);
        EEGSample s;
        s.t_ms = parse_timestamp(f[0], lineno);
        s.att = parse_number(f[1], lineno, "att");
        s.rel = parse_number(f[2], lineno, "rel");
        s.eye = parse_number(f[3], lineno, "eye");
        if (s.att < 0.0 || s.att > 100.0) throw RowError(lineno, "att outside [0, 100]");
        if (s.rel < 0.0 || s.rel > 100.0) throw RowError(lineno, "rel outside [0, 100]");
        if (s.eye < 0.0) throw RowError(lineno, "eye must be >= 0");
        check_monotonic(s.t_ms, prev_t, !out.samples.empty(), lineno);
        prev_t = s.t_ms;
        out.samples.push_back(s);
    }
    return out;
}

namespace {

void write_row(std::ostream& out, std::int64_t t, std::span<const double> vals, int decimals) {
    char buf[64];
    out << t;
    for (double v : vals) {
        std::snprintf(buf, sizeof buf, ",%.*f", decimals, v);
        out << buf;
    }
    out << '\n';
}

}  // namespace

void write_triax_csv(std::ostream& out, std::span<const TriaxSample> samples) {
    out << "t_ms,ax,ay,az\n";
    for (const auto& s : samples) {
        const double v[3] = {s.ax, s.ay, s.az};
        write_row(out, s.t_ms, v, 6);
    }
}

void write_rr_csv(std::ostream& out, std::span<const RRInterval> samples) {
    out << "t_ms,rr_ms\n";
    for (const auto& s : samples) {
        const double v[1] = {s.rr_ms};
        write_row(out, s.t_ms, v, 3);
    }
}

void write_eeg_csv(std::ostream& out, std::span<const EEGSample> samples) {
    out << "t_ms,att,rel,eye\n";
    for (const auto& s : samples) {
        const double v[3] = {s.att, s.rel, s.eye};
        write_row(out, s.t_ms, v, 1);
    }
}

}  // namespace momenta
