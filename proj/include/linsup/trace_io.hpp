#ifndef LINSUP_TRACE_IO_HPP
#define LINSUP_TRACE_IO_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "problem.hpp"
#include "superiorization.hpp"

namespace linsup {

/// Column order of trace CSV files.
inline constexpr std::array<const char*, 6> trace_columns = {
    "sweep", "objective", "neg_objective", "proximity", "rel_change", "ell_start"};

/// One parsed CSV row. neg_objective is kept as written.
struct TraceRow {
    std::size_t sweep = 0;
    double objective = 0.0;
    double neg_objective = 0.0;
    double proximity = 0.0;
    double rel_change = 0.0;
    std::uint64_t ell_start = 0;
};

struct TraceFile {
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<TraceRow> rows;
};

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string real_text(double v)
{
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

} // namespace detail

/// CSV body only: header line plus one line per sweep.
inline std::string format_trace_body(const std::vector<SweepTrace>& trace)
{
    std::string out;
    for (std::size_t k = 0; k < trace_columns.size(); ++k) {
        if (k)
            out.push_back(',');
        out += trace_columns[k];
    }
    out.push_back('\n');
    for (const auto& t : trace) {
        out += std::to_string(t.sweep);
        out += ',' + detail::real_text(t.objective);
        out += ',' + detail::real_text(-t.objective);
        out += ',' + detail::real_text(t.proximity);
        out += ',' + detail::real_text(t.rel_change);
        out += ',' + std::to_string(t.ell_start);
        out.push_back('\n');
    }
    return out;
}

/// Provenance comment block (`# key=value` lines) followed by the body.
inline std::string format_trace(const std::vector<std::pair<std::string, std::string>>& provenance,
                                const std::vector<SweepTrace>& trace)
{
    std::string out;
    for (const auto& [k, v] : provenance)
        out += "# " + k + "=" + v + "\n";
    out += format_trace_body(trace);
    return out;
}

inline void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw IoError("write to '" + path + "' failed");
}

/// Parses a trace CSV. Columns are located by header name, so extra
/// columns are tolerated; rows are returned sorted by sweep.
inline TraceFile parse_trace(std::istream& in)
{
    TraceFile tf;
    std::string line;
    std::vector<std::string> header;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const auto body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
            const auto eq = body.find('=');
            if (eq == std::string::npos)
                tf.provenance.emplace_back(body, "");
            else
                tf.provenance.emplace_back(body.substr(0, eq), body.substr(eq + 1));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);

        if (header.empty()) {
            header = std::move(cells);
            for (const char* col : trace_columns)
                if (std::find(header.begin(), header.end(), col) == header.end())
                    throw SchemaError(std::string("missing column '") + col + "'");
            continue;
        }
        if (cells.size() != header.size())
            throw SchemaError("line " + std::to_string(line_no) + ": expected "
                              + std::to_string(header.size()) + " fields");
        auto field = [&](const char* name) -> const std::string& {
            const auto it = std::find(header.begin(), header.end(), name);
            return cells[static_cast<std::size_t>(it - header.begin())];
        };
        auto real = [&](const char* name) {
            const std::string& s = field(name);
            double v = 0.0;
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || p != s.data() + s.size())
                throw SchemaError("line " + std::to_string(line_no) + ": bad value in column '"
                                  + name + "'");
            return v;
        };
        auto integer = [&](const char* name) {
            const std::string& s = field(name);
            std::uint64_t v = 0;
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || p != s.data() + s.size())
                throw SchemaError("line " + std::to_string(line_no) + ": bad value in column '"
                                  + name + "'");
            return v;
        };
        TraceRow r;
        r.sweep = static_cast<std::size_t>(integer("sweep"));
        r.objective = real("objective");
        r.neg_objective = real("neg_objective");
        r.proximity = real("proximity");
        r.rel_change = real("rel_change");
        r.ell_start = integer("ell_start");
        tf.rows.push_back(r);
    }
    if (header.empty())
        throw SchemaError("trace has no header line");
    std::stable_sort(tf.rows.begin(), tf.rows.end(),
                     [](const TraceRow& a, const TraceRow& b) { return a.sweep < b.sweep; });
    return tf;
}

inline TraceFile load_trace(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    return parse_trace(in);
}

} // namespace linsup

#endif // LINSUP_TRACE_IO_HPP
