#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "series.hpp"

namespace macrorisk {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cell);
            cell.clear();
        } else {
            cell += c;
        }
    }
    out.push_back(cell);
    return out;
}

inline std::string to_upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return (char)std::toupper(c); });
    return s;
}

// strict decimal: the whole cell must parse, '.' separator, finite value
inline bool parse_cell(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace detail

// Grammar: header row with `period` first; periods strict YYYYQn and
// strictly consecutive; every other cell a finite decimal. Column names are
// upper-cased on ingest. LF and CRLF both accepted.
inline Dataset load_csv_text(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw EmptyFile("csv: no content");
    if (lines.size() == 1) throw EmptyFile("csv: header but no observations");

    const auto header = detail::split_csv_line(lines[0]);
    if (detail::to_upper(header[0]) != "PERIOD")
        throw BadPeriodFormat("csv: first column must be 'period', got '" +
                              header[0] + "'");
    Dataset ds;
    for (std::size_t c = 1; c < header.size(); ++c) {
        const std::string name = detail::to_upper(header[c]);
        if (name.empty()) throw DuplicateColumn("csv: empty column name");
        if (ds.has_column(name))
            throw DuplicateColumn("csv: duplicate column " + name);
        ds.names.push_back(name);
        ds.columns.emplace_back();
    }

    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = detail::split_csv_line(lines[r]);
        if (cells.size() != header.size())
            throw RowWidthMismatch("csv: line " + std::to_string(r + 1) +
                                   " has " + std::to_string(cells.size()) +
                                   " cells, header has " +
                                   std::to_string(header.size()));
        const Period p = Period::parse(cells[0]);
        if (!ds.periods.empty() && p.index() != ds.periods.back().index() + 1)
            throw NonConsecutivePeriods(
                "csv: period " + cells[0] + " does not follow " +
                ds.periods.back().str());
        ds.periods.push_back(p);
        for (std::size_t c = 1; c < cells.size(); ++c) {
            double v;
            if (!detail::parse_cell(cells[c], v))
                throw NonNumericCell(r + 1, ds.names[c - 1]);
            ds.columns[c - 1].push_back(v);
        }
    }
    return ds;
}

inline Dataset load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw EmptyFile("csv: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_csv_text(buf.str());
}

inline std::string format_g9(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string save_csv_text(const Dataset& ds) {
    std::string out = "period";
    for (const auto& nm : ds.names) {
        out += ',';
        out += nm;
    }
    out += '\n';
    for (std::size_t r = 0; r < ds.periods.size(); ++r) {
        out += ds.periods[r].str();
        for (const auto& col : ds.columns) {
            out += ',';
            out += format_g9(col[r]);
        }
        out += '\n';
    }
    return out;
}

inline void save_csv(const Dataset& ds, const std::string& path) {
    std::ofstream outf(path, std::ios::binary);
    outf << save_csv_text(ds);
}

}  // namespace macrorisk
