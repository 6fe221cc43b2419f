#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace macrorisk {

// Quarterly period. Ordering and arithmetic run through the quarter index
// year*4 + (quarter-1).
struct Period {
    int year = 0;
    int quarter = 1;  // 1..4

    auto operator<=>(const Period&) const = default;

    int index() const { return year * 4 + (quarter - 1); }

    static Period from_index(int idx) {
        Period p;
        p.year = idx / 4;
        p.quarter = idx % 4 + 1;
        if (p.quarter <= 0) {  // negative years round toward zero
            p.year -= 1;
            p.quarter += 4;
        }
        return p;
    }

    Period next() const { return from_index(index() + 1); }
    Period advanced(int k) const { return from_index(index() + k); }

    std::string str() const {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04dQ%d", year, quarter);
        return buf;
    }

    // strict YYYYQn: four digits, literal 'Q', one digit in 1..4
    static Period parse(const std::string& s) {
        if (s.size() != 6 || s[4] != 'Q')
            throw BadPeriodFormat("bad period '" + s + "' (want YYYYQn)");
        for (int i = 0; i < 4; ++i)
            if (s[i] < '0' || s[i] > '9')
                throw BadPeriodFormat("bad period '" + s + "' (want YYYYQn)");
        if (s[5] < '1' || s[5] > '4')
            throw BadPeriodFormat("bad period '" + s + "' (quarter not 1..4)");
        Period p;
        p.year = std::stoi(s.substr(0, 4));
        p.quarter = s[5] - '0';
        return p;
    }
};

struct Series {
    std::string name;
    Period start;
    std::vector<double> values;

    Series() = default;
    Series(std::string name, Period start, std::vector<double> values)
        : name(std::move(name)), start(start), values(std::move(values)) {
        if (this->values.empty())
            throw SeriesTooShort("series " + this->name + " is empty");
        for (double v : this->values)
            if (!std::isfinite(v))
                throw NonFiniteValue("series " + this->name +
                                     " has a non-finite value");
    }

    std::size_t n() const { return values.size(); }
    Period end() const { return start.advanced((int)values.size() - 1); }
};

struct Summary {
    double mean, median, max, min, std_dev;
    std::size_t n;
};

inline Summary describe(const Series& s) {
    const auto& v = s.values;
    if (v.size() < 2)
        throw SeriesTooShort("describe: need n >= 2, got " +
                             std::to_string(v.size()));
    Summary out{};
    out.n = v.size();
    double sum = 0.0;
    for (double x : v) sum += x;
    out.mean = sum / (double)v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.std_dev = std::sqrt(ss / (double)(v.size() - 1));
    std::vector<double> sorted(v);
    std::sort(sorted.begin(), sorted.end());
    out.min = sorted.front();
    out.max = sorted.back();
    const std::size_t m = sorted.size() / 2;
    out.median = sorted.size() % 2 ? sorted[m]
                                   : 0.5 * (sorted[m - 1] + sorted[m]);
    return out;
}

inline Series log_transform(const Series& s) {
    std::vector<double> out(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (s.values[i] <= 0.0)
            throw NonPositiveValue("log of non-positive value in " + s.name);
        out[i] = std::log(s.values[i]);
    }
    return Series(s.name + "_LOG", s.start, std::move(out));
}

inline Series diff(const Series& s) {
    if (s.values.size() < 2)
        throw SeriesTooShort("diff: series " + s.name + " too short");
    std::vector<double> out(s.values.size() - 1);
    for (std::size_t i = 0; i + 1 < s.values.size(); ++i)
        out[i] = s.values[i + 1] - s.values[i];
    return Series(s.name + "_DIFF1", s.start.next(), std::move(out));
}

// lag(k): observation at period p holds the original value from p - k,
// so the start shifts forward by k and the value array keeps its head.
inline Series lag(const Series& s, std::size_t k) {
    if (k == 0 || s.values.size() <= k)
        throw SeriesTooShort("lag: series " + s.name + " too short for k=" +
                             std::to_string(k));
    std::vector<double> out(s.values.begin(),
                            s.values.end() - (std::ptrdiff_t)k);
    return Series(s.name + "_LAG" + std::to_string(k),
                  s.start.advanced((int)k), std::move(out));
}

// Trim both series to their common period range.
inline std::pair<Series, Series> align(const Series& a, const Series& b) {
    const int lo = std::max(a.start.index(), b.start.index());
    const int hi = std::min(a.end().index(), b.end().index());
    if (lo > hi)
        throw SeriesTooShort("align: " + a.name + " and " + b.name +
                             " share no periods");
    auto cut = [&](const Series& s) {
        const int off = lo - s.start.index();
        std::vector<double> v(s.values.begin() + off,
                              s.values.begin() + off + (hi - lo + 1));
        return Series(s.name, Period::from_index(lo), std::move(v));
    };
    return {cut(a), cut(b)};
}

// Column-ordered panel over one contiguous period range.
struct Dataset {
    std::vector<Period> periods;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    bool has_column(const std::string& name) const {
        return std::find(names.begin(), names.end(), name) != names.end();
    }

    const std::vector<double>& column(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return columns[i];
        throw MissingColumn("missing column " + name);
    }

    Series series(const std::string& name) const {
        return Series(name, periods.front(), column(name));
    }

    void add_column(const std::string& name, std::vector<double> values) {
        if (has_column(name))
            throw DuplicateColumn("duplicate column " + name);
        if (values.size() != periods.size())
            throw RowWidthMismatch("column " + name + " length mismatch");
        names.push_back(name);
        columns.push_back(std::move(values));
    }
};

}  // namespace macrorisk
