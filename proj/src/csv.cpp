#include "pin/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace pin::csv {

namespace {

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

class Reader {
public:
    Reader(const std::string& path, const std::vector<std::string>& header) : path_(path) {
        in_.open(path);
        if (!in_) throw input_error("cannot open '" + path + "'");
        std::string line;
        if (!std::getline(in_, line)) throw input_error(path + ": empty file");
        ++line_no_;
        auto fields = split(line);
        if (fields != header) {
            std::string expected;
            for (std::size_t i = 0; i < header.size(); ++i)
                expected += (i ? "," : "") + header[i];
            throw input_error(path + ":1: expected header '" + expected + "'");
        }
        width_ = header.size();
    }

    bool next(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (trim(line).empty() || line[0] == '#') continue;
            fields = split(line);
            if (fields.size() != width_)
                throw input_error(where() + ": expected " + std::to_string(width_) +
                                  " fields, got " + std::to_string(fields.size()));
            return true;
        }
        return false;
    }

    std::string where() const { return path_ + ":" + std::to_string(line_no_); }

    double to_double(const std::string& s) const {
        double v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size())
            throw input_error(where() + ": bad number '" + s + "'");
        return v;
    }

    int to_int(const std::string& s) const {
        int v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size())
            throw input_error(where() + ": bad integer '" + s + "'");
        return v;
    }

private:
    std::string path_;
    std::ifstream in_;
    std::size_t width_ = 0;
    int line_no_ = 0;
};

}  // namespace

CountryRegistry read_registry(const std::string& path) {
    Reader reader(path, {"iso", "name", "is_ofc"});
    CountryRegistry registry;
    std::vector<std::string> f;
    while (reader.next(f)) {
        int flag = reader.to_int(f[2]);
        if (flag != 0 && flag != 1)
            throw input_error(reader.where() + ": is_ofc must be 0 or 1");
        try {
            registry.add(f[0], f[1], flag == 1);
        } catch (const input_error& e) {
            throw input_error(reader.where() + ": " + e.what());
        }
    }
    if (registry.size() == 0) throw input_error(path + ": no countries");
    return registry;
}

std::vector<PositionRecord> read_positions(const std::string& path,
                                           const CountryRegistry& registry) {
    Reader reader(path, {"year", "source_iso", "target_iso", "position_usd_millions"});
    std::vector<PositionRecord> records;
    std::vector<std::string> f;
    while (reader.next(f)) {
        const Country* src = registry.find_iso(f[1]);
        if (!src) throw input_error(reader.where() + ": unknown ISO '" + f[1] + "'");
        const Country* dst = registry.find_iso(f[2]);
        if (!dst) throw input_error(reader.where() + ": unknown ISO '" + f[2] + "'");
        if (src->id == dst->id)
            throw input_error(reader.where() + ": self-loop position for '" + f[1] + "'");
        records.push_back(PositionRecord{reader.to_int(f[0]), src->id, dst->id,
                                         reader.to_double(f[3])});
    }
    return records;
}

std::map<int, double> read_deflator(const std::string& path) {
    Reader reader(path, {"year", "index"});
    std::map<int, double> table;
    std::vector<std::string> f;
    while (reader.next(f)) {
        int year = reader.to_int(f[0]);
        if (table.count(year))
            throw input_error(reader.where() + ": duplicate year " + f[0]);
        table[year] = reader.to_double(f[1]);
    }
    return table;
}

std::map<std::string, TimeSeries> read_series(const std::string& path) {
    Reader reader(path, {"date", "series_id", "value"});
    std::map<std::string, TimeSeries> out;
    std::vector<std::string> f;
    while (reader.next(f)) {
        Date d;
        try {
            d = parse_date(f[0]);
        } catch (const input_error& e) {
            throw input_error(reader.where() + ": " + e.what());
        }
        auto& series = out[f[1]];
        series.label = f[1];
        series.points.push_back(TimePoint{d, reader.to_double(f[2])});
    }
    for (auto& [id, series] : out) {
        std::sort(series.points.begin(), series.points.end(),
                  [](const TimePoint& a, const TimePoint& b) { return a.date < b.date; });
        for (std::size_t i = 1; i < series.points.size(); ++i)
            if (series.points[i].date == series.points[i - 1].date)
                throw input_error(path + ": series '" + id + "' repeats date " +
                                  to_string(series.points[i].date));
        if (series.points.size() >= 2) {
            int gap = series.points[1].date.month_index() - series.points[0].date.month_index();
            series.cadence_months = gap;
        }
        try {
            series.validate();
        } catch (const invariant_error& e) {
            throw input_error(path + ": " + e.what());
        }
    }
    return out;
}

}  // namespace pin::csv
