#include "autolog/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "autolog/time_parse.hpp"

namespace autolog {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_number(const std::string& cell, const std::string& path, std::int64_t line_no,
                    const std::string& column) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
        throw DataError(path + ":" + std::to_string(line_no) + ": cell '" + cell +
                        "' in column '" + column + "' is not a finite number");
    }
    return v;
}

struct TimeCell {
    bool is_step = false;
    std::int64_t value = 0;  // epoch seconds or step index
};

TimeCell parse_time_cell(const std::string& cell, const std::string& path, std::int64_t line_no) {
    if (const auto step = parse_step_index(cell)) return {true, *step};
    if (const auto epoch = parse_iso_utc(cell)) return {false, *epoch};
    throw DataError(path + ":" + std::to_string(line_no) + ": timestamp '" + cell +
                    "' is neither an ISO-8601 UTC time nor a step index");
}

}  // namespace

std::vector<SensorSeries> load_sensors(const std::string& path, FillPolicy fill) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open sensor file '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    const std::vector<std::string> header = split_csv_line(strip_cr(line));
    if (header.size() < 2 || header[0] != "timestamp") {
        throw DataError(path + ":1: header must be 'timestamp,<sensor_1>,...'");
    }
    const std::size_t d = header.size() - 1;

    std::vector<std::vector<double>> columns(d);
    std::vector<TimeCell> times;
    std::int64_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw DataError(path + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " cells, found " +
                            std::to_string(cells.size()));
        }
        const TimeCell t = parse_time_cell(cells[0], path, line_no);
        if (!times.empty() && t.is_step != times.front().is_step) {
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": mixed timestamp conventions in one file");
        }
        if (!times.empty() && t.value <= times.back().value) {
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": timestamps must be strictly increasing");
        }
        times.push_back(t);

        for (std::size_t j = 0; j < d; ++j) {
            const std::string& cell = cells[j + 1];
            if (cell.empty()) {
                if (fill == FillPolicy::Forward && !columns[j].empty()) {
                    columns[j].push_back(columns[j].back());
                    continue;
                }
                throw DataError(path + ":" + std::to_string(line_no) + ": missing value for '" +
                                header[j + 1] + "'" +
                                (fill == FillPolicy::Forward ? " in the first data row" : ""));
            }
            columns[j].push_back(parse_number(cell, path, line_no, header[j + 1]));
        }
    }
    if (times.empty()) throw DataError(path + ": no data rows");

    std::int64_t start_epoch = 0;
    std::int64_t granularity = 1;
    if (times.front().is_step) {
        for (std::size_t i = 1; i < times.size(); ++i) {
            if (times[i].value != times[i - 1].value + 1) {
                throw DataError(path + ": gap in step indices before row value " +
                                std::to_string(times[i].value));
            }
        }
    } else {
        start_epoch = times.front().value;
        if (times.size() >= 2) {
            const std::int64_t diff = times[1].value - times[0].value;
            if (diff % 60 != 0) {
                throw DataError(path + ": timestamp spacing must be a whole number of minutes");
            }
            granularity = diff / 60;
            for (std::size_t i = 1; i < times.size(); ++i) {
                if (times[i].value - times[i - 1].value != diff) {
                    throw DataError(path + ": gap in timestamps at data row " + std::to_string(i + 1));
                }
            }
        }
    }

    std::vector<SensorSeries> sensors;
    sensors.reserve(d);
    for (std::size_t j = 0; j < d; ++j) {
        SensorSeries s;
        s.name = header[j + 1];
        s.start_epoch_seconds = start_epoch;
        s.granularity_minutes = granularity;
        s.values = std::move(columns[j]);
        sensors.push_back(std::move(s));
    }
    return sensors;
}

FailureLog load_failures(const std::string& path, std::int64_t start_epoch_seconds,
                         std::int64_t granularity_minutes) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open failure file '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    const std::vector<std::string> header = split_csv_line(strip_cr(line));
    if (header.size() != 2 || header[0] != "start" || header[1] != "end") {
        throw DataError(path + ":1: header must be 'start,end'");
    }

    const auto to_step = [&](const TimeCell& t, std::int64_t line_no) -> std::int64_t {
        if (t.is_step) return t.value;
        const std::int64_t offset = t.value - start_epoch_seconds;
        const std::int64_t step_seconds = granularity_minutes * 60;
        if (offset % step_seconds != 0) {
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": timestamp does not fall on the sensor grid");
        }
        return offset / step_seconds;
    };

    FailureLog log;
    std::int64_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != 2) {
            throw DataError(path + ":" + std::to_string(line_no) + ": expected 2 cells");
        }
        const std::int64_t start = to_step(parse_time_cell(cells[0], path, line_no), line_no);
        const std::int64_t end = to_step(parse_time_cell(cells[1], path, line_no), line_no);
        log.episodes.push_back({start, end});
    }
    log.validate();
    return log;
}

void write_sensors_csv(const std::string& path, const std::vector<SensorSeries>& sensors) {
    if (sensors.empty()) throw DataError("write_sensors_csv: no sensors");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "timestamp";
    for (const SensorSeries& s : sensors) out << "," << s.name;
    out << "\n";
    char buf[64];
    for (std::size_t t = 0; t < sensors.front().values.size(); ++t) {
        out << t;
        for (const SensorSeries& s : sensors) {
            std::snprintf(buf, sizeof(buf), "%.17g", s.values[t]);
            out << "," << buf;
        }
        out << "\n";
    }
}

void write_failures_csv(const std::string& path, const FailureLog& failures) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "start,end\n";
    for (const Episode& e : failures.episodes) {
        out << e.start_step << "," << e.end_step << "\n";
    }
}

void write_trace_csv(const std::string& path, const PredictionTrace& trace) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "origin_step,raw_prob,smoothed_prob,decision\n";
    char buf[128];
    for (std::size_t i = 0; i < trace.raw_probs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%lld,%.6g,%.6g,%d",
                      static_cast<long long>(trace.origin_steps[i]), trace.raw_probs[i],
                      trace.smoothed_probs[i], static_cast<int>(trace.decisions[i]));
        out << buf << "\n";
    }
}

std::string format_metrics_report(const MetricsReport& report,
                                  const std::vector<std::pair<std::string, std::string>>& header_lines) {
    std::ostringstream out;
    char buf[64];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };
    for (const auto& [key, value] : header_lines) out << key << ": " << value << "\n";
    out << "accuracy: " << num(report.accuracy) << "\n";
    out << "recall: " << num(report.recall) << "\n";
    out << "specificity: " << num(report.specificity) << "\n";
    out << "precision: " << num(report.precision) << "\n";
    out << "f1: " << num(report.f1) << "\n";
    out << "false_alarms: " << report.false_alarms << "\n";
    out << "imbalance_rate: " << num(report.imbalance_rate) << "\n";
    out << "tp: " << report.confusion.tp << "\n";
    out << "fp: " << report.confusion.fp << "\n";
    out << "tn: " << report.confusion.tn << "\n";
    out << "fn: " << report.confusion.fn << "\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << content;
}

}  // namespace autolog
