#include "sweep1d/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace sweep1d {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string quoted(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

auto sort_key(const TimingRecord& r) {
    return std::make_tuple(to_string(r.equation), to_string(r.method), to_string(r.scheme),
                           r.grid_size, r.block_width, r.work_factor, r.ranks, r.steps,
                           to_string(r.mode));
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                in_quotes = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

std::string csv_row(const TimingRecord& r) {
    std::ostringstream os;
    os << quoted(to_string(r.equation)) << ',' << quoted(to_string(r.method)) << ','
       << quoted(to_string(r.scheme)) << ',' << r.grid_size << ',' << r.block_width << ','
       << r.work_factor << ',' << r.ranks << ',' << r.steps << ',' << quoted(to_string(r.mode))
       << ',' << fmt_double(r.avg_us_per_step) << ',' << r.stats.messages_sent << ','
       << r.stats.bytes_sent << ',' << r.stats.exchange_rounds << ','
       << fmt_double(r.stats.virtual_comm_time * 1e6) << ',' << fmt_double(r.setup_us);
    return os.str();
}

void emit_csv(std::vector<TimingRecord> records, std::ostream& os) {
    std::sort(records.begin(), records.end(),
              [](const TimingRecord& a, const TimingRecord& b) { return sort_key(a) < sort_key(b); });
    os << kCsvHeader << '\n';
    for (const auto& r : records) {
        os << csv_row(r) << '\n';
    }
}

void emit_csv(const std::vector<TimingRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    emit_csv(records, static_cast<std::ostream&>(out));
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

std::vector<TimingRecord> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("empty CSV '" + path + "'");
    }
    std::vector<TimingRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_row(line);
        if (f.size() != 15) {
            throw std::runtime_error("malformed CSV row in '" + path + "': " + line);
        }
        TimingRecord r;
        r.equation = equation_from_string(f[0]);
        r.method = method_from_string(f[1]);
        r.scheme = scheme_from_string(f[2]);
        r.grid_size = std::stoull(f[3]);
        r.block_width = std::stoull(f[4]);
        r.work_factor = std::stoi(f[5]);
        r.ranks = std::stoi(f[6]);
        r.steps = std::stol(f[7]);
        r.mode = mode_from_string(f[8]);
        r.avg_us_per_step = std::stod(f[9]);
        r.stats.messages_sent = std::stoull(f[10]);
        r.stats.bytes_sent = std::stoull(f[11]);
        r.stats.exchange_rounds = std::stoull(f[12]);
        r.stats.virtual_comm_time = std::stod(f[13]) / 1e6;
        r.setup_us = std::stod(f[14]);
        out.push_back(r);
    }
    return out;
}

} // namespace sweep1d
