#include "spinbath/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spinbath/scenario.hpp"

namespace spinbath {

std::size_t Table::column_index(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::invalid_argument("no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> Table::column(const std::string& name) const {
    const std::size_t k = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[k]);
    return out;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out;
    for (std::size_t k = 0; k < trajectory_columns.size(); ++k) {
        if (k) out += ',';
        out += trajectory_columns[k];
    }
    out += '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double row[] = {traj.times[i], traj.jz[i],        traj.jz2[i],      traj.jy[i],
                              traj.jx[i],    traj.trace_err[i], traj.herm_err[i], traj.min_eig[i]};
        for (std::size_t k = 0; k < std::size(row); ++k) {
            if (k) out += ',';
            out += format_double(row[k]);
        }
        out += '\n';
    }
    return out;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CsvError("cannot write '" + path + "'");
    out << trajectory_csv(traj);
    if (!out) throw CsvError("write failed for '" + path + "'");
}

Table parse_csv(const std::string& text) {
    Table table;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (table.header.empty()) {
            table.header = cells;
            continue;
        }
        if (cells.size() != table.header.size())
            throw CsvError("line " + std::to_string(line_no) + ": expected " + std::to_string(table.header.size()) +
                           " fields, got " + std::to_string(cells.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (end == c.c_str() || *end != '\0')
                throw CsvError("line " + std::to_string(line_no) + ": not a number: '" + c + "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw CsvError("empty CSV");
    return table;
}

Table read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

CompareReport compare_tables(const Table& a, const Table& b, const std::string& column, bool interpolate) {
    const std::vector<double> ta = a.column("t"), tb = b.column("t");
    const std::vector<double> ya = a.column(column), yb = b.column(column);

    CompareReport rep;
    double sum2 = 0.0;
    auto accumulate = [&](double t, double diff) {
        ++rep.points;
        sum2 += diff * diff;
        if (std::abs(diff) > rep.max_abs || rep.points == 1) {
            rep.max_abs = std::abs(diff);
            rep.t_at_max = t;
        }
    };

    if (!interpolate) {
        if (ta.size() != tb.size()) throw CsvError("time grids differ in length (use interpolation)");
        for (std::size_t i = 0; i < ta.size(); ++i) {
            if (std::abs(ta[i] - tb[i]) > 1e-12 * std::max(1.0, std::abs(ta[i])))
                throw CsvError("time grids differ at row " + std::to_string(i + 1) + " (use interpolation)");
            accumulate(ta[i], ya[i] - yb[i]);
        }
    } else {
        if (tb.size() < 2) throw CsvError("interpolation needs at least two rows in the second table");
        for (std::size_t i = 0; i < ta.size(); ++i) {
            const double t = ta[i];
            if (t < tb.front() - 1e-12 || t > tb.back() + 1e-12) continue;
            auto it = std::upper_bound(tb.begin(), tb.end(), t);
            std::size_t k = static_cast<std::size_t>(it - tb.begin());
            k = std::clamp<std::size_t>(k, 1, tb.size() - 1);
            const double w = (t - tb[k - 1]) / (tb[k] - tb[k - 1]);
            accumulate(t, ya[i] - ((1.0 - w) * yb[k - 1] + w * yb[k]));
        }
        if (rep.points == 0) throw CsvError("time grids do not overlap");
    }
    rep.rms = rep.points ? std::sqrt(sum2 / static_cast<double>(rep.points)) : 0.0;
    return rep;
}

}  // namespace spinbath
