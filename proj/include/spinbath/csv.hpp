// csv.hpp: trajectory tables on disk and column comparison

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "spinbath/trajectory.hpp"

namespace spinbath {

inline const std::vector<std::string> trajectory_columns{"t",         "jz",       "jz2",    "jy",
                                                          "jx",        "trace_err", "herm_err", "min_eig"};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Throws std::invalid_argument for a missing column.
    std::size_t column_index(const std::string& name) const;
    std::vector<double> column(const std::string& name) const;
};

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Header row then one row per recorded time, 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

Table parse_csv(const std::string& text);
Table read_csv(const std::string& path);

struct CompareReport {
    std::size_t points{0};
    double max_abs{0.0};
    double rms{0.0};
    double t_at_max{0.0};
};

/// Differences of `column` between two tables. Without interpolation the t
/// columns must agree to 1e-12 relative; with it, b is linearly interpolated
/// onto the part of a's grid covered by b. Throws CsvError on a grid mismatch.
CompareReport compare_tables(const Table& a, const Table& b, const std::string& column, bool interpolate);

}  // namespace spinbath
